#include "sepsimplex/io.hpp"

#include <fstream>
#include <sstream>

namespace sepsimplex::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::malformed_input, where + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) bad(where, std::string("missing field \"") + name + "\"");
    return *it;
}

double real_from_json(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

std::size_t size_from_json(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        bad(where, "expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

std::vector<double> reals_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected [re, im]");
    return {real_from_json(j[0], where + "[0]"), real_from_json(j[1], where + "[1]")};
}

json cvector_to_json(std::span<const cplx> v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(complex_to_json(z));
    return a;
}

CVector cvector_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of [re, im] pairs");
    CVector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"dim", m.dim()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    const std::size_t dim = size_from_json(field(j, "dim", where), where + ".dim");
    const json& rows = field(j, "entries", where);
    if (!rows.is_array() || rows.size() != dim) bad(where + ".entries", "expected " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::string rw = where + ".entries[" + std::to_string(i) + "]";
        const CVector row = cvector_from_json(rows[i], rw);
        if (row.size() != dim) bad(rw, "expected " + std::to_string(dim) + " entries");
        for (std::size_t k = 0; k < dim; ++k) m(i, k) = row[k];
    }
    return m;
}

json pure_state_to_json(const PureState& psi) {
    return {{"n", psi.n()}, {"amplitudes", cvector_to_json(psi.amplitudes())}};
}

PureState pure_state_from_json(const json& j, double tol) {
    const std::size_t n = size_from_json(field(j, "n", "state"), "state.n");
    return PureState(n, cvector_from_json(field(j, "amplitudes", "state"), "state.amplitudes"), tol);
}

json schmidt_to_json(const SchmidtDecomposition& sd) {
    return {{"n", sd.n}, {"lambdas", sd.lambdas}, {"basis_a", matrix_to_json(sd.basis_a)},
            {"basis_b", matrix_to_json(sd.basis_b)}};
}

json decomposition_to_json(const SeparableDecomposition& dec) {
    json terms = json::array();
    for (const auto& t : dec.terms) terms.push_back({{"w", t.weight}, {"a", cvector_to_json(t.a)}, {"b", cvector_to_json(t.b)}});
    return {{"n", dec.n}, {"target", matrix_to_json(dec.target)}, {"terms", std::move(terms)}};
}

SeparableDecomposition decomposition_from_json(const json& j) {
    SeparableDecomposition dec;
    dec.n = size_from_json(field(j, "n", "decomposition"), "decomposition.n");
    dec.target = matrix_from_json(field(j, "target", "decomposition"), "decomposition.target");
    const json& terms = field(j, "terms", "decomposition");
    if (!terms.is_array()) bad("decomposition.terms", "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string w = "decomposition.terms[" + std::to_string(i) + "]";
        dec.terms.push_back({real_from_json(field(terms[i], "w", w), w + ".w"),
                             cvector_from_json(field(terms[i], "a", w), w + ".a"),
                             cvector_from_json(field(terms[i], "b", w), w + ".b")});
    }
    return dec;
}

json verify_report_to_json(const VerifyReport& rep) {
    return {{"pass", rep.pass},
            {"max_residual", rep.max_residual},
            {"min_weight", rep.min_weight},
            {"weight_sum", rep.weight_sum},
            {"max_leakage", rep.max_leakage},
            {"max_norm_defect", rep.max_norm_defect},
            {"term_count", rep.term_count},
            {"violations", rep.violations}};
}

json simplex_to_json(const Simplex& s) {
    json rays = json::array();
    for (const auto& r : s.rays) rays.push_back(cvector_to_json(r));
    return {{"n", s.n}, {"basis_vectors", std::move(rays)}};
}

Simplex simplex_from_json(const json& j, double tol) {
    const std::size_t n = size_from_json(field(j, "n", "simplex"), "simplex.n");
    if (j.contains("basis_vectors")) {
        const json& arr = j["basis_vectors"];
        if (!arr.is_array()) bad("simplex.basis_vectors", "expected an array");
        std::vector<CVector> rays;
        for (std::size_t i = 0; i < arr.size(); ++i)
            rays.push_back(cvector_from_json(arr[i], "simplex.basis_vectors[" + std::to_string(i) + "]"));
        return simplex_from_rays(rays, n, tol);
    }
    if (j.contains("projectors")) {
        const json& arr = j["projectors"];
        if (!arr.is_array()) bad("simplex.projectors", "expected an array");
        std::vector<ComplexMatrix> ps;
        for (std::size_t i = 0; i < arr.size(); ++i)
            ps.push_back(matrix_from_json(arr[i], "simplex.projectors[" + std::to_string(i) + "]"));
        return simplex_from_projectors(ps, n, tol);
    }
    bad("simplex", "needs \"basis_vectors\" or \"projectors\"");
}

json approx_set_to_json(const ApproxSet& a) {
    return {{"n", a.n()},
            {"alphas", a.alphas},
            {"alpha_min", a.alpha_min()},
            {"vertices", a.vertices},
            {"simplex", simplex_to_json(a.simplex)}};
}

ApproxSet approx_set_from_json(const json& j, double tol) {
    Simplex s = simplex_from_json(field(j, "simplex", "approx_set"), tol);
    std::vector<double> alphas = reals_from_json(field(j, "alphas", "approx_set"), "approx_set.alphas");
    if (alphas.size() != s.n * s.n) bad("approx_set.alphas", "expected one alpha per simplex vertex");
    ApproxSet a = approx_set(s, alphas);
    // stored vertices are informational; they must agree with the alphas
    if (j.contains("vertices")) {
        const json& vs = j["vertices"];
        if (!vs.is_array() || vs.size() != a.vertices.size()) bad("approx_set.vertices", "wrong vertex count");
        for (std::size_t k = 0; k < vs.size(); ++k) {
            const auto v = reals_from_json(vs[k], "approx_set.vertices[" + std::to_string(k) + "]");
            if (v.size() != a.dim()) bad("approx_set.vertices", "wrong vertex length");
            for (std::size_t i = 0; i < v.size(); ++i)
                if (std::abs(v[i] - a.vertices[k][i]) > 1e-12)
                    bad("approx_set.vertices[" + std::to_string(k) + "]", "inconsistent with alphas");
        }
    }
    return a;
}

json hull_to_json(const HullMembership& h) {
    json j = {{"inside", h.inside}, {"phase_one_objective", h.phase_one_objective}, {"pivots", h.pivots}};
    if (h.inside) {
        j["certificate"] = {{"kind", "convex_weights"}, {"weights", h.weights}};
    } else {
        j["certificate"] = {{"kind", "separating_hyperplane"}, {"normal", h.normal}, {"offset", h.offset}};
    }
    return j;
}

json mc_to_json(const McResult& r) {
    return {{"samples", r.samples},   {"hits", r.hits},         {"fraction", r.fraction},
            {"stderr", r.stderr_},    {"overlaps", r.overlaps}, {"overlap_fraction", r.overlap_fraction},
            {"overlap_stderr", r.overlap_stderr}};
}

json volume_report_to_json(const VolumeReport& r) {
    json j = {{"n", r.n},
              {"alphas", r.alphas},
              {"alpha_min", r.alpha_min},
              {"triangulation_volume", r.triangulation.volume},
              {"central_volume", r.triangulation.central},
              {"pyramid_volumes", r.triangulation.pyramids},
              {"degenerate", r.triangulation.degenerate},
              {"paper_bound", r.paper_bound},
              {"simplex_volume", r.simplex_volume},
              {"triangulation_fraction", r.triangulation_fraction},
              {"paper_fraction", r.paper_fraction}};
    if (r.mc) {
        j["mc_fraction"] = mc_to_json(*r.mc);
        j["mc_seed"] = r.mc_seed;
    }
    if (r.mc_pieces) j["mc_pieces"] = mc_to_json(*r.mc_pieces);
    return j;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::malformed_input, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte offset -> line/column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::malformed_input, path.string() + ":" + std::to_string(line) + ":" +
                                                    std::to_string(col) + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::malformed_input, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace sepsimplex::io
