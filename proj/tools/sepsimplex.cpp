// Command-line front end: reads states, simplices and certificates as JSON,
// writes one JSON report per run.
//
// Exit codes: 0 success / inside / pass, 1 outside / fail, 2 input error,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sepsimplex/io.hpp"

#ifndef SEPSIMPLEX_VERSION
#define SEPSIMPLEX_VERSION "0.0.0"
#endif

using namespace sepsimplex;
using io::json;

namespace {

enum Exit { ok = 0, negative = 1, input_error = 2, internal_error = 3 };

struct RunConfig {
    std::string command;
    std::string input;
    std::string simplex;
    std::string output;
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;  // 0: no Monte Carlo
    std::string alpha = "auto";
    std::string mode = "float";
    std::size_t n = 0;
    std::string basis = "bell";
    std::vector<double> beta;
    unsigned threads = 1;
    bool timestamp = true;
};

json config_to_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"tol", c.tol}, {"seed", c.seed}, {"alpha", c.alpha}, {"mode", c.mode}};
    if (!c.input.empty()) j["input"] = c.input;
    if (!c.simplex.empty()) j["simplex"] = c.simplex;
    if (!c.output.empty()) j["output"] = c.output;
    if (c.samples) j["samples"] = c.samples;
    if (c.n) j["n"] = c.n;
    if (c.command == "build-set" || c.command == "member" || c.command == "volume") j["basis"] = c.basis;
    if (!c.beta.empty()) j["beta"] = c.beta;
    if (c.threads != 1) j["threads"] = c.threads;
    return j;
}

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorKind::malformed_input, what); }

const std::string& need_input(const RunConfig& c) {
    if (c.input.empty()) usage(c.command + " needs --input");
    return c.input;
}

// Reports wrap their artifact in "result"; accept either form.
json unwrap(json j, const char* key = nullptr) {
    if (j.is_object() && j.contains("result") && j.contains("tool")) j = j["result"];
    if (key && j.is_object() && j.contains(key)) j = j[key];
    return j;
}

PureState load_state(const RunConfig& c) { return io::pure_state_from_json(unwrap(io::read_json_file(need_input(c))), c.tol); }

std::optional<std::vector<double>> parse_alpha(const RunConfig& c, std::size_t count) {
    if (c.alpha == "auto") return std::nullopt;
    double a = 0.0;
    try {
        std::size_t used = 0;
        a = std::stod(c.alpha, &used);
        if (used != c.alpha.size()) throw std::invalid_argument(c.alpha);
    } catch (const std::exception&) {
        usage("--alpha must be a number or \"auto\", got \"" + c.alpha + "\"");
    }
    return std::vector<double>(count, a);
}

Simplex load_simplex(const RunConfig& c) {
    if (!c.simplex.empty()) return io::simplex_from_json(unwrap(io::read_json_file(c.simplex), "simplex"), c.tol);
    if (c.n == 0) usage(c.command + " needs --simplex or --n");
    if (c.basis == "bell") return bell_simplex(c.n);
    if (c.basis == "computational") return computational_simplex(c.n);
    usage("--basis must be bell or computational");
}

// Approximation set from --input (stored set), or from a simplex and --alpha.
ApproxSet load_set(const RunConfig& c) {
    if (!c.input.empty()) return io::approx_set_from_json(unwrap(io::read_json_file(c.input)), c.tol);
    const Simplex s = load_simplex(c);
    return approx_set(s, parse_alpha(c, s.vertex_count()));
}

struct Outcome {
    json result;
    int code = ok;
};

Outcome cmd_schmidt(const RunConfig& c) { return {io::schmidt_to_json(schmidt_decompose(load_state(c), c.tol))}; }

Outcome cmd_threshold(const RunConfig& c) {
    const PureState psi = load_state(c);
    const auto sd = schmidt_decompose(psi, c.tol);
    const auto t = ppt_threshold(sd);
    const auto scan = ppt_boundary_scan(psi, c.tol);
    return {{{"lambdas", sd.lambdas},
             {"max_product", t.max_product},
             {"alpha_M", t.alpha},
             {"bisection", {{"alpha_star", scan.alpha_star}, {"fully_ppt", scan.fully_ppt}}},
             {"discrepancy", std::abs(scan.alpha_star - t.alpha)}}};
}

Outcome cmd_decompose(const RunConfig& c, bool complement) {
    const auto sd = schmidt_decompose(load_state(c), c.tol);
    const auto dec = to_original_basis(complement ? complement_decomposition(sd) : threshold_decomposition(sd), sd);
    const auto rep = verify_decomposition(dec);
    json r = {{"decomposition", io::decomposition_to_json(dec)}, {"verify", io::verify_report_to_json(rep)}};
    if (!complement) r["alpha_M"] = ppt_threshold(sd).alpha;
    return {r, rep.pass ? ok : negative};
}

Outcome cmd_twirl_check(const RunConfig& c) {
    const auto sd = schmidt_decompose(load_state(c), c.tol);
    const auto sched = sidon_exponents(sd.n);
    ComplexMatrix seed = product_seed_projector(sd);
    seed = seed * cplx(1.0 / seed.trace().real());
    const double err = max_abs_diff(twirl_average(seed, sched), rho_p_closed_form(sd, c.tol).matrix());
    return {{{"exponents", sched.exponents}, {"modulus", sched.modulus}, {"max_abs_error", err}}};
}

Outcome cmd_build_set(const RunConfig& c) {
    const Simplex s = load_simplex(c);
    return {io::approx_set_to_json(approx_set(s, parse_alpha(c, s.vertex_count())))};
}

Outcome cmd_member(const RunConfig& c) {
    if (c.beta.empty()) usage("member needs --beta");
    const ApproxSet a = load_set(c);
    LpMode mode;
    if (c.mode == "float") {
        mode = LpMode::floating;
    } else if (c.mode == "exact") {
        mode = LpMode::exact_rational;
    } else {
        usage("--mode must be float or exact");
    }
    const auto h = hull_membership(c.beta, a, mode, c.tol);
    json r = io::hull_to_json(h);
    r["alpha_min"] = a.alpha_min();
    return {r, h.inside ? ok : negative};
}

Outcome cmd_volume(const RunConfig& c) {
    const ApproxSet a = load_set(c);
    std::optional<std::uint64_t> samples;
    if (c.samples) samples = c.samples;
    return {io::volume_report_to_json(volume_report(a, samples, c.seed, c.threads))};
}

Outcome cmd_verify(const RunConfig& c) {
    const auto dec = io::decomposition_from_json(unwrap(io::read_json_file(need_input(c)), "decomposition"));
    const auto rep = verify_decomposition(dec);
    return {io::verify_report_to_json(rep), rep.pass ? ok : negative};
}

Outcome dispatch(const RunConfig& c) {
    if (c.command == "schmidt") return cmd_schmidt(c);
    if (c.command == "threshold") return cmd_threshold(c);
    if (c.command == "decompose-threshold") return cmd_decompose(c, false);
    if (c.command == "decompose-complement") return cmd_decompose(c, true);
    if (c.command == "twirl-check") return cmd_twirl_check(c);
    if (c.command == "build-set") return cmd_build_set(c);
    if (c.command == "member") return cmd_member(c);
    if (c.command == "volume") return cmd_volume(c);
    if (c.command == "verify") return cmd_verify(c);
    usage("unknown command " + c.command);
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const RunConfig& c, const json& report) {
    if (c.output.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        io::write_json_file(c.output, report);
    }
}

int run(const RunConfig& c) {
    json report = {{"tool", "sepsimplex"}, {"version", SEPSIMPLEX_VERSION}, {"config", config_to_json(c)}};
    if (c.timestamp) report["timestamp"] = utc_now();
    try {
        if (!(c.tol > 0.0)) usage("--tol must be positive");
        Outcome out = dispatch(c);
        report["result"] = std::move(out.result);
        report["exit_code"] = out.code;
        emit(c, report);
        return out.code;
    } catch (const Error& e) {
        const int code = e.is_internal() ? internal_error : input_error;
        std::cerr << "sepsimplex " << c.command << ": " << e.what() << '\n';
        report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}, {"magnitude", e.magnitude()}};
        report["exit_code"] = code;
        try {
            emit(c, report);
        } catch (const Error&) {
        }
        return code;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separable approximations inside a commutative simplex of bipartite states"};
    app.set_version_flag("--version", SEPSIMPLEX_VERSION);
    app.require_subcommand(1);

    RunConfig cfg;
    struct Cmd {
        const char* name;
        const char* help;
    };
    const Cmd cmds[] = {
        {"schmidt", "Schmidt decomposition of a pure state"},
        {"threshold", "PPT threshold alpha_M of the pencil, with bisection cross-check"},
        {"decompose-threshold", "explicit separable decomposition at alpha_M"},
        {"decompose-complement", "explicit separable decomposition of (I - P)/(n^2 - 1)"},
        {"twirl-check", "max |twirl - closed form| for the product seed"},
        {"build-set", "approximation set for a simplex and alpha"},
        {"member", "hull membership of a barycentric point"},
        {"volume", "volume of the approximation set"},
        {"verify", "re-check a decomposition file"},
    };
    for (const auto& cmd : cmds) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--input", cfg.input, "input JSON (state, approximation set or decomposition)");
        sub->add_option("--simplex", cfg.simplex, "simplex JSON");
        sub->add_option("--output", cfg.output, "report path (default stdout)");
        sub->add_option("--tol", cfg.tol, "validation tolerance")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
        sub->add_option("--alpha", cfg.alpha, "mixing weight, or auto")->capture_default_str();
        sub->add_option("--mode", cfg.mode, "LP arithmetic: float or exact")->capture_default_str();
        sub->add_option("--n", cfg.n, "local dimension for built-in simplices")->check(CLI::PositiveNumber);
        sub->add_option("--basis", cfg.basis, "built-in simplex: bell or computational")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "barycentric point")->delimiter(',');
        sub->add_option("--threads", cfg.threads, "Monte Carlo threads")->check(CLI::PositiveNumber);
        sub->add_flag("!--no-timestamp", cfg.timestamp, "omit the timestamp field");
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }
    return run(cfg);
}
