#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sepsimplex/constructions.hpp"
#include "sepsimplex/geometry.hpp"
#include "sepsimplex/volume.hpp"

namespace sepsimplex::io {

using nlohmann::json;

// Reals are written as the shortest decimal that parses back to the same
// double (at most 17 significant digits), so every file round-trips bit-exactly.

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& where);

json cvector_to_json(std::span<const cplx> v);
CVector cvector_from_json(const json& j, const std::string& where);

// {"dim": d, "entries": [[[re, im] x d] x d]}
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& where = "matrix");

// {"n": n, "amplitudes": [[re, im] x n^2]}
json pure_state_to_json(const PureState& psi);
PureState pure_state_from_json(const json& j, double tol = kDefaultTol);

json schmidt_to_json(const SchmidtDecomposition& sd);

// {"n": n, "target": matrix, "terms": [{"w": real, "a": [...], "b": [...]}]}
json decomposition_to_json(const SeparableDecomposition& dec);
SeparableDecomposition decomposition_from_json(const json& j);

json verify_report_to_json(const VerifyReport& rep);

// {"n": n, "basis_vectors": [[[re,im] x n^2] x n^2]} or {"n": n, "projectors": [matrix x n^2]}
json simplex_to_json(const Simplex& s);
Simplex simplex_from_json(const json& j, double tol = kDefaultTol);

// {"n", "alphas", "alpha_min", "vertices", "simplex"}
json approx_set_to_json(const ApproxSet& a);
ApproxSet approx_set_from_json(const json& j, double tol = kDefaultTol);

json hull_to_json(const HullMembership& h);
json mc_to_json(const McResult& r);
json volume_report_to_json(const VolumeReport& r);

// Parses a file; malformed JSON throws malformed_input with line/column.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace sepsimplex::io
