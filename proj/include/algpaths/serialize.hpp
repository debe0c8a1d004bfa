#pragma once

// JSON and CSV forms of the library types. Matrices are
// {"dim": m, "data": [[re, im], ...]} in row-major order; root systems are
// lists of [re, im] pairs. Doubles are written with round-trip precision.

#include <json.hpp>

#include <string>

#include "algpaths/components.hpp"
#include "algpaths/paths.hpp"

namespace algpaths {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

Json to_json(const RootSystem& roots);
RootSystem roots_from_json(const Json& j);

Json to_json(const ComponentSignature& sig);

/// {"roots", "matrix", "residual", "self_adjoint"}
Json to_json(const AlgebraicElement& el);
/// Re-certifies the matrix against the stored roots.
AlgebraicElement element_from_json(const Json& j, const ToleranceConfig& cfg = {});

Json to_json(const PartitionOfUnity& part, const PartitionResiduals& residuals);
Json to_json(const ToleranceConfig& cfg);
ToleranceConfig tolerance_from_json(const Json& j, ToleranceConfig base = {});

Json to_json(const Certificate& c);

/// Tagged by "kind": "exp_similarity", "polygonal" or "polynomial".
Json to_json(const Path& path);
Path path_from_json(const Json& j, const ToleranceConfig& cfg = {});
const RootSystem& path_roots(const Path& path);

Json to_json(const LineWitness& w);
Json to_json(const DistanceScanReport& r);
Json to_json(const MinDegreeResult& r);

inline constexpr const char* kDistanceCsvHeader = "sig1,sig2,roots,m,seed,budget,best_distance,bound";
std::string distance_csv_row(const DistanceScanReport& r, const RootSystem& roots);

/// "1,i,-1,2+3i,-0.5i" style root lists.
std::vector<Scalar> parse_roots(const std::string& text);
std::string format_roots(const RootSystem& roots);

}  // namespace algpaths
