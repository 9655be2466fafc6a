#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "lfa/continuation.hpp"
#include "lfa/parameters.hpp"

namespace lfa {

using json = nlohmann::ordered_json;

/// Complex scalars travel as [re, im]; a bare number is accepted on input.
cplx complex_from_json(const json& j);
json complex_to_json(const cplx& z);

/// {"a": [re,im], "b": [[re,im],...], "c": [[re,im],...]}
ParameterSet params_from_json(const json& j);
json params_to_json(const ParameterSet& p);

/// Point in C^m as an array of complex scalars; a bare number means m = 1.
Eigen::VectorXcd point_from_json(const json& j);
json point_to_json(const Eigen::VectorXcd& x);

/// {"rows": n, "cols": n, "data": [[re,im], ...]} row-major in basis order.
json matrix_to_json(const Eigen::MatrixXcd& mat);
Eigen::MatrixXcd matrix_from_json(const json& j);

/// {"segments": [...], "samples": n?, "start": point?}
/// Line segments carry "from"/"to" ("from" may be omitted when chained).
/// Arc segments carry "center" [re,im], 1-based "coordinate", "turns", and an
/// optional "radius" which is validated against the chained start point.
Path path_from_json(const json& j);
json path_to_json(const Path& path);

json load_json_file(const std::string& path);

}  // namespace lfa
