#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "sjl/geometry.hpp"
#include "sjl/operators.hpp"
#include "sjl/reduction.hpp"
#include "sjl/spectral.hpp"

namespace sjl {

using json = nlohmann::ordered_json;

json to_json(const Mat& a);
json to_json(const CMat& a);
json to_json(const IMat& a);
json to_json(cplx z);
Mat real_matrix(const json& j, const std::string& what);
CMat complex_matrix(const json& j, const std::string& what);
IMat int_matrix(const json& j, const std::string& what);
cplx complex_scalar(const json& j, const std::string& what);

using AnyPoint = std::variant<SiegelPoint, JacobiPoint, DiskPoint, DiskJacobiPoint>;

// {"chart":"H"|"HJ"|"D"|"DJ", "n":…, "m":…, "X","Y","U","V" | "W","eta"}.
// Invariant violations surface as InputError naming the invariant.
AnyPoint parse_point(const json& j);
json emit_point(const AnyPoint& p);
Chart point_chart(const AnyPoint& p);
Vec point_to_chart(const AnyPoint& p);

// {"type":"symplectic","M":…} | {"type":"jacobi",…} | {"type":"disk","P","Q","xi","kappa"}
GroupElement parse_element(const json& j);
json emit_element(const GroupElement& g);

// Polynomial-exponential field: {"dim":d,"terms":[{"coef":c,"factors":[{"coord":k,"pow":p,"exp":a}]}]}
// or a catalog entry {"catalog":"bessel","s":…,"a":…}. Scalars may be numbers or [re,im].
ScalarField parse_field(const json& j);

json emit_reduction(const SiegelResult& r);
json emit_reduction(const JacobiReduceResult& r);
json emit_gram(const MetricId& id, const Vec& x, const GramResult& g);

json read_json_file(const std::string& path);
// A path to a JSON file, or inline JSON text when the argument starts with '{'.
json read_json_arg(const std::string& arg);

}  // namespace sjl
