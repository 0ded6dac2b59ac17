#pragma once

// JSON and CSV encodings of spaces, points, configurations, bodies and results.
// Decoding errors are reported as InvalidInput naming the offending field.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "hadamard/barycenter.hpp"
#include "hadamard/horosphere.hpp"
#include "hadamard/lipschitz.hpp"
#include "hadamard/space.hpp"

namespace hadamard::io {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

/// {"space":"euclidean","dim":3}, {"space":"hyperbolic","dim":2} or
/// {"space":"tree","edges":[["A","B",2.0],...],"ideal_leaves":["C"],"basepoint":["A-B",0.0]}
Space space_from_json(const Json& j);
Json space_to_json(const Space& space);

/// {"coords":[...]} (a bare array is accepted too) or {"edge":"A-B","offset":0.5}.
Point point_from_json(const Space& space, const Json& j, const std::string& field = "point");
Json point_to_json(const Space& space, const Point& p);

/// {"points":[{"coords":[...],"mass":1.0}, {"edge":"A-B","offset":0.5,"mass":2.0}, ...]}
Configuration configuration_from_json(const Space& space, const Json& j);
Json configuration_to_json(const Space& space, const Configuration& X);

/// {"generators":[point, ...]}
ConvexBody body_from_json(const Space& space, const Json& j);
Json body_to_json(const Space& space, const ConvexBody& body);

/// {"direction":[...]} (euclidean, or hyperbolic spatial direction),
/// {"null_vector":[...]} (hyperbolic), {"end_leaf":"C"} (tree).
IdealPoint ideal_from_json(const Space& space, const Json& j);
Json ideal_to_json(const Space& space, const IdealPoint& xi);

Json to_json(const Space& space, const BarycenterResult& r);
BarycenterResult barycenter_result_from_json(const Space& space, const Json& j);

Json to_json(const ShrinkClass& c);
ShrinkClass shrink_class_from_json(const Json& j);

Json to_json(const LipschitzReport& r);
LipschitzReport report_from_json(const Json& j);

/// `iter,diameter` with one row per trace entry.
std::string trace_csv(const BarycenterResult& r);
/// `sample,in_disp,out_disp,ratio` with one row per record.
std::string report_csv(const LipschitzReport& r);

/// Shortest round-trip text for a double.
std::string format_number(double v);

}  // namespace hadamard::io
