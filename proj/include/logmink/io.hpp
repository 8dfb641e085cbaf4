#pragma once

#include <string>

#include <json.hpp>

#include "logmink/coxeter.hpp"
#include "logmink/geometry.hpp"
#include "logmink/measures.hpp"
#include "logmink/solver.hpp"
#include "logmink/spherical_measure.hpp"

namespace logmink::io {

using nlohmann::json;

/// Reads and parses a JSON file. ParseError messages carry the path and the
/// line/column of a syntax error.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"dim", "normals", "supports"} or {"vertices"} (dim inferred or checked).
HPolytope polytope_from_json(const json& j);
json to_json(const HPolytope& p);

/// {"dim", "atoms": [{"u": [...], "w": w}, ...]}.
DiscreteSphericalMeasure measure_from_json(const json& j);
json to_json(const DiscreteSphericalMeasure& mu);

/// {"dim", "generator_normals": [[...], ...]}.
ReflectionGroup group_from_json(const json& j, std::size_t order_cap = kDefaultOrderCap);
json group_to_json(const ReflectionGroup& g);

json to_json(const SCCReport& r);
json to_json(const SolveReport& r);
json to_json(const VerificationRecord& r);
json to_json(const StabilityConstants& k);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

}  // namespace logmink::io
