#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "lft/classify.hpp"
#include "lft/intertwine.hpp"
#include "lft/moebius.hpp"
#include "lft/roots.hpp"

namespace lft {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im] pairs. Moebius maps are objects with keys a,
// b, c, d. Sphere points are [re, im] or the string "inf".

Json to_json(Complex z);
Json to_json(const SpherePoint& p);
Json to_json(const Moebius& m);
Json to_json(const SelfMapReport& r);
Json to_json(const DiskMapClass& c);
Json to_json(const ConditionReport& r);
Json to_json(const RootSequence& s);
Json to_json(const EmbedVerdict& v);

/// `where` names the field in ParseError messages.
Complex complex_from_json(const Json& j, std::string_view where);
SpherePoint sphere_point_from_json(const Json& j, std::string_view where);
Moebius moebius_from_json(const Json& j, std::string_view where, const Tolerances& tol = {});

/// Parses text, turning syntax errors into ParseError with a line number.
Json parse_json_text(std::string_view text, std::string_view source);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace lft
