#include "lft/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "lft/errors.hpp"

namespace lft {
namespace {

Error parse_error(std::string_view where, std::string_view what) {
  return Error(ErrorKind::ParseError, std::string(where) + ": " + std::string(what));
}

double number_from_json(const Json& j, std::string_view where) {
  if (!j.is_number()) throw parse_error(where, "expected a number");
  return j.get<double>();
}

}  // namespace

// Adding 0.0 turns -0.0 into 0.0 so reports do not depend on signed zeros.
Json to_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

Json to_json(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  return to_json(p.value());
}

Json to_json(const Moebius& m) {
  return Json{{"a", to_json(m.a())}, {"b", to_json(m.b())}, {"c", to_json(m.c())},
              {"d", to_json(m.d())}};
}

Json to_json(const SelfMapReport& r) {
  return Json{{"is_self_map", r.is_self_map},
              {"margin_lemma", r.margin_lemma},
              {"margin_prop", r.margin_prop},
              {"is_automorphism", r.is_automorphism},
              {"boundary_case", r.boundary_case}};
}

Json to_json(const DiskMapClass& c) {
  Json j{{"tag", std::string(to_string(c.tag))},
         {"dw_point", to_json(c.dw_point)},
         {"multiplier", to_json(c.multiplier)}};
  if (c.parabolic_defect) j["parabolic_defect"] = *c.parabolic_defect;
  j["boundary_case"] = c.boundary_case;
  return j;
}

Json to_json(const ConditionReport& r) {
  return Json{{"holds", r.holds},
              {"reason", r.reason},
              {"phi_tag", std::string(to_string(r.phi_tag))},
              {"psi_tag", std::string(to_string(r.psi_tag))},
              {"composition_distance", r.composition_distance},
              {"composition_holds", r.composition_holds}};
}

Json to_json(const RootSequence& s) {
  Json entries = Json::array(), logs = Json::array();
  for (Complex a : s.entries) entries.push_back(to_json(a));
  for (Complex l : s.logs) logs.push_back(to_json(l));
  return Json{{"kappa", s.kappa}, {"entries", entries}, {"logs", logs},
              {"margins", s.margins}, {"ratios", s.ratios}, {"branches", s.branches}};
}

Json to_json(const EmbedVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"depth", v.depth},       {"boundary", v.boundary},
         {"note", v.note},                {"nodes", v.nodes},       {"monotonicity_violations", v.monotonicity_violations}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  return j;
}

Complex complex_from_json(const Json& j, std::string_view where) {
  if (!j.is_array() || j.size() != 2) throw parse_error(where, "expected [re, im]");
  return {number_from_json(j[0], where), number_from_json(j[1], where)};
}

SpherePoint sphere_point_from_json(const Json& j, std::string_view where) {
  if (j.is_string() && j.get<std::string>() == "inf") return SpherePoint::infinity();
  return SpherePoint::finite(complex_from_json(j, where));
}

Moebius moebius_from_json(const Json& j, std::string_view where, const Tolerances& tol) {
  if (!j.is_object()) throw parse_error(where, "expected an object with keys a, b, c, d");
  for (const auto& [key, value] : j.items()) {
    if (key != "a" && key != "b" && key != "c" && key != "d") {
      throw parse_error(where, "unknown key '" + key + "'");
    }
  }
  Complex coef[4];
  const char* keys[4] = {"a", "b", "c", "d"};
  for (int k = 0; k < 4; ++k) {
    if (!j.contains(keys[k])) throw parse_error(where, std::string("missing coefficient ") + keys[k]);
    coef[k] = complex_from_json(j.at(keys[k]), std::string(where) + "." + keys[k]);
  }
  return Moebius(coef[0], coef[1], coef[2], coef[3], tol.degeneracy);
}

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw parse_error(std::string(source) + ":" + std::to_string(line), e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace lft
