#include "lft/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lft/errors.hpp"
#include "lft/intertwine.hpp"
#include "lft/registry.hpp"
#include "lft/roots.hpp"

namespace lft {
namespace {

enum class Field {
  LftMap,
  AnyMap,
  Tag,
  Point,
  Points,
  Cplx,
  Number,
  Integer,
  Boolean,
  Text,
  Family,
  Embed,
  Step,
};

struct FieldSpec {
  const char* name;
  Field type;
  bool required;
};

const std::map<std::string, std::vector<FieldSpec>>& check_schema() {
  static const std::map<std::string, std::vector<FieldSpec>> schema = {
      {"class", {{"map", Field::LftMap, true}, {"tag", Field::Tag, true}}},
      {"dw_point", {{"map", Field::LftMap, true}, {"value", Field::Point, true}}},
      {"multiplier", {{"map", Field::LftMap, true}, {"value", Field::Cplx, true}}},
      {"rotation_order", {{"map", Field::LftMap, true}, {"order", Field::Integer, true}}},
      {"fixed_points", {{"map", Field::LftMap, true}, {"points", Field::Points, true}}},
      {"residual",
       {{"f", Field::AnyMap, true},
        {"phi", Field::LftMap, true},
        {"psi", Field::LftMap, true},
        {"below", Field::Number, true}}},
      {"image_inside", {{"map", Field::AnyMap, true}, {"radius", Field::Number, true}}},
      {"conditions",
       {{"f", Field::LftMap, true},
        {"phi", Field::LftMap, true},
        {"psi", Field::LftMap, true},
        {"holds", Field::Boolean, true},
        {"reason", Field::Text, false}}},
      {"composition",
       {{"f", Field::LftMap, true},
        {"phi", Field::LftMap, true},
        {"psi", Field::LftMap, true},
        {"below", Field::Number, true}}},
      {"family",
       {{"phi", Field::LftMap, true},
        {"psi", Field::LftMap, true},
        {"kind", Field::Family, true},
        {"contains", Field::LftMap, false}}},
      {"roots",
       {{"map", Field::LftMap, true}, {"n", Field::Integer, true}, {"count", Field::Integer, true}}},
      {"embed",
       {{"map", Field::LftMap, true},
        {"status", Field::Embed, true},
        {"depth", Field::Integer, false},
        {"max_depth", Field::Integer, false}}},
      {"step", {{"map", Field::LftMap, true}, {"class", Field::Step, true}}},
  };
  return schema;
}

Error parse_error(const std::string& where, const std::string& what) {
  return Error(ErrorKind::ParseError, where + ": " + what);
}

void validate_field(const Json& v, const FieldSpec& spec, const std::string& where,
                    const std::map<std::string, const CorpusMap*>& maps) {
  const auto need_map = [&](bool lft) {
    if (!v.is_string()) throw parse_error(where, "expected a map name");
    const auto it = maps.find(v.get<std::string>());
    if (it == maps.end()) throw parse_error(where, "no map named '" + v.get<std::string>() + "'");
    if (lft && !it->second->lft) throw parse_error(where, "map '" + it->first + "' is not an LFT");
  };
  const auto need_name = [&](auto&& valid) {
    if (!v.is_string() || !valid(v.get<std::string>())) throw parse_error(where, "unknown value " + v.dump());
  };
  switch (spec.type) {
    case Field::LftMap: need_map(true); break;
    case Field::AnyMap: need_map(false); break;
    case Field::Tag:
      need_name([](const std::string& s) { return tag_from_string(s).has_value(); });
      break;
    case Field::Point: sphere_point_from_json(v, where); break;
    case Field::Points:
      if (!v.is_array() || v.empty() || v.size() > 2) throw parse_error(where, "expected one or two points");
      for (std::size_t k = 0; k < v.size(); ++k) sphere_point_from_json(v[k], where);
      break;
    case Field::Cplx: complex_from_json(v, where); break;
    case Field::Number:
      if (!v.is_number()) throw parse_error(where, "expected a number");
      break;
    case Field::Integer:
      if (!v.is_number_integer()) throw parse_error(where, "expected an integer");
      break;
    case Field::Boolean:
      if (!v.is_boolean()) throw parse_error(where, "expected true or false");
      break;
    case Field::Text:
      if (!v.is_string()) throw parse_error(where, "expected a string");
      break;
    case Field::Family:
      need_name([](const std::string& s) {
        return s == "Empty" || s == "TwoPointFamily" || s == "ParabolicAffineFamily" || s == "Degenerate";
      });
      break;
    case Field::Embed:
      need_name([](const std::string& s) {
        return s == "Embeddable" || s == "NotEmbeddable" || s == "InconclusiveAtDepth";
      });
      break;
    case Field::Step:
      need_name([](const std::string& s) { return s == "ZeroStep" || s == "PositiveStep"; });
      break;
  }
}

CorpusMap parse_map(const std::string& name, const Json& j, const std::string& where,
                    const Tolerances& tol) {
  CorpusMap m;
  m.name = name;
  if (j.is_string()) {
    const NamedMap& named = lookup_map(j.get<std::string>());
    m.registry_name = named.name;
    m.eval = named.eval;
    return m;
  }
  const Moebius lft = moebius_from_json(j, where, tol);
  m.lft = lft;
  m.eval = [lft](Complex z) { return lft(z); };
  return m;
}

ExampleRecord parse_record(const Json& j, const std::string& where, const Tolerances& tol) {
  if (!j.is_object()) throw parse_error(where, "expected a record object");
  for (const auto& [key, value] : j.items()) {
    if (key != "id" && key != "anchor" && key != "maps" && key != "checks" && key != "witness") {
      throw parse_error(where, "unknown key '" + key + "'");
    }
  }
  ExampleRecord r;
  if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
    throw parse_error(where + ".id", "expected a non-empty string");
  }
  r.id = j["id"].get<std::string>();
  const std::string at = where + "(" + r.id + ")";
  if (!j.contains("anchor") || !j["anchor"].is_string()) throw parse_error(at + ".anchor", "expected a string");
  r.anchor = j["anchor"].get<std::string>();
  if (!j.contains("maps") || !j["maps"].is_object()) throw parse_error(at + ".maps", "expected an object");
  for (const auto& [name, value] : j["maps"].items()) {
    r.maps.push_back(parse_map(name, value, at + ".maps." + name, tol));
  }
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    const auto tag = [&](std::size_t k) {
      const auto t = w[k].is_string() ? tag_from_string(w[k].get<std::string>()) : std::nullopt;
      if (!t) throw parse_error(at + ".witness", "unknown class " + w[k].dump());
      return *t;
    };
    if (!w.is_array() || w.size() != 2) throw parse_error(at + ".witness", "expected [phi class, psi class]");
    r.witness = std::make_pair(tag(0), tag(1));
  }
  std::map<std::string, const CorpusMap*> by_name;
  for (const CorpusMap& m : r.maps) by_name[m.name] = &m;

  if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty()) {
    throw parse_error(at + ".checks", "expected a non-empty array");
  }
  for (std::size_t k = 0; k < j["checks"].size(); ++k) {
    const Json& c = j["checks"][k];
    const std::string cw = at + ".checks[" + std::to_string(k) + "]";
    if (!c.is_object() || !c.contains("check") || !c["check"].is_string()) {
      throw parse_error(cw, "expected an object with a 'check' kind");
    }
    const std::string kind = c["check"].get<std::string>();
    const auto spec = check_schema().find(kind);
    if (spec == check_schema().end()) throw parse_error(cw, "unknown check kind '" + kind + "'");
    Json args = Json::object();
    for (const auto& [key, value] : c.items()) {
      if (key == "check") continue;
      const auto f = std::find_if(spec->second.begin(), spec->second.end(),
                                  [&](const FieldSpec& s) { return key == s.name; });
      if (f == spec->second.end()) throw parse_error(cw, "unknown field '" + key + "' for " + kind);
      validate_field(value, *f, cw + "." + key, by_name);
      args[key] = value;
    }
    for (const FieldSpec& s : spec->second) {
      if (s.required && !args.contains(s.name)) throw parse_error(cw, std::string("missing field '") + s.name + "'");
    }
    r.checks.push_back({kind, args});
  }
  return r;
}

std::string fmt(Complex z) { return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]"; }

std::string fmt(const SpherePoint& p) { return p.is_infinity() ? "inf" : fmt(p.value()); }

std::string fmt_points(const std::vector<SpherePoint>& pts) {
  std::string out = "{";
  for (std::size_t k = 0; k < pts.size(); ++k) out += (k ? ", " : "") + fmt(pts[k]);
  return out + "}";
}

// Evaluates one check; `cell` receives the (phi, psi) classes when the check
// confirms a solution of the intertwining equation.
CheckResult evaluate(const ExampleRecord& r, const CorpusCheck& c, const Tolerances& tol,
                     std::optional<std::pair<MapTag, MapTag>>& cell) {
  CheckResult out;
  out.kind = c.kind;
  const Json& a = c.args;
  const auto lft = [&](const char* key) { return *r.map(a[key].get<std::string>()).lft; };
  const auto eval = [&](const char* key) { return r.map(a[key].get<std::string>()).eval; };
  const auto pass_below = [&](double measured, double bound) {
    out.expected = "< " + format_double(bound);
    out.measured = format_double(measured);
    out.pass = measured < bound;
  };
  const auto note_cell = [&] {
    if (out.pass) cell = std::make_pair(classify(lft("phi"), tol).tag, classify(lft("psi"), tol).tag);
  };

  try {
    if (c.kind == "class") {
      out.expected = a["tag"].get<std::string>();
      out.measured = std::string(to_string(classify(lft("map"), tol).tag));
      out.pass = out.expected == out.measured;
    } else if (c.kind == "dw_point") {
      const SpherePoint want = sphere_point_from_json(a["value"], "value");
      const SpherePoint got = classify(lft("map"), tol).dw_point;
      out.expected = fmt(want);
      out.measured = fmt(got);
      out.pass = chordal_distance(want, got) < tol.fixed_point_match;
    } else if (c.kind == "multiplier") {
      const Complex want = complex_from_json(a["value"], "value");
      const Complex got = classify(lft("map"), tol).multiplier;
      out.expected = fmt(want);
      out.measured = fmt(got);
      out.pass = std::abs(want - got) < tol.multiplier_match;
    } else if (c.kind == "rotation_order") {
      const auto n = rotation_order(classify(lft("map"), tol).multiplier, 1024, tol);
      out.expected = std::to_string(a["order"].get<int>());
      out.measured = n ? std::to_string(*n) : "none";
      out.pass = out.expected == out.measured;
    } else if (c.kind == "fixed_points") {
      std::vector<SpherePoint> want;
      for (const Json& p : a["points"]) want.push_back(sphere_point_from_json(p, "points"));
      const FixedPointSet got = fixed_points(lft("map"), tol);
      out.expected = fmt_points(want);
      out.measured = got.all_sphere ? "all" : fmt_points(got.points);
      out.pass = !got.all_sphere && same_point_set(want, got.points, tol.fixed_point_match);
    } else if (c.kind == "residual") {
      pass_below(residual(eval("f"), lft("phi"), lft("psi")), a["below"].get<double>());
      note_cell();
    } else if (c.kind == "image_inside") {
      const Evaluable f = eval("map");
      double top = 0.0;
      for (Complex z : default_residual_grid()) top = std::max(top, std::abs(f(z)));
      pass_below(top, a["radius"].get<double>());
    } else if (c.kind == "conditions") {
      const ConditionReport rep = check_conditions(lft("f"), lft("phi"), lft("psi"), tol);
      const bool holds = a["holds"].get<bool>();
      out.expected = holds ? "holds" : "fails";
      if (a.contains("reason")) out.expected += ": " + a["reason"].get<std::string>();
      out.measured = rep.holds ? "holds" : "fails: " + rep.reason;
      out.pass = rep.holds == holds && rep.composition_holds == holds &&
                 (!a.contains("reason") || a["reason"].get<std::string>() == rep.reason);
      if (holds) note_cell();
    } else if (c.kind == "composition") {
      const Moebius f = lft("f");
      pass_below(proj_distance(compose(f, lft("phi")), compose(lft("psi"), f)), a["below"].get<double>());
      note_cell();
    } else if (c.kind == "family") {
      const SolutionFamily fam = solve_family(lft("phi"), lft("psi"), tol);
      out.expected = a["kind"].get<std::string>();
      out.measured = to_string(fam.kind);
      out.pass = out.expected == out.measured;
      if (a.contains("contains")) {
        const auto t = fam.kind == FamilyKind::Degenerate ? std::optional<Complex>(0.0)
                       : fam.kind == FamilyKind::Empty    ? std::nullopt
                                                          : fam.parameter_of(lft("contains"));
        out.expected += " containing " + a["contains"].get<std::string>();
        out.measured += t ? " containing " + a["contains"].get<std::string>() : " without it";
        out.pass = out.pass && t.has_value();
      }
    } else if (c.kind == "roots") {
      const auto roots = roots_elliptic(lft("map"), a["n"].get<int>(), tol);
      out.expected = std::to_string(a["count"].get<int>()) + " roots";
      out.measured = std::to_string(roots.size()) + " roots";
      out.pass = out.expected == out.measured;
    } else if (c.kind == "embed") {
      const int max_depth = a.contains("max_depth") ? a["max_depth"].get<int>() : 64;
      const EmbedVerdict v = embeddable(lft("map"), max_depth, tol);
      out.expected = a["status"].get<std::string>();
      out.measured = to_string(v.status);
      out.pass = out.expected == out.measured;
      if (a.contains("depth")) {
        out.expected += " at depth " + std::to_string(a["depth"].get<int>());
        out.measured += " at depth " + std::to_string(v.depth);
        out.pass = out.pass && v.depth == a["depth"].get<int>();
      }
    } else if (c.kind == "step") {
      out.expected = a["class"].get<std::string>();
      out.measured = to_string(step_class(lft("map"), 0.0, 256, 1e-6, tol));
      out.pass = out.expected == out.measured;
    }
  } catch (const std::exception& e) {
    out.measured = e.what();
    out.pass = false;
  }
  return out;
}

}  // namespace

const CorpusMap& ExampleRecord::map(const std::string& name) const {
  for (const CorpusMap& m : maps) {
    if (m.name == name) return m;
  }
  throw Error(ErrorKind::ParseError, "record " + id + " has no map '" + name + "'");
}

std::vector<ExampleRecord> parse_corpus(std::string_view text, std::string_view source,
                                        const Tolerances& tol) {
  if (std::all_of(text.begin(), text.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); })) {
    return {};
  }
  const Json root = parse_json_text(text, source);
  if (!root.is_array()) throw parse_error(std::string(source), "expected a JSON array of records");
  std::vector<ExampleRecord> out;
  std::set<std::string> ids;
  for (std::size_t k = 0; k < root.size(); ++k) {
    ExampleRecord r = parse_record(root[k], std::string(source) + ": records[" + std::to_string(k) + "]", tol);
    if (!ids.insert(r.id).second) throw parse_error(std::string(source), "duplicate id '" + r.id + "'");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExampleRecord> load_corpus(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open corpus file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path, tol);
}

CorpusReport run_corpus(const std::vector<ExampleRecord>& records, const Tolerances& tol) {
  CorpusReport report;
  report.tol = tol;
  for (const ExampleRecord& r : records) {
    RecordResult res;
    res.id = r.id;
    res.anchor = r.anchor;
    std::optional<std::pair<MapTag, MapTag>> cell;
    for (const CorpusCheck& c : r.checks) {
      res.checks.push_back(evaluate(r, c, tol, cell));
      res.pass = res.pass && res.checks.back().pass;
    }
    if (r.witness) {
      CheckResult w;
      w.kind = "witness";
      w.expected = std::string(to_string(r.witness->first)) + " -> " + std::string(to_string(r.witness->second));
      w.measured = cell ? std::string(to_string(cell->first)) + " -> " + std::string(to_string(cell->second))
                        : "no solution exhibited";
      w.pass = cell == r.witness;
      res.pass = res.pass && w.pass;
      res.checks.push_back(w);
      if (res.pass) res.witness_cell = cell;
    }
    (res.pass ? report.passed : report.failed) += 1;
    report.records.push_back(std::move(res));
  }
  return report;
}

Json report_json(const CorpusReport& report) {
  const Tolerances& t = report.tol;
  Json j;
  j["tolerances"] = Json{{"degeneracy", t.degeneracy},
                         {"classify", t.classify},
                         {"double_root", t.double_root},
                         {"boundary", t.boundary},
                         {"rotation", t.rotation},
                         {"fixed_point_match", t.fixed_point_match},
                         {"multiplier_match", t.multiplier_match},
                         {"residual", t.residual},
                         {"root_slack", t.root_slack},
                         {"identity", t.identity}};
  Json records = Json::array();
  for (const RecordResult& r : report.records) {
    Json checks = Json::array();
    for (const CheckResult& c : r.checks) {
      checks.push_back(Json{{"check", c.kind}, {"expected", c.expected}, {"measured", c.measured}, {"pass", c.pass}});
    }
    Json rec{{"id", r.id}, {"anchor", r.anchor}, {"pass", r.pass}, {"checks", checks}};
    if (r.witness_cell) {
      rec["witness_cell"] = Json::array({std::string(to_string(r.witness_cell->first)),
                                         std::string(to_string(r.witness_cell->second))});
    }
    records.push_back(rec);
  }
  j["records"] = records;
  j["passed"] = report.passed;
  j["failed"] = report.failed;
  return j;
}

std::string report_table(const CorpusReport& report) {
  std::size_t wid = 6, wkind = 5, wexp = 8;
  for (const RecordResult& r : report.records) {
    wid = std::max(wid, r.id.size());
    for (const CheckResult& c : r.checks) {
      wkind = std::max(wkind, c.kind.size());
      wexp = std::max(wexp, c.expected.size());
    }
  }
  const auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  std::string out = pad("record", wid) + "  " + pad("check", wkind) + "  " + pad("expected", wexp) +
                    "  result  measured\n";
  for (const RecordResult& r : report.records) {
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const CheckResult& c = r.checks[k];
      out += pad(k == 0 ? r.id : "", wid) + "  " + pad(c.kind, wkind) + "  " + pad(c.expected, wexp) + "  " +
             (c.pass ? "PASS  " : "FAIL  ") + "  " + c.measured + "\n";
    }
  }
  out += std::to_string(report.passed) + " passed, " + std::to_string(report.failed) + " failed\n";
  return out;
}

}  // namespace lft
