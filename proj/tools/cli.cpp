#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lft/classify.hpp"
#include "lft/corpus.hpp"
#include "lft/dynamics.hpp"
#include "lft/errors.hpp"
#include "lft/intertwine.hpp"
#include "lft/registry.hpp"
#include "lft/roots.hpp"
#include "lft/serialize.hpp"

#ifndef LFT_CORPUS_PATH
#define LFT_CORPUS_PATH "data/corpus.json"
#endif

namespace lft::cli {
namespace {

struct Options {
  std::string format = "table";
  double tol_class = Tolerances{}.classify;
  double tol_residual = Tolerances{}.residual;
  std::uint64_t seed = 1;
  int n = 0;
  int depth = 64;
  std::string time;
  std::string z0 = "[0, 0]";
  std::string path;
  std::vector<std::string> maps;

  Tolerances tolerances() const {
    Tolerances t;
    t.classify = tol_class;
    t.residual = tol_residual;
    return t;
  }
};

std::string read_argument(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1), std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + arg.substr(1));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Moebius parse_map(const std::string& arg, const std::string& role, const Tolerances& tol) {
  const std::string text = read_argument(arg);
  return moebius_from_json(parse_json_text(text, role), role, tol);
}

// An LFT in JSON, or the name of a registry evaluator.
struct AnyMap {
  std::optional<Moebius> lft;
  Evaluable eval;
  std::string name;
};

AnyMap parse_any_map(const std::string& arg, const std::string& role, const Tolerances& tol) {
  const std::string text = read_argument(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Moebius m = parse_map(arg, role, tol);
    return {m, [m](Complex z) { return m(z); }, ""};
  }
  const NamedMap& named = lookup_map(text);
  return {std::nullopt, named.eval, named.name};
}

Json tolerance_echo(const Tolerances& tol) {
  return Json{{"classify", tol.classify}, {"residual", tol.residual}};
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  const bool leaf_array = j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (j.is_array() && !leaf_array) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(const Json& result, const Options& opt, std::ostream& out) {
  if (opt.format == "json") {
    out << result.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(result, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [key, value] : rows) out << key << std::string(width - key.size() + 2, ' ') << value << "\n";
}

Json point_list(const std::vector<SpherePoint>& pts) {
  Json j = Json::array();
  for (const SpherePoint& p : pts) j.push_back(to_json(p));
  return j;
}

int cmd_classify(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const Moebius m = parse_map(opt.maps.at(0), "map", tol);
  const Json result{{"map", to_json(normalize(m))},
                    {"self_map", to_json(self_map_report(m, tol))},
                    {"class", to_json(classify(m, tol))},
                    {"tolerances", tolerance_echo(tol)}};
  emit(result, opt, out);
  return kOk;
}

int cmd_fixed_points(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const FixedPointSet fp = fixed_points(parse_map(opt.maps.at(0), "map", tol), tol);
  emit(Json{{"all_sphere", fp.all_sphere}, {"double_root", fp.double_root}, {"points", point_list(fp.points)}}, opt,
       out);
  return kOk;
}

int cmd_iterate(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const Moebius m = parse_map(opt.maps.at(0), "map", tol);
  emit(Json{{"n", opt.n}, {"iterate", to_json(normalize(iterate_n(m, opt.n)))}}, opt, out);
  return kOk;
}

void emit_svg(const Orbit& o, std::ostream& out) {
  const auto x = [](Complex z) { return format_double(200.0 + 180.0 * z.real()); };
  const auto y = [](Complex z) { return format_double(200.0 - 180.0 * z.imag()); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  out << "  <circle cx=\"200\" cy=\"200\" r=\"180\" fill=\"none\" stroke=\"black\"/>\n";
  out << "  <polyline fill=\"none\" stroke=\"steelblue\" points=\"" << x(o.start) << "," << y(o.start);
  for (Complex z : o.points) out << " " << x(z) << "," << y(z);
  out << "\"/>\n";
  for (Complex z : o.points) out << "  <circle cx=\"" << x(z) << "\" cy=\"" << y(z) << "\" r=\"2\" fill=\"crimson\"/>\n";
  out << "</svg>\n";
}

int cmd_orbit(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const Moebius m = parse_map(opt.maps.at(0), "map", tol);
  const Complex z0 = complex_from_json(parse_json_text(opt.z0, "--z0"), "--z0");
  const Orbit o = orbit(m, z0, opt.n > 0 ? opt.n : 32, tol);
  if (opt.format == "svg") {
    emit_svg(o, out);
  } else if (opt.format == "csv") {
    out << "k,re,im,step\n";
    for (std::size_t k = 0; k < o.points.size(); ++k) {
      out << k + 1 << "," << format_double(o.points[k].real()) << "," << format_double(o.points[k].imag()) << ","
          << format_double(o.steps[k]) << "\n";
    }
  } else {
    Json points = Json::array();
    for (Complex z : o.points) points.push_back(to_json(z));
    emit(Json{{"start", to_json(o.start)}, {"points", points}, {"steps", o.steps}, {"truncated", o.truncated}}, opt,
         out);
  }
  return kOk;
}

int cmd_intertwine_check(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const AnyMap f = parse_any_map(opt.maps.at(0), "f", tol);
  const Moebius phi = parse_map(opt.maps.at(1), "phi", tol);
  const Moebius psi = parse_map(opt.maps.at(2), "psi", tol);
  const double res = residual(f.eval, phi, psi);
  Json result{{"residual", res}, {"residual_holds", res < tol.residual}};
  bool holds = res < tol.residual;
  if (f.lft) {
    const ConditionReport rep = check_conditions(*f.lft, phi, psi, tol);
    result["conditions"] = to_json(rep);
    holds = rep.holds;
  } else {
    result["f"] = f.name;
  }
  result["tolerances"] = tolerance_echo(tol);
  emit(result, opt, out);
  return holds ? kOk : kNegative;
}

int cmd_intertwine_solve(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const Moebius phi = parse_map(opt.maps.at(0), "phi", tol);
  const Moebius psi = parse_map(opt.maps.at(1), "psi", tol);
  const SolutionFamily fam = solve_family(phi, psi, tol);
  Json result{{"kind", to_string(fam.kind)}, {"reason", fam.reason}};
  if (fam.kind == FamilyKind::TwoPointFamily || fam.kind == FamilyKind::ParabolicAffineFamily) {
    result["p"] = to_json(fam.p);
    result["q"] = to_json(fam.q);
    result["free_parameter"] = fam.free_parameter;
    if (fam.fixed_scalar) result["fixed_scalar"] = to_json(*fam.fixed_scalar);
    const int count = opt.n > 0 ? opt.n : 5;
    const auto params = fam.sample_parameters(opt.seed, count, 4000, tol);
    Json members = Json::array();
    for (Complex t : params) members.push_back(Json{{"parameter", to_json(t)}, {"map", to_json(normalize(fam.member(t)))}});
    result["members"] = members;
    result["seed"] = opt.seed;
  }
  emit(result, opt, out);
  return fam.kind == FamilyKind::Empty ? kNegative : kOk;
}

int cmd_roots(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const Moebius m = parse_map(opt.maps.at(0), "map", tol);
  const DiskMapClass cls = classify(m, tol);
  std::vector<Moebius> roots;
  if (is_elliptic(cls.tag)) {
    roots = roots_elliptic(m, opt.n, tol);
  } else if (cls.tag != MapTag::Identity) {
    roots.push_back(root_nonelliptic(m, opt.n, tol));
  } else {
    throw Error(ErrorKind::WrongClass, "the identity has a continuum of roots; see identity_roots");
  }
  Json list = Json::array();
  for (const Moebius& g : roots) list.push_back(to_json(normalize(g)));
  emit(Json{{"n", opt.n}, {"class", std::string(to_string(cls.tag))}, {"count", roots.size()}, {"roots", list}}, opt,
       out);
  return roots.empty() ? kNegative : kOk;
}

int cmd_embed(const Options& opt, std::ostream& out) {
  const Tolerances tol = opt.tolerances();
  const Moebius m = parse_map(opt.maps.at(0), "map", tol);
  const EmbedVerdict v = embeddable(m, opt.depth, tol);
  Json result{{"verdict", to_json(v)}};
  if (!opt.time.empty() && v.status == EmbedStatus::Embeddable) {
    const DyadicTime t = parse_dyadic(opt.time);
    result["time"] = opt.time;
    result["element"] = to_json(normalize(dyadic_element(m, t, opt.depth, tol)));
  }
  emit(result, opt, out);
  return v.status == EmbedStatus::Embeddable ? kOk : kNegative;
}

int cmd_corpus(const Options& opt, std::ostream& out) {
  std::string path = opt.path;
  if (path.empty()) {
    const char* env = std::getenv("LFT_CORPUS");
    path = env && *env ? env : LFT_CORPUS_PATH;
  }
  const Tolerances tol = opt.tolerances();
  const CorpusReport report = run_corpus(load_corpus(path, tol), tol);
  if (opt.format == "json") {
    out << report_json(report).dump(2) << "\n";
  } else {
    out << report_table(report);
  }
  return report.all_pass() ? kOk : kNegative;
}

std::vector<std::string> expand_aliases(std::vector<std::string> args) {
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "intertwine-check" || args[k] == "intertwine-solve") {
      const std::string action = args[k].substr(11);
      args[k] = "intertwine";
      args.insert(args.begin() + k + 1, action);
      break;
    }
  }
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Linear fractional self-maps of the unit disk", "lftool"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "csv", "svg"}));
  app.add_option("--tol-class", opt.tol_class, "Classification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-residual", opt.tol_residual, "Intertwining residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized sampling");

  const std::string map_help = "LFT as inline JSON {\"a\":[re,im],...} or @file";
  auto* classify_cmd = app.add_subcommand("classify", "Dynamic class and Denjoy-Wolff data");
  classify_cmd->add_option("map", opt.maps, map_help)->required()->expected(1);
  auto* fixed_cmd = app.add_subcommand("fixed-points", "Fixed points on the sphere");
  fixed_cmd->add_option("map", opt.maps, map_help)->required()->expected(1);
  auto* iterate_cmd = app.add_subcommand("iterate", "n-th iterate");
  iterate_cmd->add_option("map", opt.maps, map_help)->required()->expected(1);
  iterate_cmd->add_option("--n", opt.n, "Number of iterations")->required()->check(CLI::PositiveNumber);
  auto* orbit_cmd = app.add_subcommand("orbit", "Forward orbit with hyperbolic steps (csv/svg formats)");
  orbit_cmd->add_option("map", opt.maps, map_help)->required()->expected(1);
  orbit_cmd->add_option("--n", opt.n, "Orbit length (default 32)")->check(CLI::PositiveNumber);
  orbit_cmd->add_option("--z0", opt.z0, "Start point [re,im]");

  auto* inter_cmd = app.add_subcommand("intertwine", "f o phi = psi o f");
  inter_cmd->require_subcommand(1);
  inter_cmd->fallthrough();
  auto* check_cmd = inter_cmd->add_subcommand("check", "Check f against phi and psi; f may be a registry name");
  check_cmd->add_option("maps", opt.maps, "f phi psi")->required()->expected(3);
  auto* solve_cmd = inter_cmd->add_subcommand("solve", "All LFT solutions f for phi and psi");
  solve_cmd->add_option("maps", opt.maps, "phi psi")->required()->expected(2);
  solve_cmd->add_option("--n", opt.n, "Members to sample (default 5)")->check(CLI::PositiveNumber);

  auto* roots_cmd = app.add_subcommand("roots", "Iteration roots of order n");
  roots_cmd->add_option("map", opt.maps, map_help)->required()->expected(1);
  roots_cmd->add_option("--n", opt.n, "Root order")->required()->check(CLI::PositiveNumber);
  auto* embed_cmd = app.add_subcommand("embed", "Semigroup embedding verdict and dyadic elements");
  embed_cmd->add_option("map", opt.maps, map_help)->required()->expected(1);
  embed_cmd->add_option("--depth", opt.depth, "Square-root search depth")->check(CLI::PositiveNumber);
  embed_cmd->add_option("--time", opt.time, "Dyadic time m/2^k");
  auto* corpus_cmd = app.add_subcommand("corpus", "Replay the example corpus (LFT_CORPUS overrides the path)");
  corpus_cmd->add_option("--path", opt.path, "Corpus file");

  std::vector<std::string> args = expand_aliases(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
    if ((opt.format == "csv" || opt.format == "svg") && !orbit_cmd->parsed()) {
      throw CLI::ValidationError("--format", opt.format + " is only available for orbit");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kUsage;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(opt, out);
    if (fixed_cmd->parsed()) return cmd_fixed_points(opt, out);
    if (iterate_cmd->parsed()) return cmd_iterate(opt, out);
    if (orbit_cmd->parsed()) return cmd_orbit(opt, out);
    if (check_cmd->parsed()) return cmd_intertwine_check(opt, out);
    if (solve_cmd->parsed()) return cmd_intertwine_solve(opt, out);
    if (roots_cmd->parsed()) return cmd_roots(opt, out);
    if (embed_cmd->parsed()) return cmd_embed(opt, out);
    if (corpus_cmd->parsed()) return cmd_corpus(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const ErrorKind k = e.kind();
    return k == ErrorKind::ParseError || k == ErrorKind::UnknownMapName || k == ErrorKind::DegenerateMap ? kUsage
                                                                                                          : kNegative;
  }
  return kUsage;
}

}  // namespace lft::cli
