#include "lft/registry.hpp"

#include <cmath>
#include <numbers>

#include "lft/errors.hpp"

namespace lft {
namespace {

const Complex I{0.0, 1.0};

Complex one_minus(Complex z) {
  const Complex w = 1.0 - z;
  if (w == Complex{}) throw Error(ErrorKind::PoleAtPoint, "z = 1");
  return w;
}

Complex cayley_one(Complex z) { return (1.0 + z) / one_minus(z); }

}  // namespace

const std::vector<NamedMap>& map_registry() {
  static const std::vector<NamedMap> maps = [] {
    const double ln2 = std::numbers::ln2;
    const double pi = std::numbers::pi;
    std::vector<NamedMap> m;
    m.push_back({"square", "z^2", [](Complex z) { return z * z; }});
    m.push_back({"exp_half_cayley", "exp(-(1/2)(1+z)/(1-z))",
                 [](Complex z) { return std::exp(-0.5 * cayley_one(z)); }});
    m.push_back({"log_spiral", "(1/2) e^{-pi^2/log 2} exp((2 pi i/log 2) Log(1/(1-z)))",
                 [=](Complex z) {
                   const Complex l = std::log(1.0 / one_minus(z));
                   return 0.5 * std::exp(-pi * pi / ln2 + (2.0 * pi * I / ln2) * l);
                 }});
    m.push_back({"sqrt_cayley", "(sqrt(T)-1)/(sqrt(T)+1), T = (1+z)/(1-z)", [](Complex z) {
                   const Complex r = std::sqrt(cayley_one(z));
                   return (r - 1.0) / (r + 1.0);
                 }});
    m.push_back({"odd_cubic", "(z+z^3)/2", [](Complex z) { return 0.5 * (z + z * z * z); }});
    return m;
  }();
  return maps;
}

const NamedMap& lookup_map(std::string_view name) {
  for (const NamedMap& m : map_registry()) {
    if (m.name == name) return m;
  }
  throw Error(ErrorKind::UnknownMapName, "no evaluator named '" + std::string(name) + "'");
}

}  // namespace lft
