#include "lft/roots.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "lft/classify.hpp"
#include "lft/errors.hpp"

namespace lft {
namespace {

constexpr double kStableWindow = 1e-12;
constexpr double kEmbedFloor = 1e-10;

// (alpha^n - 1) / (alpha - 1) evaluated as expm1 ratios; n when alpha = 1.
double geometric_sum(double log_alpha, double n) {
  if (log_alpha == 0.0) return n;
  return std::expm1(n * log_alpha) / std::expm1(log_alpha);
}

Moebius halfplane_power(const HalfPlaneAffine& h, double t, const Tolerances& tol) {
  const double log_a = std::log(h.A);
  const double scale = h.A == 1.0 ? t : std::expm1(t * log_a) / std::expm1(log_a);
  return from_halfplane({std::exp(t * log_a), h.B * scale, h.tau}, tol);
}

struct Node {
  Complex log;
  int depth;
  int branch;
};

double one_minus_abs(Complex log) { return -std::expm1(log.real()); }

double abs_one_minus(Complex log) {
  // |1 - e^l| = |expm1(l)| computed without cancellation.
  const double er = std::expm1(log.real());
  const double c = std::cos(log.imag()), s = std::sin(log.imag());
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y / 2)
  const double sh = std::sin(0.5 * log.imag());
  const double re = er * c - 2.0 * sh * sh;
  const double im = std::exp(log.real()) * s;
  return std::hypot(re, im);
}

}  // namespace

Moebius root_nonelliptic(const Moebius& phi, int n, const Tolerances& tol) {
  if (n < 1) throw Error(ErrorKind::InvalidUnitRoot, "root order must be positive");
  const DiskMapClass cls = classify(phi, tol);
  if (!is_hyperbolic(cls.tag) && !is_parabolic(cls.tag)) {
    throw Error(ErrorKind::WrongClass, "root_nonelliptic needs a hyperbolic or parabolic map");
  }
  const HalfPlaneAffine h = cayley_conjugate(phi, tol);
  const double log_alpha = std::log(h.A) / n;
  const Complex b = h.B / geometric_sum(log_alpha, n);
  return from_halfplane({std::exp(log_alpha), b, h.tau}, tol);
}

EllipticNormalForm elliptic_normal_form(const Moebius& phi, const Tolerances& tol) {
  const DiskMapClass cls = classify(phi, tol);
  if (!is_elliptic(cls.tag)) throw Error(ErrorKind::WrongClass, "map is not elliptic");
  EllipticNormalForm nf;
  nf.p = cls.dw_point.value();
  nf.conjugator = disk_involution(nf.p);
  const Moebius g = normalize(compose(nf.conjugator, compose(phi, nf.conjugator)));
  nf.A = g.a() / g.d();
  nf.C = g.c() / g.d();
  return nf;
}

std::vector<Complex> nth_roots(Complex A, int n) {
  std::vector<Complex> out;
  const double r = std::pow(std::abs(A), 1.0 / n);
  const double theta = std::arg(A);
  for (int j = 0; j < n; ++j) {
    out.push_back(std::polar(r, (theta + 2.0 * std::numbers::pi * j) / n));
  }
  return out;
}

bool elliptic_root_admissible(const EllipticNormalForm& nf, Complex a, double slack) {
  return std::abs(nf.C * (1.0 - a)) <= (1.0 - std::abs(a)) * std::abs(1.0 - nf.A) + slack;
}

Moebius elliptic_root_from(const EllipticNormalForm& nf, Complex a) {
  const Complex c = nf.C == Complex{} ? Complex{} : nf.C * (1.0 - a) / (1.0 - nf.A);
  const Moebius g{a, 0.0, c, 1.0};
  return normalize(compose(nf.conjugator, compose(g, nf.conjugator)));
}

std::vector<Moebius> roots_elliptic(const Moebius& phi, int n, const Tolerances& tol) {
  if (n < 1) throw Error(ErrorKind::InvalidUnitRoot, "root order must be positive");
  const DiskMapClass cls = classify(phi, tol);
  if (cls.tag == MapTag::Identity) {
    throw Error(ErrorKind::WrongClass, "roots of the identity form a continuum; use identity_roots");
  }
  const EllipticNormalForm nf = elliptic_normal_form(phi, tol);
  std::vector<Moebius> out;
  for (const Complex a : nth_roots(nf.A, n)) {
    if (elliptic_root_admissible(nf, a, tol.root_slack)) out.push_back(elliptic_root_from(nf, a));
  }
  return out;
}

Moebius identity_roots(Complex p, Complex lambda, int n, const Tolerances& tol) {
  if (n < 2) throw Error(ErrorKind::InvalidUnitRoot, "n must be at least 2");
  if (std::abs(std::abs(lambda) - 1.0) > tol.rotation ||
      std::abs(std::pow(lambda, n) - 1.0) > tol.rotation) {
    throw Error(ErrorKind::InvalidUnitRoot, "lambda^n != 1");
  }
  if (std::abs(lambda - 1.0) <= tol.rotation) throw Error(ErrorKind::InvalidUnitRoot, "lambda = 1");
  if (!(std::abs(p) < 1.0)) throw Error(ErrorKind::OutsideDisk, "center must lie in the disk");
  const Moebius s = disk_involution(p);
  return normalize(compose(s, compose(Moebius::scaling(lambda), s)));
}

const char* to_string(EmbedStatus s) {
  switch (s) {
    case EmbedStatus::Embeddable: return "Embeddable";
    case EmbedStatus::NotEmbeddable: return "NotEmbeddable";
    case EmbedStatus::InconclusiveAtDepth: return "InconclusiveAtDepth";
  }
  return "?";
}

EmbedVerdict embeddable(const Moebius& phi, int max_depth, const Tolerances& tol,
                        std::uint64_t node_budget) {
  if (max_depth < 1) throw Error(ErrorKind::InconclusiveAtDepth, "max_depth must be positive");
  const DiskMapClass cls = classify(phi, tol);
  EmbedVerdict v;
  switch (cls.tag) {
    case MapTag::Identity:
      v.status = EmbedStatus::Embeddable;
      v.note = "identity: g_t = id for all t";
      return v;
    case MapTag::HyperbolicAut:
    case MapTag::HyperbolicNonAut:
    case MapTag::ParabolicAut:
    case MapTag::ParabolicNonAut:
      v.status = EmbedStatus::Embeddable;
      v.note = "boundary Denjoy-Wolff point: the semigroup is unique";
      return v;
    default:
      break;
  }

  const EllipticNormalForm nf = elliptic_normal_form(phi, tol);
  const double kappa = std::abs(nf.C) / std::abs(1.0 - nf.A);
  const Complex log0 = std::log(nf.A);

  // DFS over the binary tree of square roots; path holds the current branch.
  std::vector<Node> stack{{log0 / 2.0 + Complex{0.0, std::numbers::pi}, 1, 1}, {log0 / 2.0, 1, 0}};
  std::vector<Node> path{{log0, 0, -1}};
  std::vector<double> path_ratio{one_minus_abs(log0) / abs_one_minus(log0)};
  bool any_survivor_at_max = false;

  const auto build_witness = [&] {
    RootSequence w;
    w.kappa = kappa;
    for (const Node& n : path) {
      w.logs.push_back(n.log);
      w.entries.push_back(std::exp(n.log));
      const double om = one_minus_abs(n.log), am = abs_one_minus(n.log);
      w.margins.push_back(om - kappa * am);
      w.ratios.push_back(om / am);
      if (n.depth > 0) w.branches.push_back(n.branch);
    }
    return w;
  };

  while (!stack.empty()) {
    if (v.nodes >= node_budget) {
      v.status = EmbedStatus::InconclusiveAtDepth;
      v.note = "node budget exhausted";
      return v;
    }
    const Node node = stack.back();
    stack.pop_back();
    ++v.nodes;
    while (path.back().depth >= node.depth) {
      path.pop_back();
      path_ratio.pop_back();
    }
    v.depth = std::max(v.depth, node.depth);

    const double om = one_minus_abs(node.log), am = abs_one_minus(node.log);
    const double ratio = om / am;
    if (ratio > path_ratio.back() + 1e-12) ++v.monotonicity_violations;
    // Scale-free form of margin < -eps: the raw margin shrinks like 2^-depth.
    if (ratio - kappa < -tol.root_slack) continue;

    path.push_back(node);
    path_ratio.push_back(ratio);
    if (node.depth < max_depth) {
      stack.push_back({node.log / 2.0 + Complex{0.0, std::numbers::pi}, node.depth + 1, 1});
      stack.push_back({node.log / 2.0, node.depth + 1, 0});
      continue;
    }

    any_survivor_at_max = true;
    const double last = ratio - kappa;
    bool stable = true;
    for (std::size_t j = path.size() / 2; j < path.size(); ++j) {
      if (std::abs(path_ratio[j] - kappa - last) > kStableWindow) stable = false;
    }
    if (!stable) continue;
    v.status = EmbedStatus::Embeddable;
    v.witness = build_witness();
    if (cls.tag == MapTag::EllipticAut) {
      v.note = "elliptic automorphism";
    } else {
      v.boundary = last < kEmbedFloor;
      if (v.boundary) v.note = "surviving branch touches the Stolz boundary";
    }
    return v;
  }

  v.status = any_survivor_at_max ? EmbedStatus::InconclusiveAtDepth : EmbedStatus::NotEmbeddable;
  if (any_survivor_at_max) v.note = "branches survive but margins have not stabilized";
  return v;
}

double DyadicTime::value() const { return std::ldexp(static_cast<double>(m), -k); }

DyadicTime parse_dyadic(std::string_view text) {
  const auto bad = [&] { return Error(ErrorKind::ParseError, "bad dyadic time '" + std::string(text) + "'"); };
  const auto parse_uint = [&](std::string_view s) {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw bad();
    return x;
  };
  DyadicTime t;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    t.m = parse_uint(text);
    return t;
  }
  t.m = parse_uint(text.substr(0, slash));
  const std::string_view den = text.substr(slash + 1);
  if (den.starts_with("2^")) {
    const std::uint64_t k = parse_uint(den.substr(2));
    if (k > 62) throw bad();
    t.k = static_cast<int>(k);
    return t;
  }
  std::uint64_t d = parse_uint(den);
  if (d == 0 || (d & (d - 1)) != 0) throw bad();
  while (d > 1) {
    d >>= 1;
    ++t.k;
  }
  return t;
}

Moebius dyadic_element(const Moebius& phi, DyadicTime t, int max_depth, const Tolerances& tol) {
  if (t.m == 0) return Moebius::identity();
  const DiskMapClass cls = classify(phi, tol);
  const double s = t.value();
  if (cls.tag == MapTag::Identity) return Moebius::identity();
  if (is_hyperbolic(cls.tag) || is_parabolic(cls.tag)) {
    return halfplane_power(cayley_conjugate(phi, tol), s, tol);
  }

  const EllipticNormalForm nf = elliptic_normal_form(phi, tol);
  Complex generator = std::log(nf.A);
  if (cls.tag == MapTag::EllipticNonAut) {
    const EmbedVerdict v = embeddable(phi, max_depth, tol);
    if (v.status == EmbedStatus::NotEmbeddable) {
      throw Error(ErrorKind::NotEmbeddable, "no square-root branch stays in the Stolz region");
    }
    if (v.status == EmbedStatus::InconclusiveAtDepth) {
      throw Error(ErrorKind::InconclusiveAtDepth, v.note);
    }
    // 2^D log a_D differs from every earlier 2^k log a_k by 2 pi i times an
    // integer multiple of 2^k, so it generates the whole witness branch.
    const int depth = static_cast<int>(v.witness->logs.size()) - 1;
    generator = std::ldexp(1.0, depth) * v.witness->logs.back();
  }
  return elliptic_root_from(nf, std::exp(s * generator));
}

}  // namespace lft
