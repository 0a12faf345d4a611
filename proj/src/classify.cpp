#include "lft/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lft/errors.hpp"

namespace lft {
namespace {

double defect_at(const Moebius& m, Complex p) {
  const Jet j = jet_at(m, p);
  return (p * j.d2).real();
}

bool defect_is_zero(const Moebius& m, Complex p, const Tolerances& tol) {
  const Jet j = jet_at(m, p);
  return (p * j.d2).real() <= tol.classify * std::max(1.0, std::abs(j.d2));
}

}  // namespace

SelfMapReport self_map_report(const Moebius& m, const Tolerances& tol) {
  const Moebius n = normalize(m);
  const Complex a = n.a(), b = n.b(), c = n.c(), d = n.d();
  const double radial = std::norm(c) + std::norm(d) - std::norm(a) - std::norm(b);
  const double cross = std::abs(a * std::conj(b) - c * std::conj(d));
  const double scale = n.norm_squared();

  SelfMapReport r;
  r.margin_lemma = radial - 2.0 * cross;
  r.margin_prop = (std::norm(d) - std::norm(c)) - std::abs(b * std::conj(d) - a * std::conj(c)) -
                  std::abs(a * d - b * c);
  const double eps = tol.classify * scale;
  r.is_self_map = r.margin_lemma >= -eps && std::abs(d) > std::abs(c);
  r.is_automorphism = r.is_self_map && std::abs(radial) <= eps && cross <= eps;
  r.boundary_case = std::abs(r.margin_lemma) <= eps;
  return r;
}

std::string_view to_string(MapTag tag) {
  switch (tag) {
    case MapTag::Identity: return "Identity";
    case MapTag::EllipticAut: return "EllipticAut";
    case MapTag::EllipticNonAut: return "EllipticNonAut";
    case MapTag::HyperbolicAut: return "HyperbolicAut";
    case MapTag::HyperbolicNonAut: return "HyperbolicNonAut";
    case MapTag::ParabolicAut: return "ParabolicAut";
    case MapTag::ParabolicNonAut: return "ParabolicNonAut";
  }
  return "?";
}

std::optional<MapTag> tag_from_string(std::string_view name) {
  for (MapTag t : kAllTags) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

DiskMapClass classify(const Moebius& m, const Tolerances& tol) {
  DiskMapClass out;
  if (proj_distance(m, Moebius::identity()) <= tol.identity) return out;

  const SelfMapReport rep = self_map_report(m, tol);
  if (!rep.is_self_map) {
    throw Error(ErrorKind::NotSelfMap, "margin " + std::to_string(rep.margin_lemma));
  }
  out.boundary_case = rep.boundary_case && !rep.is_automorphism;

  const Moebius n = normalize(m);
  const FixedPointSet fp = fixed_points(n, tol);

  for (const SpherePoint& p : fp.points) {
    const double r = p.modulus();
    if (r < 1.0 - tol.classify) {
      out.tag = rep.is_automorphism ? MapTag::EllipticAut : MapTag::EllipticNonAut;
      out.dw_point = p;
      out.multiplier = jet_at(n, p.value()).d1;
      if (r > 1.0 - tol.boundary) out.boundary_case = true;
      return out;
    }
  }

  bool found = false;
  for (const SpherePoint& p : fp.points) {
    const double r = p.modulus();
    if (!std::isfinite(r) || std::abs(r - 1.0) > tol.boundary) continue;
    const Complex z = p.value() / r;
    const Complex mult = jet_at(n, z).d1;
    if (!found || std::abs(mult) < std::abs(out.multiplier)) {
      out.dw_point = SpherePoint::finite(z);
      out.multiplier = mult;
      found = true;
    }
    if (std::abs(r - 1.0) > tol.classify) out.boundary_case = true;
  }
  if (!found) {
    throw Error(ErrorKind::EvaluationFailure, "no Denjoy-Wolff candidate on the circle");
  }

  const Complex p = out.dw_point.value();
  if (fp.double_root) {
    out.parabolic_defect = defect_at(n, p);
    const bool aut = defect_is_zero(n, p, tol);
    out.tag = aut ? MapTag::ParabolicAut : MapTag::ParabolicNonAut;
    if (aut != rep.is_automorphism) out.boundary_case = true;
    out.multiplier = 1.0;
  } else {
    out.tag = rep.is_automorphism ? MapTag::HyperbolicAut : MapTag::HyperbolicNonAut;
    if (std::abs(1.0 - std::abs(out.multiplier)) <= tol.boundary) out.boundary_case = true;
  }
  return out;
}

Moebius cayley(Complex tau) { return {1.0, tau, -1.0, tau}; }

Moebius cayley_inverse(Complex tau) { return {tau, -tau, 1.0, 1.0}; }

HalfPlaneAffine cayley_conjugate(const Moebius& m, const Tolerances& tol) {
  const DiskMapClass cls = classify(m, tol);
  if (!is_hyperbolic(cls.tag) && !is_parabolic(cls.tag)) {
    throw Error(ErrorKind::WrongClass, "half-plane form needs a boundary Denjoy-Wolff point");
  }
  const Complex tau = cls.dw_point.value();
  const Moebius conj = normalize(compose(cayley(tau), compose(m, cayley_inverse(tau))));
  const double scale = std::sqrt(conj.norm_squared());
  if (std::abs(conj.c()) > 1e-6 * scale) {
    throw Error(ErrorKind::EvaluationFailure, "conjugate is not affine");
  }
  HalfPlaneAffine h;
  h.A = (conj.a() / conj.d()).real();
  h.B = conj.b() / conj.d();
  h.tau = tau;
  return h;
}

Moebius from_halfplane(const HalfPlaneAffine& h, const Tolerances& tol) {
  if (!(h.A >= 1.0 - tol.classify)) throw Error(ErrorKind::InvalidAffine, "A < 1");
  if (!(h.B.real() >= -tol.classify)) throw Error(ErrorKind::InvalidAffine, "Re B < 0");
  if (std::abs(std::abs(h.tau) - 1.0) > tol.classify) {
    throw Error(ErrorKind::InvalidAffine, "|tau| != 1");
  }
  const Moebius affine{h.A, h.B, 0.0, 1.0};
  return normalize(compose(cayley_inverse(h.tau), compose(affine, cayley(h.tau))));
}

std::optional<int> rotation_order(Complex lambda, int max_n, const Tolerances& tol) {
  if (std::abs(std::abs(lambda) - 1.0) > tol.rotation) return std::nullopt;
  const double theta = std::arg(lambda);
  for (int n = 1; n <= max_n; ++n) {
    if (std::abs(std::polar(1.0, n * theta) - 1.0) < tol.rotation) return n;
  }
  return std::nullopt;
}

double parabolic_defect(const Moebius& m, const Tolerances& tol) {
  const DiskMapClass cls = classify(m, tol);
  if (!is_parabolic(cls.tag)) throw Error(ErrorKind::WrongClass, "map is not parabolic");
  return *cls.parabolic_defect;
}

}  // namespace lft
