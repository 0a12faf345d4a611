#include "lft/intertwine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lft/errors.hpp"

namespace lft {
namespace {

struct Row {
  MapTag phi;
  std::vector<MapTag> allowed;
  const char* rule;
};

const std::vector<Row>& table() {
  using T = MapTag;
  static const std::vector<Row> rows = {
      {T::Identity, {T::Identity}, "phi = id forces psi = id on f(D)"},
      {T::EllipticAut, {T::Identity, T::EllipticAut},
       "an elliptic automorphism pairs only with an elliptic automorphism or, for rational rotations, id"},
      {T::EllipticNonAut, {T::EllipticNonAut},
       "an elliptic non-automorphism pairs only with an elliptic non-automorphism"},
      {T::HyperbolicAut, {T::EllipticNonAut, T::HyperbolicAut},
       "a hyperbolic automorphism pairs only with a hyperbolic automorphism or an elliptic "
       "non-automorphism"},
      {T::HyperbolicNonAut, {T::EllipticNonAut, T::HyperbolicAut, T::HyperbolicNonAut},
       "a hyperbolic non-automorphism pairs only with hyperbolic maps or an elliptic "
       "non-automorphism"},
      {T::ParabolicAut, {T::Identity, T::ParabolicAut},
       "a parabolic automorphism pairs only with a parabolic automorphism or id"},
      {T::ParabolicNonAut, {T::ParabolicNonAut},
       "a parabolic non-automorphism pairs only with a parabolic non-automorphism"},
  };
  return rows;
}

bool within(Complex x, Complex y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

SpherePoint other_fixed_point(const FixedPointSet& fp, const SpherePoint& p) {
  const SpherePoint& a = fp.points.at(0);
  const SpherePoint& b = fp.points.at(1);
  return chordal_distance(a, p) > chordal_distance(b, p) ? a : b;
}

// Sends p to 0 and r to infinity.
Moebius two_point_chart(const SpherePoint& p, const SpherePoint& r) {
  const Complex pv = p.value();
  if (r.is_infinity(1e-14)) return {1.0, -pv, 0.0, 1.0};
  return {1.0, -pv, 1.0, -r.value()};
}

}  // namespace

Compatibility type_compatible(MapTag phi, MapTag psi) {
  for (const Row& row : table()) {
    if (row.phi != phi) continue;
    const bool ok = std::find(row.allowed.begin(), row.allowed.end(), psi) != row.allowed.end();
    return {ok ? Verdict::Possible : Verdict::No, row.rule};
  }
  return {Verdict::No, "unknown class"};
}

Compatibility type_compatible(const DiskMapClass& phi, const DiskMapClass& psi) {
  return type_compatible(phi.tag, psi.tag);
}

bool same_point_set(const std::vector<SpherePoint>& x, const std::vector<SpherePoint>& y,
                    double tol) {
  if (x.size() != y.size()) return false;
  if (x.size() == 1) return chordal_distance(x[0], y[0]) < tol;
  if (x.size() != 2) return x.empty();
  const double straight = std::max(chordal_distance(x[0], y[0]), chordal_distance(x[1], y[1]));
  const double crossed = std::max(chordal_distance(x[0], y[1]), chordal_distance(x[1], y[0]));
  return std::min(straight, crossed) < tol;
}

ConditionReport check_conditions(const Moebius& f, const Moebius& phi, const Moebius& psi,
                                 const Tolerances& tol) {
  const DiskMapClass cphi = classify(phi, tol);
  const DiskMapClass cpsi = classify(psi, tol);
  if (cphi.tag == MapTag::Identity || cpsi.tag == MapTag::Identity) {
    throw Error(ErrorKind::WrongClass, "conditions are stated for non-identity phi and psi");
  }

  ConditionReport r;
  r.phi_tag = cphi.tag;
  r.psi_tag = cpsi.tag;
  r.composition_distance = proj_distance(compose(f, phi), compose(psi, f));
  r.composition_holds = r.composition_distance < tol.residual;

  const auto fail = [&](const char* why) {
    r.holds = false;
    r.reason = why;
    return r;
  };

  const FixedPointSet fphi = fixed_points(phi, tol);
  const FixedPointSet fpsi = fixed_points(psi, tol);
  std::vector<SpherePoint> images;
  for (const SpherePoint& z : fphi.points) images.push_back(apply(f, z));
  if (!same_point_set(images, fpsi.points, tol.fixed_point_match)) return fail(kFixedSetMismatch);

  const Complex p = cphi.dw_point.value();
  const Complex q = cpsi.dw_point.value();
  if (is_parabolic(cphi.tag)) {
    const Jet jf = jet_at(f, p);
    const Jet jphi = jet_at(phi, p);
    const Jet jpsi = jet_at(psi, q);
    if (!within(jf.d1 * jpsi.d2, jphi.d2, tol.multiplier_match)) return fail(kSecondOrderMismatch);
  } else {
    if (is_hyperbolic(cphi.tag) &&
        chordal_distance(apply(f, cphi.dw_point), cpsi.dw_point) >= tol.fixed_point_match) {
      return fail(kPointMismatch);
    }
    if (!within(jet_at(phi, p).d1, jet_at(psi, q).d1, tol.multiplier_match)) {
      return fail(kMultiplierMismatch);
    }
  }
  r.holds = true;
  return r;
}

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Empty: return "Empty";
    case FamilyKind::TwoPointFamily: return "TwoPointFamily";
    case FamilyKind::ParabolicAffineFamily: return "ParabolicAffineFamily";
    case FamilyKind::Degenerate: return "Degenerate";
  }
  return "?";
}

Moebius SolutionFamily::member(Complex parameter) const {
  switch (kind) {
    case FamilyKind::TwoPointFamily:
      if (parameter == Complex{}) throw Error(ErrorKind::DegenerateMap, "t = 0");
      return normalize(compose(inverse(sigma_q), compose(Moebius::scaling(parameter), sigma_p)));
    case FamilyKind::ParabolicAffineFamily:
      return normalize(
          compose(inverse(sigma_q), compose(Moebius{*fixed_scalar, parameter, 0.0, 1.0}, sigma_p)));
    default:
      throw Error(ErrorKind::WrongClass, std::string("no members to build in a ") + to_string(kind) +
                                             " family");
  }
}

bool SolutionFamily::admits(Complex parameter, const Tolerances& tol) const {
  if (kind == FamilyKind::ParabolicAffineFamily && parameter.real() < -tol.classify) return false;
  if (kind == FamilyKind::TwoPointFamily && parameter == Complex{}) return false;
  try {
    return self_map_report(member(parameter), tol).is_self_map;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Complex> SolutionFamily::sample_parameters(std::uint64_t seed, int count,
                                                       int max_attempts,
                                                       const Tolerances& tol) const {
  std::vector<Complex> out;
  if (kind != FamilyKind::TwoPointFamily && kind != FamilyKind::ParabolicAffineFamily) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<> unit(0.0, 1.0);
  Complex ray{1.0};
  if (kind == FamilyKind::TwoPointFamily && std::abs(std::abs(p) - 1.0) < tol.boundary &&
      std::abs(std::abs(q) - 1.0) < tol.boundary) {
    ray = q / p * jet_at(sigma_q, q).d1 / jet_at(sigma_p, p).d1;
    ray /= std::abs(ray);
  }
  const auto angle = [&] { return 2.0 * std::numbers::pi * unit(rng); };
  const auto disk_point = [&](double r) { return std::polar(r * std::sqrt(unit(rng)), angle()); };

  for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < count; ++attempt) {
    Complex param;
    if (kind == FamilyKind::ParabolicAffineFamily) {
      const double x = attempt % 3 == 0 ? 0.0 : std::exp(unit(rng) * 4.0 - 2.0);
      param = {x, 6.0 * unit(rng) - 3.0};
    } else {
      // Prescribing f(z0) = w for interior or boundary pairs covers the open
      // region of t and automorphic members. When p and q both lie on the
      // circle, self-maps need arg f'(p) = arg(q / p), which pins arg t.
      try {
        switch (attempt % 4) {
          case 0:
            param = sigma_q(disk_point(0.95)) / sigma_p(disk_point(0.95));
            break;
          case 1:
            param = sigma_q(std::polar(1.0, angle())) / sigma_p(std::polar(1.0, angle()));
            break;
          case 2:
            param = std::exp(6.0 * unit(rng) - 3.0) * ray;
            break;
          default:
            param = std::polar(1.0, angle());
            break;
        }
      } catch (const Error&) {
        continue;
      }
      if (!std::isfinite(param.real()) || !std::isfinite(param.imag())) continue;
    }
    if (admits(param, tol)) out.push_back(param);
  }
  return out;
}

std::vector<Moebius> SolutionFamily::sample(std::uint64_t seed, int count, int max_attempts,
                                            const Tolerances& tol) const {
  std::vector<Moebius> out;
  for (Complex t : sample_parameters(seed, count, max_attempts, tol)) out.push_back(member(t));
  return out;
}

std::optional<Complex> SolutionFamily::parameter_of(const Moebius& f, double tol) const {
  if (kind != FamilyKind::TwoPointFamily && kind != FamilyKind::ParabolicAffineFamily) {
    return std::nullopt;
  }
  const Moebius h = compose(sigma_q, compose(f, inverse(sigma_p)));
  Complex param;
  try {
    param = kind == FamilyKind::TwoPointFamily ? h(Complex{1.0}) : h(Complex{0.0});
    if (!std::isfinite(param.real()) || !std::isfinite(param.imag())) return std::nullopt;
    if (proj_distance(member(param), f) > tol) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return param;
}

SolutionFamily solve_family(const Moebius& phi, const Moebius& psi, const Tolerances& tol) {
  const DiskMapClass cphi = classify(phi, tol);
  const DiskMapClass cpsi = classify(psi, tol);
  SolutionFamily fam;

  const bool id_phi = cphi.tag == MapTag::Identity;
  const bool id_psi = cpsi.tag == MapTag::Identity;
  if (id_phi && id_psi) {
    fam.kind = FamilyKind::Degenerate;
    fam.reason = "phi = psi = id";
    fam.free_parameter = "any f";
    return fam;
  }
  if (id_phi || id_psi) {
    fam.reason = "an invertible f cannot conjugate id to a non-identity map";
    return fam;
  }

  const Compatibility compat = type_compatible(cphi, cpsi);
  if (compat.verdict == Verdict::No) {
    fam.reason = compat.reason;
    return fam;
  }

  if (is_parabolic(cphi.tag)) {
    const HalfPlaneAffine hphi = cayley_conjugate(phi, tol);
    const HalfPlaneAffine hpsi = cayley_conjugate(psi, tol);
    const Complex c = hpsi.B / hphi.B;
    if (std::abs(c.imag()) > tol.multiplier_match * std::abs(c) || c.real() <= 0.0) {
      fam.reason = "translation ratio is not a positive real";
      return fam;
    }
    fam.kind = FamilyKind::ParabolicAffineFamily;
    fam.sigma_p = cayley(hphi.tau);
    fam.sigma_q = cayley(hpsi.tau);
    fam.fixed_scalar = Complex{c.real()};
    fam.p = hphi.tau;
    fam.q = hpsi.tau;
    fam.free_parameter = "d with Re d >= 0";
    return fam;
  }

  const FixedPointSet fphi = fixed_points(phi, tol);
  const FixedPointSet fpsi = fixed_points(psi, tol);
  if (fphi.points.size() != 2 || fpsi.points.size() != 2) {
    fam.reason = "fixed-point sets differ in size";
    return fam;
  }
  if (!within(cphi.multiplier, cpsi.multiplier, tol.multiplier_match)) {
    fam.reason = kMultiplierMismatch;
    return fam;
  }
  fam.kind = FamilyKind::TwoPointFamily;
  fam.sigma_p = two_point_chart(cphi.dw_point, other_fixed_point(fphi, cphi.dw_point));
  fam.sigma_q = two_point_chart(cpsi.dw_point, other_fixed_point(fpsi, cpsi.dw_point));
  fam.p = cphi.dw_point.value();
  fam.q = cpsi.dw_point.value();
  fam.free_parameter = "t != 0";
  return fam;
}

std::vector<Complex> default_residual_grid() {
  std::vector<Complex> out;
  for (double r : {0.3, 0.6, 0.9}) {
    for (int k = 0; k < 16; ++k) out.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 16.0));
  }
  return out;
}

double residual(const Evaluable& f, const Moebius& phi, const Moebius& psi,
                const std::vector<Complex>& samples) {
  double worst = 0.0;
  for (const Complex z : samples) {
    double gap;
    try {
      gap = std::abs(f(phi(z)) - psi(f(z)));
    } catch (const std::exception& e) {
      throw Error(ErrorKind::EvaluationFailure, "at z = (" + std::to_string(z.real()) + ", " +
                                                    std::to_string(z.imag()) + "): " + e.what());
    }
    if (!std::isfinite(gap)) {
      throw Error(ErrorKind::EvaluationFailure, "non-finite value at z = (" +
                                                    std::to_string(z.real()) + ", " +
                                                    std::to_string(z.imag()) + ")");
    }
    worst = std::max(worst, gap);
  }
  return worst;
}

Complex parabolic_conformal_derivative(const Moebius& phi, const Moebius& psi,
                                       const Tolerances& tol) {
  const DiskMapClass cphi = classify(phi, tol);
  const DiskMapClass cpsi = classify(psi, tol);
  if (!is_parabolic(cphi.tag) || !is_parabolic(cpsi.tag)) {
    throw Error(ErrorKind::WrongClass, "both maps must be parabolic");
  }
  return jet_at(phi, cphi.dw_point.value()).d2 / jet_at(psi, cpsi.dw_point.value()).d2;
}

}  // namespace lft
