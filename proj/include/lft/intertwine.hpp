#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lft/classify.hpp"
#include "lft/dynamics.hpp"
#include "lft/moebius.hpp"
#include "lft/tolerances.hpp"

namespace lft {

// Type compatibility of f o phi = psi o f over pairs of classes.

enum class Verdict { No, Possible };

struct Compatibility {
  Verdict verdict = Verdict::No;
  std::string reason;
};

/// Rows are the class of phi, columns the class of psi.
Compatibility type_compatible(MapTag phi, MapTag psi);
Compatibility type_compatible(const DiskMapClass& phi, const DiskMapClass& psi);

// Fixed-point / multiplier conditions for an LFT f.

struct ConditionReport {
  bool holds = false;
  // Empty when the conditions hold, else the first failing clause.
  std::string reason;
  MapTag phi_tag = MapTag::Identity;
  MapTag psi_tag = MapTag::Identity;
  // Scale-free distance between f o phi and psi o f.
  double composition_distance = 0.0;
  bool composition_holds = false;
};

inline constexpr const char* kFixedSetMismatch = "f(Fix(phi)) != Fix(psi)";
inline constexpr const char* kPointMismatch = "f(p) != q";
inline constexpr const char* kMultiplierMismatch = "phi'(p) != psi'(q)";
inline constexpr const char* kSecondOrderMismatch = "f'(p) psi''(q) != phi''(p)";

/// Elliptic phi: f maps Fix(phi) onto Fix(psi) and the multipliers agree.
/// Hyperbolic phi: additionally f(p) = q. Parabolic phi: Fix sets match and
/// f'(p) psi''(q) = phi''(p). Throws WrongClass if phi or psi is the identity.
ConditionReport check_conditions(const Moebius& f, const Moebius& phi, const Moebius& psi,
                                 const Tolerances& tol = {});

/// Chordal matching of two sets of at most two points under the best
/// assignment.
bool same_point_set(const std::vector<SpherePoint>& x, const std::vector<SpherePoint>& y,
                    double tol);

// All LFT solutions.

enum class FamilyKind { Empty, TwoPointFamily, ParabolicAffineFamily, Degenerate };

const char* to_string(FamilyKind k);

/// TwoPointFamily: f_t = sigma_q^{-1}(t sigma_p(z)), t != 0, where sigma_p
/// sends p to 0 and the other fixed point to infinity.
/// ParabolicAffineFamily: f_d = sigma_q^{-1}(c sigma_p(z) + d), with sigma
/// the Cayley transforms at p and q, c = fixed_scalar > 0 and Re d >= 0.
/// Degenerate: phi = psi = id, every f is a solution.
struct SolutionFamily {
  FamilyKind kind = FamilyKind::Empty;
  std::string reason;
  Moebius sigma_p = Moebius::identity();
  Moebius sigma_q = Moebius::identity();
  // Denjoy-Wolff points of phi and psi.
  Complex p{};
  Complex q{};
  std::optional<Complex> fixed_scalar;
  std::string free_parameter;

  /// Throws WrongClass for Empty and Degenerate families.
  Moebius member(Complex parameter) const;
  /// The member is a self-map of the disk.
  bool admits(Complex parameter, const Tolerances& tol = {}) const;
  /// Up to `count` distinct self-map members found by a seeded sampler.
  std::vector<Moebius> sample(std::uint64_t seed, int count, int max_attempts = 4000,
                              const Tolerances& tol = {}) const;
  /// Parameters of the members `sample` returns, in the same order.
  std::vector<Complex> sample_parameters(std::uint64_t seed, int count, int max_attempts = 4000,
                                         const Tolerances& tol = {}) const;
  /// Parameter of f if f is a member, recovered from sigma_q o f o sigma_p^{-1}.
  std::optional<Complex> parameter_of(const Moebius& f, double tol = 1e-9) const;
};

/// phi and psi must be self-maps. Exactly one identity gives Empty (an
/// invertible f cannot conjugate id to a non-identity map).
SolutionFamily solve_family(const Moebius& phi, const Moebius& psi, const Tolerances& tol = {});

// Residuals for arbitrary evaluable f.

/// 16 points on each circle of radius 0.3, 0.6, 0.9.
std::vector<Complex> default_residual_grid();

/// max |f(phi(z)) - psi(f(z))| over the samples. Evaluation failures are
/// rethrown as EvaluationFailure naming the sample.
double residual(const Evaluable& f, const Moebius& phi, const Moebius& psi,
                const std::vector<Complex>& samples = default_residual_grid());

/// phi''(p) / psi''(q) at the two Denjoy-Wolff points; throws WrongClass
/// unless both maps are parabolic.
Complex parabolic_conformal_derivative(const Moebius& phi, const Moebius& psi,
                                       const Tolerances& tol = {});

}  // namespace lft
