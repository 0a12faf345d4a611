#pragma once

#include <optional>
#include <string_view>

#include "lft/moebius.hpp"
#include "lft/tolerances.hpp"

namespace lft {

/// Outcome of the two self-map criteria evaluated on the det-1 quadruple.
///
/// margin_lemma = (|c|^2 + |d|^2 - |a|^2 - |b|^2) - 2 |a conj(b) - c conj(d)|
/// margin_prop  = (|d|^2 - |c|^2) - |b conj(d) - a conj(c)| - |ad - bc|
/// Both are nonnegative exactly for self-maps of the disk (given |d| > |c|).
struct SelfMapReport {
  bool is_self_map = false;
  double margin_lemma = 0.0;
  double margin_prop = 0.0;
  bool is_automorphism = false;
  // margin_lemma within tolerance of zero: the image touches the circle.
  bool boundary_case = false;
};

SelfMapReport self_map_report(const Moebius& m, const Tolerances& tol = {});

enum class MapTag {
  Identity,
  EllipticAut,
  EllipticNonAut,
  HyperbolicAut,
  HyperbolicNonAut,
  ParabolicAut,
  ParabolicNonAut,
};

inline constexpr MapTag kAllTags[] = {
    MapTag::Identity,         MapTag::EllipticAut,  MapTag::EllipticNonAut,
    MapTag::HyperbolicAut,    MapTag::HyperbolicNonAut, MapTag::ParabolicAut,
    MapTag::ParabolicNonAut,
};

std::string_view to_string(MapTag tag);
std::optional<MapTag> tag_from_string(std::string_view name);

constexpr bool is_elliptic(MapTag t) {
  return t == MapTag::EllipticAut || t == MapTag::EllipticNonAut;
}
constexpr bool is_hyperbolic(MapTag t) {
  return t == MapTag::HyperbolicAut || t == MapTag::HyperbolicNonAut;
}
constexpr bool is_parabolic(MapTag t) {
  return t == MapTag::ParabolicAut || t == MapTag::ParabolicNonAut;
}
constexpr bool is_automorphic(MapTag t) {
  return t == MapTag::Identity || t == MapTag::EllipticAut || t == MapTag::HyperbolicAut ||
         t == MapTag::ParabolicAut;
}

/// Dynamic type of a self-map together with its Denjoy-Wolff data.
///
/// For the identity the dw_point is the origin and the multiplier 1; neither
/// carries meaning. Boundary Denjoy-Wolff points are projected onto the unit
/// circle.
struct DiskMapClass {
  MapTag tag = MapTag::Identity;
  SpherePoint dw_point = SpherePoint::finite(0.0);
  Complex multiplier{1.0, 0.0};
  std::optional<double> parabolic_defect;
  // Some classification quantity fell inside its tolerance band.
  bool boundary_case = false;
};

/// Throws NotSelfMap when the map does not send D into itself.
DiskMapClass classify(const Moebius& m, const Tolerances& tol = {});

/// w -> A w + B on the right half-plane, conjugated through
/// T_tau(z) = (tau + z) / (tau - z).
struct HalfPlaneAffine {
  double A = 1.0;
  Complex B{};
  Complex tau{1.0, 0.0};
};

/// T_tau as a Moebius map.
Moebius cayley(Complex tau);
/// T_tau^{-1}(w) = tau (w - 1) / (w + 1).
Moebius cayley_inverse(Complex tau);

/// Throws WrongClass unless m is hyperbolic or parabolic.
HalfPlaneAffine cayley_conjugate(const Moebius& m, const Tolerances& tol = {});
/// Throws InvalidAffine when A < 1, Re B < 0 or |tau| != 1.
Moebius from_halfplane(const HalfPlaneAffine& h, const Tolerances& tol = {});

/// Least n <= max_n with |lambda^n - 1| < tol.rotation.
std::optional<int> rotation_order(Complex lambda, int max_n = 1024, const Tolerances& tol = {});

/// Re(p phi''(p)) at the Denjoy-Wolff point; throws WrongClass for
/// non-parabolic maps.
double parabolic_defect(const Moebius& m, const Tolerances& tol = {});

}  // namespace lft
