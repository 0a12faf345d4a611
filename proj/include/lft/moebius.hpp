#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lft/tolerances.hpp"

namespace lft {

using Complex = std::complex<double>;

/// A point of the Riemann sphere in homogeneous coordinates [u : v].
///
/// The pair is rescaled on construction so that max(|u|, |v|) = 1; the
/// point at infinity is [1 : 0]. Comparisons go through the chordal metric,
/// never through u/v.
class SpherePoint {
 public:
  SpherePoint(Complex u, Complex v);

  static SpherePoint finite(Complex z) { return {z, 1.0}; }
  static SpherePoint infinity() { return {1.0, 0.0}; }

  Complex u() const { return u_; }
  Complex v() const { return v_; }

  /// True when |v| <= tol * |u|; tol = 0 asks for an exact zero.
  bool is_infinity(double tol = 0.0) const;
  /// u / v. Throws PoleAtPoint for the point at infinity.
  Complex value() const;
  /// |u / v|, +inf at infinity.
  double modulus() const;

 private:
  Complex u_;
  Complex v_;
};

/// Chordal distance |u1 v2 - u2 v1| / (|(u1,v1)| |(u2,v2)|), in [0, 1].
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
///
/// Values are projective: two quadruples that differ by a nonzero scalar
/// describe the same map. Use proj_distance to compare.
class Moebius {
 public:
  /// Throws DegenerateMap when |ad - bc| <= degeneracy * max|coef|^2 or a
  /// coefficient is not finite. degeneracy = 0 only checks finiteness.
  Moebius(Complex a, Complex b, Complex c, Complex d,
          double degeneracy = Tolerances{}.degeneracy);

  static Moebius identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// z -> t z
  static Moebius scaling(Complex t) { return {t, 0.0, 0.0, 1.0}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex det() const { return a_ * d_ - b_ * c_; }
  /// |a|^2 + |b|^2 + |c|^2 + |d|^2
  double norm_squared() const;

  SpherePoint operator()(const SpherePoint& z) const;
  /// Finite evaluation; throws PoleAtPoint if c z + d vanishes.
  Complex operator()(Complex z) const;

 private:
  Complex a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const Moebius& m);

/// det-1 representative with the first nonzero coefficient (a, b, c, d order)
/// having argument in (-pi/2, pi/2]. When the computed determinant has been
/// lost to cancellation (far iterates), the quadruple is scaled to unit max
/// coefficient instead.
Moebius normalize(const Moebius& m);

SpherePoint apply(const Moebius& m, const SpherePoint& z);

/// m1 o m2
Moebius compose(const Moebius& m1, const Moebius& m2);
Moebius inverse(const Moebius& m);

/// Fixed points on the sphere: roots of c z^2 + (d - a) z - b = 0.
struct FixedPointSet {
  bool all_sphere = false;  // identity
  bool double_root = false;
  std::vector<SpherePoint> points;  // one or two distinct points
};

FixedPointSet fixed_points(const Moebius& m, const Tolerances& tol = {});

/// Value and first two derivatives at a finite point.
struct Jet {
  Complex value;
  Complex d1;
  Complex d2;
};

/// Throws PoleAtPoint when c z0 + d is (relatively) zero.
Jet jet_at(const Moebius& m, Complex z0);

/// n-fold composition by binary powering; n = 0 gives the identity.
Moebius iterate_n(const Moebius& m, std::uint64_t n);

/// Minimum over unit scalars s of max_k |x_k - s y_k|, where x and y are the
/// two quadruples scaled to unit max coefficient. Zero iff the maps coincide;
/// scale-free, so strongly contracting iterates compare sensibly.
double proj_distance(const Moebius& m1, const Moebius& m2);

/// z -> (p - z) / (1 - conj(p) z), the involution swapping p and 0.
Moebius disk_involution(Complex p);

}  // namespace lft
