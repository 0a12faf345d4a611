#include "lft/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "lft/errors.hpp"

namespace lft {
namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::array<Complex, 4> coefficients(const Moebius& m) {
  return {m.a(), m.b(), m.c(), m.d()};
}

double max_abs(const std::array<Complex, 4>& k) {
  double out = 0.0;
  for (const auto& z : k) out = std::max(out, std::abs(z));
  return out;
}

// Argument in (-pi/2, pi/2].
bool in_right_window(Complex z) {
  return z.real() > 0.0 || (z.real() == 0.0 && z.imag() > 0.0);
}

}  // namespace

SpherePoint::SpherePoint(Complex u, Complex v) {
  if (!is_finite(u) || !is_finite(v)) {
    throw Error(ErrorKind::ParseError, "sphere point with non-finite coordinate");
  }
  const double s = std::max(std::abs(u), std::abs(v));
  if (s == 0.0) throw Error(ErrorKind::ParseError, "sphere point [0 : 0]");
  u_ = u / s;
  v_ = v / s;
}

bool SpherePoint::is_infinity(double tol) const {
  return std::abs(v_) <= tol * std::abs(u_);
}

Complex SpherePoint::value() const {
  if (v_ == Complex{}) throw Error(ErrorKind::PoleAtPoint, "point at infinity has no finite value");
  return u_ / v_;
}

double SpherePoint::modulus() const {
  if (v_ == Complex{}) return std::numeric_limits<double>::infinity();
  return std::abs(u_) / std::abs(v_);
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  const double np = std::hypot(std::abs(p.u()), std::abs(p.v()));
  const double nq = std::hypot(std::abs(q.u()), std::abs(q.v()));
  return std::abs(p.u() * q.v() - q.u() * p.v()) / (np * nq);
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinity()) return os << "inf";
  return os << p.value();
}

Moebius::Moebius(Complex a, Complex b, Complex c, Complex d, double degeneracy)
    : a_(a), b_(b), c_(c), d_(d) {
  const auto k = coefficients(*this);
  if (!std::all_of(k.begin(), k.end(), is_finite)) {
    throw Error(ErrorKind::DegenerateMap, "non-finite coefficient");
  }
  const double s = max_abs(k);
  if (degeneracy > 0.0 && !(std::abs(det()) > degeneracy * s * s)) {
    throw Error(ErrorKind::DegenerateMap, "|ad - bc| below tolerance");
  }
}

double Moebius::norm_squared() const {
  return std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
}

SpherePoint Moebius::operator()(const SpherePoint& z) const {
  return {a_ * z.u() + b_ * z.v(), c_ * z.u() + d_ * z.v()};
}

Complex Moebius::operator()(Complex z) const {
  const Complex den = c_ * z + d_;
  if (std::abs(den) <= 1e-300) throw Error(ErrorKind::PoleAtPoint, "c z + d = 0");
  return (a_ * z + b_) / den;
}

std::ostream& operator<<(std::ostream& os, const Moebius& m) {
  return os << "(" << m.a() << " z + " << m.b() << ") / (" << m.c() << " z + " << m.d()
            << ")";
}

Moebius normalize(const Moebius& m) {
  auto k = coefficients(m);
  const double big = max_abs(k);
  const Complex det = m.det();
  // Far iterates can have det lost to cancellation; keep them projectively
  // by scaling to unit max coefficient instead.
  const Complex root = std::abs(det) > 1e-14 * big * big ? std::sqrt(det) : Complex{big};
  for (auto& z : k) z /= root;
  const double s = max_abs(k);
  for (const auto& z : k) {
    if (std::abs(z) > 1e-12 * s) {
      if (!in_right_window(z)) {
        for (auto& w : k) w = -w;
      }
      break;
    }
  }
  return {k[0], k[1], k[2], k[3], 0.0};
}

SpherePoint apply(const Moebius& m, const SpherePoint& z) { return m(z); }

Moebius compose(const Moebius& m1, const Moebius& m2) {
  const Moebius x = normalize(m1);
  const Moebius y = normalize(m2);
  // A product of det-1 factors has det 1; large iterates would otherwise trip
  // the relative degeneracy test through cancellation alone.
  return {x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
          x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d(), 0.0};
}

Moebius inverse(const Moebius& m) { return {m.d(), -m.b(), -m.c(), m.a(), 0.0}; }

FixedPointSet fixed_points(const Moebius& m, const Tolerances& tol) {
  FixedPointSet out;
  if (proj_distance(m, Moebius::identity()) <= tol.identity) {
    out.all_sphere = true;
    return out;
  }
  const Moebius n = normalize(m);
  const Complex a = n.a(), b = n.b(), c = n.c(), d = n.d();
  const Complex lin = d - a;
  const Complex disc = lin * lin + 4.0 * b * c;
  const double scale = n.norm_squared();

  if (std::abs(disc) <= tol.double_root * scale) {
    out.double_root = true;
    if (std::abs(c) <= 1e-14 * std::sqrt(scale)) {
      out.points.push_back(SpherePoint::infinity());
    } else {
      out.points.emplace_back(a - d, 2.0 * c);
    }
    return out;
  }

  Complex root = std::sqrt(disc);
  if ((std::conj(lin) * root).real() < 0.0) root = -root;
  const Complex q = -0.5 * (lin + root);
  out.points.emplace_back(q, c);
  out.points.emplace_back(-b, q);
  return out;
}

Jet jet_at(const Moebius& m, Complex z0) {
  const Complex den = m.c() * z0 + m.d();
  if (std::abs(den) <= 1e-14 * (std::abs(m.c() * z0) + std::abs(m.d()))) {
    throw Error(ErrorKind::PoleAtPoint, "c z0 + d vanishes");
  }
  const Complex det = m.det();
  const Complex den2 = den * den;
  return {(m.a() * z0 + m.b()) / den, det / den2, -2.0 * m.c() * det / (den2 * den)};
}

Moebius iterate_n(const Moebius& m, std::uint64_t n) {
  Moebius result = Moebius::identity();
  Moebius base = normalize(m);
  while (n > 0) {
    if (n & 1U) result = normalize(compose(result, base));
    n >>= 1U;
    if (n > 0) base = normalize(compose(base, base));
  }
  return result;
}

double proj_distance(const Moebius& m1, const Moebius& m2) {
  auto x = coefficients(m1);
  auto y = coefficients(m2);
  const double sx = max_abs(x), sy = max_abs(y);
  for (auto& z : x) z /= sx;
  for (auto& z : y) z /= sy;

  Complex inner{};
  std::size_t top = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    inner += std::conj(y[k]) * x[k];
    if (std::abs(x[k]) > std::abs(x[top])) top = k;
  }
  std::vector<Complex> scalars;
  if (std::abs(inner) > 0.0) scalars.push_back(inner / std::abs(inner));
  if (std::abs(y[top]) > 0.0) {
    const Complex r = x[top] / y[top];
    scalars.push_back(r / std::abs(r));
  }
  if (scalars.empty()) scalars.push_back(1.0);

  double best = std::numeric_limits<double>::infinity();
  for (const Complex s : scalars) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(x[k] - s * y[k]));
    best = std::min(best, worst);
  }
  return best;
}

Moebius disk_involution(Complex p) {
  if (!(std::abs(p) < 1.0)) throw Error(ErrorKind::OutsideDisk, "involution center must lie in D");
  return {-1.0, p, -std::conj(p), 1.0};
}

}  // namespace lft
