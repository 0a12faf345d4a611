#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "lft/errors.hpp"
#include "lft/roots.hpp"
#include "random_maps.hpp"

using namespace lft;
using lft::testing::MapGen;

namespace {

const Complex I{0.0, 1.0};
const double kPi = std::numbers::pi;

const Moebius kNegate{-1.0, 0.0, 0.0, 1.0};
const Moebius kNoRoots{-1.0, 0.0, 3.0, 4.0};  // -z/(3z+4)
const Moebius kQuarter{1.0, 0.0, 0.0, 4.0};
const Moebius kHalfShift{1.0, 1.0, 0.0, 2.0};

// A z / (C z + 1) moved to the fixed point p.
Moebius elliptic_at(Complex A, Complex C, Complex p) {
  const Moebius s = disk_involution(p);
  return normalize(compose(s, compose(Moebius{A, 0.0, C, 1.0}, s)));
}

// Roots of a z/(c z + 1) = A z/(C z + 1) under n-fold iteration, found by
// matching coefficients term by term: a^n = A, c (1 + a + ... + a^{n-1}) = C.
std::vector<Moebius> brute_force_roots(Complex A, Complex C, Complex p, int n) {
  std::vector<Moebius> out;
  const Moebius s = disk_involution(p);
  for (int k = 0; k < n; ++k) {
    const Complex a = std::pow(A, 1.0 / n) * std::exp(2.0 * kPi * I * double(k) / double(n));
    Complex sum = 0.0, power = 1.0;
    for (int j = 0; j < n; ++j) {
      sum += power;
      power *= a;
    }
    const Moebius g{a, 0.0, C / sum, 1.0};
    // Self-map check through the definition: |g| < 1 on a fine circle grid.
    bool inside = true;
    for (int j = 0; j < 720 && inside; ++j) {
      inside = std::abs(g(std::polar(1.0, 2.0 * kPi * j / 720.0))) <= 1.0 + 1e-9;
    }
    if (inside) out.push_back(normalize(compose(s, compose(g, s))));
  }
  return out;
}

// Limiting Stolz ratio along the principal branch, which dominates every
// other branch.
double principal_limit_ratio(Complex A) {
  const Complex l = std::log(A);
  return -l.real() / std::abs(l);
}

}  // namespace

TEST_CASE("roots of hyperbolic and parabolic maps") {
  for (int n : {2, 3, 5}) {
    const Moebius g = root_nonelliptic(kHalfShift, n);
    CHECK(proj_distance(iterate_n(g, n), kHalfShift) < 1e-12);
    CHECK(self_map_report(g).is_self_map);
    CHECK(classify(g).tag == MapTag::HyperbolicNonAut);
  }
  CHECK(proj_distance(root_nonelliptic({5.0, 3.0, 3.0, 5.0}, 2), {3.0, 1.0, 1.0, 3.0}) < 1e-12);
  // sqrt(2) w + sqrt(2) - 1 in the half-plane at tau = 1.
  const HalfPlaneAffine h = cayley_conjugate(root_nonelliptic(kHalfShift, 2));
  CHECK(std::abs(h.A - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(h.B - (std::sqrt(2.0) - 1.0)) < 1e-12);
  const Moebius shift = from_halfplane({1.0, 4.0 * kPi * I, 1.0});
  CHECK(proj_distance(root_nonelliptic(shift, 2), from_halfplane({1.0, 2.0 * kPi * I, 1.0})) < 1e-12);
  const Moebius par{2.0 - I, I, -I, 2.0 + I};
  const Moebius g = root_nonelliptic(par, 3);
  CHECK(proj_distance(iterate_n(g, 3), par) < 1e-12);
  CHECK(classify(g).tag == MapTag::ParabolicAut);
  CHECK_THROWS_AS(root_nonelliptic(kQuarter, 2), Error);
  CHECK_THROWS_AS(root_nonelliptic(kHalfShift, 0), Error);
}

TEST_CASE("elliptic root cardinalities") {
  CHECK(roots_elliptic(kNegate, 2).size() == 2);
  CHECK(roots_elliptic(kNoRoots, 2).empty());
  CHECK(roots_elliptic(kNoRoots, 3).size() <= 3);
  const Moebius rot = elliptic_at(std::polar(1.0, 1.0), 0.0, {0.2, -0.4});
  for (int n : {2, 3, 5, 8}) CHECK(roots_elliptic(rot, n).size() == std::size_t(n));
  const auto quarter_roots = roots_elliptic(kQuarter, 2);
  REQUIRE(quarter_roots.size() == 2);
  CHECK(proj_distance(quarter_roots[0], {1.0, 0.0, 0.0, 2.0}) < 1e-14);
  CHECK(proj_distance(quarter_roots[1], {-1.0, 0.0, 0.0, 2.0}) < 1e-14);
  const auto negate_roots = roots_elliptic(kNegate, 2);
  CHECK(proj_distance(negate_roots[0], Moebius::scaling(I)) < 1e-14);
  CHECK(proj_distance(negate_roots[1], Moebius::scaling(-I)) < 1e-14);
  CHECK_THROWS_AS(roots_elliptic(Moebius::identity(), 2), Error);
  CHECK_THROWS_AS(roots_elliptic(kHalfShift, 2), Error);

  const EllipticNormalForm nf = elliptic_normal_form(kNoRoots);
  CHECK(std::abs(nf.A - Complex{-0.25, 0.0}) < 1e-14);
  CHECK(std::abs(std::abs(nf.C) - 0.75) < 1e-14);
  for (Complex a : nth_roots(nf.A, 2)) {
    CHECK(std::abs(std::abs(a.imag()) - 0.5) < 1e-14);
    CHECK_FALSE(elliptic_root_admissible(nf, a, 1e-12));
  }
}

TEST_CASE("identity roots") {
  const Complex p{0.3, 0.1};
  const Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
  const Moebius g = identity_roots(p, w, 3);
  CHECK(proj_distance(iterate_n(g, 3), Moebius::identity()) < 1e-12);
  CHECK(std::abs(g(p) - p) < 1e-14);
  CHECK(proj_distance(identity_roots(0.0, -1.0, 2), kNegate) < 1e-15);
  CHECK(proj_distance(identity_roots(0.0, I, 4), Moebius::scaling(I)) < 1e-15);
  CHECK(proj_distance(identity_roots(0.5, -1.0, 2), kNegate) > 0.1);
  for (int n : {2, 3, 4, 6}) {
    for (int k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      const Complex lambda = std::polar(1.0, 2.0 * kPi * k / n);
      for (double x : {-0.7, 0.0, 0.4}) {
        for (double y : {-0.5, 0.3}) {
          const Moebius r = identity_roots({x, y}, lambda, n);
          CHECK(proj_distance(iterate_n(r, n), Moebius::identity()) < 1e-12);
          CHECK(classify(r).tag == MapTag::EllipticAut);
        }
      }
    }
  }
  CHECK_THROWS_AS(identity_roots(p, 1.0, 3), Error);
  CHECK_THROWS_AS(identity_roots(p, I, 3), Error);
  CHECK_THROWS_AS(identity_roots(1.5, w, 3), Error);
}

TEST_CASE("embeddability on fixed maps") {
  EmbedVerdict v = embeddable(kNoRoots);
  CHECK(v.status == EmbedStatus::NotEmbeddable);
  CHECK(v.depth == 1);
  CHECK_FALSE(v.witness.has_value());

  v = embeddable(kQuarter);
  CHECK(v.status == EmbedStatus::Embeddable);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->logs.size() == 65);
  CHECK_FALSE(v.boundary);

  v = embeddable(kHalfShift);
  CHECK(v.status == EmbedStatus::Embeddable);
  CHECK_FALSE(v.witness.has_value());
  CHECK(embeddable(Moebius::identity()).status == EmbedStatus::Embeddable);

  // a z / ((1 - a) z + 1) is the time-log(1/a) map of a semigroup sitting on
  // the edge of the admissible region.
  v = embeddable({0.5, 0.0, 0.5, 1.0});
  CHECK(v.status == EmbedStatus::Embeddable);
  CHECK(v.boundary);

  CHECK_THROWS_AS(embeddable(kQuarter, 0), Error);
}

TEST_CASE("dyadic times") {
  DyadicTime t = parse_dyadic("3/2^4");
  CHECK(t.m == 3);
  CHECK(t.k == 4);
  t = parse_dyadic("5/8");
  CHECK(t.k == 3);
  CHECK(t.value() == 0.625);
  CHECK(parse_dyadic("7").value() == 7.0);
  CHECK_THROWS_AS(parse_dyadic("1/3"), Error);
  CHECK_THROWS_AS(parse_dyadic("x/2"), Error);
  CHECK_THROWS_AS(parse_dyadic("1/0"), Error);
  CHECK_THROWS_AS(parse_dyadic(""), Error);

  CHECK(proj_distance(dyadic_element(kNoRoots, {0, 0}), Moebius::identity()) == 0.0);
  const Moebius half_shift = dyadic_element(kHalfShift, {1, 1});
  CHECK(proj_distance(compose(half_shift, half_shift), kHalfShift) < 1e-10);
  const Moebius half = dyadic_element(kQuarter, parse_dyadic("1/2"));
  CHECK(proj_distance(half, {1.0, 0.0, 0.0, 2.0}) < 1e-12);
  CHECK(proj_distance(dyadic_element(kHalfShift, {1, 0}), kHalfShift) < 1e-12);
  CHECK_THROWS_AS(dyadic_element(kNoRoots, {1, 1}), Error);
}

TEST_CASE("property: roots match coefficient matching") {
  MapGen gen(53);
  for (int trial = 0; trial < 200; ++trial) {
    const double ra = gen.uniform(0.05, 0.95);
    const Complex A = std::polar(ra, gen.uniform(-3.0, 3.0));
    const Complex C = std::polar((1.0 - ra) * gen.uniform(0.0, 1.5), gen.uniform(-kPi, kPi));
    const Complex p = gen.in_disk(0.7);
    const Moebius phi = elliptic_at(A, C, p);
    if (!self_map_report(phi).is_self_map) continue;
    for (int n : {2, 3, 5}) {
      const auto got = roots_elliptic(phi, n);
      const auto want = brute_force_roots(A, C, p, n);
      // The grid check may differ only for roots on the admissible edge.
      CHECK(std::abs(double(got.size()) - double(want.size())) <= 1.0);
      std::size_t matched = 0;
      for (const Moebius& g : got) {
        CHECK(proj_distance(iterate_n(g, n), phi) < 1e-10);
        CHECK(self_map_report(g).is_self_map);
        matched += std::any_of(want.begin(), want.end(),
                               [&](const Moebius& h) { return proj_distance(g, h) < 1e-9; });
      }
      if (got.size() == want.size()) CHECK(matched == got.size());
    }
  }
}

TEST_CASE("property: embeddability agrees with the principal-branch limit") {
  MapGen gen(59);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const double ra = gen.uniform(0.05, 0.95);
    const Complex A = std::polar(ra, gen.uniform(-3.0, 3.0));
    // Self-maps need kappa <= (1 - |A|) / |1 - A|.
    const double kappa = gen.uniform(0.0, 1.0) * (1.0 - ra) / std::abs(1.0 - A);
    const Complex C = std::polar(kappa * std::abs(1.0 - A), gen.uniform(-kPi, kPi));
    const double limit = principal_limit_ratio(A);
    if (std::abs(limit - kappa) < 1e-6) continue;
    const Moebius phi = elliptic_at(A, C, gen.in_disk(0.7));
    if (!self_map_report(phi).is_self_map) continue;
    const EmbedVerdict v = embeddable(phi);
    CHECK(v.monotonicity_violations == 0);
    if (limit > kappa) {
      ++yes;
      CHECK(v.status == EmbedStatus::Embeddable);
      REQUIRE(v.witness.has_value());
      const auto& r = v.witness->ratios;
      for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k] <= r[k - 1] + 1e-12);
      CHECK(std::abs(r.back() - limit) < 1e-9);
    } else {
      ++no;
      CHECK(v.status == EmbedStatus::NotEmbeddable);
    }
  }
  CHECK(yes > 30);
  CHECK(no > 30);
}

TEST_CASE("property: NotEmbeddable at depth d leaves no 2^d-th roots") {
  MapGen gen(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Moebius phi = gen.elliptic_nonaut();
    const EmbedVerdict v = embeddable(phi);
    if (v.status == EmbedStatus::NotEmbeddable) {
      CHECK(roots_elliptic(phi, 1 << v.depth).empty());
    } else if (v.status == EmbedStatus::Embeddable) {
      for (int k = 1; k <= 8; ++k) CHECK_FALSE(roots_elliptic(phi, 1 << k).empty());
    }
  }
}

TEST_CASE("property: dyadic elements form a semigroup") {
  MapGen gen(67);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 40; ++trial) {
    const int kind = trial % 4;
    const Moebius phi = kind == 0   ? gen.elliptic_nonaut()
                        : kind == 1 ? gen.elliptic_aut()
                        : kind == 2 ? gen.hyperbolic_nonaut()
                                    : gen.parabolic_nonaut();
    if (embeddable(phi).status != EmbedStatus::Embeddable) continue;
    ++tested;
    CHECK(proj_distance(dyadic_element(phi, {1, 0}), phi) < 1e-9);
    for (int a = 1; a <= 16; ++a) {
      const int b = gen.integer(1, 16);
      const Moebius sum = compose(dyadic_element(phi, {std::uint64_t(a), 4}),
                                  dyadic_element(phi, {std::uint64_t(b), 4}));
      CHECK(proj_distance(sum, dyadic_element(phi, {std::uint64_t(a + b), 4})) < 1e-9);
      CHECK(self_map_report(dyadic_element(phi, {std::uint64_t(a), 4})).is_self_map);
    }
  }
  CHECK(tested == 40);
}
