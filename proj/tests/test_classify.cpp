#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lft/classify.hpp"
#include "lft/errors.hpp"
#include "random_maps.hpp"

using namespace lft;
using lft::testing::MapGen;

namespace {

const Complex I{0.0, 1.0};
const double kPi = std::numbers::pi;

// Sampled oracle: the image of a dense circle stays in the closed disk and
// the pole lies outside it.
bool sampled_self_map(const Moebius& m) {
  if (std::abs(m.c()) >= std::abs(m.d())) return false;
  for (int k = 0; k < 2048; ++k) {
    const Complex z = std::polar(1.0, 2.0 * kPi * k / 2048.0);
    if (std::abs(m(z)) > 1.0 + 1e-6) return false;
  }
  return true;
}

bool near(const SpherePoint& p, Complex z, double tol = 1e-10) {
  return chordal_distance(p, SpherePoint::finite(z)) < tol;
}

// (2 pi i + (1 - 2 pi i) z) / (1 + 2 pi i - 2 pi i z)
const Moebius kExpParabolic{1.0 - 2.0 * kPi * I, 2.0 * kPi * I, -2.0 * kPi * I, 1.0 + 2.0 * kPi * I};

}  // namespace

TEST_CASE("self-map report on fixed examples") {
  SelfMapReport r = self_map_report({1.0, 1.0, 0.0, 2.0});
  CHECK(r.is_self_map);
  CHECK_FALSE(r.is_automorphism);
  CHECK(std::abs(r.margin_lemma) < 1e-15);
  CHECK(r.boundary_case);

  r = self_map_report({3.0, 1.0, 1.0, 3.0});
  CHECK(r.is_self_map);
  CHECK(r.is_automorphism);

  r = self_map_report({2.0, 0.0, 0.0, 1.0});
  CHECK_FALSE(r.is_self_map);
  CHECK(r.margin_lemma < 0.0);

  // Pole inside the disk with a positive-looking quadratic form.
  r = self_map_report({0.0, 1.0, 2.0, 1.0});
  CHECK_FALSE(r.is_self_map);
}

TEST_CASE("classify fixed examples") {
  DiskMapClass c = classify({3.0, 1.0, 1.0, 3.0});
  CHECK(c.tag == MapTag::HyperbolicAut);
  CHECK(near(c.dw_point, 1.0));
  CHECK(std::abs(c.multiplier - 0.5) < 1e-14);
  CHECK_FALSE(c.parabolic_defect.has_value());

  c = classify({1.0, 0.0, -1.0, 2.0});
  CHECK(c.tag == MapTag::EllipticNonAut);
  CHECK(near(c.dw_point, 0.0));
  CHECK(std::abs(c.multiplier - 0.5) < 1e-14);

  c = classify({2.0 - I, I, -I, 2.0 + I});
  CHECK(c.tag == MapTag::ParabolicAut);
  CHECK(near(c.dw_point, 1.0));
  REQUIRE(c.parabolic_defect.has_value());
  CHECK(std::abs(*c.parabolic_defect) < 1e-14);

  c = classify({1.0, 1.0, -1.0, 3.0});
  CHECK(c.tag == MapTag::ParabolicNonAut);
  CHECK(std::abs(*c.parabolic_defect - 1.0) < 1e-14);

  c = classify({1.0, 1.0, 0.0, 2.0});
  CHECK(c.tag == MapTag::HyperbolicNonAut);
  CHECK(near(c.dw_point, 1.0));

  c = classify({-1.0, 0.0, 0.0, 1.0});
  CHECK(c.tag == MapTag::EllipticAut);
  CHECK(std::abs(c.multiplier + 1.0) < 1e-15);

  c = classify({1.0, 0.0, 0.0, 4.0});
  CHECK(c.tag == MapTag::EllipticNonAut);

  CHECK(classify(kExpParabolic).tag == MapTag::ParabolicAut);
  CHECK(classify({5.0, 5e-12, 0.0, 5.0}).tag == MapTag::Identity);
  CHECK(classify({7.0, 0.0, 0.0, 7.0}).tag == MapTag::Identity);

  CHECK_THROWS_AS(classify({2.0, 0.0, 0.0, 1.0}), Error);
}

TEST_CASE("tag names round-trip") {
  for (MapTag t : kAllTags) CHECK(tag_from_string(to_string(t)) == t);
  CHECK_FALSE(tag_from_string("Loxodromic").has_value());
}

TEST_CASE("Cayley conjugation") {
  HalfPlaneAffine h = cayley_conjugate({5.0, 3.0, 3.0, 5.0});
  CHECK(std::abs(h.A - 4.0) < 1e-12);
  CHECK(std::abs(h.B) < 1e-12);
  CHECK(std::abs(h.tau - 1.0) < 1e-14);

  h = cayley_conjugate({1.0, 1.0, 0.0, 2.0});
  CHECK(std::abs(h.A - 2.0) < 1e-12);
  CHECK(std::abs(h.B - 1.0) < 1e-12);

  h = cayley_conjugate(kExpParabolic);
  CHECK(std::abs(h.A - 1.0) < 1e-12);
  CHECK(std::abs(h.B - 4.0 * kPi * I) < 1e-11);

  CHECK_THROWS_AS(cayley_conjugate({1.0, 0.0, 0.0, 2.0}), Error);
  CHECK_THROWS_AS(cayley_conjugate(Moebius::identity()), Error);
}

TEST_CASE("from_halfplane") {
  CHECK(proj_distance(from_halfplane({2.0, 1.0, 1.0}), {1.0, 1.0, 0.0, 2.0}) < 1e-14);
  CHECK(proj_distance(from_halfplane({1.0, 0.0, 1.0}), Moebius::identity()) < 1e-14);
  CHECK(proj_distance(from_halfplane({2.0, 0.0, 1.0}), {3.0, 1.0, 1.0, 3.0}) < 1e-14);
  CHECK_THROWS_AS(from_halfplane({0.5, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(from_halfplane({2.0, -1.0, 1.0}), Error);
  CHECK_THROWS_AS(from_halfplane({2.0, 0.0, 2.0}), Error);
}

TEST_CASE("rotation order") {
  CHECK(rotation_order(-1.0) == 2);
  CHECK(rotation_order(I) == 4);
  CHECK(rotation_order(1.0) == 1);
  CHECK_FALSE(rotation_order(std::polar(1.0, 1.0)).has_value());
  CHECK(rotation_order(std::polar(1.0, 2.0 * kPi * 3.0 / 7.0)) == 7);
  CHECK_FALSE(rotation_order(0.5).has_value());
}

TEST_CASE("parabolic defect") {
  CHECK(std::abs(parabolic_defect({2.0 - I, I, -I, 2.0 + I})) < 1e-14);
  CHECK(std::abs(parabolic_defect({1.0, 1.0, -1.0, 3.0}) - 1.0) < 1e-14);
  CHECK(std::abs(parabolic_defect({1.0 - I, I, -I, 1.0 + I})) < 1e-14);
  CHECK_THROWS_AS(parabolic_defect({3.0, 1.0, 1.0, 3.0}), Error);
}

TEST_CASE("property: the two self-map criteria agree with a sampled oracle") {
  MapGen gen(7);
  int compared = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    Moebius m = gen.quadruple();
    if (std::abs(m.c()) >= std::abs(m.d())) continue;
    const SelfMapReport r = self_map_report(m);
    if (std::abs(r.margin_lemma) < 1e-9 || std::abs(r.margin_prop) < 1e-9) continue;
    ++compared;
    CHECK((r.margin_lemma >= 0.0) == (r.margin_prop >= 0.0));
    if (std::abs(r.margin_lemma) > 1e-4) CHECK(r.is_self_map == sampled_self_map(m));
  }
  CHECK(compared > 1000);
}

TEST_CASE("property: generated maps carry the class they were built for") {
  MapGen gen(11);
  for (MapTag tag : kAllTags) {
    for (int trial = 0; trial < 300; ++trial) {
      const Moebius m = gen.of_tag(tag);
      const DiskMapClass c = classify(m);
      CHECK(c.tag == tag);
      CHECK(std::abs(c.multiplier) <= 1.0 + 1e-12);
      if (is_hyperbolic(tag)) {
        CHECK(std::abs(c.multiplier.imag()) < 1e-10);
        CHECK(c.multiplier.real() > 0.0);
        CHECK(c.multiplier.real() < 1.0);
      }
      if (is_parabolic(tag)) CHECK(*c.parabolic_defect >= -1e-9);
      CHECK(self_map_report(m).is_automorphism == is_automorphic(tag));
    }
  }
}

TEST_CASE("property: classification is invariant under automorphic conjugation") {
  MapGen gen(13);
  for (MapTag tag : kAllTags) {
    for (int trial = 0; trial < 200; ++trial) {
      const Moebius m = gen.of_tag(tag);
      const Moebius alpha = gen.automorphism(0.7);
      const Moebius conj = compose(alpha, compose(m, inverse(alpha)));
      CHECK(classify(conj).tag == classify(m).tag);
    }
  }
}

TEST_CASE("property: orbits approach the Denjoy-Wolff point") {
  MapGen gen(17);
  const MapTag tags[] = {MapTag::EllipticNonAut, MapTag::HyperbolicAut, MapTag::HyperbolicNonAut};
  for (MapTag tag : tags) {
    for (int trial = 0; trial < 200; ++trial) {
      const Moebius m = gen.of_tag(tag);
      const DiskMapClass c = classify(m);
      const Moebius it = iterate_n(m, 64);
      const double d = chordal_distance(apply(it, SpherePoint::finite(0.0)), c.dw_point);
      // Contraction can be arbitrarily slow near the class boundaries, so only
      // well-separated multipliers are checked.
      if (std::abs(c.multiplier) < 0.7) CHECK(d < 1e-3);
    }
  }
  // Parabolic maps converge like 1/n; take enough steps for the 1e-3 bound.
  for (int trial = 0; trial < 200; ++trial) {
    const Moebius m = gen.of_tag(trial % 2 ? MapTag::ParabolicAut : MapTag::ParabolicNonAut);
    const DiskMapClass c = classify(m);
    const Moebius it = iterate_n(m, 1u << 14);
    CHECK(chordal_distance(apply(it, SpherePoint::finite(0.0)), c.dw_point) < 1e-3);
  }
}

TEST_CASE("property: half-plane round trip") {
  MapGen gen(19);
  const MapTag tags[] = {MapTag::HyperbolicAut, MapTag::HyperbolicNonAut, MapTag::ParabolicAut,
                         MapTag::ParabolicNonAut};
  for (MapTag tag : tags) {
    for (int trial = 0; trial < 300; ++trial) {
      const Moebius m = gen.of_tag(tag);
      const HalfPlaneAffine h = cayley_conjugate(m);
      CHECK(std::abs(h.A - 1.0 / classify(m).multiplier.real()) < 1e-9);
      CHECK(proj_distance(from_halfplane(h), m) < 1e-10);
    }
  }
}
