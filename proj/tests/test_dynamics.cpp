#include <cmath>

#include "doctest.h"
#include "lft/classify.hpp"
#include "lft/dynamics.hpp"
#include "lft/errors.hpp"
#include "random_maps.hpp"

using namespace lft;
using lft::testing::MapGen;

namespace {

const Complex I{0.0, 1.0};

// Textbook form, fine away from the circle.
double naive_distance(Complex z, Complex w) {
  return std::atanh(std::abs(z - w) / std::abs(1.0 - std::conj(w) * z));
}

}  // namespace

TEST_CASE("hyperbolic distance") {
  CHECK(hyperbolic_distance(0.0, 0.0) == 0.0);
  CHECK(std::abs(hyperbolic_distance(0.0, 0.5) - 0.5 * std::log(3.0)) < 1e-15);
  CHECK_THROWS_AS(hyperbolic_distance(1.0, 0.0), Error);

  MapGen gen(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const Complex z = gen.in_disk(0.95), w = gen.in_disk(0.95);
    const double d = hyperbolic_distance(z, w);
    CHECK(std::abs(d - hyperbolic_distance(w, z)) < 1e-14);
    CHECK(std::abs(d - naive_distance(z, w)) < 1e-12 * (1.0 + d));
    const Moebius a = gen.automorphism();
    CHECK(std::abs(hyperbolic_distance(a(z), a(w)) - d) < 1e-10);
  }
}

TEST_CASE("orbits") {
  Orbit o = orbit(Moebius{1.0, 0.0, 0.0, 2.0}, 0.8, 3);
  REQUIRE(o.points.size() == 3);
  CHECK(std::abs(o.points[0] - 0.4) < 1e-15);
  CHECK(std::abs(o.points[1] - 0.2) < 1e-15);
  CHECK(std::abs(o.points[2] - 0.1) < 1e-15);
  CHECK(std::abs(o.steps[0] - naive_distance(0.8, 0.4)) < 1e-14);

  o = orbit(Moebius{1.0, 1.0, 0.0, 2.0}, 0.0, 3);
  CHECK(std::abs(o.points[0] - 0.5) < 1e-15);
  CHECK(std::abs(o.points[1] - 0.75) < 1e-15);
  CHECK(std::abs(o.points[2] - 0.875) < 1e-15);

  o = orbit(Moebius{1.0, 1.0, 0.0, 2.0}, 0.0, 200);
  CHECK(o.truncated);
  CHECK(o.points.size() < 200);

  const Evaluable square = [](Complex z) { return z * z; };
  o = orbit(square, 0.5, 4);
  CHECK(std::abs(o.points[3] - std::pow(0.5, 16)) < 1e-18);

  CHECK_THROWS_AS(orbit(Moebius{2.0, 0.0, 0.0, 1.0}, 0.1, 3), Error);
  CHECK_THROWS_AS(orbit(Moebius{1.0, 0.0, 0.0, 2.0}, 1.5, 3), Error);
}

TEST_CASE("step classes of fixed examples") {
  CHECK(step_class({1.0, 1.0, -1.0, 3.0}) == StepClass::ZeroStep);
  CHECK(step_class({2.0 - I, I, -I, 2.0 + I}) == StepClass::PositiveStep);
  CHECK(step_class({1.0, 1.0, 0.0, 2.0}) == StepClass::PositiveStep);
  CHECK(step_class({1.0, 0.0, 0.0, 2.0}) == StepClass::ZeroStep);
  CHECK(step_class({3.0, 1.0, 1.0, 3.0}, 0.3 * I) == StepClass::PositiveStep);

  const StepDiagnosis d = diagnose_step({1.0, 1.0, 0.0, 2.0});
  CHECK(d.limit_estimate > 0.3);

  CHECK_THROWS_AS(step_class(Moebius::identity()), Error);
  CHECK_THROWS_AS(step_class({-1.0, 0.0, 0.0, 1.0}), Error);
}

TEST_CASE("property: Schwarz-Pick monotonicity of steps") {
  MapGen gen(5);
  for (MapTag tag : kAllTags) {
    for (int trial = 0; trial < 100; ++trial) {
      const Moebius m = gen.of_tag(tag);
      const Orbit o = orbit(m, gen.in_disk(0.9), 64);
      for (std::size_t k = 1; k < o.steps.size(); ++k) {
        const double edge = 1.0 - std::abs(o.points[k]);
        if (edge < 1e-9) break;
        // Rounding of z itself costs about eps / (1 - |z|) in the distance.
        CHECK(o.steps[k] <= o.steps[k - 1] + 1e-15 / edge + 1e-12);
      }
    }
  }
}

TEST_CASE("property: step class follows the parabolic defect") {
  MapGen gen(23);
  const double eps = Tolerances{}.classify;
  for (int trial = 0; trial < 1000; ++trial) {
    const Moebius m = gen.coin() ? gen.parabolic_aut() : gen.parabolic_nonaut();
    const double defect = parabolic_defect(m);
    const StepClass expect = defect > eps ? StepClass::ZeroStep : StepClass::PositiveStep;
    CHECK(step_class(m, gen.in_disk(0.5)) == expect);
  }
}
