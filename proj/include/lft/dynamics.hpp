#pragma once

#include <functional>
#include <vector>

#include "lft/moebius.hpp"
#include "lft/tolerances.hpp"

namespace lft {

/// Point-evaluable holomorphic map. May throw Error(EvaluationFailure).
using Evaluable = std::function<Complex(Complex)>;

/// Poincare distance atanh(|z - w| / |1 - conj(w) z|); throws OutsideDisk.
double hyperbolic_distance(Complex z, Complex w);

/// Forward orbit z_k = f^{k+1}(start). steps[k] is the distance from the
/// previous point (start for k = 0) to points[k].
struct Orbit {
  Complex start;
  std::vector<Complex> points;
  std::vector<double> steps;
  // Stopped early because an iterate came within 1e-14 of the circle.
  bool truncated = false;
};

inline constexpr double kOrbitEdge = 1e-14;

/// Throws NotSelfMap or OutsideDisk.
Orbit orbit(const Moebius& m, Complex z0, int n, const Tolerances& tol = {});
Orbit orbit(const Evaluable& f, Complex z0, int n);

enum class StepClass { ZeroStep, PositiveStep };

const char* to_string(StepClass c);

/// What the step classifier saw.
struct StepDiagnosis {
  StepClass verdict = StepClass::PositiveStep;
  double last_step = 0.0;
  // Extrapolated limit of the step sequence.
  double limit_estimate = 0.0;
  // Steps taken while both endpoints were at least 1e-9 from the circle.
  int reliable_steps = 0;
  bool truncated = false;
};

/// The step sequence decreases to its limit; ZeroStep when the last reliable
/// step is below `threshold` or an Aitken extrapolation over the quarter,
/// half and full reliable prefix puts the limit below half the last step.
/// Throws WrongClass for the identity and elliptic automorphisms.
StepDiagnosis diagnose_step(const Moebius& m, Complex z0 = 0.0, int n = 256,
                            double threshold = 1e-6, const Tolerances& tol = {});

StepClass step_class(const Moebius& m, Complex z0 = 0.0, int n = 256, double threshold = 1e-6,
                     const Tolerances& tol = {});

}  // namespace lft
