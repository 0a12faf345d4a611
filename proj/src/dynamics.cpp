#include "lft/dynamics.hpp"

#include <cmath>

#include "lft/classify.hpp"
#include "lft/errors.hpp"

namespace lft {
namespace {

constexpr double kReliableEdge = 1e-9;

void require_in_disk(Complex z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDisk, "point not in the open unit disk");
}

template <typename Map>
Orbit run_orbit(const Map& f, Complex z0, int n) {
  require_in_disk(z0);
  Orbit o;
  o.start = z0;
  Complex prev = z0;
  for (int k = 0; k < n; ++k) {
    const Complex next = f(prev);
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
      throw Error(ErrorKind::EvaluationFailure, "orbit left the finite plane");
    }
    require_in_disk(next);
    o.points.push_back(next);
    o.steps.push_back(hyperbolic_distance(prev, next));
    prev = next;
    if (1.0 - std::abs(next) < kOrbitEdge) {
      o.truncated = k + 1 < n;
      break;
    }
  }
  return o;
}

}  // namespace

double hyperbolic_distance(Complex z, Complex w) {
  require_in_disk(z);
  require_in_disk(w);
  // |1 - conj(w) z|^2 = |z - w|^2 + (1 - |z|^2)(1 - |w|^2), which avoids the
  // cancellation in 1 - conj(w) z near the circle.
  const double rz = std::abs(z), rw = std::abs(w);
  const double gap = (1.0 - rz) * (1.0 + rz) * (1.0 - rw) * (1.0 + rw);
  const double sep = std::norm(z - w);
  if (sep == 0.0) return 0.0;
  const double r = std::sqrt(sep / (sep + gap));
  return std::log1p(r) - 0.5 * std::log(gap / (sep + gap));
}

Orbit orbit(const Moebius& m, Complex z0, int n, const Tolerances& tol) {
  if (!self_map_report(m, tol).is_self_map) throw Error(ErrorKind::NotSelfMap, "orbit needs a self-map");
  const Moebius norm = normalize(m);
  return run_orbit([&](Complex z) { return norm(z); }, z0, n);
}

Orbit orbit(const Evaluable& f, Complex z0, int n) { return run_orbit(f, z0, n); }

const char* to_string(StepClass c) {
  return c == StepClass::ZeroStep ? "ZeroStep" : "PositiveStep";
}

StepDiagnosis diagnose_step(const Moebius& m, Complex z0, int n, double threshold,
                            const Tolerances& tol) {
  const MapTag tag = classify(m, tol).tag;
  if (tag == MapTag::Identity || tag == MapTag::EllipticAut) {
    throw Error(ErrorKind::WrongClass, "steps of rotations do not tend to a limit along a converging orbit");
  }
  const Orbit o = orbit(m, z0, n, tol);

  std::vector<double> s;
  Complex prev = z0;
  for (std::size_t k = 0; k < o.points.size(); ++k) {
    if (1.0 - std::abs(prev) < kReliableEdge || 1.0 - std::abs(o.points[k]) < kReliableEdge) break;
    s.push_back(o.steps[k]);
    prev = o.points[k];
  }
  if (s.empty()) s.push_back(o.steps.front());

  StepDiagnosis d;
  d.reliable_steps = static_cast<int>(s.size());
  d.truncated = o.truncated;
  const std::size_t k = s.size();
  const double s3 = s[k - 1];
  d.last_step = s3;
  d.limit_estimate = s3;
  if (k >= 4) {
    const double s1 = s[k / 4 - 1], s2 = s[k / 2 - 1];
    const double d1 = s1 - s2, d2 = s2 - s3;
    if (d1 > 1e-9 * s3 && d2 < d1) {
      d.limit_estimate = s3 - d2 * d2 / (d1 - d2);
    } else if (d1 > 1e-9 * s3 && d2 < 2.0 * d1) {
      // Slow algebraic decay: fit s = L + c / (n + a) through the three samples.
      const double n1 = double(k / 4), n2 = double(k / 2), n3 = double(k);
      const double r = d1 / d2;
      const double a = ((n2 - n1) * n3 - r * (n3 - n2) * n1) / (r * (n3 - n2) - (n2 - n1));
      if (a > -n1) {
        const double c = d2 * (n2 + a) * (n3 + a) / (n3 - n2);
        d.limit_estimate = s3 - c / (n3 + a);
      }
    }
  }
  const bool zero = s3 < threshold || d.limit_estimate < 0.5 * s3;
  d.verdict = zero ? StepClass::ZeroStep : StepClass::PositiveStep;
  return d;
}

StepClass step_class(const Moebius& m, Complex z0, int n, double threshold, const Tolerances& tol) {
  return diagnose_step(m, z0, n, threshold, tol).verdict;
}

}  // namespace lft
