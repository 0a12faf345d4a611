#pragma once

namespace lft {

/// Numerical thresholds shared across the library. Defaults are the values
/// the test suites are calibrated against; the CLI can override each one.
struct Tolerances {
  // |ad - bc| below this times max|coef|^2 is a collapsed map.
  double degeneracy = 1e-12;
  // Band for |multiplier|, |dw point| and the parabolic defect.
  double classify = 1e-9;
  // |discriminant| below this times the squared coefficient norm of the
  // det-1 representative is read as a double fixed point.
  double double_root = 1e-12;
  // Distance from the unit circle under which a fixed point is a candidate
  // boundary Denjoy-Wolff point.
  double boundary = 1e-6;
  // |lambda^n - 1| for rotation orders.
  double rotation = 1e-9;
  // Chordal distance for matching fixed-point sets.
  double fixed_point_match = 1e-8;
  // Equality of multipliers and of the second-derivative relation.
  double multiplier_match = 1e-9;
  // Intertwining residual on sample grids.
  double residual = 1e-10;
  // Slack on the elliptic root inequality (admits automorphic equality).
  double root_slack = 1e-12;
  // Identity detection: projective distance to id.
  double identity = 1e-9;
};

}  // namespace lft
