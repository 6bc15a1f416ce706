#pragma once

// Oriented lines in normalized Plücker coordinates and the Study map onto
// dual unit vectors.

#include "ruled/dual.hpp"
#include "ruled/tolerances.hpp"

namespace ruled {

class Line {
 public:
  /// direction d/‖d‖, moment p × direction. Throws zero_direction.
  static Line from_point_direction(const Vec3& p, const Vec3& d,
                                   double tol = default_tolerances().algebraic);

  /// Re-normalizes d and strips the component of m along d.
  static Line from_plucker(const Vec3& d, const Vec3& m,
                           double tol = default_tolerances().algebraic);

  const Vec3& direction() const { return direction_; }
  const Vec3& moment() const { return moment_; }

  /// Closest point of the line to the origin.
  Vec3 foot_point() const { return direction_.cross(moment_); }

  Vec3 point_at(double v) const { return foot_point() + v * direction_; }

 private:
  Line(const Vec3& d, const Vec3& m) : direction_(d), moment_(m) {}

  Vec3 direction_;
  Vec3 moment_;
};

inline Line line_from_point_dir(const Vec3& p, const Vec3& d) {
  return Line::from_point_direction(p, d);
}

inline Vec3 foot_point(const Line& line) { return line.foot_point(); }

DualVector3 line_to_dual(const Line& line);

/// Inverse Study map. Throws not_a_line unless ‖real‖ = 1 and ⟨real, dual⟩ = 0
/// within tol.
Line dual_to_line(const DualVector3& q, double tol = default_tolerances().geometric);

/// θ in [0, π] between the directions and θ* the shortest distance, signed by
/// ⟨d1 × d2, p2 − p1⟩. Parallel lines get θ* ≥ 0 from the moment difference.
DualAngle dual_angle_between_lines(const Line& l1, const Line& l2,
                                   double parallel_tol = default_tolerances().parallel);

/// Max abs difference of directions and of moments.
double plucker_distance(const Line& a, const Line& b);

}  // namespace ruled
