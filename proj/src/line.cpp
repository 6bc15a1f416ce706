#include "ruled/line.hpp"

#include <algorithm>
#include <cmath>

#include "ruled/errors.hpp"

namespace ruled {

Line Line::from_point_direction(const Vec3& p, const Vec3& d, double tol) {
  const double n = d.norm();
  if (!(n > tol)) throw Error(ErrorCode::zero_direction, "line direction is the zero vector");
  const Vec3 u = d / n;
  return Line(u, p.cross(u));
}

Line Line::from_plucker(const Vec3& d, const Vec3& m, double tol) {
  const double n = d.norm();
  if (!(n > tol)) throw Error(ErrorCode::zero_direction, "line direction is the zero vector");
  const Vec3 u = d / n;
  const Vec3 mu = m / n;
  return Line(u, mu - mu.dot(u) * u);
}

DualVector3 line_to_dual(const Line& line) { return {line.direction(), line.moment()}; }

Line dual_to_line(const DualVector3& q, double tol) {
  const double n = q.real.norm();
  if (std::abs(n - 1.0) > tol || std::abs(q.real.dot(q.dual)) > tol) {
    throw Error(ErrorCode::not_a_line, "dual vector is not on the dual unit sphere");
  }
  return Line::from_plucker(q.real, q.dual);
}

DualAngle dual_angle_between_lines(const Line& l1, const Line& l2, double parallel_tol) {
  const Vec3& d1 = l1.direction();
  const Vec3& d2 = l2.direction();
  const Vec3 n = d1.cross(d2);
  const double s = n.norm();
  const double c = d1.dot(d2);
  const double theta = std::atan2(s, c);
  // Dual part of d̃1 × d̃2 carries the distance information for both branches.
  const Vec3 dual_cross = d1.cross(l2.moment()) + l1.moment().cross(d2);
  if (s < parallel_tol) {
    // d1 ≈ ±d2: the moment difference is (p2 − p1) × d, whose norm is the distance.
    const Vec3 dm = l2.moment() - (c >= 0 ? 1.0 : -1.0) * l1.moment();
    return {theta, dm.norm()};
  }
  // cos θ̄ dual part: −θ* s = ⟨d1, m2⟩ + ⟨m1, d2⟩.
  const double cos_dual = d1.dot(l2.moment()) + l1.moment().dot(d2);
  const double sin_dual = n.dot(dual_cross) / s;
  // c² + s² = 1 recovers θ* from both parts without dividing by either.
  const double theta_star = c * sin_dual - s * cos_dual;
  const Vec3 gap = l2.foot_point() - l1.foot_point();
  const double sign = n.dot(gap) >= 0 ? 1.0 : -1.0;
  return {theta, sign * std::abs(theta_star)};
}

double plucker_distance(const Line& a, const Line& b) {
  return std::max((a.direction() - b.direction()).cwiseAbs().maxCoeff(),
                  (a.moment() - b.moment()).cwiseAbs().maxCoeff());
}

}  // namespace ruled
