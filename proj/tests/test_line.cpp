#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ruled/errors.hpp"
#include "ruled/line.hpp"

using namespace ruled;

TEST_CASE("Study map of a known line") {
  const Line l = Line::from_point_direction(Vec3(0, 1, 0), Vec3(1, 0, 1));
  const DualVector3 q = line_to_dual(l);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(q.real.isApprox(Vec3(r, 0, r)));
  CHECK(q.dual.isApprox(Vec3(r, 0, -r)));
  CHECK(l.foot_point().isApprox(Vec3(0, 1, 0)));
}

TEST_CASE("property: Study map round trip and point independence") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const Vec3 p = oracle::random_point(rng);
    const Vec3 d = oracle::random_unit(rng) * 2.5;
    const Line l = Line::from_point_direction(p, d);
    const DualVector3 q = line_to_dual(l);
    const DualNumber n = dv_dot(q, q);
    CHECK(std::abs(n.real - 1.0) < 1e-12);
    CHECK(std::abs(n.dual) < 1e-12);
    CHECK(plucker_distance(dual_to_line(q), l) < 1e-12);
    // another point on the same line gives the same coordinates
    const Line moved = Line::from_point_direction(p + shift(rng) * d, d);
    CHECK(plucker_distance(moved, l) < 1e-11);
    // foot point lies on the line and is closest to the origin
    CHECK(std::abs(l.foot_point().dot(l.direction())) < 1e-12);
    CHECK((l.foot_point() - p).cross(l.direction()).norm() < 1e-11);
  }
}

TEST_CASE("from_plucker repairs slightly off coordinates") {
  const Line l = Line::from_plucker(Vec3(0, 0, 2), Vec3(1, 0, 0.1));
  CHECK(l.direction().isApprox(Vec3(0, 0, 1)));
  CHECK(std::abs(l.direction().dot(l.moment())) < 1e-15);
}

TEST_CASE("degenerate lines are rejected") {
  try {
    (void)Line::from_point_direction(Vec3(1, 2, 3), Vec3::Zero());
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::zero_direction);
  }
  try {
    (void)dual_to_line({Vec3(1, 0, 0), Vec3(1, 0, 0)});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_line);
  }
  CHECK_THROWS_AS(dual_to_line({Vec3(2, 0, 0), Vec3(0, 1, 0)}), Error);
}

TEST_CASE("dual angle of skew, intersecting and parallel lines") {
  // x-axis and the line through (0,0,1) along y: right angle, distance 1
  const Line x = Line::from_point_direction(Vec3::Zero(), Vec3(1, 0, 0));
  const Line y = Line::from_point_direction(Vec3(0, 0, 1), Vec3(0, 1, 0));
  const DualAngle a = dual_angle_between_lines(x, y);
  CHECK(a.theta == doctest::Approx(M_PI / 2));
  CHECK(a.theta_star == doctest::Approx(1.0));
  // symmetric in the two lines, odd in the orientation of either
  CHECK(dual_angle_between_lines(y, x).theta_star == doctest::Approx(1.0));
  const Line minus_y = Line::from_point_direction(Vec3(0, 0, 1), Vec3(0, -1, 0));
  CHECK(dual_angle_between_lines(x, minus_y).theta_star == doctest::Approx(-1.0));

  const Line through = Line::from_point_direction(Vec3(2, 0, 0), Vec3(1, 1, 0));
  const DualAngle b = dual_angle_between_lines(x, through);
  CHECK(b.theta == doctest::Approx(M_PI / 4));
  CHECK(std::abs(b.theta_star) < 1e-12);

  const Line par = Line::from_point_direction(Vec3(0, 3, 4), Vec3(-2, 0, 0));
  const DualAngle c = dual_angle_between_lines(x, par);
  CHECK(c.theta == doctest::Approx(M_PI));
  CHECK(c.theta_star == doctest::Approx(5.0));
}

TEST_CASE("property: dual angle against closest approach") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 400; ++i) {
    const Vec3 p1 = oracle::random_point(rng);
    const Vec3 p2 = oracle::random_point(rng);
    const Vec3 d1 = oracle::random_unit(rng);
    const Vec3 d2 = i % 4 == 0 ? (i % 8 == 0 ? d1 : Vec3(-d1)) : oracle::random_unit(rng);
    const DualAngle a = dual_angle_between_lines(Line::from_point_direction(p1, d1),
                                                 Line::from_point_direction(p2, d2));
    const oracle::Approach o = oracle::closest_approach(p1, d1, p2, d2);
    CHECK(std::abs(a.theta - o.theta) < 1e-9);
    CHECK(std::abs(a.theta_star - o.distance) < 1e-9);
  }
}

TEST_CASE("property: dual cosine of the angle is the dual inner product") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const Line l1 = Line::from_point_direction(oracle::random_point(rng), oracle::random_unit(rng));
    const Line l2 = Line::from_point_direction(oracle::random_point(rng), oracle::random_unit(rng));
    const DualAngle a = dual_angle_between_lines(l1, l2);
    const DualNumber c = cos(a);
    const DualNumber ip = dv_dot(line_to_dual(l1), line_to_dual(l2));
    CHECK(std::abs(c.real - ip.real) < 1e-10);
    CHECK(std::abs(c.dual - ip.dual) < 1e-9);
  }
}
