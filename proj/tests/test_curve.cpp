#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "ruled/curve.hpp"

using namespace ruled;
using oracle::C;

namespace {

CurveSampler<Vec3> circle(double r) {
  return oracle::curve([r](const Jet<double>& t) { return oracle::vec(r * cos(t), r * sin(t), 0.0 * t); });
}

CurveSampler<double> scalar(std::function<double(double)> f, double period = 2.0 * M_PI) {
  CurveSampler<double> c;
  c.period = period;
  c.evaluate = std::move(f);
  return c;
}

}  // namespace

TEST_CASE("jets and finite differences agree") {
  const auto c = oracle::curve([](const Jet<double>& t) { return oracle::vec(sin(t), cos(2.0 * t), t * t); });
  CurveSampler<Vec3> plain = c;
  plain.jet = nullptr;
  for (double t : {0.1, 1.3, 4.0}) {
    CHECK((differentiate(c, t, 1) - Vec3(std::cos(t), -2 * std::sin(2 * t), 2 * t)).norm() < 1e-13);
    CHECK((differentiate(c, t, 2) - Vec3(-std::sin(t), -4 * std::cos(2 * t), 2.0)).norm() < 1e-12);
    CHECK((differentiate(c, t, 3) - Vec3(-std::cos(t), 8 * std::sin(2 * t), 0.0)).norm() < 1e-11);
    CHECK((differentiate(plain, t, 1) - differentiate(c, t, 1)).norm() < 1e-6);
    CHECK((differentiate(plain, t, 2) - differentiate(c, t, 2)).norm() < 1e-4);
  }
}

TEST_CASE("closed integrals of trigonometric polynomials") {
  const double a = closed_integral<double>([](double t) { return std::cos(t) * std::cos(t); }, 2 * M_PI);
  CHECK(a == doctest::Approx(M_PI).epsilon(1e-14));
  QuadratureSpec simpson{400, QuadratureRule::simpson};
  const double b = closed_integral<double>([](double t) { return t * t; }, 3.0, simpson);
  CHECK(b == doctest::Approx(9.0).epsilon(1e-12));
  CHECK_THROWS_AS(validate(QuadratureSpec{4}), Error);
}

TEST_CASE("cumulative integral of cosine is sine") {
  const CurveSampler<double> F = cumulative_integral(scalar([](double t) { return std::cos(t); }));
  for (double t : {0.0, 0.4, 1.0, 2.5, 6.0}) CHECK(std::abs(F(t) - std::sin(t)) < 1e-10);
}

TEST_CASE("cumulative integral carries jets") {
  CurveSampler<double> f = scalar([](double t) { return std::exp(0.3 * t); });
  f.jet = [](double t) { return exp(0.3 * jet_variable(t)); };
  const CurveSampler<double> F = cumulative_integral(f);
  REQUIRE(F.has_jet());
  const double t = 1.7;
  CHECK(std::abs(F(t) - (std::exp(0.3 * t) - 1.0) / 0.3) < 1e-10);
  CHECK(std::abs(differentiate(F, t, 1) - std::exp(0.3 * t)) < 1e-12);
  CHECK(std::abs(differentiate(F, t, 2) - 0.3 * std::exp(0.3 * t)) < 1e-12);
}

TEST_CASE("length and arclength of a circle") {
  CHECK(curve_length(circle(2.0)) == doctest::Approx(4 * M_PI).epsilon(1e-12));
  const CurveSampler<Vec3> s = arclength_reparam(circle(2.0));
  CHECK(s.period == doctest::Approx(4 * M_PI));
  for (double u : {0.0, 1.0, 5.0, 12.0}) {
    CHECK(std::abs(differentiate(s, u, 1).norm() - 1.0) < 1e-9);
    CHECK((s(u) - Vec3(2 * std::cos(u / 2), 2 * std::sin(u / 2), 0)).norm() < 1e-9);
  }
}

TEST_CASE("arclength of a curve with a stop is rejected") {
  const auto c = oracle::curve([](const Jet<double>& t) {
    const Jet<double> s = sin(t);
    return oracle::vec(s * s * s, C(0.0), C(0.0));
  });
  try {
    (void)arclength_reparam(c);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_curve);
  }
}

TEST_CASE("splines reproduce nodes and converge to smooth curves") {
  const int n = 128;
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * M_PI * i / n;
    pts.emplace_back(std::cos(t), std::sin(2 * t), 0.5 * std::cos(3 * t));
  }
  const auto p = interpolate_periodic<Vec3>(pts, 2 * M_PI);
  for (int i = 0; i < n; i += 7) CHECK((p(2 * M_PI * i / n) - pts[i]).norm() < 1e-13);
  for (double t : {0.123, 2.9, 6.1}) {
    CHECK((p(t) - Vec3(std::cos(t), std::sin(2 * t), 0.5 * std::cos(3 * t))).norm() < 1e-5);
    CHECK(std::abs(differentiate(p, t, 1).x() + std::sin(t)) < 1e-3);
  }

  std::vector<double> ys;
  for (int i = 0; i <= 100; ++i) ys.push_back(std::pow(i / 100.0, 2));
  const auto q = interpolate_natural<double>(ys, 1.0);
  CHECK(q(1.0) == doctest::Approx(1.0));
  CHECK(std::abs(q(0.555) - 0.555 * 0.555) < 1e-4);
}

TEST_CASE("Frenet integration with constant curvature and torsion is a helix") {
  const double k = 0.8;
  const double tau = 0.6;
  const FrenetCurve c = integrate_frenet([k](double) { return C(k); }, [tau](double) { return C(tau); }, 5.0);
  const double r = k / (k * k + tau * tau);
  for (double s : {0.5, 2.0, 4.9}) {
    CHECK(std::abs(c.tangent(s).norm() - 1.0) < 1e-10);
    CHECK(std::abs(c.tangent(s).dot(c.normal(s))) < 1e-10);
    CHECK((c.tangent(s).cross(c.normal(s)) - c.binormal(s)).norm() < 1e-10);
    // the axis direction τT + κB is constant
    const Vec3 axis = tau * c.tangent(s) + k * c.binormal(s);
    CHECK((axis - (tau * c.tangent(0.0) + k * c.binormal(0.0))).norm() < 1e-9);
    // N' = −κT + τB, checked through the jets
    const Vec3 dn = differentiate(c.normal, s, 1);
    CHECK((dn - (-k * c.tangent(s) + tau * c.binormal(s))).norm() < 1e-9);
    // distance to the axis is the helix radius
    const Vec3 centre_offset = c.position(s) + r * c.normal(s);
    const Vec3 centre0 = c.position(0.0) + r * c.normal(0.0);
    const Vec3 a = axis.normalized();
    const Vec3 gap = centre_offset - centre0;
    CHECK((gap - gap.dot(a) * a).norm() < 1e-9);
  }
}
