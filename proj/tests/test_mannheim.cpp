#include "doctest.h"
#include "oracles.hpp"
#include "ruled/catalog.hpp"
#include "ruled/expr.hpp"
#include "ruled/mannheim.hpp"

using namespace ruled;

namespace {

double max_line_deviation(const OffsetResult& o, const std::function<Line(double)>& want) {
  double dev = 0.0;
  for (double u : sample_parameters(o.source, 256)) dev = std::max(dev, plucker_distance(dual_to_line(o.q1(u)), want(u)));
  return dev;
}

bool all_asserted_pass(const std::vector<RelationCheck>& checks) {
  bool ok = true;
  for (const RelationCheck& c : checks) {
    if (c.asserted && !c.pass) {
      INFO(c.id << " lhs " << c.lhs << " rhs " << c.rhs);
      ok = false;
      CHECK(c.pass);
    }
  }
  return ok;
}

}  // namespace

TEST_CASE("cone offsets reproduce the closed-form line sets") {
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const OffsetResult o1 = rotate_offset(cone, OffsetAngle::constant({0.0, std::sqrt(2.0)}));
  CHECK(max_line_deviation(o1, oracle::offset_cone) < 1e-9);

  const CurveSampler<double> zero_shift = expression_sampler(Expression::parse("pi/2"), cone.period);
  const CurveSampler<double> linear = expression_sampler(Expression::parse("sqrt(2)*t"), cone.period);
  const OffsetResult o2 = rotate_offset(cone, OffsetAngle::varying(zero_shift, linear), Closure::open);
  CHECK(max_line_deviation(o2, oracle::offset_helicoid) < 1e-9);

  const OffsetResult o3 = rotate_offset(cone, OffsetAngle::constant({M_PI / 3, std::sqrt(2.0)}));
  CHECK(max_line_deviation(o3, [](double u) {
          return Line::from_point_direction(oracle::hyperboloid_base(u), oracle::hyperboloid_direction(u));
        }) < 1e-9);
}

TEST_CASE("offset frame is orthonormal and keeps the central normal") {
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  const OffsetResult o = rotate_offset(s, OffsetAngle::constant({0.6, 0.4}));
  for (double t : {0.0, 0.9, 2.2, 5.0}) {
    const DualFrameJet f = dual_frame_jet(s, t);
    CHECK(max_abs_diff(o.h1(t), f.a.value()) < 1e-12);
    const DualVector3 n = dv_cross(o.q1(t), o.h1(t));
    const bool right_handed = max_abs_diff(n, o.a1(t)) < 1e-12;
    const bool left_handed = max_abs_diff(n, -(o.a1(t))) < 1e-12;
    CHECK((right_handed || left_handed));
    // the dual angle between the rulings is the offset angle
    const DualAngle d = dual_angle_between_lines(s.ruling(t), dual_to_line(o.q1(t)));
    CHECK(d.theta == doctest::Approx(0.6));
    CHECK(std::abs(std::abs(d.theta_star) - 0.4) < 1e-10);
  }
}

TEST_CASE("Mannheim angle solves the offset ODE and makes a Mannheim pair") {
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  const OffsetAngle angle = mannheim_angle(s, {0.3, 0.2});
  CHECK(angle.kind() == OffsetAngle::Kind::mannheim);
  for (double t : {0.5, 2.0, 4.5}) {
    const DualNumber d = angle.jet(t).derivative(1);
    const DualNumber k1 = dual_frame_jet(s, t).k1.value();
    CHECK(std::abs(d.real + k1.real) < 1e-10);
    CHECK(std::abs(d.dual + k1.dual) < 1e-10);
  }
  const OffsetResult o = rotate_offset(s, angle, Closure::open);
  CHECK(mannheim_residual(o).max_sine() < 1e-6);
  CHECK(is_mannheim_pair(o, 1e-6).is_pair);
}

TEST_CASE("constant angle on a surface with turning rulings is not Mannheim") {
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const OffsetResult o = rotate_offset(cone, OffsetAngle::constant({0.0, std::sqrt(2.0)}));
  const MannheimResidual r = mannheim_residual(o);
  CHECK(r.max_sine() > 1e-2);
  CHECK(r.max_coefficient == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_FALSE(is_mannheim_pair(o, 1e-6).is_pair);
}

TEST_CASE("pair detection between unrelated surface definitions") {
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  const PairCheck self = is_mannheim_pair(s, s, 1e-6, 64);
  CHECK(self.heuristic_alignment);
  CHECK_FALSE(self.is_pair);
  CHECK(self.max_deviation_real > 1e-2);

  // smallest-angle matching cannot follow a large offset angle
  const OffsetResult o = rotate_offset(s, mannheim_angle(s, {0.5, 0.3}), Closure::open);
  try {
    (void)is_mannheim_pair(s, o.surface, 1e-6, 64);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::alignment);
  }
}

TEST_CASE("dual pitch relations on the skew surface") {
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  for (double th : {0.0, M_PI / 4, M_PI / 2}) {
    for (double ts : {0.0, 0.5}) {
      const OffsetResult o = rotate_offset(s, OffsetAngle::constant({th, ts}));
      INFO("theta " << th << " theta* " << ts);
      const auto checks = dual_pitch_relation(o, 1e-6);
      CHECK(checks.size() >= 4);
      CHECK(all_asserted_pass(checks));
      CHECK(all_asserted_pass(projected_area_relations(o, 1e-6)));
    }
  }
}

TEST_CASE("special cases appear only at their angles") {
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  auto ids = [&](double th, double ts) {
    std::vector<std::string> out;
    for (const auto& c : dual_pitch_relation(rotate_offset(s, OffsetAngle::constant({th, ts})), 1e-6)) out.push_back(c.id);
    return out;
  };
  auto has_prefix = [](const std::vector<std::string>& v, const std::string& p) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& x) { return x.rfind(p, 0) == 0; });
  };
  CHECK(has_prefix(ids(0.0, 0.5), "eq35"));
  CHECK_FALSE(has_prefix(ids(0.7, 0.5), "eq35"));
  CHECK(has_prefix(ids(M_PI / 2, 0.5), "eq37"));
  CHECK(has_prefix(ids(0.7, 0.0), "eq39"));
}

TEST_CASE("varying angles only report the pitch relation") {
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  const auto th = expression_sampler(Expression::parse("0.5 + 0.1*sin(t)"), s.period);
  const auto ts = expression_sampler(Expression::parse("0.2"), s.period);
  const OffsetResult o = rotate_offset(s, OffsetAngle::varying(th, ts));
  for (const auto& c : dual_pitch_relation(o, 1e-6)) CHECK_FALSE(c.asserted);
}

TEST_CASE("developable helix offset") {
  const double r = 1.0;
  const double c = 0.5;
  const double tau = c / (r * r + c * c);
  const RuledSurfaceDef s = make_catalog_surface("tangent-developable-of-helix", {{"radius", r}, {"slope", c}});
  const OffsetResult o = rotate_offset(s, OffsetAngle::constant({M_PI / 4, -1.0 / tau}));
  const DevelopabilityReport d = developability_condition(o, 1e-6);
  CHECK(d.max_residual < 1e-6);
  CHECK(d.max_drall_direct < 1e-6);
  CHECK(d.equivalence_holds);
  CHECK_FALSE(d.singular_branch);
  for (const auto& x : d.samples) CHECK(x.torsion == doctest::Approx(tau));

  // a different distance breaks developability and the residual says so
  const OffsetResult bad = rotate_offset(s, OffsetAngle::constant({M_PI / 4, 1.0}));
  const DevelopabilityReport e = developability_condition(bad, 1e-6);
  CHECK(e.max_residual > 1e-2);
  CHECK(e.max_drall_direct > 1e-2);
  CHECK(e.equivalence_holds);
}

TEST_CASE("developability needs a developable source with a striction line") {
  const OffsetResult skew = rotate_offset(make_catalog_surface("closed-skew"), OffsetAngle::constant({0.3, 0.1}));
  CHECK_THROWS_AS(developability_condition(skew, 1e-6), Error);
  const OffsetResult cone = rotate_offset(make_catalog_surface("paper-cone"), OffsetAngle::constant({0.3, 0.1}));
  try {
    (void)developability_condition(cone, 1e-6);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_striction);
  }
}

TEST_CASE("partner curves on the Frenet-built developable") {
  const Parameters p{{"kappa", 1.0}, {"theta0", 1.2}, {"theta_star", 0.5}, {"length", 0.6}};
  const RuledSurfaceDef s = make_catalog_surface("frenet-mannheim", p);
  const OffsetResult o = rotate_offset(s, mannheim_angle(s, {1.2, 0.5}), Closure::open);
  const DevelopabilityReport d = developability_condition(o, 1e-6);
  CHECK(d.max_residual < 1e-6);
  CHECK(d.max_drall_direct < 1e-6);
  const PartnerCheck pc = mannheim_partner_check(o, 1e-6);
  CHECK(pc.applicable);
  CHECK(pc.pass);
  CHECK(pc.max_sine < 1e-6);
}

TEST_CASE("drall formula matches the direct value under the Mannheim condition") {
  const RuledSurfaceDef s = make_catalog_surface("frenet-mannheim");
  const OffsetResult o = rotate_offset(s, mannheim_angle(s, {0.9, 0.5}), Closure::open);
  const DevelopabilityReport d = developability_condition(o, 1e-6);
  CHECK(d.max_drall_direct > 0.1);
  CHECK(d.equivalence_holds);
  for (const auto& x : d.samples) {
    if (!x.singular) CHECK(std::abs(x.drall_formula - x.drall_direct) < 1e-9);
  }
}

TEST_CASE("constant offset of the helix tangent developable is not a Mannheim partner") {
  const RuledSurfaceDef s = make_catalog_surface("tangent-developable-of-helix");
  const OffsetResult o = rotate_offset(s, OffsetAngle::constant({M_PI / 4, -2.5}));
  const PartnerCheck pc = mannheim_partner_check(o, 1e-6);
  CHECK(pc.applicable);
  CHECK_FALSE(pc.pass);
  CHECK(pc.max_sine > 0.5);
}

TEST_CASE("offset pitch of a developable closed surface") {
  const RuledSurfaceDef s = make_catalog_surface("closed-tangent-developable");
  const OffsetResult o = rotate_offset(s, OffsetAngle::constant({0.4, 0.3}));
  const OffsetPitchReport r = developable_offset_pitch(o);
  CHECK(std::abs(r.derived - r.direct) < 1e-6);
}

TEST_CASE("make_check residuals") {
  const RelationCheck c = make_check("x", 1.0, 1.0 + 1e-9, 1e-6);
  CHECK(c.pass);
  CHECK(c.residual == doctest::Approx(1e-9));
  CHECK_FALSE(make_check("y", 1.0, 2.0, 1e-6).pass);
}
