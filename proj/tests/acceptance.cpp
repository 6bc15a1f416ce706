// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ruled/catalog.hpp"
#include "ruled/errors.hpp"
#include "ruled/expr.hpp"
#include "ruled/mannheim.hpp"

using namespace ruled;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
  void note(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double line_set_deviation(const OffsetResult& o, const std::function<Line(double)>& want) {
  double dev = 0.0;
  for (double u : sample_parameters(o.source, 256)) dev = std::max(dev, plucker_distance(dual_to_line(o.q1(u)), want(u)));
  return dev;
}

Outcome study_map() {
  Outcome r;
  const auto t0 = std::chrono::steady_clock::now();
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const auto q = surface_to_dual_curve(cone);
  double dev = 0.0;
  for (double u : sample_parameters(cone, 256)) {
    dev = std::max(dev, max_abs_diff(q(u), {oracle::cone_direction(u), oracle::cone_moment(u)}));
  }
  const double dt = seconds_since(t0);
  r.require(dev < 1e-9, fmt("max component deviation %.3g over 256 samples", dev));
  r.require(dt < 1.0, fmt("runtime %.4f s", dt));
  return r;
}

Outcome offset_cone() {
  Outcome r;
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const OffsetResult o = rotate_offset(cone, OffsetAngle::constant({0.0, std::sqrt(2.0)}));
  const double dev = line_set_deviation(o, oracle::offset_cone);
  r.require(dev < 1e-9, fmt("theta = 0 + e sqrt2: Plucker deviation %.3g per ruling", dev));
  return r;
}

Outcome offset_helicoid() {
  Outcome r;
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const auto theta = expression_sampler(Expression::parse("pi/2"), cone.period);
  const auto theta_star = expression_sampler(Expression::parse("sqrt(2)*t"), cone.period);
  const OffsetResult o = rotate_offset(cone, OffsetAngle::varying(theta, theta_star), Closure::open);
  const double dev = line_set_deviation(o, oracle::offset_helicoid);
  r.require(dev < 1e-9, fmt("theta = pi/2 + e sqrt2 u: Plucker deviation %.3g per ruling", dev));
  return r;
}

Outcome offset_hyperboloid() {
  Outcome r;
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const OffsetResult o = rotate_offset(cone, OffsetAngle::constant({M_PI / 3, std::sqrt(2.0)}));
  const double dev = line_set_deviation(o, [](double u) {
    return Line::from_point_direction(oracle::hyperboloid_base(u), oracle::hyperboloid_direction(u));
  });
  r.require(dev < 1e-9, fmt("theta = pi/3 + e sqrt2, corrected direction: Plucker deviation %.3g", dev));

  // The printed second component repeats sin u. Its direction is not even a
  // unit vector, and its rulings are not those of the rotated cone.
  double printed_dev = 0.0;
  double norm_lo = 1e9, norm_hi = 0.0;
  for (double u : sample_parameters(cone, 256)) {
    const Vec3 d = oracle::hyperboloid_direction_printed(u);
    norm_lo = std::min(norm_lo, d.norm());
    norm_hi = std::max(norm_hi, d.norm());
    printed_dev = std::max(printed_dev, plucker_distance(dual_to_line(o.q1(u)),
                                                         Line::from_point_direction(oracle::hyperboloid_base(u), d)));
  }
  r.require(printed_dev > 1e-3, fmt("printed direction flagged INCONSISTENT: deviation %.3g", printed_dev));
  r.note(fmt("printed direction length ranges over [%.4f, %.4f]", norm_lo, norm_hi));
  return r;
}

Outcome invariant_routes() {
  Outcome r;
  for (const CatalogEntry& c : catalog_entries()) {
    RuledSurfaceDef s;
    try {
      s = make_catalog_surface(c.name);
    } catch (const Error& e) {
      r.note(c.name + ": not built (" + e.what() + ")");
      continue;
    }
    if (!s.closed) {
      r.note(c.name + ": open, skipped");
      continue;
    }
    try {
      const InvariantReport inv = compute_invariants(s, {256});
      const double dual_gap = std::abs(inv.angle.route_steiner.dual + inv.pitch);
      r.require(inv.angle.discrepancy < 1e-6 && dual_gap < 1e-6,
                c.name + fmt(": route gap %.3g, dual part + pitch %.3g", inv.angle.discrepancy, dual_gap));
      if (c.name == "paper-cone") {
        const double want = -std::sqrt(2.0) * M_PI;
        r.require(std::abs(inv.pitch) < 1e-6, fmt("cone pitch %.3g", inv.pitch));
        r.require(std::abs(inv.angle.route_forms - want) < 1e-6,
                  fmt("cone angle of pitch %.12f (want %.12f)", inv.angle.route_forms, want));
      }
    } catch (const Error& e) {
      const bool expected = e.code() == ErrorCode::cylindrical;
      r.require(expected, c.name + ": " + std::string(error_code_name(e.code())) + " (" + e.what() + ")");
    }
  }
  return r;
}

Outcome mannheim_condition() {
  Outcome r;
  for (const char* name : {"closed-skew", "paper-cone", "latitude-circle-director", "closed-tangent-developable"}) {
    const RuledSurfaceDef s = make_catalog_surface(name);
    const OffsetResult o = rotate_offset(s, mannheim_angle(s, {0.4, 0.3}), Closure::open);
    const double sine = mannheim_residual(o).max_sine();
    r.require(sine < 1e-6, std::string(name) + fmt(": ODE offset, deviation sine %.3g", sine));
  }
  for (const char* name : {"paper-cone", "closed-skew"}) {
    const RuledSurfaceDef s = make_catalog_surface(name);
    const double k1_total = closed_integral<double>([&](double t) { return dual_frame_jet(s, t).k1[0].real; }, s.period);
    const OffsetResult o = rotate_offset(s, OffsetAngle::constant({0.0, std::sqrt(2.0)}));
    const MannheimResidual m = mannheim_residual(o);
    r.require(m.max_sine() > 1e-2, std::string(name) + fmt(": constant angle violates by %.3g (closed k1 integral %.3f)",
                                                           m.max_sine(), k1_total));
  }
  return r;
}

Outcome dual_pitch() {
  Outcome r;
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  for (double th : {0.0, M_PI / 4, M_PI / 2}) {
    for (double ts : {0.0, 0.5}) {
      const OffsetResult o = rotate_offset(s, OffsetAngle::constant({th, ts}));
      double worst = 0.0;
      bool ok = true;
      std::string cases;
      for (const RelationCheck& c : dual_pitch_relation(o, 1e-6)) {
        if (!c.asserted) continue;
        worst = std::max(worst, c.residual);
        ok = ok && c.pass;
        const std::string family = c.id.substr(0, c.id.find('.'));
        if (family != "eq33" && family != "eq34" && cases.find(family) == std::string::npos) cases += " " + family;
      }
      r.require(ok, fmt("theta %.4f, theta* %.1f", th, ts) + fmt(": worst residual %.3g", worst) +
                        (cases.empty() ? "" : ", special cases:" + cases));
    }
  }
  return r;
}

Outcome developability() {
  Outcome r;
  const double radius = 1.0, slope = 0.5;
  const double tau = slope / (radius * radius + slope * slope);
  const RuledSurfaceDef s = make_catalog_surface("tangent-developable-of-helix", {{"radius", radius}, {"slope", slope}});
  const OffsetResult o = rotate_offset(s, OffsetAngle::constant({M_PI / 4, -1.0 / tau}));
  const DevelopabilityReport d = developability_condition(o, 1e-6);
  r.require(d.max_drall_direct < 1e-6, fmt("helix tangent developable, theta = pi/4, theta* = -1/tau: max |drall| %.3g", d.max_drall_direct));
  r.require(d.max_residual < 1e-6, fmt("developability residual %.3g", d.max_residual));
  const PartnerCheck p = mannheim_partner_check(o, 1e-6);
  r.require(p.applicable && p.pass, fmt("partner curves: binormal vs principal normal, max sine %.3g", p.max_sine));
  r.note("no constant offset of a circular helix has a partner along the binormal: the torsion would have to vary");

  const RuledSurfaceDef f = make_catalog_surface("frenet-mannheim");
  const OffsetResult of = rotate_offset(f, mannheim_angle(f, {1.2, 0.5}), Closure::open);
  const PartnerCheck pf = mannheim_partner_check(of, 1e-6);
  const DevelopabilityReport df = developability_condition(of, 1e-6);
  r.note(fmt("curve with tau = -tan(theta0 - kappa s)/theta*: partner sine %.3g, max |drall| %.3g", pf.max_sine,
             df.max_drall_direct));
  return r;
}

Outcome projected_areas() {
  Outcome r;
  const RuledSurfaceDef s = make_catalog_surface("closed-skew");
  for (double th : {0.0, M_PI / 4, M_PI / 2}) {
    for (double ts : {0.0, 0.5}) {
      const OffsetResult o = rotate_offset(s, OffsetAngle::constant({th, ts}));
      double worst = 0.0;
      bool ok = true;
      bool first_equality = false;
      std::string reported;
      for (const RelationCheck& c : projected_area_relations(o, 1e-6)) {
        if (c.asserted) {
          worst = std::max(worst, c.residual);
          ok = ok && c.pass;
          if (c.id.rfind("eq59", 0) == 0) first_equality = true;
        } else {
          reported += " " + c.id + fmt("=%.3g", c.lhs);
        }
      }
      r.require(ok && first_equality, fmt("theta %.4f, theta* %.1f", th, ts) + fmt(": worst residual %.3g", worst));
      if (th == 0.0 && ts == 0.0) r.note("reported, not asserted:" + reported);
    }
  }
  return r;
}

Outcome line_oracle() {
  Outcome r;
  std::mt19937_64 rng(2024);
  double worst_theta = 0.0, worst_dist = 0.0;
  int parallel = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p1 = oracle::random_point(rng);
    const Vec3 p2 = oracle::random_point(rng);
    const Vec3 d1 = oracle::random_unit(rng);
    Vec3 d2;
    if (i % 10 == 0) {
      d2 = (i % 20 == 0 ? 1.0 : -1.0) * d1 * (0.5 + i / 1000.0);
      ++parallel;
    } else {
      d2 = oracle::random_unit(rng);
    }
    const DualAngle a = dual_angle_between_lines(Line::from_point_direction(p1, d1), Line::from_point_direction(p2, d2));
    const oracle::Approach o = oracle::closest_approach(p1, d1, p2, d2);
    worst_theta = std::max(worst_theta, std::abs(a.theta - o.theta));
    worst_dist = std::max(worst_dist, std::abs(a.theta_star - o.distance));
  }
  r.require(parallel == 100, fmt("%.0f parallel pairs among 1000", parallel));
  r.require(worst_theta < 1e-9, fmt("max |d theta| %.3g", worst_theta));
  r.require(worst_dist < 1e-9, fmt("max |d theta*| %.3g", worst_dist));
  return r;
}

Outcome properties() {
  Outcome r;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double eps = 0.0, lagrange = 0.0, trig = 0.0, roundtrip = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const DualNumber e = DualNumber::pure_dual(u(rng)) * DualNumber::pure_dual(u(rng));
    eps = std::max({eps, std::abs(e.real), std::abs(e.dual)});
    const DualVector3 a{Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng))};
    const DualVector3 b{Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng))};
    const DualVector3 c = dv_cross(a, b);
    const DualNumber ab = dv_dot(a, b);
    const DualNumber gap = dv_dot(c, c) - (dv_dot(a, a) * dv_dot(b, b) - ab * ab);
    lagrange = std::max({lagrange, std::abs(gap.real), std::abs(gap.dual)});
    const DualNumber x{u(rng), u(rng)};
    const DualNumber one = sin(x) * sin(x) + cos(x) * cos(x);
    trig = std::max({trig, std::abs(one.real - 1.0), std::abs(one.dual)});
    const Line l = Line::from_point_direction(oracle::random_point(rng), oracle::random_unit(rng));
    roundtrip = std::max(roundtrip, plucker_distance(dual_to_line(line_to_dual(l)), l));
  }
  r.require(eps == 0.0, fmt("epsilon squared: %.3g", eps));
  r.require(lagrange < 1e-9, fmt("Lagrange identity: %.3g", lagrange));
  r.require(trig < 1e-12, fmt("sin^2 + cos^2 = 1: %.3g", trig));
  r.require(roundtrip < 1e-12, fmt("Study map round trip: %.3g", roundtrip));

  double ortho = 0.0, structure = 0.0;
  std::uniform_real_distribution<double> tp(0.0, 2 * M_PI);
  for (const char* name : {"closed-skew", "latitude-circle-director", "closed-tangent-developable", "paper-cone"}) {
    const RuledSurfaceDef s = make_catalog_surface(name);
    for (int i = 0; i < 200; ++i) {
      const DualFrameJet f = dual_frame_jet(s, tp(rng));
      const DualVector3 q = f.q[0], h = f.h[0], a = f.a[0];
      for (const DualNumber d : {dv_dot(q, q) - 1.0, dv_dot(h, h) - 1.0, dv_dot(a, a) - 1.0, dv_dot(q, h), dv_dot(q, a), dv_dot(h, a)}) {
        ortho = std::max({ortho, std::abs(d.real), std::abs(d.dual)});
      }
      const DualNumber k1 = f.k1[0], k2 = f.k2[0];
      structure = std::max({structure, max_abs_diff(f.q.derivative(1), k1 * h),
                            max_abs_diff(f.h.derivative(1), k2 * a - k1 * q),
                            max_abs_diff(f.a.derivative(1), -(k2 * h))});
    }
  }
  r.require(ortho < 1e-10, fmt("frame orthonormality: %.3g", ortho));
  r.require(structure < 1e-9, fmt("frame structure equations: %.3g", structure));
  const double dt = seconds_since(t0);
  r.require(dt < 60.0, fmt("runtime %.3f s", dt));
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "cone maps to its dual curve", study_map},
      {2, "offset reproduces the cone offset", offset_cone},
      {3, "offset reproduces the helicoid", offset_helicoid},
      {4, "offset reproduces the hyperboloid (corrected direction)", offset_hyperboloid},
      {5, "angle of pitch agrees across routes, dual part is minus the pitch", invariant_routes},
      {6, "Mannheim condition holds for ODE offsets, fails for constant angles", mannheim_condition},
      {7, "dual angle of pitch relation on a closed skew surface", dual_pitch},
      {8, "developability chain on the helix tangent developable", developability},
      {9, "projected area relations", projected_areas},
      {10, "dual angle between lines against closest approach", line_oracle},
      {11, "randomized algebra, frame and Study map properties", properties},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const Error& e) {
      o.pass = false;
      o.details.push_back(std::string("FAIL threw ") + std::string(error_code_name(e.code())) + ": " + e.what());
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title);
    for (const std::string& d : o.details) std::printf("    %s\n", d.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
