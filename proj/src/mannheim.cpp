#include "ruled/mannheim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ruled/errors.hpp"

namespace ruled {

OffsetAngle OffsetAngle::constant(DualAngle value, double period) {
  CurveSampler<DualNumber> c;
  c.period = period;
  c.periodic = true;
  const DualNumber v = value.as_dual();
  c.evaluate = [v](double) { return v; };
  c.jet = [v](double) { return Jet<DualNumber>::constant(v); };
  return from_sampler(c, Kind::constant);
}

OffsetAngle OffsetAngle::varying(const CurveSampler<double>& theta,
                                 const CurveSampler<double>& theta_star) {
  CurveSampler<DualNumber> c;
  c.period = theta.period;
  c.evaluate = [theta, theta_star](double t) { return DualNumber(theta(t), theta_star(t)); };
  c.jet = [theta, theta_star](double t) {
    return make_dual(sampler_jet(theta, t), sampler_jet(theta_star, t));
  };
  return from_sampler(c, Kind::varying);
}

OffsetAngle OffsetAngle::from_sampler(const CurveSampler<DualNumber>& value, Kind kind) {
  OffsetAngle a;
  a.kind_ = kind;
  a.value_ = value;
  return a;
}

DualAngle OffsetAngle::initial() const {
  const DualNumber v = value_(0.0);
  return {v.real, v.dual};
}

OffsetAngle mannheim_angle(const RuledSurfaceDef& s, DualAngle initial,
                           const QuadratureSpec& spec) {
  CurveSampler<DualNumber> k1;
  k1.period = s.period;
  k1.evaluate = [s](double t) { return dual_frame_jet(s, t).k1[0]; };
  k1.jet = [s](double t) { return dual_frame_jet(s, t).k1; };
  const CurveSampler<DualNumber> integral = cumulative_integral(k1, spec);
  const DualNumber start = initial.as_dual();
  CurveSampler<DualNumber> theta;
  theta.period = s.period;
  theta.evaluate = [integral, start](double t) { return start - integral(t); };
  theta.jet = [integral, start](double t) {
    return Jet<DualNumber>::constant(start) - integral.jet(t);
  };
  return OffsetAngle::from_sampler(theta, OffsetAngle::Kind::mannheim);
}

namespace {

struct OffsetFrameJet {
  Jet<DualVector3> q1, h1, a1;
};

OffsetFrameJet offset_frame_jet(const RuledSurfaceDef& s, const OffsetAngle& angle, double t) {
  const DualFrameJet f = dual_frame_jet(s, t);
  const auto [sn, cs] = sincos(angle.jet(t));
  return {cs * f.q + sn * f.h, f.a, sn * f.q - cs * f.h};
}

CurveSampler<DualVector3> offset_component(const RuledSurfaceDef& s, const OffsetAngle& angle,
                                           Jet<DualVector3> OffsetFrameJet::*member) {
  CurveSampler<DualVector3> c;
  c.period = s.period;
  c.periodic = s.closed;
  c.evaluate = [s, angle, member](double t) { return (offset_frame_jet(s, angle, t).*member)[0]; };
  c.jet = [s, angle, member](double t) { return offset_frame_jet(s, angle, t).*member; };
  return c;
}

double abs_max(const DualNumber& d) { return std::max(std::abs(d.real), std::abs(d.dual)); }

}  // namespace

OffsetResult rotate_offset(const RuledSurfaceDef& s, const OffsetAngle& angle, Closure closure) {
  OffsetResult r{s, angle, {}, {}, {}, {}};
  r.q1 = offset_component(s, angle, &OffsetFrameJet::q1);
  r.h1 = offset_component(s, angle, &OffsetFrameJet::h1);
  r.a1 = offset_component(s, angle, &OffsetFrameJet::a1);
  r.surface = dual_curve_to_surface(r.q1, closure);
  r.q1.periodic = r.surface.closed;
  return r;
}

MannheimResidual mannheim_residual(const OffsetResult& offset, int sample_count) {
  MannheimResidual r;
  for (double t : sample_parameters(offset.source, sample_count)) {
    const DualFrameJet f = dual_frame_jet(offset.source, t);
    const OffsetFrameJet o = offset_frame_jet(offset.source, offset.angle, t);
    const DualVector3 v = o.q1[1];
    const Jet<DualNumber> theta = offset.angle.jet(t);
    r.max_coefficient = std::max(r.max_coefficient, abs_max(theta[1] + f.k1[0]));
    const double speed = v.real.norm();
    if (speed < default_tolerances().geometric) {
      ++r.skipped;
      continue;
    }
    const DualVector3 c = dv_cross(v, f.a[0]);
    r.max_sine_real = std::max(r.max_sine_real, c.real.norm() / speed);
    r.max_sine_dual = std::max(r.max_sine_dual, c.dual.norm() / speed);
  }
  return r;
}

namespace {

void accumulate_pair(PairCheck& p, const DualVector3& a, const DualVector3& h1) {
  const DualVector3 plus = a - h1;
  const DualVector3 minus = a + h1;
  const bool flip = (minus.real.norm() + minus.dual.norm()) < (plus.real.norm() + plus.dual.norm());
  const DualVector3& d = flip ? minus : plus;
  p.max_deviation_real = std::max(p.max_deviation_real, d.real.norm());
  p.max_deviation_dual = std::max(p.max_deviation_dual, d.dual.norm());
}

}  // namespace

PairCheck is_mannheim_pair(const OffsetResult& offset, double tol, int sample_count) {
  PairCheck p;
  for (double t : sample_parameters(offset.source, sample_count)) {
    const DualVector3 a = dual_frame_jet(offset.source, t).a[0];
    const DualVector3 h1 = dual_frame_jet(offset.surface, t).h[0];
    accumulate_pair(p, a, h1);
  }
  p.is_pair = p.max_deviation_real < tol && p.max_deviation_dual < tol;
  return p;
}

PairCheck is_mannheim_pair(const RuledSurfaceDef& s1, const RuledSurfaceDef& s2, double tol,
                           int sample_count) {
  const std::vector<double> t1 = sample_parameters(s1, sample_count);
  std::vector<Line> lines1;
  lines1.reserve(t1.size());
  for (double t : t1) lines1.push_back(s1.ruling(t));

  auto distance = [](const Line& a, const Line& b) {
    const DualAngle d = dual_angle_between_lines(a, b);
    return d.theta + std::abs(d.theta_star);
  };

  PairCheck p;
  p.heuristic_alignment = true;
  std::vector<int> matches;
  for (double t2 : sample_parameters(s2, sample_count)) {
    const Line l2 = s2.ruling(t2);
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lines1.size(); ++i) {
      const double v = distance(lines1[i], l2);
      if (v < best_value) {
        best_value = v;
        best = static_cast<int>(i);
      }
    }
    // Golden-section refinement between the neighbouring samples.
    const double h = s1.period / sample_count;
    double lo = t1[best] - h;
    double hi = t1[best] + h;
    if (!s1.closed) {
      lo = std::max(lo, 0.0);
      hi = std::min(hi, s1.period);
    }
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = distance(s1.ruling(x1), l2);
    double f2 = distance(s1.ruling(x2), l2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = distance(s1.ruling(x1), l2);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = distance(s1.ruling(x2), l2);
      }
    }
    const double match = 0.5 * (lo + hi);
    matches.push_back(best);
    accumulate_pair(p, dual_frame_jet(s1, match).a[0], dual_frame_jet(s2, t2).h[0]);
  }

  // The matched indices must advance in one direction (cyclically for closed s1).
  const int n = static_cast<int>(lines1.size());
  int forward = 0;
  int backward = 0;
  for (std::size_t i = 1; i < matches.size(); ++i) {
    int step = matches[i] - matches[i - 1];
    if (s1.closed) step = ((step % n) + n + n / 2) % n - n / 2;
    if (step > 0) ++forward;
    if (step < 0) ++backward;
  }
  if (forward > 0 && backward > 0) {
    throw Error(ErrorCode::alignment, "ruling correspondence between the surfaces is not monotone");
  }
  p.is_pair = p.max_deviation_real < tol && p.max_deviation_dual < tol;
  return p;
}

RelationCheck make_check(std::string id, double lhs, double rhs, double tolerance, bool asserted,
                         std::string note) {
  RelationCheck c;
  c.id = std::move(id);
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = std::abs(lhs - rhs);
  c.tolerance = tolerance;
  c.asserted = asserted;
  c.pass = std::isfinite(c.residual) && c.residual < tolerance;
  c.note = std::move(note);
  return c;
}

DualNumber intrinsic_dual_angle_of_pitch(const RuledSurfaceDef& s, const QuadratureSpec& spec) {
  return {angle_of_pitch(s, spec).route_forms, -pitch(s, spec)};
}

namespace {

struct RelationInputs {
  double theta, theta_star;
  double lambda_q, ell_q;    // source, intrinsic
  double lambda_h, ell_h;    // h̃ line, from the Steiner vector
  double lambda_a, ell_a;
  double lambda_q1, ell_q1;  // offset, intrinsic
  SteinerVector d;
  DualFrameJet f0;
  DualVector3 q1_0;
};

RelationInputs gather(const OffsetResult& offset, const QuadratureSpec& spec) {
  if (!offset.source.closed || !offset.surface.closed) {
    throw Error(ErrorCode::not_closed, "relations need a closed surface and a closed offset");
  }
  RelationInputs in{};
  const DualAngle th = offset.angle.initial();
  in.theta = th.theta;
  in.theta_star = th.theta_star;
  const DualNumber lq = intrinsic_dual_angle_of_pitch(offset.source, spec);
  in.lambda_q = lq.real;
  in.ell_q = -lq.dual;
  in.d = steiner(offset.source, spec);
  in.f0 = dual_frame_jet(offset.source, 0.0);
  const DualNumber lh = -dv_dot(in.f0.h[0], in.d.fixed);
  in.lambda_h = lh.real;
  in.ell_h = -lh.dual;
  const DualNumber la = -dv_dot(in.f0.a[0], in.d.fixed);
  in.lambda_a = la.real;
  in.ell_a = -la.dual;
  const DualNumber lq1 = intrinsic_dual_angle_of_pitch(offset.surface, spec);
  in.lambda_q1 = lq1.real;
  in.ell_q1 = -lq1.dual;
  in.q1_0 = offset.q1(0.0);
  return in;
}

bool near(double x, double y) { return std::abs(x - y) < 1e-12; }

}  // namespace

std::vector<RelationCheck> dual_pitch_relation(const OffsetResult& offset, double tol,
                                               const QuadratureSpec& spec) {
  const RelationInputs in = gather(offset, spec);
  const bool asserted = offset.angle.is_constant();
  const std::string note = asserted ? "" : "offset angle varies; reported only";
  const double c = std::cos(in.theta);
  const double s = std::sin(in.theta);
  const double ts = in.theta_star;
  std::vector<RelationCheck> out;

  const DualNumber lq(in.lambda_q, -in.ell_q);
  const DualNumber lh(in.lambda_h, -in.ell_h);
  const DualNumber angle(in.theta, ts);
  const DualNumber rhs = lq * cos(angle) + lh * sin(angle);
  out.push_back(make_check("eq33.real", in.lambda_q1, rhs.real, tol, asserted, note));
  out.push_back(make_check("eq33.dual", -in.ell_q1, rhs.dual, tol, asserted, note));
  out.push_back(make_check("eq34.angle", in.lambda_q1, in.lambda_q * c + in.lambda_h * s, tol,
                           asserted, note));
  out.push_back(make_check("eq34.pitch", in.ell_q1,
                           (in.ell_q - ts * in.lambda_h) * c + (in.ell_h + ts * in.lambda_q) * s,
                           tol, asserted, note));
  if (near(in.theta, 0.0)) {
    out.push_back(make_check("eq35.angle", in.lambda_q1, in.lambda_q, tol, asserted, note));
    out.push_back(make_check("eq35.pitch", in.ell_q1, in.ell_q - ts * in.lambda_h, tol, asserted,
                             note));
    out.push_back(make_check("eq36.area", 2 * M_PI - in.lambda_q1, 2 * M_PI - in.lambda_q, tol,
                             false, "starred area sign convention undefined; reported only"));
    out.push_back(make_check("eq36.area_star", in.ell_q1, -in.ell_q + ts * in.lambda_h, tol,
                             false, "starred area sign convention undefined; reported only"));
  }
  if (near(in.theta, M_PI / 2)) {
    out.push_back(make_check("eq37.angle", in.lambda_q1, in.lambda_h, tol, asserted, note));
    out.push_back(make_check("eq37.pitch", in.ell_q1, in.ell_h + ts * in.lambda_q, tol, asserted,
                             note));
    out.push_back(make_check("eq38.area", 2 * M_PI - in.lambda_q1, 2 * M_PI - in.lambda_h, tol,
                             false, "starred area sign convention undefined; reported only"));
    out.push_back(make_check("eq38.area_star", in.ell_q1, -(in.ell_h + ts * in.lambda_q), tol,
                             false, "starred area sign convention undefined; reported only"));
  }
  if (near(ts, 0.0)) {
    out.push_back(make_check("eq39.angle", in.lambda_q1, in.lambda_q * c + in.lambda_h * s, tol,
                             asserted, note));
    out.push_back(make_check("eq39.pitch", in.ell_q1, in.ell_q * c + in.ell_h * s, tol, asserted,
                             note));
  }
  return out;
}

namespace {

void require_regular_developable(const RuledSurfaceDef& s, double tol, int sample_count) {
  const StrictionCurve c = striction_curve(s, sample_count);
  if (c.point_degenerate || !c.regular) {
    throw Error(ErrorCode::degenerate_striction,
                "developability relations need a regular striction line");
  }
  if (!is_developable(s, tol, sample_count)) {
    throw Error(ErrorCode::precondition, "source surface is not developable");
  }
}

double torsion_of(const Jet<Vec3>& c) {
  const Vec3 d1 = c.derivative(1);
  const Vec3 d2 = c.derivative(2);
  const Vec3 d3 = c.derivative(3);
  const Vec3 b = d1.cross(d2);
  if (!(b.norm() > default_tolerances().degenerate)) {
    throw Error(ErrorCode::frenet_degenerate, "striction line has zero curvature");
  }
  return b.dot(d3) / b.squaredNorm();
}

}  // namespace

DevelopabilityReport developability_condition(const OffsetResult& offset, double tol,
                                              int sample_count) {
  require_regular_developable(offset.source, tol, sample_count);
  DevelopabilityReport r;
  for (double t : sample_parameters(offset.source, sample_count)) {
    DevelopabilitySample d;
    d.t = t;
    d.torsion = torsion_of(striction_jet(offset.source, t));
    const DualNumber th = offset.angle(t);
    const double s = std::sin(th.real);
    const double c = std::cos(th.real);
    d.residual = s + th.dual * d.torsion * c;
    const double den = d.torsion * s;
    d.singular = std::abs(s) < default_tolerances().geometric;
    d.drall_formula = std::abs(den) > 0 ? d.residual / den : std::numeric_limits<double>::quiet_NaN();
    try {
      d.drall_direct = distribution_parameter(offset.surface, t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::cylindrical) throw;
      d.drall_direct = 0.0;
      d.singular = true;
    }
    const bool flat = std::abs(d.drall_direct) < tol;
    const bool condition = std::abs(d.residual) < tol * std::max(std::abs(den), 1.0);
    if (flat != condition && !d.singular) r.equivalence_holds = false;
    r.singular_branch = r.singular_branch || d.singular;
    r.max_residual = std::max(r.max_residual, std::abs(d.residual));
    r.max_drall_direct = std::max(r.max_drall_direct, std::abs(d.drall_direct));
    r.samples.push_back(d);
  }
  return r;
}

PartnerCheck mannheim_partner_check(const OffsetResult& offset, double tol, int sample_count) {
  PartnerCheck p;
  require_regular_developable(offset.source, tol, sample_count);
  if (!is_developable(offset.surface, tol, sample_count)) {
    p.note = "offset is not developable; check not asserted";
    return p;
  }
  p.applicable = true;
  double max_gap = 0.0;
  for (double t : sample_parameters(offset.source, sample_count)) {
    const Jet<Vec3> alpha = striction_jet(offset.source, t);
    const Jet<Vec3> a = real_part(dual_frame_jet(offset.source, t).a);
    const Jet<double> theta_star = dual_part(offset.angle.jet(t));
    const Jet<Vec3> beta = alpha + theta_star * a;
    max_gap = std::max(max_gap, (beta[0] - alpha[0]).norm());

    const Vec3 ab = alpha.derivative(1).cross(alpha.derivative(2));
    if (!(ab.norm() > default_tolerances().degenerate)) {
      throw Error(ErrorCode::frenet_degenerate, "striction line alpha has zero curvature");
    }
    const Vec3 b1 = beta.derivative(1);
    const Vec3 b2 = beta.derivative(2);
    if (!(b1.cross(b2).norm() > default_tolerances().degenerate)) {
      throw Error(ErrorCode::frenet_degenerate, "curve beta has zero curvature");
    }
    const Vec3 tangent = b1.normalized();
    const Vec3 normal_dir = b2 - b2.dot(tangent) * tangent;
    const Vec3 binormal_alpha = ab.normalized();
    const Vec3 normal_beta = normal_dir.normalized();
    p.max_sine = std::max(p.max_sine, binormal_alpha.cross(normal_beta).norm());
  }
  if (max_gap < tol) {
    p.coincident = true;
    p.pass = true;
    p.note = "striction lines coincide";
    return p;
  }
  p.pass = p.max_sine < tol;
  return p;
}

OffsetPitchReport developable_offset_pitch(const OffsetResult& offset,
                                           const QuadratureSpec& spec) {
  if (!offset.source.closed || !offset.surface.closed) {
    throw Error(ErrorCode::not_closed, "offset pitch needs closed surfaces");
  }
  require_regular_developable(offset.source, 1e-6, spec.sample_count);
  OffsetPitchReport r;
  QuadratureSpec q = spec;
  q.rule = QuadratureRule::trapezoid_periodic;
  auto integrand = [&](double t, bool printed) {
    const Jet<Vec3> alpha = striction_jet(offset.source, t);
    const double tau = torsion_of(alpha);
    const DualNumber th = offset.angle(t);
    const double last = printed ? std::cos(th.real) : std::sin(th.real);
    return (std::cos(th.real) - th.dual * tau * last) * alpha.derivative(1).norm();
  };
  r.derived = closed_integral<double>([&](double t) { return integrand(t, false); },
                                      offset.source.period, q);
  r.printed = closed_integral<double>([&](double t) { return integrand(t, true); },
                                      offset.source.period, q);
  r.direct = pitch(offset.surface, q);
  return r;
}

std::vector<RelationCheck> projected_area_relations(const OffsetResult& offset, double tol,
                                                    const QuadratureSpec& spec) {
  const RelationInputs in = gather(offset, spec);
  const bool asserted = offset.angle.is_constant();
  const std::string note = asserted ? "" : "offset angle varies; reported only";
  const double c = std::cos(in.theta);
  const double s = std::sin(in.theta);
  const double ts = in.theta_star;
  const DualNumber angle(in.theta, ts);
  const DualNumber lq(in.lambda_q, -in.ell_q);
  const DualNumber lh(in.lambda_h, -in.ell_h);
  const DualNumber la(in.lambda_a, -in.ell_a);
  const DualNumber lq1(in.lambda_q1, -in.ell_q1);

  const DualVector3 w_q1 = in.d.fixed + lq1 * in.q1_0;
  const DualNumber f_q = dv_dot(w_q1, in.f0.q[0]);
  const DualNumber f_h = dv_dot(w_q1, in.f0.h[0]);
  const DualNumber f_a = dv_dot(w_q1, in.f0.a[0]);

  std::vector<RelationCheck> out;
  const DualNumber r51 = -lq + lq1 * cos(angle);
  out.push_back(make_check("eq51.real", f_q.real, r51.real, tol, asserted, note));
  out.push_back(make_check("eq51.dual", f_q.dual, r51.dual, tol, asserted, note));
  out.push_back(make_check("eq52.area", f_q.real, -in.lambda_q + in.lambda_q1 * c, tol, asserted,
                           note));
  out.push_back(make_check("eq52.area_star", f_q.dual,
                           in.ell_q - in.ell_q1 * c - in.lambda_q1 * ts * s, tol, asserted, note));
  if (near(in.theta, 0.0)) {
    out.push_back(make_check("eq53.area", f_q.real, -in.lambda_q + in.lambda_q1, tol, asserted,
                             note));
    out.push_back(make_check("eq53.area_star", f_q.dual, in.ell_q - in.ell_q1, tol, asserted,
                             note));
  }
  if (near(in.theta, M_PI / 2)) {
    out.push_back(make_check("eq54.area", f_q.real, -in.lambda_q, tol, asserted, note));
    out.push_back(make_check("eq54.area_star", f_q.dual, in.ell_q - in.lambda_q1 * ts, tol,
                             asserted, note));
  }
  const DualNumber r55 = -lh + lq1 * sin(angle);
  out.push_back(make_check("eq55.real", f_h.real, r55.real, tol, asserted, note));
  out.push_back(make_check("eq55.dual", f_h.dual, r55.dual, tol, asserted, note));
  out.push_back(make_check("eq56.area", f_h.real, -in.lambda_h + in.lambda_q1 * s, tol, asserted,
                           note));
  out.push_back(make_check("eq56.area_star", f_h.dual,
                           in.ell_h - in.ell_q1 * s + in.lambda_q1 * ts * c, tol, asserted, note));
  if (near(in.theta, 0.0)) {
    out.push_back(make_check("eq57.area", f_h.real, -in.lambda_h, tol, asserted, note));
    out.push_back(make_check("eq57.area_star", f_h.dual, in.ell_h + in.lambda_q1 * ts, tol,
                             asserted, note));
  }
  if (near(in.theta, M_PI / 2)) {
    out.push_back(make_check("eq58.area", f_h.real, -in.lambda_h + in.lambda_q1, tol, asserted,
                             note));
    out.push_back(make_check("eq58.area_star", f_h.dual, in.ell_h - in.ell_q1, tol, asserted,
                             note));
  }
  out.push_back(make_check("eq59.real", f_a.real, -la.real, tol, asserted, note));
  out.push_back(make_check("eq59.dual", f_a.dual, -la.dual, tol, asserted, note));
  const std::string claim = "claimed to vanish; reported only";
  out.push_back(make_check("eq60.angle_a", in.lambda_a, 0.0, tol, false, claim));
  out.push_back(make_check("eq60.pitch_a", in.ell_a, 0.0, tol, false, claim));
  out.push_back(make_check("eq60.angle_h", in.lambda_h, 0.0, tol, false, claim));
  out.push_back(make_check("eq60.pitch_h", in.ell_h, 0.0, tol, false, claim));
  return out;
}

}  // namespace ruled
