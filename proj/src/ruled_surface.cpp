#include "ruled/ruled_surface.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ruled/errors.hpp"

namespace ruled {

namespace {

void require_closed(const RuledSurfaceDef& s, const char* what) {
  if (!s.closed) {
    throw Error(ErrorCode::not_closed, std::string(what) + " needs a closed surface");
  }
}

QuadratureSpec periodic_spec(const QuadratureSpec& spec) {
  QuadratureSpec q = spec;
  q.rule = QuadratureRule::trapezoid_periodic;
  return q;
}

}  // namespace

RuledSurfaceDef make_ruled_surface(const CurveSampler<Vec3>& base,
                                   const CurveSampler<Vec3>& raw_director, double period,
                                   Closure closure, const Tolerances& tol) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorCode::precondition, "surface period must be positive");
  }
  const double zero = tol.degenerate;
  CurveSampler<Vec3> director;
  director.period = period;
  director.evaluate = [raw_director, zero](double t) -> Vec3 {
    const Vec3 d = raw_director(t);
    const double n = d.norm();
    if (!(n > zero)) {
      throw Error(ErrorCode::zero_direction, "director vanishes at t = " + std::to_string(t));
    }
    return d / n;
  };
  if (raw_director.has_jet()) {
    director.jet = [raw_director, zero](double t) {
      const Jet<Vec3> d = raw_director.jet(t);
      if (!(d[0].norm() > zero)) {
        throw Error(ErrorCode::zero_direction, "director vanishes at t = " + std::to_string(t));
      }
      return normalized(d);
    };
  }

  RuledSurfaceDef s;
  s.base = base;
  s.base.period = period;
  s.director = director;
  s.period = period;

  const bool base_closes = (base(0.0) - base(period)).norm() < tol.closure;
  const Vec3 q0 = director(0.0);
  const Vec3 q1 = director(period);
  const bool director_closes = (q0 - q1).norm() < tol.closure;
  const bool director_flips = (q0 + q1).norm() < tol.closure;

  if (base_closes && director_flips && closure != Closure::open) {
    throw Error(ErrorCode::mobius, "director closes to its opposite after one period");
  }
  switch (closure) {
    case Closure::automatic: s.closed = base_closes && director_closes; break;
    case Closure::closed:
      if (!(base_closes && director_closes)) {
        throw Error(ErrorCode::not_closed, "base or director does not close over one period");
      }
      s.closed = true;
      break;
    case Closure::open: s.closed = false; break;
  }
  s.base.periodic = s.closed;
  s.director.periodic = s.closed;
  return s;
}

std::vector<double> sample_parameters(const RuledSurfaceDef& s, int sample_count) {
  const int n = s.closed ? sample_count : sample_count + 1;
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = grid_parameter(s.period, sample_count, i);
  return t;
}

Jet<DualVector3> dual_curve_jet(const RuledSurfaceDef& s, double t) {
  const Jet<Vec3> k = sampler_jet(s.base, t);
  const Jet<Vec3> q = sampler_jet(s.director, t);
  return make_dual(q, cross(k, q));
}

CurveSampler<DualVector3> surface_to_dual_curve(const RuledSurfaceDef& s) {
  CurveSampler<DualVector3> out;
  out.period = s.period;
  out.periodic = s.closed;
  out.evaluate = [s](double t) {
    const Vec3 q = s.director(t);
    return DualVector3(q, s.base(t).cross(q));
  };
  out.jet = [s](double t) { return dual_curve_jet(s, t); };
  return out;
}

RuledSurfaceDef dual_curve_to_surface(const CurveSampler<DualVector3>& q, Closure closure,
                                      const Tolerances& tol) {
  CurveSampler<Vec3> base;
  CurveSampler<Vec3> director;
  base.period = director.period = q.period;
  base.evaluate = [q](double t) { return dual_to_line(q(t)).foot_point(); };
  director.evaluate = [q](double t) { return q(t).real; };
  if (q.has_jet()) {
    base.jet = [q](double t) {
      const Jet<DualVector3> j = q.jet(t);
      return cross(real_part(j), dual_part(j));
    };
    director.jet = [q](double t) { return real_part(q.jet(t)); };
  }
  return make_ruled_surface(base, director, q.period, closure, tol);
}

DualFrameJet dual_frame_jet(const RuledSurfaceDef& s, double t, const Tolerances& tol) {
  DualFrameJet f;
  f.q = dual_curve_jet(s, t);
  const Jet<DualVector3> dq = f.q.differentiated();
  if (!(dq[0].real.norm() > tol.degenerate)) {
    throw Error(ErrorCode::cylindrical,
                "director has zero derivative at t = " + std::to_string(t));
  }
  f.k1 = sqrt(dot(dq, dq));
  f.h = reciprocal(f.k1) * dq;
  f.a = cross(f.q, f.h);
  f.k2 = dot(f.h.differentiated(), f.a);
  return f;
}

Jet<Vec3> striction_jet(const RuledSurfaceDef& s, double t, const Tolerances& tol) {
  const Jet<Vec3> k = sampler_jet(s.base, t);
  const Jet<Vec3> q = sampler_jet(s.director, t);
  const Jet<Vec3> dk = k.differentiated();
  const Jet<Vec3> dq = q.differentiated();
  const Jet<double> den = dot(dq, dq);
  if (!(std::sqrt(den[0]) > tol.degenerate)) {
    throw Error(ErrorCode::cylindrical,
                "director has zero derivative at t = " + std::to_string(t));
  }
  return k - (dot(dq, dk) / den) * q;
}

StrictionCurve striction_curve(const RuledSurfaceDef& s, int sample_count,
                               const Tolerances& tol) {
  StrictionCurve out;
  out.curve.period = s.period;
  out.curve.periodic = s.closed;
  out.curve.evaluate = [s, tol](double t) { return striction_jet(s, t, tol)[0]; };
  out.curve.jet = [s, tol](double t) { return striction_jet(s, t, tol); };
  bool all_zero = true;
  bool all_regular = true;
  for (double t : sample_parameters(s, sample_count)) {
    const double speed = striction_jet(s, t, tol)[1].norm();
    if (speed > tol.degenerate) all_zero = false;
    else all_regular = false;
  }
  out.point_degenerate = all_zero;
  out.regular = all_regular;
  return out;
}

double distribution_parameter(const RuledSurfaceDef& s, double t, const Tolerances& tol) {
  const Vec3 dk = differentiate(s.base, t, 1);
  const Vec3 q = s.director(t);
  const Vec3 dq = differentiate(s.director, t, 1);
  const double den = dq.squaredNorm();
  if (!(std::sqrt(den) > tol.degenerate)) {
    throw Error(ErrorCode::cylindrical,
                "director has zero derivative at t = " + std::to_string(t));
  }
  return dk.dot(q.cross(dq)) / den;
}

bool is_developable(const RuledSurfaceDef& s, double tol, int sample_count) {
  try {
    for (double t : sample_parameters(s, sample_count)) {
      if (std::abs(distribution_parameter(s, t)) >= tol) return false;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::cylindrical) return true;
    throw;
  }
  return true;
}

FrameField moving_frame(const RuledSurfaceDef& s, const FrameOptions& options) {
  const Tolerances& tol = options.tol;
  FrameField field;
  field.period = s.period;
  bool any_zero_speed = false;
  bool all_zero_speed = true;
  for (double t : sample_parameters(s, options.sample_count)) {
    const DualFrameJet f = dual_frame_jet(s, t, tol);
    const Jet<Vec3> c = striction_jet(s, t, tol);
    FrameSample fs;
    fs.t = t;
    fs.q = f.q[0].real;
    fs.h = f.h[0].real;
    fs.a = f.a[0].real;
    fs.k1 = f.k1[0].real;
    fs.k1_star = f.k1[0].dual;
    fs.k2 = f.k2[0].real;
    fs.k2_star = f.k2[0].dual;
    fs.striction = c[0];
    fs.striction_speed = c[1].norm();
    if (fs.striction_speed > tol.degenerate) {
      all_zero_speed = false;
      const double sigma = std::atan2(c[1].dot(fs.a), c[1].dot(fs.q));
      fs.sigma = sigma;
      fs.sigma_in_range = std::abs(sigma) < M_PI / 2;
      if (!fs.sigma_in_range && options.require_striction_orientation) {
        throw Error(ErrorCode::striction_orientation,
                    "striction angle leaves (-pi/2, pi/2) at t = " + std::to_string(t));
      }
    } else {
      any_zero_speed = true;
    }
    field.samples.push_back(fs);
  }
  field.striction_point_degenerate = all_zero_speed;
  field.basis = any_zero_speed ? ArclengthBasis::spherical : ArclengthBasis::striction;

  CurveSampler<double> rate;
  rate.period = s.period;
  if (field.basis == ArclengthBasis::striction) {
    rate.evaluate = [s, tol](double t) { return striction_jet(s, t, tol)[1].norm(); };
  } else {
    rate.evaluate = [s, tol](double t) {
      return differentiate(s.director, t, 1).norm();
    };
  }
  QuadratureSpec spec;
  spec.sample_count = options.sample_count;
  const CurveSampler<double> arclength = cumulative_integral(rate, spec);
  for (const FrameSample& fs : field.samples) field.arclength.push_back(arclength(fs.t));
  return field;
}

double pitch(const RuledSurfaceDef& s, const QuadratureSpec& spec) {
  require_closed(s, "pitch");
  return closed_integral<double>(
      [&s](double t) { return differentiate(s.base, t, 1).dot(s.director(t)); }, s.period,
      periodic_spec(spec));
}

SteinerVector steiner(const RuledSurfaceDef& s, const QuadratureSpec& spec) {
  require_closed(s, "Steiner vector");
  SteinerVector d;
  d.along_q = closed_integral<DualNumber>([&s](double t) { return dual_frame_jet(s, t).k2[0]; },
                                          s.period, periodic_spec(spec));
  d.along_a = closed_integral<DualNumber>([&s](double t) { return dual_frame_jet(s, t).k1[0]; },
                                          s.period, periodic_spec(spec));
  const DualFrameJet f0 = dual_frame_jet(s, 0.0);
  d.fixed = d.along_q * f0.q[0] + d.along_a * f0.a[0];
  return d;
}

namespace {

// Real frame built without dual arithmetic, for the independent route.
struct RealFrameJet {
  Jet<Vec3> q, h, a;
};

RealFrameJet real_frame_jet(const RuledSurfaceDef& s, double t) {
  RealFrameJet f;
  f.q = sampler_jet(s.director, t);
  const Jet<Vec3> dq = f.q.differentiated();
  if (!(dq[0].norm() > default_tolerances().degenerate)) {
    throw Error(ErrorCode::cylindrical,
                "director has zero derivative at t = " + std::to_string(t));
  }
  f.h = normalized(dq);
  f.a = cross(f.q, f.h);
  return f;
}

}  // namespace

RealFrame real_frame(const RuledSurfaceDef& s, double t) {
  const RealFrameJet f = real_frame_jet(s, t);
  return {f.q[0], f.h[0], f.a[0]};
}

AngleOfPitch angle_of_pitch(const RuledSurfaceDef& s, const QuadratureSpec& spec) {
  require_closed(s, "angle of pitch");
  AngleOfPitch out;
  out.route_forms = -closed_integral<double>(
      [&s](double t) {
        const RealFrameJet f = real_frame_jet(s, t);
        return f.h.derivative(1).dot(f.a[0]);
      },
      s.period, periodic_spec(spec));
  const SteinerVector d = steiner(s, spec);
  out.route_steiner = -dv_dot(dual_frame_jet(s, 0.0).q[0], d.fixed);
  out.discrepancy = std::abs(out.route_forms - out.route_steiner.real);
  return out;
}

InvariantReport compute_invariants(const RuledSurfaceDef& s, const QuadratureSpec& spec) {
  require_closed(s, "invariants");
  InvariantReport r;
  r.sample_count = spec.sample_count;
  r.pitch = pitch(s, spec);
  r.angle = angle_of_pitch(s, spec);
  r.dual_angle_of_pitch = DualNumber(r.angle.route_forms, -r.pitch);
  r.steiner = steiner(s, spec);

  const DualFrameJet f0 = dual_frame_jet(s, 0.0);
  const DualVector3 psi = f0.k2[0] * f0.q[0] + f0.k1[0] * f0.a[0];
  r.pole = dv_normalize(psi);

  auto director_entry = [&](const DualVector3& x0, auto direction_at) {
    DirectorInvariants e;
    e.dual_angle_of_pitch = -dv_dot(x0, r.steiner.fixed);
    e.spherical_area = DualNumber(2.0 * M_PI) - e.dual_angle_of_pitch;
    e.pitch = closed_integral<double>(
        [&](double t) { return striction_jet(s, t)[1].dot(direction_at(t)); }, s.period,
        periodic_spec(spec));
    return e;
  };
  r.q = director_entry(f0.q[0], [&](double t) { return s.director(t); });
  r.q.pitch = r.pitch;
  r.h = director_entry(f0.h[0], [&](double t) { return real_frame(s, t).h; });
  r.a = director_entry(f0.a[0], [&](double t) { return real_frame(s, t).a; });
  r.area_vector_q = area_vector(s.director, spec);
  return r;
}

Vec3 area_vector(const CurveSampler<Vec3>& x, const QuadratureSpec& spec) {
  if (!x.periodic) throw Error(ErrorCode::not_closed, "area vector needs a closed curve");
  return closed_integral<Vec3>(
      [&x](double t) -> Vec3 { return x(t).cross(differentiate(x, t, 1)); }, x.period,
      periodic_spec(spec));
}

double projected_area(const CurveSampler<Vec3>& x, const Vec3& y, const QuadratureSpec& spec) {
  return 0.5 * area_vector(x, spec).dot(y);
}

}  // namespace ruled
