#include "ruled/curve.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace ruled {

void validate(const QuadratureSpec& spec) {
  if (spec.sample_count < 8) {
    throw Error(ErrorCode::precondition,
                "quadrature needs at least 8 samples, got " + std::to_string(spec.sample_count));
  }
}

namespace {

constexpr std::array<double, 5> kGaussNodes{
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
    0.2369268850561891};

template <class V, class F>
V gauss_legendre(const F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  V acc = zero_value<V>();
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    acc += V(f(mid + half * kGaussNodes[i]) * (kGaussWeights[i] * half));
  }
  return acc;
}


}  // namespace

template <class V>
CurveSampler<V> cumulative_integral(const CurveSampler<V>& f, const QuadratureSpec& spec) {
  validate(spec);
  const int n = spec.sample_count;
  const double period = f.period;
  const double h = period / n;
  auto nodes = std::make_shared<std::vector<V>>(n + 1, zero_value<V>());
  for (int i = 0; i < n; ++i) {
    (*nodes)[i + 1] = (*nodes)[i] + gauss_legendre<V>(f.evaluate, h * i, h * (i + 1));
  }

  CurveSampler<V> out;
  out.period = period;
  out.periodic = false;
  auto integrand = f;
  out.evaluate = [nodes, integrand, h, n](double t) -> V {
    const int i = std::clamp(static_cast<int>(std::floor(t / h)), 0, n);
    const double start = h * i;
    // Panels past the last node are split so each stays no wider than h.
    V acc = (*nodes)[i];
    double a = start;
    while (std::abs(t - a) > h) {
      const double b = a + (t > a ? h : -h);
      acc += gauss_legendre<V>(integrand.evaluate, a, b);
      a = b;
    }
    return acc + gauss_legendre<V>(integrand.evaluate, a, t);
  };
  auto value = out.evaluate;
  out.jet = [integrand, value](double t) -> Jet<V> {
    return sampler_jet(integrand, t).integrated(value(t));
  };
  return out;
}

template CurveSampler<double> cumulative_integral(const CurveSampler<double>&, const QuadratureSpec&);
template CurveSampler<Vec3> cumulative_integral(const CurveSampler<Vec3>&, const QuadratureSpec&);
template CurveSampler<DualNumber> cumulative_integral(const CurveSampler<DualNumber>&,
                                                      const QuadratureSpec&);
template CurveSampler<DualVector3> cumulative_integral(const CurveSampler<DualVector3>&,
                                                       const QuadratureSpec&);

namespace {

CurveSampler<double> speed_of(const CurveSampler<Vec3>& c) {
  CurveSampler<double> speed;
  speed.period = c.period;
  speed.periodic = c.periodic;
  speed.evaluate = [c](double t) { return differentiate(c, t, 1).norm(); };
  if (c.has_jet()) {
    speed.jet = [c](double t) {
      const Jet<Vec3> d = c.jet(t).differentiated();
      return sqrt(dot(d, d));
    };
  }
  return speed;
}

}  // namespace

double curve_length(const CurveSampler<Vec3>& c, const QuadratureSpec& spec) {
  const CurveSampler<double> speed = speed_of(c);
  QuadratureSpec q = spec;
  if (!c.periodic) q.rule = QuadratureRule::simpson;
  return closed_integral<double>(speed.evaluate, c.period, q);
}

CurveSampler<Vec3> arclength_reparam(const CurveSampler<Vec3>& c, const QuadratureSpec& spec,
                                     double tol) {
  validate(spec);
  const CurveSampler<double> speed = speed_of(c);
  const int n = spec.sample_count;
  for (int i = 0; i <= n; ++i) {
    const double t = c.period * double(i) / n;
    if (speed(t) < tol) {
      throw Error(ErrorCode::degenerate_curve,
                  "curve has zero speed at t = " + std::to_string(t));
    }
  }
  const CurveSampler<double> arclength = cumulative_integral(speed, spec);
  const double length = arclength(c.period);

  auto table = std::make_shared<std::vector<double>>(n + 1);
  for (int i = 0; i <= n; ++i) (*table)[i] = arclength(c.period * double(i) / n);

  const double period = c.period;
  const bool periodic = c.periodic;
  // t(s) by table lookup plus Newton on s(t) = target.
  auto parameter_of = [table, arclength, speed, length, period, periodic, n](double s) {
    double turns = 0.0;
    if (periodic) {
      turns = std::floor(s / length);
      s -= turns * length;
    }
    const auto it = std::upper_bound(table->begin(), table->end(), s);
    const int i = std::clamp(static_cast<int>(it - table->begin()) - 1, 0, n - 1);
    const double s0 = (*table)[i];
    const double s1 = (*table)[i + 1];
    const double h = period / n;
    double t = h * i + h * (s - s0) / (s1 - s0);
    for (int iter = 0; iter < 8; ++iter) {
      const double step = (arclength(t) - s) / speed(t);
      t -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, period)) break;
    }
    return t + turns * period;
  };

  CurveSampler<Vec3> out;
  out.period = length;
  out.periodic = c.periodic;
  out.evaluate = [c, parameter_of](double s) { return c(parameter_of(s)); };
  out.jet = [c, speed, parameter_of](double s) {
    const double t0 = parameter_of(s);
    // dt/ds = 1/‖c'(t)‖; iterate δ ← ∫ g(t0 + δ) to build the jet of t(s) − t0.
    const Jet<double> inverse_speed = reciprocal(sampler_jet(speed, t0));
    Jet<double> delta = Jet<double>::constant(0.0, 0);
    for (int k = 0; k < kMaxJetOrder; ++k) {
      delta = compose(inverse_speed, delta).integrated(0.0);
    }
    return compose(sampler_jet(c, t0), delta);
  };
  return out;
}

namespace {

// Solves the cyclic system x_{i-1} + 4 x_i + x_{i+1} = r_i (Sherman-Morrison).
template <class V>
std::vector<V> solve_cyclic_141(const std::vector<V>& r) {
  const int n = static_cast<int>(r.size());
  const double alpha = 1.0;
  const double beta = 1.0;
  const double gamma = -4.0;
  std::vector<double> diag(n, 4.0);
  diag[0] = 4.0 - gamma;
  diag[n - 1] = 4.0 - alpha * beta / gamma;

  auto thomas = [&](auto rhs) {
    using T = typename decltype(rhs)::value_type;
    std::vector<double> c(n);
    std::vector<T> d(rhs);
    c[0] = 1.0 / diag[0];
    d[0] = T(d[0] * (1.0 / diag[0]));
    for (int i = 1; i < n; ++i) {
      const double m = 1.0 / (diag[i] - c[i - 1]);
      c[i] = m;
      d[i] = T((d[i] - d[i - 1]) * m);
    }
    for (int i = n - 2; i >= 0; --i) d[i] = T(d[i] - c[i] * d[i + 1]);
    return d;
  };

  std::vector<V> x = thomas(r);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  const std::vector<double> z = thomas(u);
  const V fact = V((x[0] + (beta / gamma) * x[n - 1]) *
                   (1.0 / (1.0 + z[0] + beta * z[n - 1] / gamma)));
  for (int i = 0; i < n; ++i) x[i] -= V(z[i] * fact);
  return x;
}

template <class V>
std::vector<V> solve_natural(const std::vector<V>& y, double h) {
  const int n = static_cast<int>(y.size());
  std::vector<V> m(n, zero_value<V>());
  if (n < 3) return m;
  const int k = n - 2;
  std::vector<double> c(k);
  std::vector<V> d(k);
  for (int i = 0; i < k; ++i) d[i] = V((y[i + 2] - 2.0 * y[i + 1] + y[i]) * (6.0 / (h * h)));
  c[0] = 1.0 / 4.0;
  d[0] = V(d[0] * 0.25);
  for (int i = 1; i < k; ++i) {
    const double w = 1.0 / (4.0 - c[i - 1]);
    c[i] = w;
    d[i] = V((d[i] - d[i - 1]) * w);
  }
  for (int i = k - 2; i >= 0; --i) d[i] = V(d[i] - c[i] * d[i + 1]);
  for (int i = 0; i < k; ++i) m[i + 1] = d[i];
  return m;
}

template <class V>
struct CubicPieces {
  std::vector<V> y;
  std::vector<V> m;  // second derivatives at the nodes
  double h = 0.0;
  bool periodic = false;

  Jet<V> jet(double t) const {
    const int nodes = static_cast<int>(y.size());
    const int intervals = periodic ? nodes : nodes - 1;
    int i = static_cast<int>(std::floor(t / h));
    if (periodic) {
      i = ((i % intervals) + intervals) % intervals;
    } else {
      i = std::clamp(i, 0, intervals - 1);
    }
    const int j = periodic ? (i + 1) % nodes : i + 1;
    double u = t - h * std::floor(t / h);
    if (!periodic) u = t - h * i;
    const V d = V((m[j] - m[i]) * (1.0 / (6.0 * h)));
    const V b = V((y[j] - y[i]) * (1.0 / h) - (2.0 * m[i] + m[j]) * (h / 6.0));
    Jet<V> r;
    r[0] = V(y[i] + b * u + m[i] * (0.5 * u * u) + d * (u * u * u));
    r[1] = V(b + m[i] * u + d * (3.0 * u * u));
    r[2] = V((m[i] + d * (6.0 * u)) * 0.5);
    r[3] = d;
    r[4] = zero_value<V>();
    r.set_order(kMaxJetOrder);
    return r;
  }
};

template <class V>
CurveSampler<V> make_spline_sampler(std::shared_ptr<const CubicPieces<V>> pieces, double period,
                                    bool periodic) {
  CurveSampler<V> out;
  out.period = period;
  out.periodic = periodic;
  out.evaluate = [pieces](double t) { return pieces->jet(t)[0]; };
  out.jet = [pieces](double t) { return pieces->jet(t); };
  return out;
}

}  // namespace

template <class V>
CurveSampler<V> interpolate_periodic(std::span<const V> samples, double period) {
  const int n = static_cast<int>(samples.size());
  if (n < 4) throw Error(ErrorCode::precondition, "periodic interpolation needs at least 4 samples");
  auto pieces = std::make_shared<CubicPieces<V>>();
  pieces->y.assign(samples.begin(), samples.end());
  pieces->h = period / n;
  pieces->periodic = true;
  const double h = pieces->h;
  std::vector<V> rhs(n);
  for (int i = 0; i < n; ++i) {
    const V& prev = samples[(i + n - 1) % n];
    const V& next = samples[(i + 1) % n];
    rhs[i] = V((next - 2.0 * samples[i] + prev) * (6.0 / (h * h)));
  }
  pieces->m = solve_cyclic_141(rhs);
  return make_spline_sampler<V>(pieces, period, true);
}

template <class V>
CurveSampler<V> interpolate_natural(std::span<const V> samples, double period) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw Error(ErrorCode::precondition, "interpolation needs at least 2 samples");
  auto pieces = std::make_shared<CubicPieces<V>>();
  pieces->y.assign(samples.begin(), samples.end());
  pieces->h = period / (n - 1);
  pieces->periodic = false;
  pieces->m = solve_natural(pieces->y, pieces->h);
  return make_spline_sampler<V>(pieces, period, false);
}

template CurveSampler<double> interpolate_periodic(std::span<const double>, double);
template CurveSampler<Vec3> interpolate_periodic(std::span<const Vec3>, double);
template CurveSampler<double> interpolate_natural(std::span<const double>, double);
template CurveSampler<Vec3> interpolate_natural(std::span<const Vec3>, double);

}  // namespace ruled

namespace ruled {

namespace {

using FrenetState = std::array<Vec3, 4>;  // position, T, N, B

FrenetState frenet_rate(const FrenetState& x, double kappa, double tau) {
  return {x[1], kappa * x[2], -kappa * x[1] + tau * x[3], -tau * x[2]};
}

FrenetState advance(const FrenetState& x, double s, double h,
                    const std::function<Jet<double>(double)>& kappa,
                    const std::function<Jet<double>(double)>& tau) {
  auto rate = [&](const FrenetState& y, double at) {
    return frenet_rate(y, kappa(at)[0], tau(at)[0]);
  };
  auto axpy = [](const FrenetState& y, double a, const FrenetState& d) {
    FrenetState r;
    for (int i = 0; i < 4; ++i) r[i] = y[i] + a * d[i];
    return r;
  };
  const FrenetState k1 = rate(x, s);
  const FrenetState k2 = rate(axpy(x, 0.5 * h, k1), s + 0.5 * h);
  const FrenetState k3 = rate(axpy(x, 0.5 * h, k2), s + 0.5 * h);
  const FrenetState k4 = rate(axpy(x, h, k3), s + h);
  FrenetState r;
  for (int i = 0; i < 4; ++i) r[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

}  // namespace

FrenetCurve integrate_frenet(std::function<Jet<double>(double)> curvature,
                             std::function<Jet<double>(double)> torsion, double length,
                             int steps) {
  if (!(length > 0.0) || steps < 1) {
    throw Error(ErrorCode::precondition, "Frenet integration needs a positive length");
  }
  const double h = length / steps;
  auto nodes = std::make_shared<std::vector<FrenetState>>();
  nodes->reserve(steps + 1);
  nodes->push_back({Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()});
  for (int i = 0; i < steps; ++i) {
    nodes->push_back(advance(nodes->back(), h * i, h, curvature, torsion));
  }

  auto state_at = [nodes, h, steps, curvature, torsion](double s) {
    const int i = std::clamp(static_cast<int>(std::floor(s / h)), 0, steps - 1);
    return advance((*nodes)[i], h * i, s - h * i, curvature, torsion);
  };

  // Taylor coefficients of all four vectors at s.
  auto jets_at = [state_at, curvature, torsion](double s) {
    const FrenetState x = state_at(s);
    const Jet<double> kappa = curvature(s);
    const Jet<double> tau = torsion(s);
    std::array<Jet<Vec3>, 4> j;
    for (int i = 0; i < 4; ++i) j[i][0] = x[i];
    for (int k = 0; k < kMaxJetOrder; ++k) {
      Vec3 dt = Vec3::Zero();
      Vec3 dn = Vec3::Zero();
      Vec3 db = Vec3::Zero();
      for (int m = 0; m <= k; ++m) {
        dt += kappa[m] * j[2][k - m];
        dn += -kappa[m] * j[1][k - m] + tau[m] * j[3][k - m];
        db += -tau[m] * j[2][k - m];
      }
      j[0][k + 1] = j[1][k] / (k + 1.0);
      j[1][k + 1] = dt / (k + 1.0);
      j[2][k + 1] = dn / (k + 1.0);
      j[3][k + 1] = db / (k + 1.0);
    }
    const int order = std::min(kappa.order(), tau.order()) + 1;
    for (auto& jet : j) jet.set_order(order);
    return j;
  };

  FrenetCurve out;
  CurveSampler<Vec3>* parts[4] = {&out.position, &out.tangent, &out.normal, &out.binormal};
  for (int i = 0; i < 4; ++i) {
    parts[i]->period = length;
    parts[i]->periodic = false;
    parts[i]->evaluate = [state_at, i](double s) { return state_at(s)[i]; };
    parts[i]->jet = [jets_at, i](double s) { return jets_at(s)[i]; };
  }
  return out;
}

}  // namespace ruled
