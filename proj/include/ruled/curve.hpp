#pragma once

// Curve samplers and the numerics shared by every invariant: derivatives,
// closed-curve quadrature, cumulative integrals, arclength and interpolation.

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "ruled/dual.hpp"
#include "ruled/errors.hpp"
#include "ruled/jet.hpp"

namespace ruled {

inline constexpr int kDefaultSampleCount = 256;

/// A curve over [0, period). `jet`, when present, supplies exact derivatives.
template <class V>
struct CurveSampler {
  double period = 2.0 * M_PI;
  bool periodic = false;
  std::function<V(double)> evaluate;
  std::function<Jet<V>(double)> jet;

  V operator()(double t) const { return evaluate(t); }
  bool has_jet() const { return static_cast<bool>(jet); }
};

enum class QuadratureRule { trapezoid_periodic, simpson };

struct QuadratureSpec {
  int sample_count = kDefaultSampleCount;
  QuadratureRule rule = QuadratureRule::trapezoid_periodic;
};

void validate(const QuadratureSpec& spec);

/// Parameter of sample i of a periodic grid with n samples.
inline double grid_parameter(double period, int n, int i) { return period * double(i) / n; }

/// Step used by the finite-difference fallback of `differentiate`.
inline double difference_step(double period, int sample_count = kDefaultSampleCount) {
  return period / (64.0 * sample_count);
}

/// Central-difference estimate of the order-th derivative with step h:
/// 3-point stencils for orders 1 and 2, 5-point stencils for orders 3 and 4.
template <class V, class F>
V central_difference(F&& f, double t, int order, double h) {
  switch (order) {
    case 1: return V((f(t + h) - f(t - h)) * (0.5 / h));
    case 2: return V((f(t + h) - 2.0 * f(t) + f(t - h)) * (1.0 / (h * h)));
    case 3:
      return V((f(t + 2 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2 * h)) *
               (0.5 / (h * h * h)));
    case 4:
      return V((f(t + 2 * h) - 4.0 * f(t + h) + 6.0 * f(t) - 4.0 * f(t - h) + f(t - 2 * h)) *
               (1.0 / (h * h * h * h)));
    default:
      throw Error(ErrorCode::precondition, "finite differences support orders 1 to 4");
  }
}

/// d^order c/dt^order at t: exact when the sampler has a jet, otherwise
/// central differences with step T/(64 N) (wider steps for higher orders).
template <class V>
V differentiate(const CurveSampler<V>& c, double t, int order,
                int sample_count = kDefaultSampleCount) {
  if (order == 0) return c(t);
  if (c.has_jet()) return c.jet(t).derivative(order);
  static constexpr std::array<double, 5> widen{1.0, 1.0, 4.0, 16.0, 32.0};
  const double h = difference_step(c.period, sample_count) * widen.at(order);
  return central_difference<V>(c.evaluate, t, order, h);
}

/// Jet of c at t, exact or assembled from finite differences.
template <class V>
Jet<V> sampler_jet(const CurveSampler<V>& c, double t, int sample_count = kDefaultSampleCount) {
  if (c.has_jet()) return c.jet(t);
  std::array<V, kMaxJetOrder + 1> d;
  for (int k = 0; k <= kMaxJetOrder; ++k) d[k] = differentiate(c, t, k, sample_count);
  return Jet<V>::from_derivatives(d);
}

/// ∮ f over one period: composite trapezoid on N uniform samples (spectrally
/// accurate for smooth periodic f) or composite Simpson on [0, T].
template <class V, class F>
V closed_integral(F&& f, double period, const QuadratureSpec& spec = {}) {
  validate(spec);
  const int n = spec.sample_count;
  if (spec.rule == QuadratureRule::trapezoid_periodic) {
    V acc = f(0.0);
    for (int i = 1; i < n; ++i) acc += V(f(grid_parameter(period, n, i)));
    return V(acc * (period / n));
  }
  const int m = n % 2 == 0 ? n : n + 1;
  const double h = period / m;
  V acc = V(f(0.0) + f(period));
  for (int i = 1; i < m; ++i) acc += V(f(h * i) * (i % 2 == 1 ? 4.0 : 2.0));
  return V(acc * (h / 3.0));
}

/// Running integral F(t) = ∫_0^t f with F(0) = 0. Grid values use 5-point
/// Gauss-Legendre panels; off-grid values integrate from the nearest node.
template <class V>
CurveSampler<V> cumulative_integral(const CurveSampler<V>& f, const QuadratureSpec& spec = {});

/// Unit-speed reparametrization of a regular curve. Throws degenerate_curve
/// when ‖c'‖ < tol at any sample.
CurveSampler<Vec3> arclength_reparam(const CurveSampler<Vec3>& c, const QuadratureSpec& spec = {},
                                     double tol = default_tolerances().degenerate);

/// Length of a curve over one period.
double curve_length(const CurveSampler<Vec3>& c, const QuadratureSpec& spec = {});

/// Periodic cubic spline through samples at t_i = i T/N.
template <class V>
CurveSampler<V> interpolate_periodic(std::span<const V> samples, double period);

/// Natural cubic spline through samples at t_i = i T/(N−1), endpoints included.
template <class V>
CurveSampler<V> interpolate_natural(std::span<const V> samples, double period);

/// Unit-speed curve with prescribed curvature κ(s) and torsion τ(s), from the
/// Frenet system started at the origin with the standard frame. Values come
/// from RK4; jets from the Taylor recurrence of the same system.
struct FrenetCurve {
  CurveSampler<Vec3> position, tangent, normal, binormal;
};

FrenetCurve integrate_frenet(std::function<Jet<double>(double)> curvature,
                             std::function<Jet<double>(double)> torsion, double length,
                             int steps = 4096);

}  // namespace ruled
