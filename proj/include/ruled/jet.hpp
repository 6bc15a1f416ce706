#pragma once

// Truncated Taylor series (forward-mode automatic differentiation) over the
// value types of the kernel: double, Vec3, DualNumber and DualVector3.
//
// A Jet stores Taylor coefficients c_k = f^(k)(t0)/k! for k = 0..order. Every
// operation propagates the smallest order of its operands, so a quantity that
// consumed one differentiation carries one fewer valid coefficient.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ruled/dual.hpp"
#include "ruled/errors.hpp"

namespace ruled {

inline constexpr int kMaxJetOrder = 4;

template <class T>
T zero_value();
template <>
inline double zero_value<double>() { return 0.0; }
template <>
inline Vec3 zero_value<Vec3>() { return Vec3::Zero(); }
template <>
inline DualNumber zero_value<DualNumber>() { return {}; }
template <>
inline DualVector3 zero_value<DualVector3>() { return {}; }

// Bilinear products used by the Cauchy product of two jets.
inline double mul(double a, double b) { return a * b; }
inline Vec3 mul(double a, const Vec3& b) { return a * b; }
inline DualNumber mul(double a, const DualNumber& b) { return a * b; }
inline DualVector3 mul(double a, const DualVector3& b) { return a * b; }
inline DualNumber mul(const DualNumber& a, const DualNumber& b) { return a * b; }
inline DualVector3 mul(const DualNumber& a, const DualVector3& b) { return a * b; }

inline double inner(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline DualNumber inner(const DualVector3& a, const DualVector3& b) { return dv_dot(a, b); }
inline Vec3 outer(const Vec3& a, const Vec3& b) { return a.cross(b); }
inline DualVector3 outer(const DualVector3& a, const DualVector3& b) { return dv_cross(a, b); }

template <class T>
class Jet {
 public:
  Jet() { coef_.fill(zero_value<T>()); }

  static Jet constant(const T& value, int order = kMaxJetOrder) {
    Jet j;
    j.coef_[0] = value;
    j.order_ = order;
    return j;
  }

  /// Builds a jet from plain derivatives d[k] = f^(k)(t0).
  template <class Range>
  static Jet from_derivatives(const Range& derivatives) {
    Jet j;
    int k = 0;
    double factorial = 1.0;
    for (const auto& d : derivatives) {
      if (k > kMaxJetOrder) break;
      if (k > 0) factorial *= k;
      j.coef_[k] = (1.0 / factorial) * d;
      ++k;
    }
    j.order_ = k - 1;
    return j;
  }

  int order() const { return order_; }
  void set_order(int order) { order_ = std::clamp(order, 0, kMaxJetOrder); }

  const T& value() const { return coef_[0]; }
  const T& operator[](int k) const { return coef_[k]; }
  T& operator[](int k) { return coef_[k]; }

  /// k-th derivative f^(k)(t0).
  T derivative(int k) const {
    if (k < 0 || k > order_) {
      throw Error(ErrorCode::precondition, "jet of order " + std::to_string(order_) +
                                               " has no derivative of order " +
                                               std::to_string(k));
    }
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return factorial * coef_[k];
  }

  /// Jet of f' (one order lower).
  Jet differentiated() const {
    Jet j;
    for (int k = 0; k < order_; ++k) j.coef_[k] = double(k + 1) * coef_[k + 1];
    j.order_ = std::max(order_ - 1, 0);
    return j;
  }

  /// Jet of F with F' = f and F(t0) = value.
  Jet integrated(const T& value) const {
    Jet j;
    j.coef_[0] = value;
    const int top = std::min(order_ + 1, kMaxJetOrder);
    for (int k = 1; k <= top; ++k) j.coef_[k] = (1.0 / k) * coef_[k - 1];
    j.order_ = top;
    return j;
  }

  /// Applies a coefficient-wise linear map.
  template <class F>
  auto map(F&& f) const {
    using R = std::decay_t<decltype(f(coef_[0]))>;
    Jet<R> r;
    for (int k = 0; k <= order_; ++k) r[k] = f(coef_[k]);
    r.set_order(order_);
    return r;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= kMaxJetOrder; ++k) coef_[k] += o.coef_[k];
    order_ = std::min(order_, o.order_);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= kMaxJetOrder; ++k) coef_[k] -= o.coef_[k];
    order_ = std::min(order_, o.order_);
    return *this;
  }

 private:
  std::array<T, kMaxJetOrder + 1> coef_;
  int order_ = kMaxJetOrder;
};

/// The identity jet t ↦ t at t0.
inline Jet<double> jet_variable(double t0, int order = kMaxJetOrder) {
  Jet<double> j = Jet<double>::constant(t0, order);
  if (order >= 1) j[1] = 1.0;
  return j;
}

template <class T>
Jet<T> operator+(Jet<T> a, const Jet<T>& b) { return a += b; }
template <class T>
Jet<T> operator-(Jet<T> a, const Jet<T>& b) { return a -= b; }
template <class T>
Jet<T> operator-(const Jet<T>& a) {
  return a.map([](const T& c) -> T { return -c; });
}
template <class T>
Jet<T> operator*(double s, const Jet<T>& a) {
  return a.map([s](const T& c) -> T { return mul(s, c); });
}
template <class T>
Jet<T> operator*(const Jet<T>& a, double s) { return s * a; }

/// Cauchy product with a caller-supplied bilinear op.
template <class A, class B, class Op>
auto convolve(const Jet<A>& a, const Jet<B>& b, Op op) {
  using R = std::decay_t<decltype(op(a[0], b[0]))>;
  Jet<R> r;
  const int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k) {
    R acc = zero_value<R>();
    for (int i = 0; i <= k; ++i) acc += op(a[i], b[k - i]);
    r[k] = acc;
  }
  r.set_order(n);
  return r;
}

template <class A, class B>
auto operator*(const Jet<A>& a, const Jet<B>& b) -> Jet<decltype(mul(a[0], b[0]))> {
  return convolve(a, b, [](const A& x, const B& y) { return mul(x, y); });
}

template <class V>
auto dot(const Jet<V>& a, const Jet<V>& b) {
  return convolve(a, b, [](const V& x, const V& y) { return inner(x, y); });
}

template <class V>
Jet<V> cross(const Jet<V>& a, const Jet<V>& b) {
  return convolve(a, b, [](const V& x, const V& y) { return outer(x, y); });
}

// Elementary functions of scalar jets (S = double or DualNumber). Each uses
// the standard recurrence on Taylor coefficients, so only the value-level
// function is ever evaluated.

template <class S>
Jet<S> reciprocal(const Jet<S>& x) {
  Jet<S> r;
  r.set_order(x.order());
  const S inv = S(1.0) / x[0];
  r[0] = inv;
  for (int k = 1; k <= x.order(); ++k) {
    S acc = zero_value<S>();
    for (int j = 1; j <= k; ++j) acc += x[j] * r[k - j];
    r[k] = -(acc * inv);
  }
  return r;
}

template <class S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b) { return a * reciprocal(b); }

template <class S>
Jet<S> sqrt(const Jet<S>& x) {
  using std::sqrt;
  Jet<S> r;
  r.set_order(x.order());
  r[0] = sqrt(x[0]);
  if (x.order() == 0) return r;
  const S inv2 = S(1.0) / (2.0 * r[0]);
  for (int k = 1; k <= x.order(); ++k) {
    S acc = x[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc * inv2;
  }
  return r;
}

template <class S>
Jet<S> exp(const Jet<S>& x) {
  using std::exp;
  Jet<S> r;
  r.set_order(x.order());
  r[0] = exp(x[0]);
  for (int k = 1; k <= x.order(); ++k) {
    S acc = zero_value<S>();
    for (int j = 1; j <= k; ++j) acc += (double(j) * x[j]) * r[k - j];
    r[k] = (1.0 / k) * acc;
  }
  return r;
}

template <class S>
Jet<S> log(const Jet<S>& x) {
  using std::log;
  Jet<S> r;
  r.set_order(x.order());
  r[0] = log(x[0]);
  const S inv = S(1.0) / x[0];
  for (int k = 1; k <= x.order(); ++k) {
    S acc = x[k];
    for (int j = 1; j < k; ++j) acc -= ((double(j) / k) * r[j]) * x[k - j];
    r[k] = acc * inv;
  }
  return r;
}

/// sin and cos of a jet, computed together.
template <class S>
std::pair<Jet<S>, Jet<S>> sincos(const Jet<S>& x) {
  using std::cos;
  using std::sin;
  Jet<S> s, c;
  s.set_order(x.order());
  c.set_order(x.order());
  s[0] = sin(x[0]);
  c[0] = cos(x[0]);
  for (int k = 1; k <= x.order(); ++k) {
    S as = zero_value<S>();
    S ac = zero_value<S>();
    for (int j = 1; j <= k; ++j) {
      as += (double(j) * x[j]) * c[k - j];
      ac += (double(j) * x[j]) * s[k - j];
    }
    s[k] = (1.0 / k) * as;
    c[k] = (-1.0 / k) * ac;
  }
  return {s, c};
}

template <class S>
Jet<S> sin(const Jet<S>& x) { return sincos(x).first; }
template <class S>
Jet<S> cos(const Jet<S>& x) { return sincos(x).second; }

/// g = f(x) given g(x0) and the jet of f'(x): g_k = (1/k) Σ j x_j h_{k−j}.
template <class S>
Jet<S> integrate_chain(const S& value, const Jet<S>& x, const Jet<S>& fprime_of_x) {
  Jet<S> r;
  r.set_order(std::min(x.order(), fprime_of_x.order() + 1));
  r[0] = value;
  for (int k = 1; k <= r.order(); ++k) {
    S acc = zero_value<S>();
    for (int j = 1; j <= k; ++j) acc += (double(j) * x[j]) * fprime_of_x[k - j];
    r[k] = (1.0 / k) * acc;
  }
  return r;
}

inline Jet<double> real_part(const Jet<DualNumber>& j) {
  return j.map([](const DualNumber& d) { return d.real; });
}
inline Jet<double> dual_part(const Jet<DualNumber>& j) {
  return j.map([](const DualNumber& d) { return d.dual; });
}
inline Jet<Vec3> real_part(const Jet<DualVector3>& j) {
  return j.map([](const DualVector3& d) -> Vec3 { return d.real; });
}
inline Jet<Vec3> dual_part(const Jet<DualVector3>& j) {
  return j.map([](const DualVector3& d) -> Vec3 { return d.dual; });
}

inline Jet<DualVector3> make_dual(const Jet<Vec3>& real, const Jet<Vec3>& dual) {
  Jet<DualVector3> r;
  for (int k = 0; k <= kMaxJetOrder; ++k) r[k] = DualVector3(real[k], dual[k]);
  r.set_order(std::min(real.order(), dual.order()));
  return r;
}
inline Jet<DualNumber> make_dual(const Jet<double>& real, const Jet<double>& dual) {
  Jet<DualNumber> r;
  for (int k = 0; k <= kMaxJetOrder; ++k) r[k] = DualNumber(real[k], dual[k]);
  r.set_order(std::min(real.order(), dual.order()));
  return r;
}

/// v/‖v‖ for real or dual vector jets.
template <class V>
Jet<V> normalized(const Jet<V>& v) {
  return reciprocal(sqrt(dot(v, v))) * v;
}

/// Σ_k outer_k δ^k, the Taylor series of f(t0 + δ(s)) given f's jet at t0 and
/// a jet δ with δ(0) = 0.
template <class V>
Jet<V> compose(const Jet<V>& outer_jet, const Jet<double>& delta) {
  Jet<V> r = Jet<V>::constant(outer_jet[0], std::min(outer_jet.order(), delta.order()));
  Jet<double> power = Jet<double>::constant(1.0, delta.order());
  for (int k = 1; k <= r.order(); ++k) {
    power = power * delta;
    for (int m = k; m <= r.order(); ++m) r[m] += mul(power[m], outer_jet[k]);
  }
  return r;
}

}  // namespace ruled
