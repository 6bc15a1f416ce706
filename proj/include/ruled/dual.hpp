#pragma once

// Dual numbers a + εa* (ε² = 0), dual 3-vectors and dual angles.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <iosfwd>

#include "ruled/tolerances.hpp"

namespace ruled {

using Vec3 = Eigen::Vector3d;

struct DualNumber {
  double real = 0.0;
  double dual = 0.0;

  constexpr DualNumber() = default;
  constexpr DualNumber(double r, double d = 0.0) : real(r), dual(d) {}

  static constexpr DualNumber pure_dual(double d) { return {0.0, d}; }

  DualNumber& operator+=(const DualNumber& o) {
    real += o.real;
    dual += o.dual;
    return *this;
  }
  DualNumber& operator-=(const DualNumber& o) {
    real -= o.real;
    dual -= o.dual;
    return *this;
  }
  DualNumber& operator*=(double s) {
    real *= s;
    dual *= s;
    return *this;
  }
};

constexpr DualNumber operator+(DualNumber a, const DualNumber& b) { return {a.real + b.real, a.dual + b.dual}; }
constexpr DualNumber operator-(DualNumber a, const DualNumber& b) { return {a.real - b.real, a.dual - b.dual}; }
constexpr DualNumber operator-(const DualNumber& a) { return {-a.real, -a.dual}; }
constexpr DualNumber operator*(double s, const DualNumber& a) { return {s * a.real, s * a.dual}; }
constexpr DualNumber operator*(const DualNumber& a, double s) { return {s * a.real, s * a.dual}; }

DualNumber dn_mul(const DualNumber& a, const DualNumber& b);
inline DualNumber operator*(const DualNumber& a, const DualNumber& b) { return dn_mul(a, b); }

/// (a + εa*)/(b + εb*) = a/b + ε(a*b − ab*)/b². Throws division_by_zero when
/// |b| < tol.
DualNumber dn_div(const DualNumber& a, const DualNumber& b,
                  double tol = default_tolerances().division);
inline DualNumber operator/(const DualNumber& a, const DualNumber& b) { return dn_div(a, b); }
inline DualNumber operator/(const DualNumber& a, double s) { return {a.real / s, a.dual / s}; }

std::ostream& operator<<(std::ostream& os, const DualNumber& a);

enum class Analytic { sin, cos, tan, sqrt, exp, log, asin, acos, atan, sinh, cosh, tanh };

/// f(x + εx*) = f(x) + εx* f'(x).
DualNumber apply_analytic(Analytic f, const DualNumber& x);

template <class F, class DF>
DualNumber apply_analytic(F&& f, DF&& df, const DualNumber& x) {
  return {f(x.real), x.dual * df(x.real)};
}

// ADL-visible elementary functions, so generic code can write sqrt(x).
inline DualNumber sin(const DualNumber& x) { return apply_analytic(Analytic::sin, x); }
inline DualNumber cos(const DualNumber& x) { return apply_analytic(Analytic::cos, x); }
inline DualNumber sqrt(const DualNumber& x) { return apply_analytic(Analytic::sqrt, x); }
inline DualNumber exp(const DualNumber& x) { return apply_analytic(Analytic::exp, x); }
inline DualNumber log(const DualNumber& x) { return apply_analytic(Analytic::log, x); }

struct DualVector3 {
  Vec3 real = Vec3::Zero();
  Vec3 dual = Vec3::Zero();

  DualVector3() = default;
  DualVector3(const Vec3& r, const Vec3& d) : real(r), dual(d) {}

  static DualVector3 from_real(const Vec3& r) { return {r, Vec3::Zero()}; }

  DualNumber component(int i) const { return {real[i], dual[i]}; }

  DualVector3& operator+=(const DualVector3& o) {
    real += o.real;
    dual += o.dual;
    return *this;
  }
  DualVector3& operator-=(const DualVector3& o) {
    real -= o.real;
    dual -= o.dual;
    return *this;
  }
};

inline DualVector3 operator+(const DualVector3& a, const DualVector3& b) { return {a.real + b.real, a.dual + b.dual}; }
inline DualVector3 operator-(const DualVector3& a, const DualVector3& b) { return {a.real - b.real, a.dual - b.dual}; }
inline DualVector3 operator-(const DualVector3& a) { return {-a.real, -a.dual}; }
inline DualVector3 operator*(double s, const DualVector3& a) { return {s * a.real, s * a.dual}; }
inline DualVector3 operator*(const DualVector3& a, double s) { return s * a; }
inline DualVector3 operator*(const DualNumber& s, const DualVector3& a) {
  return {s.real * a.real, s.real * a.dual + s.dual * a.real};
}
inline DualVector3 operator*(const DualVector3& a, const DualNumber& s) { return s * a; }

DualNumber dv_dot(const DualVector3& a, const DualVector3& b);
DualVector3 dv_cross(const DualVector3& a, const DualVector3& b);

/// ‖ã‖ = ‖a‖ + ε⟨a, a*⟩/‖a‖. Throws degenerate when ‖a‖ < tol.
DualNumber dv_norm(const DualVector3& a, double tol = default_tolerances().algebraic);
DualVector3 dv_normalize(const DualVector3& a, double tol = default_tolerances().algebraic);

/// Largest absolute component difference over real and dual parts.
double max_abs_diff(const DualVector3& a, const DualVector3& b);

std::ostream& operator<<(std::ostream& os, const DualVector3& a);

struct DualAngle {
  double theta = 0.0;       // radians
  double theta_star = 0.0;  // length

  DualNumber as_dual() const { return {theta, theta_star}; }
};

inline DualNumber cos(const DualAngle& a) { return cos(a.as_dual()); }
inline DualNumber sin(const DualAngle& a) { return sin(a.as_dual()); }

/// Inverse of cos θ̄ = cos θ − εθ* sin θ. Throws parallel_degenerate when
/// sin θ < tol, since θ* is then not recoverable from the cosine.
DualAngle dual_acos(const DualNumber& c, double tol = default_tolerances().parallel);

}  // namespace ruled
