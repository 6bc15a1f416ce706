#include "ruled/dual.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ruled/errors.hpp"

namespace ruled {

DualNumber dn_mul(const DualNumber& a, const DualNumber& b) {
  return {a.real * b.real, a.real * b.dual + a.dual * b.real};
}

DualNumber dn_div(const DualNumber& a, const DualNumber& b, double tol) {
  if (std::abs(b.real) < tol) {
    throw Error(ErrorCode::division_by_zero, "dual division by a number with zero real part");
  }
  return {a.real / b.real, (a.dual * b.real - a.real * b.dual) / (b.real * b.real)};
}

std::ostream& operator<<(std::ostream& os, const DualNumber& a) {
  return os << a.real << (a.dual < 0 ? " - e" : " + e") << std::abs(a.dual);
}

namespace {

[[noreturn]] void domain_error(const char* name, double x) {
  throw Error(ErrorCode::domain,
              std::string(name) + " is not differentiable at " + std::to_string(x));
}

}  // namespace

DualNumber apply_analytic(Analytic f, const DualNumber& x) {
  const double r = x.real;
  const double d = x.dual;
  switch (f) {
    case Analytic::sin: return {std::sin(r), d * std::cos(r)};
    case Analytic::cos: return {std::cos(r), -d * std::sin(r)};
    case Analytic::tan: {
      const double c = std::cos(r);
      if (std::abs(c) < default_tolerances().division) domain_error("tan", r);
      return {std::tan(r), d / (c * c)};
    }
    case Analytic::sqrt: {
      if (r < 0.0 || (r == 0.0 && d != 0.0)) domain_error("sqrt", r);
      if (r == 0.0) return {0.0, 0.0};
      const double s = std::sqrt(r);
      return {s, d / (2.0 * s)};
    }
    case Analytic::exp: {
      const double e = std::exp(r);
      return {e, d * e};
    }
    case Analytic::log:
      if (r <= 0.0) domain_error("log", r);
      return {std::log(r), d / r};
    case Analytic::asin:
    case Analytic::acos: {
      if (std::abs(r) > 1.0) domain_error(f == Analytic::asin ? "asin" : "acos", r);
      const double value = f == Analytic::asin ? std::asin(r) : std::acos(r);
      if (d == 0.0) return {value, 0.0};
      if (std::abs(r) == 1.0) domain_error(f == Analytic::asin ? "asin" : "acos", r);
      const double slope = 1.0 / std::sqrt(1.0 - r * r);
      return {value, f == Analytic::asin ? d * slope : -d * slope};
    }
    case Analytic::atan: return {std::atan(r), d / (1.0 + r * r)};
    case Analytic::sinh: return {std::sinh(r), d * std::cosh(r)};
    case Analytic::cosh: return {std::cosh(r), d * std::sinh(r)};
    case Analytic::tanh: {
      const double c = std::cosh(r);
      return {std::tanh(r), d / (c * c)};
    }
  }
  domain_error("unknown function", r);
}

DualNumber dv_dot(const DualVector3& a, const DualVector3& b) {
  return {a.real.dot(b.real), a.real.dot(b.dual) + a.dual.dot(b.real)};
}

DualVector3 dv_cross(const DualVector3& a, const DualVector3& b) {
  return {a.real.cross(b.real), a.real.cross(b.dual) + a.dual.cross(b.real)};
}

DualNumber dv_norm(const DualVector3& a, double tol) {
  const double n = a.real.norm();
  if (n < tol) {
    throw Error(ErrorCode::degenerate, "dual vector with zero real part has no norm");
  }
  return {n, a.real.dot(a.dual) / n};
}

DualVector3 dv_normalize(const DualVector3& a, double tol) {
  const DualNumber n = dv_norm(a, tol);
  // 1/n = 1/r − ε r*/r²
  const DualNumber inv{1.0 / n.real, -n.dual / (n.real * n.real)};
  return inv * a;
}

double max_abs_diff(const DualVector3& a, const DualVector3& b) {
  return std::max((a.real - b.real).cwiseAbs().maxCoeff(),
                  (a.dual - b.dual).cwiseAbs().maxCoeff());
}

std::ostream& operator<<(std::ostream& os, const DualVector3& a) {
  return os << "(" << a.real.x() << ", " << a.real.y() << ", " << a.real.z() << ") + e("
            << a.dual.x() << ", " << a.dual.y() << ", " << a.dual.z() << ")";
}

DualAngle dual_acos(const DualNumber& c, double tol) {
  double r = c.real;
  if (std::abs(r) > 1.0 + default_tolerances().algebraic) {
    throw Error(ErrorCode::domain, "dual_acos argument outside [-1, 1]");
  }
  r = std::clamp(r, -1.0, 1.0);
  const double theta = std::acos(r);
  const double s = std::sin(theta);
  if (s < tol) {
    throw Error(ErrorCode::parallel_degenerate,
                "offset distance of (anti)parallel lines is not recoverable from the cosine");
  }
  return {theta, -c.dual / s};
}

}  // namespace ruled
