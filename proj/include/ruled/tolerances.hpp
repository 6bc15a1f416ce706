#pragma once

namespace ruled {

/// Every numeric threshold used by the kernel lives here.
struct Tolerances {
  double algebraic = 1e-12;  // exact identities up to rounding
  double geometric = 1e-9;   // comparisons of geometric quantities
  double division = 1e-12;   // smallest accepted |real part| of a divisor
  double closure = 1e-9;     // k(0) vs k(T), q(0) vs q(T)
  double degenerate = 1e-9;  // zero speed / zero curvature detection
  double parallel = 1e-9;    // sin(theta) below which two lines are parallel
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace ruled
