#pragma once

#include <complex>

#include "findex/types.hpp"

namespace findex {

/// log Gamma(z), principal branch, Lanczos approximation with reflection.
cxd lgamma_c(cxd z);
cxd gamma_c(cxd z);

/// 1/Gamma(z); entire in z (returns 0 at non-positive integers).
cxd rgamma_c(cxd z);

/// digamma(z) via asymptotic series with upward recurrence.
cxd digamma_c(cxd z);

/// Hurwitz zeta(s, q) for complex s != 1 and Re(q) > 0, Euler-Maclaurin
/// continuation.  Valid in particular at s = 0 where zeta(0, q) = 1/2 - q.
cxd hurwitz_zeta(cxd s, cxd q);

/// order-th derivative at z0 of a function analytic on |z - z0| <= radius,
/// trapezoidal Cauchy integral with `nodes` points.
template <class F>
cxd cauchy_derivative(F&& f, cxd z0, int order, double radius = 0.5, int nodes = 64) {
  cxd acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double th = 2.0 * M_PI * k / nodes;
    const cxd w = std::polar(1.0, th);
    acc += f(z0 + radius * w) * std::polar(1.0, -order * th);
  }
  double fact = 1.0;
  for (int j = 2; j <= order; ++j) fact *= j;
  return acc * fact / (static_cast<double>(nodes) * std::pow(radius, order));
}

}  // namespace findex
