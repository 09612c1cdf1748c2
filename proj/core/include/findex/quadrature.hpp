#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "findex/types.hpp"

namespace findex {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre on [-1, 1].
QuadRule gauss_legendre(int n);
/// Gauss-Legendre mapped to [a, b].
QuadRule gauss_legendre(int n, double a, double b);
/// Gauss-Hermite, weight e^{-x^2} on the real line.
QuadRule gauss_hermite(int n);
/// Gauss-Jacobi with weight s^alpha on [0, 1] (alpha > -1).
QuadRule gauss_jacobi01(int n, double alpha);

/// Adaptive 1-D quadrature (Gauss-Kronrod 7/15 with bisection) of a
/// complex- or matrix-valued integrand.
cxd integrate_adaptive(const std::function<cxd(double)>& f, double a, double b,
                       double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 30);

Matrix integrate_adaptive_matrix(const std::function<Matrix(double)>& f, double a, double b,
                                 double abs_tol = 1e-12, double rel_tol = 1e-12,
                                 int max_depth = 30);

}  // namespace findex
