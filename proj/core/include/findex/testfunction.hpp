#pragma once

#include <array>
#include <map>
#include <variant>

#include "findex/types.hpp"

namespace findex {

/// Dense-enough multivariate polynomial in up to 3 variables, complex
/// coefficients, exact ring operations.  Exponent keys are (e0, e1, e2)
/// with unused trailing variables at exponent 0.
class Poly {
public:
  using Key = std::array<int, 3>;

  explicit Poly(int nvars = 1) : nvars_(nvars) {}
  static Poly constant(int nvars, cxd c);
  static Poly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  const std::map<Key, cxd>& terms() const { return terms_; }
  void add_term(Key e, cxd c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(cxd s) const;
  Poly derivative(int i) const;
  /// p(A x + b) for a linear change of variables
  Poly substitute_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) const;

  cxd eval(const double* x) const;
  int degree() const;
  bool is_zero() const { return terms_.empty(); }

private:
  int nvars_;
  std::map<Key, cxd> terms_;
};

/// P(x) * exp(-(x-c)^T Q (x-c)) with Q symmetric positive definite.
/// Closed under coordinate derivatives, so the d'Alembertian applies exactly.
struct GaussPoly {
  int n = 1;
  Poly P{1};
  Eigen::MatrixXd Q;
  Eigen::VectorXd center;

  static GaussPoly unit(int n, double width = 1.0);

  GaussPoly derivative(int mu) const;
  cxd eval(const double* x) const;
};

/// N(x) / (u-1)^k * exp(1/(u-1)) inside the ellipsoid u < 1, zero outside,
/// where u = sum ((x_i-c_i)/r_i)^2.  Closed under derivatives.
struct BumpFn {
  int n = 1;
  Poly N{1};
  int k = 0;
  Eigen::VectorXd center;
  Eigen::VectorXd radii;

  static BumpFn unit(int n, double radius = 1.0);

  BumpFn derivative(int mu) const;
  cxd eval(const double* x) const;

  Poly u_poly() const;  // the ellipsoidal radius polynomial
};

/// Rapidly decaying test function on R^n with closed-form derivatives,
/// so wave operators can be transferred onto it analytically.
class TestFunction {
public:
  TestFunction(GaussPoly g) : impl_(std::move(g)) {}
  TestFunction(BumpFn b) : impl_(std::move(b)) {}

  int dimension() const;
  cxd eval(const double* x) const;
  cxd operator()(const std::vector<double>& x) const { return eval(x.data()); }

  TestFunction derivative(int mu) const;
  /// d'Alembertian d_t^2 - sum_i d_i^2 (coordinate 0 is time)
  TestFunction box() const;
  TestFunction box_power(int m) const;
  /// multiply by a polynomial (e.g. the Minkowski square gamma)
  TestFunction times_poly(const Poly& p) const;
  /// pull back along a linear map, phi(A x)
  TestFunction pullback_linear(const Eigen::MatrixXd& A) const;

  bool is_gaussian() const { return std::holds_alternative<GaussPoly>(impl_); }
  const GaussPoly& gaussian() const { return std::get<GaussPoly>(impl_); }
  const BumpFn& bump() const { return std::get<BumpFn>(impl_); }

private:
  std::variant<GaussPoly, BumpFn> impl_;
};

/// gamma(x) = x_0^2 - x_1^2 - ... (negative Minkowski square) as a Poly.
Poly minkowski_gamma(int n);

/// Lorentz boost of the given rapidity in the (t, x_1) plane, identity on
/// the remaining coordinates.
Eigen::MatrixXd lorentz_boost(int n, double rapidity);

}  // namespace findex
