#include "findex/testfunction.hpp"

#include <cmath>

namespace findex {

Poly Poly::constant(int nvars, cxd c) {
  Poly p(nvars);
  p.add_term({0, 0, 0}, c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  Key e{0, 0, 0};
  e[i] = 1;
  p.add_term(e, 1.0);
  return p;
}

void Poly::add_term(Key e, cxd c) {
  if (c == cxd(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cxd(0.0)) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_)
      r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
  return r;
}

Poly Poly::operator*(cxd s) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

Poly Poly::derivative(int i) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Key d = e;
    d[i] -= 1;
    r.add_term(d, c * static_cast<double>(e[i]));
  }
  return r;
}

Poly Poly::substitute_affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) const {
  std::vector<Poly> images;
  for (int i = 0; i < nvars_; ++i) {
    Poly xi = Poly::constant(nvars_, b(i));
    for (int j = 0; j < nvars_; ++j)
      if (A(i, j) != 0.0) xi = xi + Poly::variable(nvars_, j) * cxd(A(i, j));
    images.push_back(std::move(xi));
  }
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i)
      for (int p = 0; p < e[i]; ++p) term = term * images[i];
    r = r + term;
  }
  return r;
}

cxd Poly::eval(const double* x) const {
  cxd acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = 1.0;
    for (int i = 0; i < nvars_; ++i)
      for (int p = 0; p < e[i]; ++p) m *= x[i];
    acc += c * m;
  }
  return acc;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

GaussPoly GaussPoly::unit(int n, double width) {
  GaussPoly g;
  g.n = n;
  g.P = Poly::constant(n, 1.0);
  g.Q = Eigen::MatrixXd::Identity(n, n) / (width * width);
  g.center = Eigen::VectorXd::Zero(n);
  return g;
}

GaussPoly GaussPoly::derivative(int mu) const {
  // d/dx_mu [P e^{-q}] = (dP - P dq) e^{-q},  dq = 2 Q (x - c) . e_mu
  Poly dq(n);
  for (int j = 0; j < n; ++j) {
    const double a = 2.0 * Q(mu, j);
    if (a == 0.0) continue;
    dq = dq + (Poly::variable(n, j) - Poly::constant(n, center(j))) * cxd(a);
  }
  GaussPoly g = *this;
  g.P = P.derivative(mu) - P * dq;
  return g;
}

cxd GaussPoly::eval(const double* x) const {
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = x[i] - center(i);
  return P.eval(x) * std::exp(-d.dot(Q * d));
}

BumpFn BumpFn::unit(int n, double radius) {
  BumpFn b;
  b.n = n;
  b.N = Poly::constant(n, 1.0);
  b.k = 0;
  b.center = Eigen::VectorXd::Zero(n);
  b.radii = Eigen::VectorXd::Constant(n, radius);
  return b;
}

Poly BumpFn::u_poly() const {
  Poly u(n);
  for (int i = 0; i < n; ++i) {
    const Poly xi = (Poly::variable(n, i) - Poly::constant(n, center(i))) *
                    cxd(1.0 / radii(i));
    u = u + xi * xi;
  }
  return u;
}

BumpFn BumpFn::derivative(int mu) const {
  // d/dx [N/(u-1)^k e^{1/(u-1)}]
  //   = [dN (u-1)^2 - N du (k(u-1)+1)] / (u-1)^{k+2} e^{1/(u-1)}
  const Poly u = u_poly();
  const Poly um1 = u - Poly::constant(n, 1.0);
  const Poly du = u.derivative(mu);
  BumpFn b = *this;
  b.N = N.derivative(mu) * (um1 * um1) - N * du * (um1 * cxd(static_cast<double>(k)) +
                                                   Poly::constant(n, 1.0));
  b.k = k + 2;
  return b;
}

cxd BumpFn::eval(const double* x) const {
  double u = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (x[i] - center(i)) / radii(i);
    u += d * d;
  }
  if (u >= 1.0) return 0.0;
  const double um1 = u - 1.0;
  double denom = 1.0;
  for (int p = 0; p < k; ++p) denom *= um1;
  return N.eval(x) / denom * std::exp(1.0 / um1);
}

int TestFunction::dimension() const {
  return std::visit([](const auto& f) { return f.n; }, impl_);
}

cxd TestFunction::eval(const double* x) const {
  return std::visit([&](const auto& f) { return f.eval(x); }, impl_);
}

TestFunction TestFunction::derivative(int mu) const {
  return std::visit([&](const auto& f) { return TestFunction(f.derivative(mu)); }, impl_);
}

TestFunction TestFunction::box() const {
  const int n = dimension();
  if (n == 1) return derivative(0).derivative(0);
  return std::visit(
      [&](const auto& f) {
        auto acc = f.derivative(0).derivative(0);
        for (int i = 1; i < n; ++i) {
          const auto dii = f.derivative(i).derivative(i);
          acc.n = f.n;
          if constexpr (std::is_same_v<std::decay_t<decltype(f)>, GaussPoly>) {
            acc.P = acc.P - dii.P;
          } else {
            // bring both to the common denominator power before subtracting
            auto a = acc, b = dii;
            const Poly um1 = f.u_poly() - Poly::constant(f.n, 1.0);
            while (a.k < b.k) {
              a.N = a.N * um1;
              a.k += 1;
            }
            while (b.k < a.k) {
              b.N = b.N * um1;
              b.k += 1;
            }
            a.N = a.N - b.N;
            acc = a;
          }
        }
        return TestFunction(acc);
      },
      impl_);
}

TestFunction TestFunction::box_power(int m) const {
  TestFunction f = *this;
  for (int j = 0; j < m; ++j) f = f.box();
  return f;
}

TestFunction TestFunction::times_poly(const Poly& p) const {
  return std::visit(
      [&](auto f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, GaussPoly>) {
          f.P = f.P * p;
        } else {
          f.N = f.N * p;
        }
        return TestFunction(f);
      },
      impl_);
}

TestFunction TestFunction::pullback_linear(const Eigen::MatrixXd& A) const {
  const int n = dimension();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  return std::visit(
      [&](auto f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, GaussPoly>) {
          f.P = f.P.substitute_affine(A, zero);
          f.Q = A.transpose() * f.Q * A;
          f.center = A.partialPivLu().solve(f.center);
          return TestFunction(f);
        } else {
          fail(Errc::config_invalid, "bump pullback not supported (ellipsoid axes would mix)");
          return TestFunction(f);
        }
      },
      impl_);
}

Poly minkowski_gamma(int n) {
  Poly g = Poly::variable(n, 0) * Poly::variable(n, 0);
  for (int i = 1; i < n; ++i) g = g - Poly::variable(n, i) * Poly::variable(n, i);
  return g;
}

Eigen::MatrixXd lorentz_boost(int n, double rapidity) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
  A(0, 0) = std::cosh(rapidity);
  A(0, 1) = std::sinh(rapidity);
  A(1, 0) = std::sinh(rapidity);
  A(1, 1) = std::cosh(rapidity);
  return A;
}

}  // namespace findex
