#include "findex/evolution.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace findex {

namespace {

double sigma(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double sigma_rate(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double s = sigma(x), sc = sigma(1.0 - x);
  return s / (s + sc);
}

double smooth_step_rate(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double s = sigma(x), sc = sigma(1.0 - x);
  const double ds = sigma_rate(x), dsc = -sigma_rate(1.0 - x);
  const double den = s + sc;
  return (ds * den - s * (ds + dsc)) / (den * den);
}

namespace {

constexpr int kJetLen = 10;
using Jet1 = std::array<double, kJetLen>;  // value and derivatives at a point

Jet1 jet_mul(const Jet1& a, const Jet1& b) {
  Jet1 r{};
  for (int k = 0; k < kJetLen; ++k) {
    double acc = 0.0, c = 1.0;
    for (int j = 0; j <= k; ++j) {
      acc += c * a[j] * b[k - j];
      c = c * (k - j) / (j + 1.0);
    }
    r[k] = acc;
  }
  return r;
}

Jet1 jet_reciprocal(const Jet1& a) {
  Jet1 r{};
  r[0] = 1.0 / a[0];
  for (int k = 1; k < kJetLen; ++k) {
    double acc = 0.0, c = 1.0;
    for (int j = 1; j <= k; ++j) {
      c = c * (k - j + 1.0) / j;  // binom(k, j)
      acc += c * a[j] * r[k - j];
    }
    r[k] = -acc / a[0];
  }
  return r;
}

// derivatives of sigma(x) = e^{-1/x}: sigma^{(k)} = e^{-w} P_k(w), w = 1/x,
// with P_{k+1}(w) = w^2 (P_k(w) - P_k'(w))
Jet1 sigma_jet(double x) {
  Jet1 out{};
  if (x <= 0.0) return out;
  const double w = 1.0 / x;
  const double e = std::exp(-w);
  std::vector<double> P = {1.0};
  for (int k = 0; k < kJetLen; ++k) {
    double val = 0.0;
    for (int j = static_cast<int>(P.size()) - 1; j >= 0; --j) val = val * w + P[j];
    out[k] = e * val;
    // P <- w^2 (P - P')
    std::vector<double> Q(P.size() + 2, 0.0);
    for (std::size_t j = 0; j < P.size(); ++j) {
      Q[j + 2] += P[j];
      if (j >= 1) Q[j + 1] -= P[j] * static_cast<double>(j);
    }
    P = std::move(Q);
  }
  return out;
}

}  // namespace

double smooth_step_derivative(double x, int order) {
  if (order >= kJetLen) fail(Errc::config_invalid, "smooth_step derivative order too large");
  if (x <= 0.0 || x >= 1.0) return order == 0 ? smooth_step(x) : 0.0;
  const Jet1 s = sigma_jet(x);
  Jet1 sc = sigma_jet(1.0 - x);
  for (int k = 1; k < kJetLen; k += 2) sc[k] = -sc[k];  // chain rule for 1 - x
  Jet1 den = s;
  for (int k = 0; k < kJetLen; ++k) den[k] += sc[k];
  const Jet1 ratio = jet_mul(s, jet_reciprocal(den));
  return ratio[order];
}

void CylinderModel::validate() const {
  if (!(t_plus > t_minus)) fail(Errc::config_invalid, "cylinder needs t_plus > t_minus");
  if (!(product_margin > 0.0) || 2.0 * product_margin >= duration())
    fail(Errc::config_invalid, "product margin must satisfy 0 < 2*margin < duration");
  base.validate();
}

cxd CylinderModel::flux(double t) const {
  const double x = (t - (t_minus + product_margin)) / (duration() - 2.0 * product_margin);
  return flux_start + (flux_end - flux_start) * smooth_step(x);
}

cxd CylinderModel::flux_rate(double t) const {
  const double w = duration() - 2.0 * product_margin;
  const double x = (t - (t_minus + product_margin)) / w;
  return (flux_end - flux_start) * smooth_step_rate(x) / w;
}

cxd CylinderModel::flux_derivative(double t, int order) const {
  const double w = duration() - 2.0 * product_margin;
  const double x = (t - (t_minus + product_margin)) / w;
  if (order == 0) return flux(t);
  return (flux_end - flux_start) * smooth_step_derivative(x, order) / std::pow(w, order);
}

OperatorMatrix CylinderModel::operator_at(double t) const {
  CircleOperatorSpec spec = base;
  spec.flux = flux(t);
  return build_circle_dirac(spec);
}

namespace {

// matrix exponential; diagonal exponents (the flux-only mode basis) bypass
// the dense Pade path
Matrix expm(const Matrix& B) {
  Matrix off = B;
  off.diagonal().setZero();
  if (off.norm() == 0.0) {
    Matrix E = Matrix::Zero(B.rows(), B.cols());
    E.diagonal() = B.diagonal().array().exp();
    return E;
  }
  return B.exp();
}

bool is_diagonal(const Matrix& B) {
  for (Eigen::Index j = 0; j < B.cols(); ++j)
    for (Eigen::Index i = 0; i < B.rows(); ++i)
      if (i != j && B(i, j) != cxd(0.0)) return false;
  return true;
}

// commutator-free 4th-order Magnus step for U' = A(t) U
Matrix cf4_step(const std::function<Matrix(double)>& A, double t, double h, const Matrix& U) {
  constexpr double c1 = 0.5 - 0.28867513459481287;  // 1/2 -+ sqrt(3)/6
  constexpr double c2 = 0.5 + 0.28867513459481287;
  constexpr double a = 0.25 + 0.28867513459481287;  // 1/4 + sqrt(3)/6
  constexpr double b = 0.25 - 0.28867513459481287;
  const Matrix A1 = A(t + c1 * h);
  const Matrix A2 = A(t + c2 * h);
  const Matrix B1 = h * (a * A1 + b * A2);
  const Matrix B2 = h * (b * A1 + a * A2);
  if (is_diagonal(B1) && is_diagonal(B2)) {
    const Vector phase = (B1.diagonal() + B2.diagonal()).array().exp();
    return phase.asDiagonal() * U;
  }
  return expm(B2) * (expm(B1) * U);
}

}  // namespace

EvolutionOperator evolve_linear_ode(const std::function<Matrix(double)>& A, double ta, double tb,
                                    const EvolveOptions& opts, bool exactly_constant) {
  if (tb < ta) fail(Errc::config_invalid, "evolution needs tb >= ta");
  EvolutionOperator out;
  const Eigen::Index d = A(ta).rows();
  out.U = Matrix::Identity(d, d);
  const double T = tb - ta;
  if (T == 0.0) return out;

  if (exactly_constant) {
    out.U = expm(T * A(ta));
    out.steps = 1;
  } else {
    double t = ta;
    double h = std::min(opts.h_init, T);
    int steps = 0;
    while (tb - t > 1e-12 * T) {
      if (++steps > opts.max_steps)
        fail(Errc::solver_tolerance_not_met, "evolution exceeded the step budget");
      h = std::min(h, tb - t);
      const Matrix coarse = cf4_step(A, t, h, out.U);
      Matrix fine = cf4_step(A, t, h / 2, out.U);
      fine = cf4_step(A, t + h / 2, h / 2, fine);
      const double err = (coarse - fine).norm() / std::max(1.0, fine.norm());
      // proportional budget with a roundoff floor so exact plateaus and the
      // terminal sliver cannot reject forever
      const double budget = opts.local_tol * (h / T) + 1e-14;
      if (err <= budget) {
        out.U = fine;
        t += h;
        out.tol_achieved += err;
      }
      const double grow = 0.9 * std::pow(budget / std::max(err, 1e-300), 0.2);
      h *= std::clamp(grow, 0.25, 3.0);
      h = std::max(h, T * 1e-8);
    }
    out.steps = steps;
  }

  Eigen::BDCSVD<Matrix> svd(out.U);
  out.condition = svd.singularValues()(0) / svd.singularValues()(d - 1);
  return out;
}

EvolutionOperator evolve_between(const CylinderModel& model, double ta, double tb,
                                 const EvolveOptions& opts, bool transpose) {
  model.validate();
  auto rhs = [&model, transpose](double t) -> Matrix {
    const Matrix D = model.operator_at(t).m;
    return transpose ? Matrix(-kI * D.transpose()) : Matrix(-kI * D);
  };
  // flux exactly constant on [ta, tb]: autonomous model or a product margin
  const bool constant_segment = model.autonomous() ||
                                tb <= model.t_minus + model.product_margin ||
                                ta >= model.t_plus - model.product_margin;
  return evolve_linear_ode(rhs, ta, tb, opts, constant_segment);
}

EvolutionOperator evolve(const CylinderModel& model, const EvolveOptions& opts) {
  return evolve_between(model, model.t_minus, model.t_plus, opts);
}

}  // namespace findex
