#include "findex/index.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

#include "findex/eta.hpp"
#include "findex/propagator.hpp"

namespace findex {

namespace {

Matrix conjugate_by(const Matrix& U, const Matrix& P) {
  return U * P * U.partialPivLu().solve(Matrix(Matrix::Identity(U.rows(), U.cols())));
}

double outer_mode_partial_trace(const Matrix& A, const std::vector<int>& labels) {
  if (labels.empty()) return 0.0;
  int K = 0;
  for (int k : labels) K = std::max(K, std::abs(k));
  const double cut = 0.9 * K;
  cxd acc = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    if (std::abs(labels[i]) > cut) acc += A(i, i);
  return std::abs(acc);
}

bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) < tol; }

}  // namespace

IndexReport fredholm_pair_index(const CylinderModel& model, const RaySpec& ray,
                                const EvolveOptions& opts) {
  model.validate();
  const auto ev = evolve(model, opts);
  const auto Dp = model.operator_at(model.t_plus);
  const auto Dm = model.operator_at(model.t_minus);
  const Matrix Pp = frequency_projectors(Dp, ray, 1e-8).p_ge().m;
  const Matrix Pm0 = frequency_projectors(Dm, ray, 1e-8).p_ge().m;
  const Matrix Pm = conjugate_by(ev.U, Pm0);
  const Matrix diff = Pp - Pm;

  IndexReport r;
  r.trace_index = diff.trace();
  r.rounded_index = static_cast<int>(std::lround(r.trace_index.real()));
  r.residual = std::abs(r.trace_index - cxd(r.rounded_index));
  r.outer_mode_trace = outer_mode_partial_trace(diff, Dp.mode_labels);
  r.solver_steps = ev.steps;
  r.solver_tol = ev.tol_achieved;
  r.condition = ev.condition;
  if (r.residual > 1e-3)
    fail(Errc::noninteger_index,
         "Tr(P+ - P-) = " + std::to_string(r.trace_index.real()) +
             " is not within 1e-3 of an integer (truncation too small or path too fast)");
  return r;
}

int spectral_flow(const CylinderModel& model) {
  model.validate();
  const cxd a0 = model.flux(model.t_minus), a1 = model.flux(model.t_plus);
  if (std::abs(a0.imag()) > 1e-12 || std::abs(a1.imag()) > 1e-12)
    fail(Errc::config_invalid, "spectral flow requires a real-valued gauge path");
  const double am = a0.real(), ap = a1.real();
  const bool zm = near_integer(am), zp = near_integer(ap);
  if (zm != zp)
    fail(Errc::endpoint_zero_ambiguous,
         "one endpoint sits on an integer flux; the p_>= convention cannot match both ends");

  // enumeration oracle: net count of branches k + a(t) entering [0, inf)
  const int range = model.base.K + static_cast<int>(std::ceil(std::abs(am) + std::abs(ap))) + 2;
  int net = 0;
  for (int k = -range; k <= range; ++k) {
    const bool in_plus = (k + ap >= (zp ? -0.5e-9 : 0.0));
    const bool in_minus = (k + am >= (zm ? -0.5e-9 : 0.0));
    net += static_cast<int>(in_plus) - static_cast<int>(in_minus);
  }
  return net;
}

XiRhs xi_index_rhs(const CylinderModel& model, const RaySpec& ray) {
  model.validate();
  if (!model.base.potential.empty())
    fail(Errc::no_closed_form_tail, "Xi right-hand side needs flux-only endpoint operators");
  const auto rp = eta_zeta(model.operator_at(model.t_plus), ray);
  const auto rm = eta_zeta(model.operator_at(model.t_minus), ray);
  const cxd da = model.flux(model.t_plus) - model.flux(model.t_minus);
  if (std::abs(da.imag()) > 1e-12)
    fail(Errc::config_invalid, "curvature term requires a real flux difference");
  XiRhs out;
  out.xi_plus = rp.xi;
  out.xi_minus = rm.xi;
  out.curvature_integral = da.real();
  out.rhs = out.xi_plus - out.xi_minus + kCurvatureSign * out.curvature_integral;
  return out;
}

cxd dirac_current(const CylinderModel& model, const RaySpec& ray, double t,
                  const EvolveOptions& opts) {
  model.validate();
  const bool in_past = t <= model.t_minus + model.product_margin;
  const bool in_future = t >= model.t_plus - model.product_margin;
  if (!model.autonomous() && !in_past && !in_future)
    fail(Errc::outside_product_region,
         "Dirac current is computed only on product regions of the cylinder");
  if (t < model.t_minus || t > model.t_plus)
    fail(Errc::config_invalid, "t outside the cylinder");

  const Matrix Pp0 = frequency_projectors(model.operator_at(model.t_plus), ray, 1e-8).p_ge().m;
  const Matrix Pm0 = frequency_projectors(model.operator_at(model.t_minus), ray, 1e-8).p_ge().m;
  // future Feynman data evolved back to t, past data evolved forward to t
  const Matrix Uplus = evolve_between(model, t, model.t_plus, opts).U;  // t -> t_+
  const Matrix Uminus = evolve_between(model, model.t_minus, t, opts).U;
  const Matrix Pplus = Uplus.partialPivLu().solve(Pp0 * Uplus);
  const Matrix Pminus = conjugate_by(Uminus, Pm0);
  return (Pplus - Pminus).trace();
}

double duality_check(const CylinderModel& model, const EvolveOptions& opts) {
  model.validate();
  const Eigen::Index d = model.operator_at(model.t_minus).dim();
  // doubled evolution diag(U+, U-) for N(t) = diag(D(t), -D(t)) and the
  // evolution of the formally dual system generated by -i N(t)^T
  const bool constant = model.autonomous();
  auto block_rhs = [&model](double sign, bool transpose) {
    return [&model, sign, transpose](double t) -> Matrix {
      const Matrix D = model.operator_at(t).m;
      return transpose ? Matrix(sign * -kI * D.transpose()) : Matrix(sign * -kI * D);
    };
  };
  const double ta = model.t_minus, tb = model.t_plus;
  const Matrix Up = evolve_linear_ode(block_rhs(+1.0, false), ta, tb, opts, constant).U;
  const Matrix Um = evolve_linear_ode(block_rhs(-1.0, false), ta, tb, opts, constant).U;
  const Matrix Utp = evolve_linear_ode(block_rhs(+1.0, true), ta, tb, opts, constant).U;
  const Matrix Utm = evolve_linear_ode(block_rhs(-1.0, true), ta, tb, opts, constant).U;

  Matrix Ufull = Matrix::Zero(2 * d, 2 * d);
  Ufull.topLeftCorner(d, d) = Up;
  Ufull.bottomRightCorner(d, d) = Um;
  Matrix Utfull = Matrix::Zero(2 * d, 2 * d);
  Utfull.topLeftCorner(d, d) = Utp;
  Utfull.bottomRightCorner(d, d) = Utm;

  Matrix ns = Matrix::Zero(2 * d, 2 * d);
  ns.topRightCorner(d, d) = kI * Matrix::Identity(d, d);
  ns.bottomLeftCorner(d, d) = kI * Matrix::Identity(d, d);

  const Matrix res = Utfull.transpose() * ns * Ufull - ns;
  Eigen::BDCSVD<Matrix> svd(res);
  return svd.singularValues()(0);
}

IndexReport run_index_experiment(const CylinderModel& model, const RaySpec& ray,
                                 const EvolveOptions& opts) {
  IndexReport r = fredholm_pair_index(model, ray, opts);
  const bool real_path =
      std::abs(model.flux_start.imag()) < 1e-12 && std::abs(model.flux_end.imag()) < 1e-12;
  if (real_path && !(near_integer(model.flux_start.real()) !=
                     near_integer(model.flux_end.real())))
    r.spectral_flow = spectral_flow(model);
  if (model.base.potential.empty()) {
    const auto x = xi_index_rhs(model, ray);
    r.xi_plus = x.xi_plus;
    r.xi_minus = x.xi_minus;
    r.curvature_integral = x.curvature_integral;
    r.rhs = x.rhs;
  }
  r.current_minus = dirac_current(model, ray, model.t_minus, opts);
  r.current_plus = dirac_current(model, ray, model.t_plus, opts);
  r.duality_residual = duality_check(model, opts);
  return r;
}

}  // namespace findex
