#pragma once

#include <optional>
#include <vector>

#include "findex/spectral.hpp"
#include "findex/types.hpp"

namespace findex {

enum class EtaMethod { zeta, heat_fit, smeared };

struct FitDiagnostics {
  cxd a0;        // coefficient of t^{-1/2}
  cxd constant;  // the fitted constant term
  cxd log_coef;  // coefficient of log t; should be small for Dirac-type models
  cxd sqrt_coef; // coefficient of t^{1/2}
  double residual = 0.0;
  double condition = 0.0;
};

struct EtaResult {
  cxd eta;
  int h = 0;  // dimension of the generalized kernel
  cxd xi;     // (eta + h)/2
  EtaMethod method = EtaMethod::zeta;
  double error_estimate = 0.0;
  std::optional<FitDiagnostics> fit;
};

/// eta(0) by Hurwitz-zeta continuation; requires a flux-only operator
/// (diagonal in the mode basis with labels) so the un-truncated spectrum is
/// the lattice Z + a and the tail sums in closed form.
EtaResult eta_zeta(const OperatorMatrix& D, const RaySpec& ray);

/// eta as the constant term of Tr((p_> - p_<) e^{-t Delta_theta}) fitted
/// against a0 t^{-1/2} + b + c log t + d t^{1/2} on t_grid.
EtaResult eta_heat(const OperatorMatrix& D, const RaySpec& ray,
                   const std::vector<double>& t_grid, double cluster_tol = 1e-8);

/// Xi from the constant term of the Gaussian-smeared propagator trace
/// psi(s) = -(i/2) Tr((p_>= - p_<) e^{-s D^2}); eta = 2 Xi - h.
EtaResult eta_smeared(const OperatorMatrix& D, const RaySpec& ray,
                      const std::vector<double>& s_grid, double cluster_tol = 1e-8);

/// Closed form for the lattice spectrum Z + a: eta = 1 - 2(a - floor(Re a))
/// away from integers, (0, h=1) at integers; returned as a full EtaResult.
EtaResult eta_lattice_closed_form(cxd flux);

namespace detail {
/// Tr(W f_t(M)) for many t without re-factorizing: W is conjugated into the
/// block coordinates of cc once, then only block functions are evaluated.
class TraceCurve {
public:
  TraceCurve(const ClusterCalculus& cc, const Matrix& W);
  cxd operator()(const ScalarFn& f) const;

private:
  const ClusterCalculus& cc_;
  std::vector<Matrix> wblocks_;
};
}  // namespace detail

}  // namespace findex
