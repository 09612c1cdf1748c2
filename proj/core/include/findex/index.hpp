#pragma once

#include <optional>

#include "findex/evolution.hpp"
#include "findex/spectral.hpp"

namespace findex {

/// Sign of the curvature (flux) term in the index right-hand side
/// Xi_+ - Xi_- + sign * (a_+ - a_-).  Fixed once by the calibration run
/// against the spectral-flow oracle (the path 0.3 -> 1.3 must give +1,
/// see test_index.cpp) and frozen here; hadamard.cpp carries the matching
/// phase for the index density.
inline constexpr double kCurvatureSign = +1.0;

struct IndexReport {
  cxd trace_index = 0.0;      // Tr(P_+ - P_-)
  int rounded_index = 0;
  double residual = 0.0;      // |trace_index - rounded_index|
  double outer_mode_trace = 0.0;  // |partial trace| over the outer 10% of modes
  std::optional<int> spectral_flow;
  cxd xi_plus = 0.0, xi_minus = 0.0;
  double curvature_integral = 0.0;
  cxd rhs = 0.0;              // Xi_+ - Xi_- + sign * curvature
  double duality_residual = 0.0;
  cxd current_minus = 0.0, current_plus = 0.0;  // integrated Dirac current at t_-+, t_+
  int solver_steps = 0;
  double solver_tol = 0.0;
  double condition = 1.0;
};

/// Tr(P_+ - P_-) with P_+ = p_>=(D(t_+)) and P_- = U p_>=(D(t_-)) U^{-1};
/// fills trace_index, rounded_index, residual, outer_mode_trace and the
/// solver diagnostics.  Throws NONINTEGER_INDEX if the residual exceeds 1e-3.
IndexReport fredholm_pair_index(const CylinderModel& model, const RaySpec& ray,
                                const EvolveOptions& opts = {});

/// Signed count of eigenvalue branch crossings of t -> k + a(t), upward
/// minus downward, boundary zeros counted by the p_>= convention.
int spectral_flow(const CylinderModel& model);

struct XiRhs {
  cxd xi_plus, xi_minus;
  double curvature_integral;
  cxd rhs;
};

/// Endpoint Xi invariants (zeta route) and the curvature term
/// (1/2 pi) int a'(t) dt dtheta = a(t_+) - a(t_-).
XiRhs xi_index_rhs(const CylinderModel& model, const RaySpec& ray);

/// Integrated Dirac current Tr(P^+(t) - P^-(t)) over the hypersurface at
/// time t; requires t inside a product margin (or an autonomous model).
cxd dirac_current(const CylinderModel& model, const RaySpec& ray, double t,
                  const EvolveOptions& opts = {});

/// || Utilde^T nslash U - nslash ||_2 on the doubled space, the discrete
/// Green's-formula duality of the evolution with its formal dual.
double duality_check(const CylinderModel& model, const EvolveOptions& opts = {});

/// The full pipeline: Fredholm pair trace, spectral flow (real paths),
/// Xi right-hand side, endpoint currents, duality residual.
IndexReport run_index_experiment(const CylinderModel& model, const RaySpec& ray,
                                 const EvolveOptions& opts = {});

}  // namespace findex
