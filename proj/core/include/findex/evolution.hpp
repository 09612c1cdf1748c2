#pragma once

#include <functional>

#include "findex/circle.hpp"
#include "findex/types.hpp"

namespace findex {

/// Cylinder spacetime [t_minus, t_plus] x S^1 with a time-dependent gauge
/// shift a(t) riding on a fixed circle operator.  The transition between the
/// endpoint values is a C-infinity step, exactly constant within
/// `product_margin` of both ends, so the model has honest product structure
/// near the boundary hypersurfaces.
struct CylinderModel {
  double t_minus = 0.0;
  double t_plus = 1.0;
  cxd flux_start = 0.0;
  cxd flux_end = 0.0;
  double product_margin = 0.1;
  CircleOperatorSpec base;  // potential / rank / K; base.flux is overridden by the path

  void validate() const;
  bool autonomous() const { return flux_start == flux_end; }
  double duration() const { return t_plus - t_minus; }

  cxd flux(double t) const;
  cxd flux_rate(double t) const;
  /// exact k-th t-derivative of the flux path (order 0 = the value)
  cxd flux_derivative(double t, int order) const;
  OperatorMatrix operator_at(double t) const;
};

struct EvolveOptions {
  double local_tol = 1e-12;
  double h_init = 0.05;
  int max_steps = 100000;
};

struct EvolutionOperator {
  Matrix U;
  int steps = 0;
  double tol_achieved = 0.0;  // accumulated local error estimates
  double condition = 1.0;     // 2-norm condition number of U
};

/// Solve U' = A(t) U from ta to tb; exactly_constant segments use a single
/// exact exponential, otherwise a commutator-free fourth-order Magnus scheme
/// with adaptive step-doubling control.
EvolutionOperator evolve_linear_ode(const std::function<Matrix(double)>& A, double ta, double tb,
                                    const EvolveOptions& opts = {},
                                    bool exactly_constant = false);

/// Solve U' = -i D(t) U from ta to tb (D(t) = model circle operator with the
/// path flux; transpose = true evolves the formally dual system
/// v' = -i D(t)^T v).
EvolutionOperator evolve_between(const CylinderModel& model, double ta, double tb,
                                 const EvolveOptions& opts = {}, bool transpose = false);

/// Full-cylinder evolution from t_minus to t_plus.
EvolutionOperator evolve(const CylinderModel& model, const EvolveOptions& opts = {});

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);
double smooth_step_rate(double x);
/// exact k-th derivative of the step (k = 0 gives the value)
double smooth_step_derivative(double x, int order);

}  // namespace findex
