#pragma once

#include <memory>
#include <vector>

#include "findex/spectral.hpp"
#include "findex/types.hpp"

namespace findex {

enum class KernelKind { feynman_wave, feynman_dirac, retarded, advanced, regularized_diff };

/// Doubled spinor space C^2 (x) (mode space): the full bundle splits into the
/// two chiralities, the spatial operator acts as diag(D, -D) and the Clifford
/// action of the unit normal is the fixed intertwiner [[0, i], [i, 0]].
struct DoubledDirac {
  OperatorMatrix full;  // diag(D, -D)
  Matrix nslash;        // [[0, iI], [iI, 0]]; nslash^2 = -1
  Eigen::Index base_dim = 0;
};

DoubledDirac doubled_dirac(const OperatorMatrix& D);

/// Time-translation-invariant kernel family k(t) of one of the product-case
/// propagators.  Spectral data is computed once at construction.
class KernelFamily {
public:
  /// feynman_wave from the Laplace-type operator Delta
  static KernelFamily wave(const OperatorMatrix& delta, const RaySpec& ray, double cluster_tol);
  /// Dirac-type kinds from the circle operator D (internally doubled)
  static KernelFamily dirac(const OperatorMatrix& D, const RaySpec& ray, double cluster_tol,
                            KernelKind kind);

  KernelKind kind() const { return kind_; }
  Eigen::Index dim() const;
  const Matrix& nslash() const;
  const OperatorMatrix& base_operator() const { return base_; }

  /// k(t); indicator conventions are closed on both sides at t = 0
  Matrix operator()(double t) const;

  /// value to use at lag 0 in quadrature: the average of the one-sided
  /// limits.  With the closed indicator conventions, kinds that jump at 0
  /// satisfy k(0) = k(0+) + k(0-), so this is k(0)/2 for them and k(0) for
  /// the continuous kinds.
  Matrix lag_zero_average() const;

private:
  KernelFamily() = default;
  KernelKind kind_ = KernelKind::feynman_wave;
  OperatorMatrix base_;
  RaySpec ray_;
  // wave data
  std::shared_ptr<ClusterCalculus> cc_delta_;
  Matrix inv_sqrt_;     // Delta_theta^{-1/2}
  Matrix sqrt_;         // Delta_theta^{1/2}
  std::shared_ptr<ClusterCalculus> cc_sqrt_;
  Matrix p0_;
  Matrix a_nilpotent_;  // Delta restricted to rg(p0), as Delta * p0
  int zero_nilpotency_ = 0;
  // dirac data
  std::shared_ptr<ClusterCalculus> cc_d_;
  Matrix nslash_;
  Matrix pge_d_, plt_d_, ple_d_, pgt_d_;
  Eigen::Index base_dim_ = 0;

  Matrix exp_base(double t, double sign) const;  // e^{-i sign t D} on the base space
};

/// Uniform time grid [t_lo, t_hi] carrying one section value per node.
struct SpacetimeGrid {
  double t_lo = 0.0, t_hi = 1.0;
  std::vector<Vector> values;  // one vector per node

  int nodes() const { return static_cast<int>(values.size()); }
  double spacing() const { return (t_hi - t_lo) / (nodes() - 1); }
  double node(int i) const { return t_lo + i * spacing(); }
  void validate() const;
};

/// (G u)(t) = int k(t - s) u(s) ds by composite trapezoid; the |t-s| kink
/// always falls on a node, so second order is kept.  u must vanish on the
/// outer 10% of nodes.
SpacetimeGrid apply_propagator(const KernelFamily& fam, const SpacetimeGrid& u);

/// phi(t) = -(i/2) Tr((p_>= - p_<) e^{-i t D}), the traced kernel of the
/// half-sum-subtracted Feynman propagator at time separation t.
cxd regularized_diagonal(const OperatorMatrix& D, const RaySpec& ray, double t,
                         double cluster_tol = 1e-8);

/// psi(s) = -(i/2) Tr((p_>= - p_<) e^{-s D^2}): the Gaussian smearing of
/// regularized_diagonal in t, evaluated spectrally.
cxd psi_of_s(const OperatorMatrix& D, const RaySpec& ray, double s, double cluster_tol = 1e-8);

}  // namespace findex
