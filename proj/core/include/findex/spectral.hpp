#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "findex/types.hpp"

namespace findex {

/// Spectral cut ray {arg z = theta}; complex powers use the branch of log
/// with argument in (theta - 2*pi, theta).  theta = pi reproduces the
/// standard branch cut along the negative reals.
struct RaySpec {
  double theta = std::numbers::pi;
};

struct Cluster {
  cxd center;
  int multiplicity = 0;
  Matrix basis;        // dim x multiplicity, spans the invariant subspace
  int nilpotency = 1;  // degree of (M - center) on that subspace
};

struct SpectralDecomposition {
  std::vector<Cluster> clusters;
  double cluster_tol = 0.0;
};

/// Scalar function together with its derivatives, f(lambda, k) = f^{(k)}(lambda).
using ScalarFn = std::function<cxd(cxd, int)>;

/// Cached block decomposition M = S * blockdiag(T_1, ..., T_p) * S^{-1}
/// obtained from a reordered Schur form; each block collects one eigenvalue
/// cluster.  All spectral-core operations run through this.
class ClusterCalculus {
public:
  ClusterCalculus(const Matrix& M, double cluster_tol);

  int num_clusters() const { return static_cast<int>(blocks_.size()); }
  cxd center(int j) const { return centers_[j]; }
  int multiplicity(int j) const { return static_cast<int>(blocks_[j].rows()); }
  const Matrix& block(int j) const { return blocks_[j]; }
  double cluster_tol() const { return tol_; }
  Eigen::Index dim() const { return S_.rows(); }
  double norm() const { return norm_; }

  /// index of the cluster at 0 (within cluster_tol), or -1; throws
  /// ZERO_NOT_ISOLATED if a nonzero cluster sits within 2*cluster_tol of 0.
  int zero_cluster() const;

  /// spectral (Riesz) projector of cluster j
  Matrix projector(int j) const;

  /// f(M) with f given per cluster
  Matrix apply(const std::function<ScalarFn(int cluster)>& f_for_cluster) const;
  /// f(M) with one global scalar function
  Matrix apply(const ScalarFn& f) const;

  int nilpotency(int j, double threshold) const;
  Matrix basis(int j) const;

  std::vector<cxd> eigenvalues() const;

  /// S^{-1} A S; in these coordinates M is block diagonal
  Matrix to_block_coords(const Matrix& A) const { return Sinv_ * A * S_; }
  /// row/column offset of block j (block j occupies [offset(j), offset(j+1)))
  int offset(int j) const { return offsets_[j]; }

private:
  Matrix S_, Sinv_;
  std::vector<Matrix> blocks_;
  std::vector<cxd> centers_;
  std::vector<int> offsets_;
  double tol_ = 0.0;
  double norm_ = 0.0;
};

SpectralDecomposition schur_clusters(const OperatorMatrix& M, double cluster_tol);

/// Riesz projector onto the generalized kernel (eq. of the small circle
/// about 0); zero matrix when 0 is in the resolvent set.
OperatorMatrix generalized_kernel_projector(const OperatorMatrix& M, double cluster_tol);

/// Delta_theta^s = (M + p0)^s (1 - p0) along the ray of minimal growth.
OperatorMatrix complex_power(const OperatorMatrix& M, cxd s, const RaySpec& ray,
                             double cluster_tol);

struct FrequencyProjectors {
  OperatorMatrix p_gt;  // p_>
  OperatorMatrix p_lt;  // p_<
  OperatorMatrix p0;
  OperatorMatrix p_ge() const { return OperatorMatrix(p_gt.m + p0.m, p_gt.mode_labels); }
  OperatorMatrix p_le() const { return OperatorMatrix(p_lt.m + p0.m, p_lt.mode_labels); }
};

/// p_> = (1 - p0 + Delta_theta^{-1/2} D)/2 and friends, for Delta = D^2.
FrequencyProjectors frequency_projectors(const OperatorMatrix& D, const RaySpec& ray,
                                         double cluster_tol);

/// e^{i t M_sqrt}.  For Im(t) < 0 a warning is reported (finite dimension
/// keeps this bounded, the semigroup statement does not).
OperatorMatrix semigroup(const OperatorMatrix& m_sqrt, cxd t, std::string* warning = nullptr);

/// Smallest C >= 0 with Re(mu) >= -C and |Im(mu)| <= C for all eigenvalues mu.
double strip_bound(const OperatorMatrix& m_sqrt, double cluster_tol);

/// Scalar power along the cut ray, exp(s log_theta z).
cxd pow_ray(cxd z, cxd s, double theta);

namespace detail {
/// f(T) for a single cluster block by Taylor expansion about the center.
Matrix atomic_block_function(const Matrix& T, cxd center, const ScalarFn& f, double scale);
}  // namespace detail

}  // namespace findex
