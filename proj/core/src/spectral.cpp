#include "findex/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace findex {

namespace {

// Swap the adjacent diagonal entries T(p,p), T(p+1,p+1) of an upper
// triangular T by a unitary similarity, accumulating into Q.
void swap_adjacent(Matrix& T, Matrix& Q, Eigen::Index p) {
  const cxd a = T(p, p), b = T(p, p + 1), c = T(p + 1, p + 1);
  // eigenvector of [[a, b], [0, c]] for eigenvalue c is (b, c - a)
  cxd v1 = b, v2 = c - a;
  const double nv = std::sqrt(std::norm(v1) + std::norm(v2));
  if (nv == 0.0) return;  // equal diagonal, nothing to move
  v1 /= nv;
  v2 /= nv;
  Matrix G(2, 2);
  G << v1, -std::conj(v2), v2, std::conj(v1);
  T(Eigen::seq(0, p + 1), Eigen::seqN(p, 2)) = T(Eigen::seq(0, p + 1), Eigen::seqN(p, 2)) * G;
  T(Eigen::seqN(p, 2), Eigen::seq(p, Eigen::last)) =
      G.adjoint() * T(Eigen::seqN(p, 2), Eigen::seq(p, Eigen::last));
  Q(Eigen::all, Eigen::seqN(p, 2)) = Q(Eigen::all, Eigen::seqN(p, 2)) * G;
  T(p + 1, p) = 0.0;
}

// Triangular Sylvester solve A X - X B = C with A, B upper triangular.
Matrix sylvester_triangular(const Matrix& A, const Matrix& B, const Matrix& C) {
  const Eigen::Index m = A.rows(), n = B.rows();
  Matrix X(m, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector rhs = C.col(k);
    for (Eigen::Index l = 0; l < k; ++l) rhs += X.col(l) * B(l, k);
    Matrix Ak = A;
    Ak.diagonal().array() -= B(k, k);
    X.col(k) = Ak.triangularView<Eigen::Upper>().solve(rhs);
  }
  return X;
}

}  // namespace

cxd pow_ray(cxd z, cxd s, double theta) {
  double a = std::arg(z);
  while (a >= theta) a -= 2.0 * M_PI;
  while (a < theta - 2.0 * M_PI) a += 2.0 * M_PI;
  const cxd logz(std::log(std::abs(z)), a);
  return std::exp(s * logz);
}

namespace detail {

Matrix atomic_block_function(const Matrix& T, cxd center, const ScalarFn& f, double scale) {
  const Eigen::Index m = T.rows();
  Matrix N = T - center * Matrix::Identity(m, m);
  Matrix term = Matrix::Identity(m, m);
  Matrix F = f(center, 0) * term;
  const int max_terms = static_cast<int>(2 * m) + 60;
  double fact = 1.0;
  for (int k = 1; k <= max_terms; ++k) {
    term = term * N;
    fact *= k;
    const Matrix contrib = (f(center, k) / fact) * term;
    F += contrib;
    if (contrib.norm() <= 1e-18 * std::max(scale, F.norm()) && k >= m) return F;
  }
  fail(Errc::fails_to_converge, "matrix function Taylor series did not converge on a cluster");
}

}  // namespace detail

ClusterCalculus::ClusterCalculus(const Matrix& M, double cluster_tol) : tol_(cluster_tol) {
  if (M.rows() != M.cols()) fail(Errc::config_invalid, "matrix must be square");
  if (cluster_tol <= 0.0) fail(Errc::config_invalid, "cluster_tol must be positive");
  const Eigen::Index d = M.rows();
  norm_ = M.norm();

  Eigen::ComplexSchur<Matrix> schur(M);
  if (schur.info() != Eigen::Success)
    fail(Errc::fails_to_converge, "complex Schur decomposition failed");
  Matrix T = schur.matrixT();
  Matrix Q = schur.matrixU();

  // union-find chaining of eigenvalues closer than cluster_tol
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      if (std::abs(T(i, i) - T(j, j)) <= cluster_tol) parent[find(i)] = find(j);

  std::vector<int> cluster_of(d);
  std::vector<int> root_to_cluster(d, -1);
  int num = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const int r = find(static_cast<int>(i));
    if (root_to_cluster[r] < 0) root_to_cluster[r] = num++;
    cluster_of[i] = root_to_cluster[r];
  }

  std::vector<cxd> centers(num, 0.0);
  std::vector<int> mult(num, 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    centers[cluster_of[i]] += T(i, i);
    mult[cluster_of[i]] += 1;
  }
  for (int c = 0; c < num; ++c) centers[c] /= static_cast<double>(mult[c]);

  for (int c1 = 0; c1 < num; ++c1)
    for (int c2 = c1 + 1; c2 < num; ++c2)
      if (std::abs(centers[c1] - centers[c2]) <= 2.0 * cluster_tol)
        fail(Errc::ambiguous_clustering,
             "cluster centers closer than 2*cluster_tol; adjust the tolerance");

  // deterministic cluster order: by |center|, then by argument
  std::vector<int> order(num);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = std::abs(centers[a]), rb = std::abs(centers[b]);
    if (ra != rb) return ra < rb;
    return std::arg(centers[a]) < std::arg(centers[b]);
  });
  std::vector<int> rank(num);
  for (int i = 0; i < num; ++i) rank[order[i]] = i;

  // group the Schur form cluster by cluster with adjacent swaps
  std::vector<int> tags(d);
  for (Eigen::Index i = 0; i < d; ++i) tags[i] = rank[cluster_of[i]];
  for (Eigen::Index pos = 0; pos + 1 < d; ++pos) {
    // selection of the minimal tag below `pos`, moved up by adjacent swaps
    Eigen::Index best = pos;
    for (Eigen::Index q = pos + 1; q < d; ++q)
      if (tags[q] < tags[best]) best = q;
    for (Eigen::Index q = best; q > pos; --q) {
      swap_adjacent(T, Q, q - 1);
      std::swap(tags[q - 1], tags[q]);
    }
  }

  centers_.resize(num);
  offsets_.resize(num + 1, 0);
  for (int c = 0; c < num; ++c) {
    centers_[c] = centers[order[c]];
    offsets_[c + 1] = offsets_[c] + mult[order[c]];
  }

  // block diagonalization: Y^{-1} T Y with nested Sylvester solves
  Matrix Y = Matrix::Identity(d, d);
  Matrix Yinv = Matrix::Identity(d, d);
  for (int c = 0; c + 1 < num; ++c) {
    const Eigen::Index lo = offsets_[c], hi = offsets_[c + 1];
    const auto head = Eigen::seq(lo, hi - 1);
    const auto tail = Eigen::seq(hi, d - 1);
    Matrix A = T(head, head);
    Matrix B = T(tail, tail);
    Matrix X = sylvester_triangular(A, B, Matrix(-T(head, tail)));
    // T <- E^{-1} T E with E = [[I, X], [0, I]] embedded at (lo, hi)
    T(head, tail) += A * X - X * B;  // becomes ~0
    if (lo > 0) {
      T(Eigen::seq(0, lo - 1), tail) += T(Eigen::seq(0, lo - 1), head) * X;
    }
    Y(Eigen::all, tail) += Y(Eigen::all, head) * X;
    Yinv(head, Eigen::all) -= X * Yinv(tail, Eigen::all);
  }

  S_ = Q * Y;
  Sinv_ = Yinv * Q.adjoint();

  blocks_.resize(num);
  for (int c = 0; c < num; ++c) {
    const auto rng = Eigen::seq(offsets_[c], offsets_[c + 1] - 1);
    blocks_[c] = T(rng, rng);
  }
}

int ClusterCalculus::zero_cluster() const {
  int zc = -1;
  for (int c = 0; c < num_clusters(); ++c) {
    const double r = std::abs(centers_[c]);
    if (r <= tol_) {
      zc = c;
    } else if (r <= 2.0 * tol_) {
      fail(Errc::zero_not_isolated, "nonzero eigenvalue cluster within 2*cluster_tol of 0");
    }
  }
  return zc;
}

Matrix ClusterCalculus::projector(int j) const {
  const Eigen::Index d = dim();
  Matrix P = Matrix::Zero(d, d);
  const auto rng = Eigen::seq(offsets_[j], offsets_[j + 1] - 1);
  P = S_(Eigen::all, rng) * Sinv_(rng, Eigen::all);
  return P;
}

Matrix ClusterCalculus::apply(const std::function<ScalarFn(int)>& f_for_cluster) const {
  const Eigen::Index d = dim();
  Matrix F = Matrix::Zero(d, d);
  for (int c = 0; c < num_clusters(); ++c) {
    const auto rng = Eigen::seq(offsets_[c], offsets_[c + 1] - 1);
    const Matrix fb = detail::atomic_block_function(blocks_[c], centers_[c], f_for_cluster(c),
                                                    std::max(norm_, 1.0));
    F += S_(Eigen::all, rng) * fb * Sinv_(rng, Eigen::all);
  }
  return F;
}

Matrix ClusterCalculus::apply(const ScalarFn& f) const {
  return apply([&](int) { return f; });
}

int ClusterCalculus::nilpotency(int j, double threshold) const {
  const Eigen::Index m = blocks_[j].rows();
  Matrix N = blocks_[j] - centers_[j] * Matrix::Identity(m, m);
  Matrix P = N;
  for (int p = 1; p <= m; ++p) {
    if (P.norm() <= threshold) return p;
    P = P * N;
  }
  return static_cast<int>(m);
}

Matrix ClusterCalculus::basis(int j) const {
  return S_(Eigen::all, Eigen::seq(offsets_[j], offsets_[j + 1] - 1));
}

std::vector<cxd> ClusterCalculus::eigenvalues() const {
  std::vector<cxd> ev;
  for (const auto& b : blocks_)
    for (Eigen::Index i = 0; i < b.rows(); ++i) ev.push_back(b(i, i));
  return ev;
}

SpectralDecomposition schur_clusters(const OperatorMatrix& M, double cluster_tol) {
  M.validate();
  ClusterCalculus cc(M.m, cluster_tol);
  SpectralDecomposition dec;
  dec.cluster_tol = cluster_tol;
  const double nil_thresh = 1e-8 * std::max(cc.norm(), 1.0);
  for (int c = 0; c < cc.num_clusters(); ++c) {
    Cluster cl;
    cl.center = cc.center(c);
    cl.multiplicity = cc.multiplicity(c);
    cl.basis = cc.basis(c);
    cl.nilpotency = cc.nilpotency(c, nil_thresh);
    dec.clusters.push_back(std::move(cl));
  }
  return dec;
}

OperatorMatrix generalized_kernel_projector(const OperatorMatrix& M, double cluster_tol) {
  ClusterCalculus cc(M.m, cluster_tol);
  const int zc = cc.zero_cluster();
  if (zc < 0) return OperatorMatrix(Matrix::Zero(M.dim(), M.dim()), M.mode_labels);
  return OperatorMatrix(cc.projector(zc), M.mode_labels);
}

namespace {

void check_ray(const ClusterCalculus& cc, const RaySpec& ray, int skip_cluster) {
  for (int c = 0; c < cc.num_clusters(); ++c) {
    if (c == skip_cluster) continue;
    const cxd z = cc.center(c);
    double a = std::arg(z) - ray.theta;
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    const double dist = (std::cos(a) > 0.0) ? std::abs(z) * std::abs(std::sin(a)) : std::abs(z);
    if (dist <= 2.0 * cc.cluster_tol())
      fail(Errc::eigenvalue_on_ray, "eigenvalue cluster on the chosen cut ray");
  }
}

ScalarFn power_fn(cxd s, double theta) {
  return [s, theta](cxd lambda, int k) {
    cxd coef = 1.0;
    for (int j = 0; j < k; ++j) coef *= (s - static_cast<double>(j));
    return coef * pow_ray(lambda, s - static_cast<double>(k), theta);
  };
}

Matrix complex_power_impl(const ClusterCalculus& cc, cxd s, const RaySpec& ray) {
  const int zc = cc.zero_cluster();
  check_ray(cc, ray, zc);
  const ScalarFn zero_fn = [](cxd, int) { return cxd(0.0); };
  const ScalarFn pw = power_fn(s, ray.theta);
  return cc.apply([&](int c) { return (c == zc) ? zero_fn : pw; });
}

}  // namespace

OperatorMatrix complex_power(const OperatorMatrix& M, cxd s, const RaySpec& ray,
                             double cluster_tol) {
  ClusterCalculus cc(M.m, cluster_tol);
  return OperatorMatrix(complex_power_impl(cc, s, ray), M.mode_labels);
}

FrequencyProjectors frequency_projectors(const OperatorMatrix& D, const RaySpec& ray,
                                         double cluster_tol) {
  D.validate();
  const Matrix delta = D.m * D.m;
  ClusterCalculus cc(delta, cluster_tol);
  const int zc = cc.zero_cluster();
  Matrix p0 = (zc < 0) ? Matrix(Matrix::Zero(D.dim(), D.dim())) : cc.projector(zc);
  const Matrix srt_inv = complex_power_impl(cc, cxd(-0.5), ray);
  const Matrix one = Matrix::Identity(D.dim(), D.dim());
  FrequencyProjectors fp;
  fp.p_gt = OperatorMatrix(0.5 * (one - p0 + srt_inv * D.m), D.mode_labels);
  fp.p_lt = OperatorMatrix(0.5 * (one - p0 - srt_inv * D.m), D.mode_labels);
  fp.p0 = OperatorMatrix(std::move(p0), D.mode_labels);
  return fp;
}

OperatorMatrix semigroup(const OperatorMatrix& m_sqrt, cxd t, std::string* warning) {
  m_sqrt.validate();
  if (t.imag() < 0.0 && warning)
    *warning = "Im(t) < 0: bounded here only because the truncation is finite-dimensional";
  ClusterCalculus cc(m_sqrt.m, 1e-8 * std::max(1.0, m_sqrt.m.norm()));
  const ScalarFn f = [t](cxd lambda, int k) {
    cxd c = 1.0;
    for (int j = 0; j < k; ++j) c *= kI * t;
    return c * std::exp(kI * t * lambda);
  };
  return OperatorMatrix(cc.apply(f), m_sqrt.mode_labels);
}

double strip_bound(const OperatorMatrix& m_sqrt, double cluster_tol) {
  ClusterCalculus cc(m_sqrt.m, cluster_tol);
  double C = 0.0;
  for (const cxd mu : cc.eigenvalues()) C = std::max({C, -mu.real(), std::abs(mu.imag())});
  return C;
}

}  // namespace findex
