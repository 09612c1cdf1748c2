#include "findex/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace findex {

namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric Jacobi matrix built
// from the three-term recurrence, weights mu0 * (first eigenvector entry)^2.
QuadRule golub_welsch(const std::vector<double>& alpha, const std::vector<double>& beta,
                      double mu0) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = alpha[i];
    if (i + 1 < n) {
      const double b = std::sqrt(beta[i + 1]);
      J(i, i + 1) = b;
      J(i + 1, i) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }
  return r;
}

}  // namespace

QuadRule gauss_legendre(int n) {
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  for (int k = 1; k < n; ++k) beta[k] = k * k / (4.0 * k * k - 1.0);
  return golub_welsch(alpha, beta, 2.0);
}

QuadRule gauss_legendre(int n, double a, double b) {
  QuadRule r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

QuadRule gauss_hermite(int n) {
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  for (int k = 1; k < n; ++k) beta[k] = k / 2.0;
  return golub_welsch(alpha, beta, std::sqrt(M_PI));
}

QuadRule gauss_jacobi01(int n, double a) {
  if (a <= -1.0) fail(Errc::config_invalid, "gauss_jacobi01 requires alpha > -1");
  // weight (1+x)^a on [-1,1]  (Jacobi with alpha=0, beta=a), then map to [0,1].
  std::vector<double> al(n), be(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double den = (2.0 * k + a) * (2.0 * k + a + 2.0);
    al[k] = (den == 0.0) ? 0.0 : (a * a) / den;
    if (k > 0) {
      const double d2 = (2.0 * k + a) * (2.0 * k + a);
      be[k] = 4.0 * k * k * (k + a) * (k + a) / (d2 * (2.0 * k + a + 1.0) * (2.0 * k + a - 1.0));
    }
  }
  const double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
  QuadRule r = golub_welsch(al, be, mu0);
  // map x in [-1,1], weight (1+x)^a  ->  s = (1+x)/2 in [0,1], weight s^a:
  // ds = dx/2, (1+x)^a = (2s)^a  =>  w01 = w / 2^{a+1}
  for (int i = 0; i < static_cast<int>(r.nodes.size()); ++i) {
    r.nodes[i] = 0.5 * (1.0 + r.nodes[i]);
    r.weights[i] /= std::pow(2.0, a + 1.0);
  }
  return r;
}

namespace {

// Gauss-Kronrod 7-15 node/weight pairs on [-1,1]
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                     0.417959183673469, 0.381830050505119, 0.279705391489277,
                                     0.129484966168870};

template <class V>
struct GKResult {
  V value;
  double err;
};

template <class V, class F, class Zero>
GKResult<V> gk15(const F& f, double a, double b, const Zero& zero) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  V k = zero();
  V g = zero();
  for (int i = 0; i < 15; ++i) {
    V v = f(mid + half * kKronrodNodes[i]);
    k += kKronrodWeights[i] * v;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * v;
  }
  k *= half;
  g *= half;
  double err;
  if constexpr (std::is_same_v<V, cxd>) {
    err = std::abs(k - g);
  } else {
    err = (k - g).norm();
  }
  return {k, err};
}

template <class V, class F, class Zero>
V adaptive(const F& f, double a, double b, double abs_tol, double rel_tol, int depth,
           const Zero& zero, double global_scale) {
  auto r = gk15<V>(f, a, b, zero);
  double scale;
  if constexpr (std::is_same_v<V, cxd>) {
    scale = std::abs(r.value);
  } else {
    scale = r.value.norm();
  }
  if (r.err <= abs_tol + rel_tol * std::max(scale, global_scale) || depth <= 0) {
    if (depth <= 0 && r.err > 100 * (abs_tol + rel_tol * std::max(scale, global_scale)))
      fail(Errc::quadrature_not_converged, "adaptive quadrature exceeded max depth");
    return r.value;
  }
  const double mid = 0.5 * (a + b);
  return adaptive<V>(f, a, mid, abs_tol / 2, rel_tol, depth - 1, zero, global_scale) +
         adaptive<V>(f, mid, b, abs_tol / 2, rel_tol, depth - 1, zero, global_scale);
}

}  // namespace

cxd integrate_adaptive(const std::function<cxd(double)>& f, double a, double b, double abs_tol,
                       double rel_tol, int max_depth) {
  auto zero = []() { return cxd(0.0); };
  auto first = gk15<cxd>(f, a, b, zero);
  return adaptive<cxd>(f, a, b, abs_tol, rel_tol, max_depth, zero, std::abs(first.value));
}

Matrix integrate_adaptive_matrix(const std::function<Matrix(double)>& f, double a, double b,
                                 double abs_tol, double rel_tol, int max_depth) {
  Matrix probe = f(0.5 * (a + b));
  auto zero = [&]() { return Matrix(Matrix::Zero(probe.rows(), probe.cols())); };
  auto first = gk15<Matrix>(f, a, b, zero);
  return adaptive<Matrix>(f, a, b, abs_tol, rel_tol, max_depth, zero, first.value.norm());
}

}  // namespace findex
