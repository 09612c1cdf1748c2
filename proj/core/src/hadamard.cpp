#include "findex/hadamard.hpp"

#include <cmath>

#include "findex/distributions.hpp"
#include "findex/quadrature.hpp"

namespace findex {

namespace {

double binom(int a, int b) {
  double r = 1.0;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

std::vector<Multi> sub_indices(const Multi& a) {
  std::vector<Multi> out;
  for (int i = 0; i <= a[0]; ++i)
    for (int j = 0; j <= a[1]; ++j)
      for (int k = 0; k <= a[2]; ++k) out.push_back({i, j, k});
  return out;
}

double multi_binom(const Multi& a, const Multi& g) {
  return binom(a[0], g[0]) * binom(a[1], g[1]) * binom(a[2], g[2]);
}

Multi multi_sub(const Multi& a, const Multi& g) { return {a[0] - g[0], a[1] - g[1], a[2] - g[2]}; }

Multi multi_add(const Multi& a, int mu, int count = 1) {
  Multi r = a;
  r[mu] += count;
  return r;
}

std::vector<Multi> indices_up_to(int n, int order) {
  std::vector<Multi> out;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; n > 1 && i + j <= order; ++j)
      for (int k = 0; n > 2 && i + j + k <= order; ++k) out.push_back({i, j, k});
  if (n == 1) {
    out.clear();
    for (int i = 0; i <= order; ++i) out.push_back({i, 0, 0});
  } else if (n == 2) {
    out.clear();
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) out.push_back({i, j, 0});
  }
  return out;
}

}  // namespace

MatrixFieldJet constant_field(const Matrix& B) {
  return [B](const Eigen::VectorXd&, const Multi& a) -> Matrix {
    if (multi_order(a) == 0) return B;
    return Matrix::Zero(B.rows(), B.cols());
  };
}

MatrixFieldJet zero_field(int rank) {
  return [rank](const Eigen::VectorXd&, const Multi&) -> Matrix {
    return Matrix::Zero(rank, rank);
  };
}

MatrixFieldJet coordinate_field(int rank, int coordinate, cxd scale) {
  return [=](const Eigen::VectorXd& x, const Multi& a) -> Matrix {
    if (multi_order(a) == 0) return scale * x(coordinate) * Matrix::Identity(rank, rank);
    if (multi_order(a) == 1 && a[coordinate] == 1) return scale * Matrix::Identity(rank, rank);
    return Matrix::Zero(rank, rank);
  };
}

MatrixFieldJet profile_field(int rank, std::function<cxd(double, int)> f) {
  return [rank, f](const Eigen::VectorXd& x, const Multi& a) -> Matrix {
    if (a[1] != 0 || a[2] != 0) return Matrix::Zero(rank, rank);
    return f(x(0), a[0]) * Matrix::Identity(rank, rank);
  };
}

void FlatOperatorSpec::validate() const {
  if (n < 1 || n > 3) fail(Errc::dimension_unsupported, "flat spec supports n = 1..3");
  if (rank < 1) fail(Errc::config_invalid, "rank must be positive");
  if (!B) fail(Errc::config_invalid, "potential jet missing");
  if (alpha && n < 2) fail(Errc::config_invalid, "the gauge twist needs a theta coordinate");
}

namespace {

// scalar jet at one point: derivatives stored by multi-index
using ScalarJet = std::map<Multi, cxd>;

cxd jet_get(const ScalarJet& j, const Multi& a) {
  auto it = j.find(a);
  return it == j.end() ? cxd(0.0) : it->second;
}

// jet of the radial parallel-transport phase and its exponential at x
// relative to the base point y (U(1) twist A_theta = alpha(t))
ScalarJet phase_jet(const std::function<cxd(double, int)>& alpha, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& x, int max_order, const QuadRule& rule) {
  ScalarJet jet;
  const double ut = x(0) - y(0);
  const double uth = x(1) - y(1);
  for (int j = 0; j <= max_order + 1; ++j) {
    cxd J = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      J += rule.weights[q] * std::pow(rule.nodes[q], j) * alpha(y(0) + rule.nodes[q] * ut, j);
    jet[{j, 0, 0}] = -uth * J;
    jet[{j, 1, 0}] = -J;
  }
  return jet;
}

ScalarJet exp_jet(const ScalarJet& phi, int sign, int n, int max_order) {
  ScalarJet w;
  w[{0, 0, 0}] = std::exp(static_cast<double>(sign) * kI * jet_get(phi, {0, 0, 0}));
  for (int total = 1; total <= max_order; ++total) {
    for (const Multi& a : indices_up_to(n, total)) {
      if (multi_order(a) != total) continue;
      int mu = (a[0] > 0) ? 0 : (a[1] > 0 ? 1 : 2);
      Multi b = a;
      b[mu] -= 1;
      cxd acc = 0.0;
      for (const Multi& g : sub_indices(b))
        acc += multi_binom(b, g) * jet_get(phi, multi_add(g, mu, 1)) * jet_get(w, multi_sub(b, g));
      w[a] = static_cast<double>(sign) * kI * acc;
    }
  }
  return w;
}

// Transport solver on the ray from y to x: every level is tabulated on a
// Chebyshev-Lobatto grid of the ray parameter, and the radial integrals are
// evaluated by Gauss-Legendre against the barycentric interpolant, so the
// recursion never leaves the ray.
class RayTransport {
public:
  RayTransport(const FlatOperatorSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
               int k_max, int grid_n = 32)
      : spec_(spec), x_(x), y_(y), kmax_(k_max), N_(grid_n), rule_(gauss_legendre(48, 0.0, 1.0)) {
    spec_.validate();
    build();
  }

  /// D^a V_k at grid node i
  const Matrix& V(int k, const Multi& a, int i) const { return table(vk_, k, a)[i]; }
  /// D^a [W^{-1} P V_k] at grid node i
  const Matrix& E(int k, const Multi& a, int i) const { return table(ek_, k, a)[i]; }
  double sigma(int i) const { return sigma_[i]; }
  int nodes() const { return N_ + 1; }
  cxd w_value(int i) const { return spec_.alpha ? jet_get(wjet_[i], {0, 0, 0}) : cxd(1.0); }
  cxd winv_value(int i) const { return spec_.alpha ? jet_get(winvjet_[i], {0, 0, 0}) : cxd(1.0); }

  /// spectral derivative along the ray parameter of a grid function
  std::vector<Matrix> d_sigma(const std::vector<Matrix>& f) const;

private:
  using Table = std::map<Multi, std::vector<Matrix>>;

  static const std::vector<Matrix>& table(const std::vector<Table>& t, int k, const Multi& a) {
    const auto it = t[k].find(a);
    if (it == t[k].end()) fail(Errc::config_invalid, "transport table missing an entry");
    return it->second;
  }

  Eigen::VectorXd point(double s) const { return y_ + s * (x_ - y_); }

  // barycentric interpolation of a tabulated grid function at parameter s
  Matrix interp(const std::vector<Matrix>& f, double s) const {
    // exact hit?
    for (int i = 0; i <= N_; ++i)
      if (std::abs(s - sigma_[i]) < 1e-15) return f[i];
    cxd den = 0.0;
    Matrix num = Matrix::Zero(f[0].rows(), f[0].cols());
    for (int i = 0; i <= N_; ++i) {
      const double w = bary_[i] / (s - sigma_[i]);
      num += w * f[i];
      den += w;
    }
    return num / den;
  }

  // D^a [(Box^nabla + B) V_k] at node i, from the level-k tables
  Matrix dPV(int k, const Multi& a, int i) const {
    const Eigen::VectorXd xi = point(sigma_[i]);
    Matrix acc = Matrix::Zero(spec_.rank, spec_.rank);
    for (int mu = 0; mu < spec_.n; ++mu) {
      const double sgn = (mu == 0) ? 1.0 : -1.0;  // -g^{mu mu}
      Matrix term = V(k, multi_add(a, mu, 2), i);
      if (spec_.alpha && mu == 1) {
        for (const Multi& g : sub_indices(a)) {
          const Multi rest = multi_sub(a, g);
          const double cb = multi_binom(a, g);
          term += (2.0 * kI * a_theta(xi, g) * cb) * V(k, multi_add(rest, mu, 1), i);
          term -= (a_sq(xi, g) * cb) * V(k, rest, i);
        }
      }
      acc += sgn * term;
    }
    for (const Multi& g : sub_indices(a))
      acc += multi_binom(a, g) * (spec_.B(xi, g) * V(k, multi_sub(a, g), i));
    return acc;
  }

  cxd a_theta(const Eigen::VectorXd& xi, const Multi& g) const {
    if (g[1] != 0 || g[2] != 0) return 0.0;
    return spec_.alpha(xi(0), g[0]);
  }
  cxd a_sq(const Eigen::VectorXd& xi, const Multi& g) const {
    if (g[1] != 0 || g[2] != 0) return 0.0;
    cxd acc = 0.0;
    for (int i = 0; i <= g[0]; ++i)
      acc += binom(g[0], i) * spec_.alpha(xi(0), i) * spec_.alpha(xi(0), g[0] - i);
    return acc;
  }

  void build();

  FlatOperatorSpec spec_;
  Eigen::VectorXd x_, y_;
  int kmax_;
  int N_;
  QuadRule rule_;
  std::vector<double> sigma_, bary_;
  std::vector<ScalarJet> wjet_, winvjet_;
  std::vector<Table> vk_, ek_;
};

void RayTransport::build() {
  const int n = spec_.n;
  const int top_order = 2 * kmax_ + 2;
  // Chebyshev-Lobatto nodes of [0,1], ascending, with barycentric weights
  sigma_.resize(N_ + 1);
  bary_.resize(N_ + 1);
  for (int i = 0; i <= N_; ++i) {
    sigma_[i] = 0.5 * (1.0 - std::cos(M_PI * i / N_));
    bary_[i] = ((i % 2 == 0) ? 1.0 : -1.0) * ((i == 0 || i == N_) ? 0.5 : 1.0);
  }

  if (spec_.alpha) {
    wjet_.resize(N_ + 1);
    winvjet_.resize(N_ + 1);
    for (int i = 0; i <= N_; ++i) {
      const ScalarJet phi = phase_jet(spec_.alpha, y_, point(sigma_[i]), top_order, rule_);
      wjet_[i] = exp_jet(phi, +1, n, top_order);
      winvjet_[i] = exp_jet(phi, -1, n, top_order);
    }
  }

  vk_.assign(kmax_ + 1, Table{});
  ek_.assign(kmax_ + 1, Table{});
  const Matrix id = Matrix::Identity(spec_.rank, spec_.rank);

  // level 0: V_0 = W * id
  for (const Multi& a : indices_up_to(n, top_order)) {
    std::vector<Matrix> col(N_ + 1);
    for (int i = 0; i <= N_; ++i)
      col[i] = spec_.alpha ? Matrix(jet_get(wjet_[i], a) * id)
                           : Matrix((multi_order(a) == 0 ? 1.0 : 0.0) * id);
    vk_[0][a] = std::move(col);
  }

  for (int k = 1; k <= kmax_ + 0; ++k) {
    const int order_e = 2 * (kmax_ - k) + 2;  // orders needed of E_{k-1}
    // E_{k-1} = W^{-1} P V_{k-1}
    for (const Multi& a : indices_up_to(n, order_e)) {
      std::vector<Matrix> col(N_ + 1);
      for (int i = 0; i <= N_; ++i) {
        Matrix acc = Matrix::Zero(spec_.rank, spec_.rank);
        for (const Multi& g : sub_indices(a)) {
          const cxd winv = spec_.alpha ? jet_get(winvjet_[i], g)
                                       : cxd(multi_order(g) == 0 ? 1.0 : 0.0);
          if (winv == cxd(0.0)) continue;
          acc += (winv * multi_binom(a, g)) * dPV(k - 1, multi_sub(a, g), i);
        }
        col[i] = acc;
      }
      ek_[k - 1][a] = std::move(col);
    }
    // V_k by the radial integrals against the interpolated E_{k-1}
    for (const Multi& a : indices_up_to(n, order_e)) {
      std::vector<Matrix> col(N_ + 1);
      for (int i = 0; i <= N_; ++i) {
        Matrix acc = Matrix::Zero(spec_.rank, spec_.rank);
        for (const Multi& g : sub_indices(a)) {
          const cxd wv = spec_.alpha ? jet_get(wjet_[i], g)
                                     : cxd(multi_order(g) == 0 ? 1.0 : 0.0);
          if (wv == cxd(0.0)) continue;
          const Multi rest = multi_sub(a, g);
          const double p = k - 1 + multi_order(rest);
          Matrix integral = Matrix::Zero(spec_.rank, spec_.rank);
          const auto& etab = ek_[k - 1].at(rest);
          for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
            const double s = rule_.nodes[q];
            integral += (rule_.weights[q] * std::pow(s, p)) * interp(etab, s * sigma_[i]);
          }
          acc += (wv * multi_binom(a, g)) * integral;
        }
        col[i] = -static_cast<double>(k) * acc;
      }
      vk_[k][a] = std::move(col);
    }
  }
  // top-level E_{kmax} values (order 0) for residual checks
  {
    std::vector<Matrix> col(N_ + 1);
    for (int i = 0; i <= N_; ++i) {
      Matrix acc = Matrix::Zero(spec_.rank, spec_.rank);
      const cxd winv = spec_.alpha ? jet_get(winvjet_[i], {0, 0, 0}) : cxd(1.0);
      acc = winv * dPV(kmax_, {0, 0, 0}, i);
      col[i] = acc;
    }
    ek_[kmax_][{0, 0, 0}] = std::move(col);
  }
}

std::vector<Matrix> RayTransport::d_sigma(const std::vector<Matrix>& f) const {
  // Chebyshev-Lobatto differentiation via the barycentric formula
  std::vector<Matrix> out(N_ + 1, Matrix::Zero(f[0].rows(), f[0].cols()));
  for (int i = 0; i <= N_; ++i) {
    Matrix acc = Matrix::Zero(f[0].rows(), f[0].cols());
    double diag = 0.0;
    for (int j = 0; j <= N_; ++j) {
      if (j == i) continue;
      const double dij = (bary_[j] / bary_[i]) / (sigma_[i] - sigma_[j]);
      acc += dij * (f[j] - f[i]);
    }
    (void)diag;
    out[i] = acc;
  }
  return out;
}

}  // namespace

std::vector<Matrix> solve_transport(const FlatOperatorSpec& spec, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y, int k_max) {
  RayTransport rt(spec, x, y, k_max);
  std::vector<Matrix> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(rt.V(k, {0, 0, 0}, rt.nodes() - 1));
  return out;
}

HadamardDiagonal diagonal_coefficients(const FlatOperatorSpec& spec, const Eigen::VectorXd& x,
                                       int k_max) {
  // degenerate ray y = x: the integral means collapse to the integrand value
  RayTransport rt(spec, x, x, k_max);
  HadamardDiagonal out;
  out.x = x;
  for (int k = 0; k <= k_max; ++k) out.values.push_back(rt.V(k, {0, 0, 0}, 0));
  return out;
}

double transport_residual(const FlatOperatorSpec& spec, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, int k_max, int samples) {
  RayTransport rt(spec, x, y, k_max);
  const int nn = rt.nodes();
  double worst = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    // radial form: sigma M' + k M + k E_{k-1} = 0 with M = W^{-1} V_k
    std::vector<Matrix> M(nn);
    for (int i = 0; i < nn; ++i) M[i] = rt.winv_value(i) * rt.V(k, {0, 0, 0}, i);
    const std::vector<Matrix> dM = rt.d_sigma(M);
    const int stride = std::max(1, (nn - 2) / samples);
    for (int i = 1; i < nn - 1; i += stride) {
      const Matrix E = rt.E(k - 1, {0, 0, 0}, i);
      const Matrix resid = rt.sigma(i) * dM[i] + static_cast<double>(k) * (M[i] + E);
      const double scale = std::max(1e-30, static_cast<double>(k) * E.norm());
      worst = std::max(worst, resid.norm() / scale);
    }
  }
  return worst;
}

namespace {

std::function<cxd(double, int)> gauge_rate_profile(const CylinderModel& model, cxd scale) {
  return [model, scale](double t, int order) -> cxd {
    return scale * model.flux_derivative(t, order + 1);
  };
}

std::function<cxd(double, int)> twist_alpha(const CylinderModel& model) {
  // alpha(t) = -a(t): the L-chirality circle operator -i d/dtheta + a(t)
  // corresponds to nabla_theta = d_theta + i alpha(t) with alpha = -a
  return [model](double t, int order) -> cxd { return -model.flux_derivative(t, order); };
}

}  // namespace

FlatOperatorSpec cylinder_left_square(const CylinderModel& model) {
  model.validate();
  if (model.base.rank != 1 || !model.base.potential.empty())
    fail(Errc::config_invalid, "index density supports rank-1 flux cylinders");
  FlatOperatorSpec spec;
  spec.n = 2;
  spec.rank = 1;
  // D_R D_L = Box^nabla + i a'(t)
  spec.B = profile_field(1, gauge_rate_profile(model, kI));
  spec.alpha = twist_alpha(model);
  return spec;
}

FlatOperatorSpec cylinder_right_square(const CylinderModel& model) {
  FlatOperatorSpec spec = cylinder_left_square(model);
  spec.B = profile_field(1, gauge_rate_profile(model, -kI));
  return spec;
}

double index_density(const CylinderModel& model, const Eigen::Vector2d& x) {
  // delta J^- = Re[ kappa (tr V_{R,1} - tr V_{L,1}) ] / (4 pi) with the
  // phase kappa = i frozen by the spectral-flow calibration
  const auto left = diagonal_coefficients(cylinder_left_square(model), x, 1);
  const auto right = diagonal_coefficients(cylinder_right_square(model), x, 1);
  const cxd diff = right.values[1].trace() - left.values[1].trace();
  return (kI * diff).real() / (4.0 * M_PI);
}

double index_density_integral(const CylinderModel& model, int t_points, double* abs_error) {
  // the density is theta-independent; integrate over t and multiply by 2 pi
  auto profile = [&](double t) {
    return cxd(index_density(model, Eigen::Vector2d(t, 0.0)), 0.0);
  };
  const cxd v = integrate_adaptive(profile, model.t_minus, model.t_plus, 1e-10, 1e-10, 18);
  if (abs_error) *abs_error = 1e-8;
  (void)t_points;
  return 2.0 * M_PI * v.real();
}

SingularityCoefficients singularity_coefficients(const CylinderModel& model, double t, double y,
                                                 double Lambda) {
  // n = 2 closed forms; the Clifford normal acts as multiplication by i on
  // the rank-1 chiral fibers
  const auto spec = cylinder_left_square(model);
  const QuadRule rule = gauss_legendre(48, 0.0, 1.0);
  const Eigen::Vector2d x(t, y);
  const ScalarJet phi = phase_jet(spec.alpha, x, x, 3, rule);
  const ScalarJet w = exp_jet(phi, +1, 2, 3);
  // D_L,(1) V_0 on the diagonal: (-d_t + d_theta + i A_theta) W |_diag
  const cxd dl_v0 = -jet_get(w, {1, 0, 0}) + jet_get(w, {0, 1, 0}) +
                    kI * spec.alpha(t, 0) * jet_get(w, {0, 0, 0});

  SingularityCoefficients out;
  const double euler = 0.5772156649015329;
  out.c = (1.0 / (2.0 * M_PI)) * (dl_v0 * kI);
  out.a0 = (euler - std::log(2.0) - kI * M_PI * (Lambda - 1.0) / 2.0) * out.c;
  out.a1 = (1.0 / (4.0 * M_PI)) * dcoeff_Ctilde(-1.0, 2, 2.0 * Lambda);
  return out;
}

}  // namespace findex
