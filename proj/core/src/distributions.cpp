#include "findex/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "findex/quadrature.hpp"
#include "findex/special.hpp"

namespace findex {

cxd coeff_C(cxd beta, int n) {
  if (n < 1) fail(Errc::config_invalid, "dimension must be positive");
  const cxd log2pow = -(static_cast<double>(n) + 2.0 * beta) * std::log(2.0);
  const double pipow = std::pow(M_PI, (2.0 - n) / 2.0);
  return std::exp(log2pow) * pipow * rgamma_c(beta + (n - 2) / 2.0 + 1.0) * rgamma_c(beta + 1.0);
}

cxd dcoeff_C(cxd beta, int n) {
  return cauchy_derivative([n](cxd b) { return coeff_C(b, n); }, beta, 1);
}

cxd coeff_Ctilde(cxd beta, int n, double Lambda) {
  return kI / M_PI * dcoeff_C(beta, n) + (Lambda - 1.0) * coeff_C(beta, n);
}

cxd dcoeff_Ctilde(cxd beta, int n, double Lambda) {
  return kI / M_PI * cauchy_derivative([n](cxd b) { return coeff_C(b, n); }, beta, 2) +
         (Lambda - 1.0) * dcoeff_C(beta, n);
}

namespace {

// ---------------------------------------------------------------- utilities

int auto_transfers(cxd beta, double target) {
  return std::max(0, static_cast<int>(std::ceil(target - beta.real())));
}

std::vector<double> default_ladder() {
  std::vector<double> eps;
  for (int j = 0; j <= 12; ++j) eps.push_back(0.5 * std::pow(2.0, -j));
  return eps;
}

// generalized Richardson: least squares in the basis {1, e, e^2, e^3, e^4}
// plus {e^p, e^{p+1}} for the known fractional exponent p of the family
struct Extrapolated {
  cxd value;
  double error;
};

Extrapolated richardson(const std::vector<double>& eps, const std::vector<cxd>& vals,
                        double frac_p) {
  using LD = long double;
  using MatL = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<LD, Eigen::Dynamic, 1>;
  // integer powers from the analytic part; the fractional family eps^p,
  // eps^{p+1} and eps^p log(eps) from the light-cone layer
  std::vector<std::pair<double, bool>> basis = {
      {0.0, false}, {1.0, false}, {2.0, false}, {3.0, false}, {4.0, false}};
  if (frac_p < 5.5 && std::abs(frac_p - std::round(frac_p)) > 1e-9) {
    basis.push_back({frac_p, false});
    basis.push_back({frac_p + 1.0, false});
    basis.push_back({frac_p, true});
  }
  auto solve = [&](std::size_t npts) -> cxd {
    const std::size_t cols = basis.size();
    MatL A(npts, cols);
    VecL br(npts), bi(npts);
    for (std::size_t i = 0; i < npts; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        A(i, j) = std::pow(static_cast<LD>(eps[i]), static_cast<LD>(basis[j].first));
        if (basis[j].second) A(i, j) *= std::log(static_cast<LD>(eps[i]));
      }
      br(i) = vals[i].real();
      bi(i) = vals[i].imag();
    }
    const auto qr = A.colPivHouseholderQr();
    const VecL cr = qr.solve(br), ci = qr.solve(bi);
    return cxd(static_cast<double>(cr(0)), static_cast<double>(ci(0)));
  };
  const cxd full = solve(eps.size());
  const cxd partial = solve(eps.size() - 2);
  return {full, std::abs(full - partial)};
}

// ------------------------------------------------- tensor grids and factors

// evaluate a polynomial on a tensor grid by successive axis contraction;
// result indexed with the last axis fastest
std::vector<cxd> eval_poly_tensor(const Poly& p, int n,
                                  const std::array<std::vector<double>, 3>& axes) {
  std::array<int, 3> deg{0, 0, 0};
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < 3; ++i) deg[i] = std::max(deg[i], e[i]);
  std::array<int, 3> npts{1, 1, 1};
  for (int i = 0; i < n; ++i) npts[i] = static_cast<int>(axes[i].size());

  // dense coefficient cube
  std::vector<cxd> cube(static_cast<std::size_t>(deg[0] + 1) * (deg[1] + 1) * (deg[2] + 1), 0.0);
  auto cidx = [&](int a, int b, int c) {
    return (static_cast<std::size_t>(a) * (deg[1] + 1) + b) * (deg[2] + 1) + c;
  };
  for (const auto& [e, c] : p.terms()) cube[cidx(e[0], e[1], e[2])] = c;

  // contract axis 2
  std::vector<cxd> t2(static_cast<std::size_t>(deg[0] + 1) * (deg[1] + 1) * npts[2]);
  for (int a = 0; a <= deg[0]; ++a)
    for (int b = 0; b <= deg[1]; ++b)
      for (int k = 0; k < npts[2]; ++k) {
        const double z = (n > 2) ? axes[2][k] : 0.0;
        cxd acc = 0.0;
        for (int c = deg[2]; c >= 0; --c) acc = acc * z + cube[cidx(a, b, c)];
        t2[(static_cast<std::size_t>(a) * (deg[1] + 1) + b) * npts[2] + k] = acc;
      }
  // contract axis 1
  std::vector<cxd> t1(static_cast<std::size_t>(deg[0] + 1) * npts[1] * npts[2]);
  for (int a = 0; a <= deg[0]; ++a)
    for (int j = 0; j < npts[1]; ++j) {
      const double y = (n > 1) ? axes[1][j] : 0.0;
      for (int k = 0; k < npts[2]; ++k) {
        cxd acc = 0.0;
        for (int b = deg[1]; b >= 0; --b)
          acc = acc * y + t2[(static_cast<std::size_t>(a) * (deg[1] + 1) + b) * npts[2] + k];
        t1[(static_cast<std::size_t>(a) * npts[1] + j) * npts[2] + k] = acc;
      }
    }
  // contract axis 0
  std::vector<cxd> out(static_cast<std::size_t>(npts[0]) * npts[1] * npts[2]);
  for (int i = 0; i < npts[0]; ++i) {
    const double x = axes[0][i];
    for (int j = 0; j < npts[1]; ++j)
      for (int k = 0; k < npts[2]; ++k) {
        cxd acc = 0.0;
        for (int a = deg[0]; a >= 0; --a)
          acc = acc * x + t1[(static_cast<std::size_t>(a) * npts[1] + j) * npts[2] + k];
        out[(static_cast<std::size_t>(i) * npts[1] + j) * npts[2] + k] = acc;
      }
  }
  return out;
}

struct IntegralSample {
  cxd value = 0.0;
  double l1 = 0.0;  // sum of |w * integrand|, the roundoff scale
};

// integral of factor(gamma(x)) * phi(x) over R^n; gamma is the Minkowski
// square (or the coordinate itself in one dimension)
IntegralSample integrate_factor(const TestFunction& phi, int N,
                                const std::function<cxd(double)>& factor) {
  const int n = phi.dimension();
  if (phi.is_gaussian()) {
    const GaussPoly& g = phi.gaussian();
    // x = c + L u maps the weight to e^{-|u|^2}
    Eigen::LLT<Eigen::MatrixXd> llt(g.Q);
    const Eigen::MatrixXd L =
        llt.matrixU().solve(Eigen::MatrixXd::Identity(n, n));  // Q = U^T U, L = U^{-1}
    const double jac = std::abs(L.determinant());
    // the polynomial in u-coordinates
    const Poly pu = g.P.substitute_affine(L, g.center);
    const QuadRule gh = gauss_hermite(N);
    std::array<std::vector<double>, 3> axes;
    for (int i = 0; i < n; ++i) axes[i] = gh.nodes;
    const std::vector<cxd> pvals = eval_poly_tensor(pu, n, axes);

    std::array<int, 3> npts{1, 1, 1};
    for (int i = 0; i < n; ++i) npts[i] = N;
    IntegralSample out;
    std::size_t idx = 0;
    Eigen::VectorXd u(n), x(n);
    for (int i = 0; i < npts[0]; ++i)
      for (int j = 0; j < npts[1]; ++j)
        for (int k = 0; k < npts[2]; ++k, ++idx) {
          u(0) = gh.nodes[i];
          if (n > 1) u(1) = gh.nodes[j];
          if (n > 2) u(2) = gh.nodes[k];
          x = g.center + L * u;
          double gam = x(0) * x(0);
          for (int d = 1; d < n; ++d) gam -= x(d) * x(d);
          if (n == 1) gam = x(0);
          double w = gh.weights[i];
          if (n > 1) w *= gh.weights[j];
          if (n > 2) w *= gh.weights[k];
          const cxd term = w * factor(gam) * pvals[idx];
          out.value += term;
          out.l1 += std::abs(term);
        }
    out.value *= jac;
    out.l1 *= std::abs(jac);
    return out;
  }

  // bump: plain Gauss-Legendre over the support box
  const BumpFn& b = phi.bump();
  const int M = N;
  std::vector<QuadRule> ax(n);
  for (int i = 0; i < n; ++i)
    ax[i] = gauss_legendre(M, b.center(i) - b.radii(i), b.center(i) + b.radii(i));
  IntegralSample out;
  std::vector<double> x(3, 0.0);
  const int n1 = (n > 1) ? M : 1, n2 = (n > 2) ? M : 1;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) {
        x[0] = ax[0].nodes[i];
        double w = ax[0].weights[i];
        if (n > 1) {
          x[1] = ax[1].nodes[j];
          w *= ax[1].weights[j];
        }
        if (n > 2) {
          x[2] = ax[2].nodes[k];
          w *= ax[2].weights[k];
        }
        double gam = x[0] * x[0];
        for (int d = 1; d < n; ++d) gam -= x[d] * x[d];
        if (n == 1) gam = x[0];
        const cxd term = w * factor(gam) * phi.eval(x.data());
        out.value += term;
        out.l1 += std::abs(term);
      }
  return out;
}

double support_extent(const TestFunction& phi) {
  if (phi.is_gaussian()) {
    const GaussPoly& g = phi.gaussian();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.Q);
    return g.center.norm() + 9.0 / std::sqrt(es.eigenvalues().minCoeff());
  }
  const BumpFn& b = phi.bump();
  return b.center.norm() + b.radii.maxCoeff();
}

int default_points(int n, int requested) {
  if (requested > 0) return requested;
  switch (n) {
    case 1: return 220;
    case 2: return 130;
    default: return 72;
  }
}

// epsilon-ladder evaluation of <(gamma + i sign eps)^beta (log)^want_log, psi>
struct LadderResult {
  cxd value;
  double error;
};

// dyadically graded symmetric nodes on [-L, L], clustered at 0 where the
// light-cone kink sits
QuadRule graded_axis(double L, int levels, int pts_per_cell) {
  const QuadRule base = gauss_legendre(pts_per_cell);
  QuadRule out;
  auto add_cell = [&](double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < pts_per_cell; ++i) {
      out.nodes.push_back(mid + half * base.nodes[i]);
      out.weights.push_back(half * base.weights[i]);
    }
  };
  double hi = L;
  for (int k = 0; k < levels; ++k) {
    const double lo = hi / 2.0;
    add_cell(lo, hi);
    add_cell(-hi, -lo);
    hi = lo;
  }
  add_cell(-hi, hi);
  return out;
}

// direct (transfer-free) pairing in two dimensions via light-cone
// coordinates u = t - x, v = t + x: gamma = uv, and the integrand's kink
// runs along the axes where the grading resolves it
LadderResult lightcone_ladder_pairing(const TestFunction& psi, cxd beta, int sign, bool want_log,
                                      const std::vector<double>& ladder) {
  const double L = 2.2 * support_extent(psi);
  auto sample = [&](int levels, int ppc) {
    const QuadRule ax = graded_axis(L, levels, ppc);
    const int M = static_cast<int>(ax.nodes.size());
    // cache the test function on the tensor grid
    std::vector<cxd> psi_vals(static_cast<std::size_t>(M) * M);
    std::vector<double> gam(static_cast<std::size_t>(M) * M);
    double x[2];
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) {
        const double u = ax.nodes[i], v = ax.nodes[j];
        x[0] = 0.5 * (u + v);
        x[1] = 0.5 * (v - u);
        psi_vals[static_cast<std::size_t>(i) * M + j] =
            0.5 * ax.weights[i] * ax.weights[j] * psi.eval(x);
        gam[static_cast<std::size_t>(i) * M + j] = u * v;
      }
    std::vector<cxd> vals;
    for (double eps : ladder) {
      const cxd ie = cxd(0.0, sign * eps);
      cxd acc = 0.0;
      for (std::size_t k = 0; k < psi_vals.size(); ++k) {
        const cxd z = gam[k] + ie;
        cxd f = std::exp(beta * std::log(z));
        if (want_log) f *= std::log(z);
        acc += f * psi_vals[k];
      }
      vals.push_back(acc);
    }
    return vals;
  };
  const auto hi = sample(24, 8);
  const auto lo = sample(20, 6);
  double node_err = 0.0, data_scale = 0.0;
  for (std::size_t j = 0; j < ladder.size(); ++j) {
    node_err = std::max(node_err, std::abs(hi[j] - lo[j]));
    data_scale = std::max(data_scale, std::abs(hi[j]));
  }
  if (node_err > 1e-2 * data_scale + 1e-9)
    fail(Errc::quadrature_not_converged, "light-cone quadrature did not converge");
  const double frac_p = beta.real() + 1.0;
  const auto ehi = richardson(ladder, hi, frac_p);
  const auto elo = richardson(ladder, lo, frac_p);
  return {ehi.value, ehi.error + std::abs(ehi.value - elo.value)};
}

LadderResult ladder_pairing(const TestFunction& psi, cxd beta, int sign, bool want_log,
                            const std::vector<double>& ladder, int N) {
  std::vector<cxd> vals_hi, vals_lo;
  const int Nlo = (3 * N) / 4;
  double data_scale = 0.0, node_err = 0.0, l1_scale = 0.0;
  for (double eps : ladder) {
    const cxd ie = cxd(0.0, sign * eps);
    auto factor = [&](double gam) {
      const cxd z = gam + ie;
      const cxd p = std::exp(beta * std::log(z));
      return want_log ? p * std::log(z) : p;
    };
    const auto hi_s = integrate_factor(psi, N, factor);
    const auto lo_s = integrate_factor(psi, Nlo, factor);
    vals_hi.push_back(hi_s.value);
    vals_lo.push_back(lo_s.value);
    data_scale = std::max(data_scale, std::abs(hi_s.value));
    l1_scale = std::max(l1_scale, hi_s.l1);
    node_err = std::max(node_err, std::abs(hi_s.value - lo_s.value));
  }
  // guard against unresolved integrands; mere roundoff-level noise on a
  // cancelling ladder is carried through the error estimate instead
  if (node_err > 1e-2 * data_scale + 1e-10 * l1_scale + 1e-9)
    fail(Errc::quadrature_not_converged,
         "tensor quadrature of the regularized pairing did not converge (node_err = " +
             std::to_string(node_err) + ", data_scale = " + std::to_string(data_scale) + ")");
  const double frac_p = beta.real() + 1.0;
  const auto hi = richardson(ladder, vals_hi, frac_p);
  const auto lo = richardson(ladder, vals_lo, frac_p);
  return {hi.value, hi.error + std::abs(hi.value - lo.value) + 1e-15 * l1_scale};
}

// --------------------------------------------------- one-dimensional family

// direct ladder for f^sign_beta (or the log family) against phi, Re(beta)
// large enough for smooth quadrature
LadderResult f_raw(const TestFunction& phi, cxd beta, int sign, bool want_log,
                   const std::vector<double>& ladder, int N) {
  return ladder_pairing(phi, beta, sign, want_log, ladder, N);
}

PairResult pair_f(const DistributionQuery& q, const TestFunction& phi) {
  const int m = (q.box_transfers >= 0) ? q.box_transfers : auto_transfers(q.beta, 3.5);
  cxd denom = 1.0;
  for (int j = 1; j <= m; ++j) {
    const cxd b = q.beta + static_cast<double>(j);
    if (std::abs(b) < 1e-9)
      fail(Errc::pole_at_beta, "integration by parts pinches beta + " + std::to_string(j));
    denom *= b;
  }
  TestFunction psi = phi;
  for (int j = 0; j < m; ++j) psi = psi.derivative(0);
  const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  const auto ladder = q.epsilon_ladder.empty() ? default_ladder() : q.epsilon_ladder;
  const auto r = f_raw(psi, q.beta + static_cast<double>(m), q.sign, false, ladder,
                       default_points(1, q.quad_points));
  return {sgn / denom * r.value, r.error / std::abs(denom)};
}

// h_beta = d/d beta f_beta via the recursion
// h_beta[phi] = (1/(beta+1)^2) f_{beta+1}[phi'] - (1/(beta+1)) h_{beta+1}[phi']
PairResult pair_h(const DistributionQuery& q, const TestFunction& phi) {
  const auto ladder = q.epsilon_ladder.empty() ? default_ladder() : q.epsilon_ladder;
  const int N = default_points(1, q.quad_points);
  std::function<PairResult(cxd, const TestFunction&)> rec =
      [&](cxd beta, const TestFunction& f) -> PairResult {
    if (beta.real() >= 3.5) {
      const auto r = f_raw(f, beta, q.sign, true, ladder, N);
      return {r.value, r.error};
    }
    const cxd b1 = beta + 1.0;
    if (std::abs(b1) < 1e-9) fail(Errc::pole_at_beta, "h-family recursion pinches beta + 1");
    const TestFunction df = f.derivative(0);
    // f_{beta+1}[phi'] goes through pair_f so it lands in the smooth range
    DistributionQuery qf = q;
    qf.family = DistFamily::f;
    qf.beta = b1;
    const auto fp = pair_f(qf, df);
    const auto hp = rec(b1, df);
    return {fp.value / (b1 * b1) - hp.value / b1,
            fp.error_estimate / std::abs(b1 * b1) + hp.error_estimate / std::abs(b1)};
  };
  return rec(q.beta, phi);
}

// t_+/-^beta by one-sided quadrature after raising beta
PairResult pair_t(const DistributionQuery& q, const TestFunction& phi) {
  const int m = (q.box_transfers >= 0) ? q.box_transfers : auto_transfers(q.beta, 3.0);
  cxd denom = 1.0;
  for (int j = 1; j <= m; ++j) {
    const cxd b = q.beta + static_cast<double>(j);
    if (std::abs(b) < 1e-9)
      fail(Errc::pole_at_beta, "t-family has a simple pole at this beta");
    denom *= b;
  }
  TestFunction psi = phi;
  for (int j = 0; j < m; ++j) psi = psi.derivative(0);
  const cxd beta_eff = q.beta + static_cast<double>(m);
  const double sgn = (q.sign > 0) ? 1.0 : -1.0;
  // (-+ 1/(beta+1))^m accumulates to (-sign)^m / denom
  const double par = (m % 2 == 0) ? 1.0 : -sgn;

  const double L = support_extent(psi);
  const int N = default_points(1, q.quad_points);
  auto one_sided = [&](int npts) {
    const QuadRule gl = gauss_legendre(npts, 0.0, L);
    cxd acc = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double t = gl.nodes[i];
      const double ts = sgn * t;
      acc += gl.weights[i] * std::exp(beta_eff * std::log(t)) * psi.eval(&ts);
    }
    return acc;
  };
  const cxd hi = one_sided(N);
  const cxd lo = one_sided((3 * N) / 4);
  return {par / denom * hi, std::abs(hi - lo) / std::abs(denom)};
}

// ------------------------------------------------------- Minkowski families

PairResult pair_F(const DistributionQuery& q, const TestFunction& phi) {
  // transfers sharpen the regularized integrand but pile derivatives onto
  // the test function; bump supports tolerate far fewer of them
  const double target = phi.is_gaussian() ? 4.0 : 1.5;
  const int m = (q.box_transfers >= 0) ? q.box_transfers : auto_transfers(q.beta, target);
  const TestFunction psi = phi.box_power(m);
  const cxd beta_eff = q.beta + static_cast<double>(m);
  const auto ladder = q.epsilon_ladder.empty() ? default_ladder() : q.epsilon_ladder;
  const cxd C = coeff_C(beta_eff, q.n);
  if (beta_eff.real() < 3.0 && q.n == 2 && phi.is_gaussian()) {
    // low effective power: resolve the cone kink with graded light-cone cells
    const auto r = lightcone_ladder_pairing(psi, beta_eff, q.sign, false, ladder);
    return {C * r.value, std::abs(C) * r.error};
  }
  const auto r = ladder_pairing(psi, beta_eff, q.sign, false, ladder,
                                default_points(q.n, q.quad_points));
  return {C * r.value, std::abs(C) * r.error};
}

PairResult pair_G(const DistributionQuery& q, const TestFunction& phi) {
  if (q.n % 2 != 0) fail(Errc::config_invalid, "G family is defined in even dimensions");
  const double target = phi.is_gaussian() ? 4.0 : 1.5;
  const int m = (q.box_transfers >= 0) ? q.box_transfers : auto_transfers(q.beta, target);
  const TestFunction psi = phi.box_power(m);
  const cxd beta_eff = q.beta + static_cast<double>(m);
  const auto ladder = q.epsilon_ladder.empty() ? default_ladder() : q.epsilon_ladder;
  const bool graded = beta_eff.real() < 3.0 && q.n == 2 && phi.is_gaussian();
  const int N = default_points(q.n, q.quad_points);
  const auto rp = graded ? lightcone_ladder_pairing(psi, beta_eff, q.sign, false, ladder)
                         : ladder_pairing(psi, beta_eff, q.sign, false, ladder, N);
  const auto rl = graded ? lightcone_ladder_pairing(psi, beta_eff, q.sign, true, ladder)
                         : ladder_pairing(psi, beta_eff, q.sign, true, ladder, N);
  const cxd si = static_cast<double>(q.sign) * kI / M_PI;
  const cxd c0 = si * dcoeff_C(beta_eff, q.n) + q.Lambda * coeff_C(beta_eff, q.n);
  const cxd c1 = si * coeff_C(beta_eff, q.n);
  return {c0 * rp.value + c1 * rl.value, std::abs(c0) * rp.error + std::abs(c1) * rl.error};
}

// direct cone integral for R^sign_beta, Re(beta) > -1
cxd riesz_direct(const TestFunction& phi, double beta, int sign, int N) {
  const int n = phi.dimension();
  const double L = 2.2 * support_extent(phi);
  if (n == 2) {
    const QuadRule gj = gauss_jacobi01(N, beta);
    cxd acc = 0.0;
    double x[2];
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double u = L * gj.nodes[i], v = L * gj.nodes[j];
        x[0] = sign * 0.5 * (u + v);
        x[1] = sign * 0.5 * (v - u);
        // the Jacobi weight carries (nodes)^beta on [0,1]; rescale to [0,L]
        acc += gj.weights[i] * gj.weights[j] * phi.eval(x);
      }
    return 2.0 * coeff_C(beta, n) * acc * 0.5 * std::pow(L, 2.0 * (beta + 1.0));
  }
  if (n == 3) {
    const QuadRule gj = gauss_jacobi01(N, beta);
    const QuadRule gr = gauss_legendre(N, 0.0, L);
    const int M = 48;
    cxd acc = 0.0;
    double x[3];
    for (int i = 0; i < N; ++i) {
      const double s = L * gj.nodes[i];
      for (int j = 0; j < N; ++j) {
        const double r = gr.nodes[j];
        const double tt = sign * (s + r);
        const double radial = std::pow(2.0 * r + s, beta) * r;
        cxd ring = 0.0;
        for (int k = 0; k < M; ++k) {
          const double w = 2.0 * M_PI * k / M;
          x[0] = tt;
          x[1] = r * std::cos(w);
          x[2] = r * std::sin(w);
          ring += phi.eval(x);
        }
        acc += gj.weights[i] * gr.weights[j] * radial * ring * (2.0 * M_PI / M);
      }
    }
    return 2.0 * coeff_C(beta, n) * acc * std::pow(L, beta + 1.0);
  }
  fail(Errc::dimension_unsupported, "Riesz quadrature implemented for n = 2, 3");
}

// complementary family over the spacelike region
cxd riesz_tilde_direct(const TestFunction& phi, double beta, int N) {
  const int n = phi.dimension();
  const double L = 2.2 * support_extent(phi);
  if (n == 2) {
    const QuadRule gj = gauss_jacobi01(N, beta);
    cxd acc = 0.0;
    double x[2];
    for (int side : {+1, -1})
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          const double u = L * gj.nodes[i], v = L * gj.nodes[j];
          x[1] = side * 0.5 * (u + v);
          x[0] = side * 0.5 * (v - u);
          acc += gj.weights[i] * gj.weights[j] * phi.eval(x);
        }
    return 2.0 * coeff_C(beta, n) * acc * 0.5 * std::pow(L, 2.0 * (beta + 1.0));
  }
  if (n == 3) {
    const QuadRule gj = gauss_jacobi01(N, beta);
    const QuadRule gt = gauss_legendre(N, 0.0, L);
    const int M = 48;
    cxd acc = 0.0;
    double x[3];
    for (int tside : {+1, -1})
      for (int i = 0; i < N; ++i) {
        const double s = L * gj.nodes[i];
        for (int j = 0; j < N; ++j) {
          const double tt = tside * gt.nodes[j];
          const double r = std::abs(tt) + s;
          const double radial = std::pow(r + std::abs(tt), beta) * r;
          cxd ring = 0.0;
          for (int k = 0; k < M; ++k) {
            const double w = 2.0 * M_PI * k / M;
            x[0] = tt;
            x[1] = r * std::cos(w);
            x[2] = r * std::sin(w);
            ring += phi.eval(x);
          }
          acc += gj.weights[i] * gt.weights[j] * radial * ring * (2.0 * M_PI / M);
        }
      }
    return 2.0 * coeff_C(beta, n) * acc * std::pow(L, beta + 1.0);
  }
  fail(Errc::dimension_unsupported, "complementary Riesz quadrature implemented for n = 2, 3");
}

PairResult pair_R(const DistributionQuery& q, const TestFunction& phi, bool tilde) {
  if (std::abs(q.beta.imag()) > 1e-12)
    fail(Errc::config_invalid, "Riesz quadrature expects real beta");
  const int m = (q.box_transfers >= 0)
                    ? q.box_transfers
                    : std::max(0, static_cast<int>(std::ceil(-0.4 - q.beta.real())));
  const TestFunction psi = phi.box_power(m);
  const double beta_eff = q.beta.real() + m;
  const double par = (tilde && m % 2 == 1) ? -1.0 : 1.0;  // box Rt_{b+1} = -Rt_b
  const int N = default_points(2, q.quad_points);
  auto eval = [&](int npts) {
    return tilde ? riesz_tilde_direct(psi, beta_eff, npts)
                 : riesz_direct(psi, beta_eff, q.sign, npts);
  };
  const cxd hi = eval(N);
  const cxd lo = eval((3 * N) / 4);
  return {par * hi, std::abs(hi - lo)};
}

}  // namespace

void DistributionQuery::validate() const {
  if (sign != +1 && sign != -1) fail(Errc::config_invalid, "sign must be +1 or -1");
  if (n < 1 || n > 3) fail(Errc::dimension_unsupported, "dimensions 1..3 are supported");
  switch (family) {
    case DistFamily::f:
    case DistFamily::h:
    case DistFamily::t_pm:
      if (n != 1) fail(Errc::config_invalid, "f/h/t families live on the real line");
      break;
    default:
      if (n < 2) fail(Errc::config_invalid, "Minkowski families need n >= 2");
  }
  for (double e : epsilon_ladder)
    if (e <= 0.0) fail(Errc::config_invalid, "epsilon ladder must be positive");
}

PairResult pair(const DistributionQuery& query, const TestFunction& phi) {
  query.validate();
  if (phi.dimension() != query.n) fail(Errc::config_invalid, "test function dimension mismatch");
  switch (query.family) {
    case DistFamily::f: return pair_f(query, phi);
    case DistFamily::h: return pair_h(query, phi);
    case DistFamily::t_pm: return pair_t(query, phi);
    case DistFamily::F: return pair_F(query, phi);
    case DistFamily::G: return pair_G(query, phi);
    case DistFamily::R: return pair_R(query, phi, false);
    case DistFamily::R_tilde: return pair_R(query, phi, true);
  }
  fail(Errc::config_invalid, "unknown family");
}

namespace {

DistributionQuery make_query(DistFamily fam, cxd beta, int sign, int n, double Lambda,
                             int transfers = -1, int npts = 0) {
  DistributionQuery q;
  q.family = fam;
  q.beta = beta;
  q.sign = sign;
  q.n = n;
  q.Lambda = Lambda;
  q.box_transfers = transfers;
  q.quad_points = npts;
  return q;
}

}  // namespace

IdentityReport identity_suite(const std::vector<cxd>& betas, int n, double Lambda,
                              const std::vector<TestFunction>& phis, double tolerance) {
  IdentityReport rep;
  rep.tolerance = tolerance;
  const Poly gamma = minkowski_gamma(n);

  // an identity passes when the two sides agree relative to their natural
  // magnitude, or within the accumulated quadrature/extrapolation budget
  // (both sides of a pairing can legitimately cancel to zero)
  auto record = [&](const std::string& id, cxd beta, int iphi, cxd lhs, cxd rhs, double scale,
                    double err_budget) {
    IdentityCheck c;
    c.identity = id;
    c.beta = beta;
    c.phi_index = iphi;
    c.lhs = lhs;
    c.rhs = rhs;
    c.scale = std::max(scale, 1e-30);
    c.rel_dev = std::abs(lhs - rhs) / c.scale;
    c.pass = std::abs(lhs - rhs) <= tolerance * c.scale + 2.0 * err_budget;
    if (!c.pass) rep.failures += 1;
    rep.checks.push_back(std::move(c));
  };

  for (const cxd beta : betas) {
    for (std::size_t ip = 0; ip < phis.size(); ++ip) {
      const TestFunction& phi = phis[ip];
      const TestFunction gphi = phi.times_poly(gamma);

      // (a)  gamma F_beta = (2b+2)(2b+n) F_{beta+1}
      {
        const auto lhs = pair(make_query(DistFamily::F, beta, +1, n, Lambda), gphi);
        const auto fb1 = pair(make_query(DistFamily::F, beta + 1.0, +1, n, Lambda), phi);
        const cxd fac = (2.0 * beta + 2.0) * (2.0 * beta + static_cast<double>(n));
        record("F:gamma-mult", beta, static_cast<int>(ip), lhs.value, fac * fb1.value,
               std::max(std::abs(lhs.value), std::abs(fac * fb1.value)),
               lhs.error_estimate + std::abs(fac) * fb1.error_estimate);
      }
      // (c)  Lorentz invariance under a boost of rapidity 0.7
      if (phi.is_gaussian()) {
        const TestFunction boosted = phi.pullback_linear(lorentz_boost(n, 0.7));
        const auto lhs = pair(make_query(DistFamily::F, beta, +1, n, Lambda), boosted);
        const auto rhs = pair(make_query(DistFamily::F, beta, +1, n, Lambda), phi);
        record("F:lorentz", beta, static_cast<int>(ip), lhs.value, rhs.value,
               std::max(std::abs(lhs.value), std::abs(rhs.value)),
               lhs.error_estimate + rhs.error_estimate);
      }
      // (d), (e)  real and imaginary Riesz splittings
      {
        const auto fp = pair(make_query(DistFamily::F, beta, +1, n, Lambda), phi);
        const auto fm = pair(make_query(DistFamily::F, beta, -1, n, Lambda), phi);
        const auto rp = pair(make_query(DistFamily::R, beta, +1, n, Lambda), phi);
        const auto rm = pair(make_query(DistFamily::R, beta, -1, n, Lambda), phi);
        const auto rt = pair(make_query(DistFamily::R_tilde, beta, +1, n, Lambda), phi);
        const double scale = std::max({std::abs(fp.value), std::abs(fm.value),
                                       std::abs(rp.value), std::abs(rm.value),
                                       std::abs(rt.value)});
        const double budget = fp.error_estimate + fm.error_estimate + rp.error_estimate +
                              rm.error_estimate + rt.error_estimate;
        record("F:riesz-sum", beta, static_cast<int>(ip), fp.value + fm.value,
               rp.value + rm.value + std::cos(M_PI * beta) * rt.value, scale, budget);
        record("F:riesz-diff", beta, static_cast<int>(ip), -kI * (fp.value - fm.value),
               std::sin(M_PI * beta) * rt.value, scale, budget);
      }
      // (f)  box transfer, the left side evaluated WITHOUT the transfer
      // trick (direct regularized integral at beta + 1)
      {
        const auto lhs =
            pair(make_query(DistFamily::F, beta + 1.0, +1, n, Lambda, 0, 360), phi.box());
        const auto rhs = pair(make_query(DistFamily::F, beta, +1, n, Lambda), phi);
        record("F:box", beta, static_cast<int>(ip), lhs.value, rhs.value,
               std::max(std::abs(lhs.value), std::abs(rhs.value)),
               lhs.error_estimate + rhs.error_estimate);
      }
      if (n % 2 == 0) {
        // G (a)  gamma G_beta = (2b+2)(2b+n) G_{beta+1} + (i/pi)(8b+4+2n) F_{beta+1}
        {
          const auto lhs = pair(make_query(DistFamily::G, beta, +1, n, Lambda), gphi);
          const auto gb1 = pair(make_query(DistFamily::G, beta + 1.0, +1, n, Lambda), phi);
          const auto fb1 = pair(make_query(DistFamily::F, beta + 1.0, +1, n, Lambda), phi);
          const cxd fac = (2.0 * beta + 2.0) * (2.0 * beta + static_cast<double>(n));
          const cxd ffac = kI / M_PI * (8.0 * beta + 4.0 + 2.0 * n);
          const cxd rhs = fac * gb1.value + ffac * fb1.value;
          record("G:gamma-mult", beta, static_cast<int>(ip), lhs.value, rhs,
                 std::max({std::abs(lhs.value), std::abs(rhs), std::abs(gb1.value)}),
                 lhs.error_estimate + std::abs(fac) * gb1.error_estimate +
                     std::abs(ffac) * fb1.error_estimate);
        }
        // G (d)  box transfer, non-circular as for F
        {
          const auto lhs =
              pair(make_query(DistFamily::G, beta + 1.0, +1, n, Lambda, 0, 360), phi.box());
          const auto rhs = pair(make_query(DistFamily::G, beta, +1, n, Lambda), phi);
          record("G:box", beta, static_cast<int>(ip), lhs.value, rhs.value,
                 std::max(std::abs(lhs.value), std::abs(rhs.value)),
                 lhs.error_estimate + rhs.error_estimate);
        }
        // G (j)  integer beta: G+ + G- = R+ + R- holds for the Lambda = 1
        // normalization; at general Lambda the smooth remainder is the
        // polynomial pairing 2 (Lambda - 1) F_beta[phi]
        if (std::abs(beta.imag()) < 1e-12 &&
            std::abs(beta.real() - std::round(beta.real())) < 1e-12) {
          const auto gp = pair(make_query(DistFamily::G, beta, +1, n, Lambda), phi);
          const auto gm = pair(make_query(DistFamily::G, beta, -1, n, Lambda), phi);
          const auto rp = pair(make_query(DistFamily::R, beta, +1, n, Lambda), phi);
          const auto rm = pair(make_query(DistFamily::R, beta, -1, n, Lambda), phi);
          const auto fb = pair(make_query(DistFamily::F, beta, +1, n, Lambda), phi);
          const cxd rhs = rp.value + rm.value + 2.0 * (Lambda - 1.0) * fb.value;
          record("G:integer-sum", beta, static_cast<int>(ip), gp.value + gm.value, rhs,
                 std::max({std::abs(gp.value), std::abs(gm.value), std::abs(rp.value),
                           std::abs(rm.value)}),
                 gp.error_estimate + gm.error_estimate + rp.error_estimate + rm.error_estimate +
                     2.0 * std::abs(Lambda - 1.0) * fb.error_estimate);
        }
      }
    }

    // one-dimensional boundary-value relations, with their own test functions
    std::vector<TestFunction> line_phis;
    {
      GaussPoly g0 = GaussPoly::unit(1, 1.0);
      line_phis.emplace_back(g0);
      GaussPoly g1 = GaussPoly::unit(1, 0.8);
      g1.center(0) = 0.4;
      g1.P = Poly::constant(1, 1.0) + Poly::variable(1, 0) * cxd(0.5);
      line_phis.emplace_back(g1);
      GaussPoly g2 = GaussPoly::unit(1, 1.3);
      g2.P = Poly::variable(1, 0) * Poly::variable(1, 0);
      line_phis.emplace_back(g2);
    }
    for (std::size_t ip = 0; ip < line_phis.size(); ++ip) {
      const TestFunction& phi = line_phis[ip];
      const auto fp = pair(make_query(DistFamily::f, beta, +1, 1, Lambda), phi);
      const auto fm = pair(make_query(DistFamily::f, beta, -1, 1, Lambda), phi);
      const auto tp = pair(make_query(DistFamily::t_pm, beta, +1, 1, Lambda), phi);
      const auto tm = pair(make_query(DistFamily::t_pm, beta, -1, 1, Lambda), phi);
      const double scale = std::max(
          {std::abs(fp.value), std::abs(fm.value), std::abs(tp.value), std::abs(tm.value)});
      const double budget = fp.error_estimate + fm.error_estimate +
                            2.0 * (tp.error_estimate + tm.error_estimate);
      record("line:sum", beta, static_cast<int>(ip), fp.value + fm.value,
             2.0 * tp.value + 2.0 * std::cos(beta * M_PI) * tm.value, scale, budget);
      record("line:diff", beta, static_cast<int>(ip), -kI * (fp.value - fm.value),
             2.0 * std::sin(beta * M_PI) * tm.value, scale, budget);
    }
  }
  return rep;
}

}  // namespace findex
