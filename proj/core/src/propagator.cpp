#include "findex/propagator.hpp"

#include <cmath>

namespace findex {

namespace {

ScalarFn exp_fn(cxd factor) {
  // e^{factor * z} with derivatives
  return [factor](cxd z, int k) {
    cxd c = 1.0;
    for (int j = 0; j < k; ++j) c *= factor;
    return c * std::exp(factor * z);
  };
}

constexpr double chi_ge(double t) { return t >= 0.0 ? 1.0 : 0.0; }
constexpr double chi_le(double t) { return t <= 0.0 ? 1.0 : 0.0; }

}  // namespace

DoubledDirac doubled_dirac(const OperatorMatrix& D) {
  D.validate();
  const Eigen::Index d = D.dim();
  Matrix full = Matrix::Zero(2 * d, 2 * d);
  full.topLeftCorner(d, d) = D.m;
  full.bottomRightCorner(d, d) = -D.m;
  Matrix ns = Matrix::Zero(2 * d, 2 * d);
  ns.topRightCorner(d, d) = kI * Matrix::Identity(d, d);
  ns.bottomLeftCorner(d, d) = kI * Matrix::Identity(d, d);
  std::vector<int> labels;
  if (!D.mode_labels.empty()) {
    labels = D.mode_labels;
    labels.insert(labels.end(), D.mode_labels.begin(), D.mode_labels.end());
  }
  return DoubledDirac{OperatorMatrix(std::move(full), std::move(labels)), std::move(ns), d};
}

KernelFamily KernelFamily::wave(const OperatorMatrix& delta, const RaySpec& ray,
                                double cluster_tol) {
  KernelFamily f;
  f.kind_ = KernelKind::feynman_wave;
  f.base_ = delta;
  f.ray_ = ray;
  f.cc_delta_ = std::make_shared<ClusterCalculus>(delta.m, cluster_tol);
  const int zc = f.cc_delta_->zero_cluster();
  const Eigen::Index d = delta.dim();
  f.p0_ = (zc < 0) ? Matrix(Matrix::Zero(d, d)) : f.cc_delta_->projector(zc);
  const ScalarFn zero_fn = [](cxd, int) { return cxd(0.0); };
  auto ray_power = [&](cxd s) {
    return f.cc_delta_->apply([&, s](int c) -> ScalarFn {
      if (c == zc) return zero_fn;
      return [s, th = ray.theta](cxd z, int k) {
        cxd coef = 1.0;
        for (int j = 0; j < k; ++j) coef *= (s - static_cast<double>(j));
        return coef * pow_ray(z, s - static_cast<double>(k), th);
      };
    });
  };
  f.inv_sqrt_ = ray_power(cxd(-0.5));
  f.sqrt_ = ray_power(cxd(0.5));
  f.cc_sqrt_ = std::make_shared<ClusterCalculus>(f.sqrt_, cluster_tol);
  f.a_nilpotent_ = delta.m * f.p0_;
  f.zero_nilpotency_ = (zc < 0) ? 0 : f.cc_delta_->nilpotency(zc, 1e-8 * std::max(1.0, delta.m.norm()));
  return f;
}

KernelFamily KernelFamily::dirac(const OperatorMatrix& D, const RaySpec& ray, double cluster_tol,
                                 KernelKind kind) {
  if (kind == KernelKind::feynman_wave)
    fail(Errc::config_invalid, "use KernelFamily::wave for the wave kernel");
  KernelFamily f;
  f.kind_ = kind;
  f.ray_ = ray;
  f.base_dim_ = D.dim();
  auto dd = doubled_dirac(D);
  f.base_ = dd.full;
  f.nslash_ = dd.nslash;
  f.cc_d_ = std::make_shared<ClusterCalculus>(D.m, cluster_tol);

  const auto fp = frequency_projectors(D, ray, cluster_tol);
  const Eigen::Index d = D.dim();
  auto embed = [d](const Matrix& a, const Matrix& b) {
    Matrix full = Matrix::Zero(2 * d, 2 * d);
    full.topLeftCorner(d, d) = a;
    full.bottomRightCorner(d, d) = b;
    return full;
  };
  // the doubled operator is diag(D, -D): its p_> is diag(p_>(D), p_<(D))
  f.pgt_d_ = embed(fp.p_gt.m, fp.p_lt.m);
  f.plt_d_ = embed(fp.p_lt.m, fp.p_gt.m);
  f.pge_d_ = embed(fp.p_ge().m, fp.p_le().m);
  f.ple_d_ = embed(fp.p_le().m, fp.p_ge().m);
  return f;
}

Eigen::Index KernelFamily::dim() const {
  return (kind_ == KernelKind::feynman_wave) ? base_.dim() : base_.dim();
}

const Matrix& KernelFamily::nslash() const {
  if (kind_ == KernelKind::feynman_wave)
    fail(Errc::config_invalid, "wave kernel has no Clifford normal");
  return nslash_;
}

Matrix KernelFamily::exp_base(double t, double sign) const {
  // e^{-i sign t D} blockwise on the doubled space
  const Eigen::Index d = base_dim_;
  Matrix full = Matrix::Zero(2 * d, 2 * d);
  full.topLeftCorner(d, d) = cc_d_->apply(exp_fn(-kI * sign * t));
  full.bottomRightCorner(d, d) = cc_d_->apply(exp_fn(kI * sign * t));
  return full;
}

Matrix KernelFamily::operator()(double t) const {
  if (kind_ == KernelKind::feynman_wave) {
    // (i/2) e^{-i |t| Delta_theta^{1/2}} Delta_theta^{-1/2}
    //   + chi_{[0,inf)}(t) A^{-1/2} sin(t A^{1/2}) p0
    Matrix k = cxd(0.0, 0.5) * (cc_sqrt_->apply(exp_fn(-kI * std::abs(t))) * inv_sqrt_);
    if (t >= 0.0 && zero_nilpotency_ > 0) {
      Matrix apow = p0_;
      double fact = 1.0;
      double sgn = 1.0;
      double tpow = t;
      for (int j = 0; j < zero_nilpotency_; ++j) {
        k += (sgn * tpow / fact) * apow;
        apow = a_nilpotent_ * apow;
        sgn = -sgn;
        tpow *= t * t;
        fact *= (2.0 * j + 2.0) * (2.0 * j + 3.0);
      }
    }
    return k;
  }

  switch (kind_) {
    case KernelKind::feynman_dirac:
      return kI * (chi_ge(t) * pge_d_ - chi_le(t) * plt_d_) * exp_base(t, 1.0) * nslash_;
    case KernelKind::retarded:
      return kI * chi_ge(t) * exp_base(t, 1.0) * nslash_;
    case KernelKind::advanced:
      return -kI * chi_le(t) * exp_base(t, 1.0) * nslash_;
    case KernelKind::regularized_diff:
      return cxd(0.0, 0.5) * (pge_d_ - plt_d_) * exp_base(t, 1.0) * nslash_;
    default:
      fail(Errc::config_invalid, "unknown kernel kind");
  }
}

Matrix KernelFamily::lag_zero_average() const {
  const Matrix k0 = (*this)(0.0);
  switch (kind_) {
    case KernelKind::feynman_dirac:
    case KernelKind::retarded:
    case KernelKind::advanced:
      return 0.5 * k0;
    default:
      return k0;
  }
}

void SpacetimeGrid::validate() const {
  if (nodes() < 8) fail(Errc::config_invalid, "grid needs at least 8 nodes");
  if (!(t_hi > t_lo)) fail(Errc::config_invalid, "grid needs t_hi > t_lo");
}

SpacetimeGrid apply_propagator(const KernelFamily& fam, const SpacetimeGrid& u) {
  u.validate();
  const int n = u.nodes();
  const Eigen::Index d = fam.dim();
  double umax = 0.0;
  for (const auto& v : u.values) {
    if (v.size() != d) fail(Errc::config_invalid, "section dimension mismatch");
    umax = std::max(umax, v.norm());
  }
  const int margin = static_cast<int>(std::ceil(0.1 * n));
  for (int i = 0; i < n; ++i) {
    if ((i < margin || i >= n - margin) && u.values[i].norm() > 1e-13 * std::max(1.0, umax))
      fail(Errc::support_violation, "section does not vanish on the outer 10% of nodes");
  }

  const double h = u.spacing();
  std::vector<Matrix> lag(2 * n - 1);
  for (int l = -(n - 1); l <= n - 1; ++l) lag[l + n - 1] = fam(l * h);
  lag[n - 1] = fam.lag_zero_average();  // split-at-the-kink trapezoid

  SpacetimeGrid out;
  out.t_lo = u.t_lo;
  out.t_hi = u.t_hi;
  out.values.assign(n, Vector::Zero(d));
  for (int i = 0; i < n; ++i) {
    Vector acc = Vector::Zero(d);
    for (int j = 0; j < n; ++j) {
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      acc += w * (lag[i - j + n - 1] * u.values[j]);
    }
    out.values[i] = h * acc;
  }
  return out;
}

cxd regularized_diagonal(const OperatorMatrix& D, const RaySpec& ray, double t,
                         double cluster_tol) {
  const auto fp = frequency_projectors(D, ray, cluster_tol);
  ClusterCalculus cc(D.m, cluster_tol);
  const Matrix W = fp.p_ge().m - fp.p_lt.m;
  const Matrix E = cc.apply(exp_fn(-kI * t));
  return cxd(0.0, -0.5) * (W * E).trace();
}

cxd psi_of_s(const OperatorMatrix& D, const RaySpec& ray, double s, double cluster_tol) {
  const auto fp = frequency_projectors(D, ray, cluster_tol);
  ClusterCalculus cc(D.m, cluster_tol);
  const Matrix W = fp.p_ge().m - fp.p_lt.m;
  auto polys = std::make_shared<std::vector<std::vector<cxd>>>();
  polys->push_back({1.0});
  const ScalarFn f = [s, polys](cxd z, int k) {
    while (static_cast<int>(polys->size()) <= k) {
      const auto& p = polys->back();
      std::vector<cxd> q(p.size() + 1, 0.0);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) q[i] = p[i + 1] * static_cast<double>(i + 1);
      for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] -= 2.0 * s * p[i];
      polys->push_back(std::move(q));
    }
    cxd val = 0.0;
    const auto& p = (*polys)[k];
    for (std::size_t i = p.size(); i-- > 0;) val = val * z + p[i];
    return val * std::exp(-s * z * z);
  };
  const Matrix E = cc.apply(f);
  return cxd(0.0, -0.5) * (W * E).trace();
}

}  // namespace findex
