#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "findex/circle.hpp"
#include "findex/spectral.hpp"

using namespace findex;

namespace {

Matrix diag3(cxd a, cxd b, cxd c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

// contour-integral oracle for the Riesz projector: trapezoidal rule for
// (1/2 pi i) oint (M - lambda)^{-1} dlambda on a circle about `center`.
Matrix contour_projector(const Matrix& M, cxd center, double radius, int nodes = 64) {
  const Eigen::Index d = M.rows();
  Matrix acc = Matrix::Zero(d, d);
  for (int k = 0; k < nodes; ++k) {
    const double th = 2.0 * M_PI * k / nodes;
    const cxd lam = center + radius * std::polar(1.0, th);
    const Matrix res = (M - lam * Matrix::Identity(d, d)).partialPivLu().solve(
        Matrix(-Matrix::Identity(d, d)));
    acc += res * (radius * std::polar(1.0, th));
  }
  return acc / static_cast<double>(nodes);
}

// random matrix with entries in the unit disc whose eigenvalues are
// pairwise separated by at least `sep`, away from the ray arg = pi
std::optional<Matrix> separated_random(std::mt19937_64& rng, int dim, double sep) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) M(i, j) = cxd(u(rng), u(rng)) / std::sqrt(2.0);
  Eigen::ComplexEigenSolver<Matrix> es(M, false);
  const auto& ev = es.eigenvalues();
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j)
      if (std::abs(ev(i) - ev(j)) < sep) return std::nullopt;
    const cxd l2 = ev(i) * ev(i);
    if (l2.real() < 0.0 && std::abs(l2.imag()) < sep) return std::nullopt;  // near the cut
    if (std::abs(ev(i)) < sep) return std::nullopt;
  }
  return M;
}

}  // namespace

TEST_CASE("schur_clusters on diagonal and Jordan examples") {
  auto dec = schur_clusters(OperatorMatrix(diag3(1.0, 2.0, 3.0)), 1e-8);
  REQUIRE(dec.clusters.size() == 3);
  for (const auto& c : dec.clusters) {
    CHECK(c.multiplicity == 1);
    CHECK(c.nilpotency == 1);
  }

  Matrix J = Matrix::Zero(2, 2);
  J(0, 1) = 1.0;
  auto decj = schur_clusters(OperatorMatrix(J), 1e-8);
  REQUIRE(decj.clusters.size() == 1);
  CHECK(decj.clusters[0].multiplicity == 2);
  CHECK(decj.clusters[0].nilpotency == 2);
  CHECK(std::abs(decj.clusters[0].center) < 1e-12);
}

TEST_CASE("schur_clusters recovers invariant subspaces through a similarity") {
  // S * blockdiag(JordanBlock2(0), 2) * S^{-1} with fixed well-conditioned S
  Matrix core = Matrix::Zero(3, 3);
  core(0, 1) = 1.0;  // 2x2 Jordan block at 0
  core(2, 2) = 2.0;
  Matrix S(3, 3);
  S << cxd(1.0, 0.2), cxd(0.3, -0.1), cxd(-0.2, 0.4),
       cxd(0.1, 0.0), cxd(1.1, 0.3), cxd(0.2, -0.3),
       cxd(-0.3, 0.1), cxd(0.2, 0.2), cxd(0.9, 0.1);
  Matrix M = S * core * S.partialPivLu().solve(Matrix(Matrix::Identity(3, 3)));

  // a 2x2 Jordan block perturbs its eigenvalues at the sqrt(machine-eps)
  // scale, so the cluster tolerance must sit above that
  auto dec = schur_clusters(OperatorMatrix(M), 1e-6);
  REQUIRE(dec.clusters.size() == 2);
  const auto& zero = dec.clusters[0];
  const auto& two = dec.clusters[1];
  CHECK(std::abs(zero.center) < 1e-10);
  CHECK(zero.multiplicity == 2);
  CHECK(zero.nilpotency == 2);
  CHECK(std::abs(two.center - cxd(2.0)) < 1e-10);
  CHECK(two.multiplicity == 1);

  // recovered invariant subspace must coincide with span(S.col(0), S.col(1))
  Eigen::JacobiSVD<Matrix> svd(S.leftCols(2), Eigen::ComputeThinU);
  const Matrix U = svd.matrixU();
  const Matrix res = zero.basis - U * (U.adjoint() * zero.basis);
  CHECK(res.norm() < 1e-10);
}

TEST_CASE("generalized kernel projector against the contour oracle") {
  CHECK((generalized_kernel_projector(OperatorMatrix(diag3(0.0, 4.0, 4.0)), 1e-8).m -
         diag3(1.0, 0.0, 0.0))
            .norm() < 1e-12);

  Matrix J = Matrix::Zero(2, 2);
  J(0, 1) = 1.0;
  CHECK((generalized_kernel_projector(OperatorMatrix(J), 1e-8).m - Matrix::Identity(2, 2))
            .norm() < 1e-12);

  Matrix S(3, 3);
  S << 1.0, 0.25, -0.5, 0.0, 1.0, 0.75, -0.25, 0.5, 1.0;
  Matrix M = S * diag3(0.0, 3.0, 5.0) * S.inverse();
  const Matrix p0 = generalized_kernel_projector(OperatorMatrix(M), 1e-8).m;
  CHECK((p0 - S * diag3(1.0, 0.0, 0.0) * S.inverse()).norm() < 1e-10);
  CHECK((p0 - contour_projector(M, 0.0, 1.0)).norm() < 1e-10);

  // p0 = 0 when 0 is in the resolvent set
  CHECK(generalized_kernel_projector(OperatorMatrix(diag3(1.0, 2.0, 3.0)), 1e-8).m.norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("complex powers") {
  RaySpec ray;
  CHECK(std::abs(complex_power(OperatorMatrix(Matrix::Constant(1, 1, 4.0)), 0.5, ray, 1e-8)
                     .m(0, 0) -
                 cxd(2.0)) < 1e-13);

  Matrix m2 = Matrix::Zero(2, 2);
  m2(1, 1) = 9.0;
  const Matrix r = complex_power(OperatorMatrix(m2), -0.5, ray, 1e-8).m;
  CHECK(std::abs(r(0, 0)) < 1e-13);  // definition kills the kernel factor
  CHECK(std::abs(r(1, 1) - cxd(1.0 / 3.0)) < 1e-13);

  // principal square root of 2i has cut along the negative reals
  const cxd v =
      complex_power(OperatorMatrix(Matrix::Constant(1, 1, cxd(0.0, 2.0))), 0.5, ray, 1e-8).m(0, 0);
  CHECK(std::abs(v - cxd(1.0, 1.0)) < 1e-13);
}

TEST_CASE("complex power laws on a non-normal matrix") {
  RaySpec ray;
  Matrix M(3, 3);
  M << cxd(2.0, 0.5), cxd(1.0, 0.0), cxd(0.0, 0.3),
       0.0,           cxd(-1.0, 2.0), cxd(0.5, 0.0),
       0.0,           0.0,            cxd(3.0, -1.0);
  OperatorMatrix Mo(M);
  const Matrix one = Matrix::Identity(3, 3);
  const Matrix p0 = generalized_kernel_projector(Mo, 1e-8).m;

  const Matrix h = complex_power(Mo, 0.5, ray, 1e-8).m;
  const Matrix inv_h = complex_power(Mo, -0.5, ray, 1e-8).m;
  const Matrix zero_p = complex_power(Mo, 0.0, ray, 1e-8).m;
  const Matrix one_p = complex_power(Mo, 1.0, ray, 1e-8).m;

  CHECK((zero_p - (one - p0)).norm() < 1e-11);
  CHECK((one_p - M * (one - p0)).norm() < 1e-11);
  CHECK((h * h - M * (one - p0)).norm() < 1e-10);
  CHECK((h * inv_h - (one - p0)).norm() < 1e-11);
  CHECK((h * M - M * h).norm() < 1e-10);
  CHECK((h * p0).norm() < 1e-11);
}

TEST_CASE("eigenvalue on the ray is an error") {
  RaySpec ray;  // cut along the negative reals
  CHECK_THROWS_AS((void)complex_power(OperatorMatrix(Matrix::Constant(1, 1, cxd(-4.0, 0.0))), 0.5,
                                      ray, 1e-8),
                  Error);
}

TEST_CASE("frequency projectors on closed-form spectra") {
  RaySpec ray;
  {
    const auto fp = frequency_projectors(OperatorMatrix(diag3(3.0, -2.0, 0.0)), ray, 1e-8);
    CHECK((fp.p_gt.m - diag3(1.0, 0.0, 0.0)).norm() < 1e-12);
    CHECK((fp.p_lt.m - diag3(0.0, 1.0, 0.0)).norm() < 1e-12);
    CHECK((fp.p0.m - diag3(0.0, 0.0, 1.0)).norm() < 1e-12);
  }
  {
    // sqrt((1+i)^2) = 1+i on the principal branch, so p_> = 1
    const auto fp =
        frequency_projectors(OperatorMatrix(Matrix::Constant(1, 1, cxd(1.0, 1.0))), ray, 1e-8);
    CHECK(std::abs(fp.p_gt.m(0, 0) - cxd(1.0)) < 1e-13);
    CHECK(std::abs(fp.p_lt.m(0, 0)) < 1e-13);
  }
  {
    // D = diag(k + 1/4), k = -2..2: p_> selects k >= 0
    CircleOperatorSpec spec;
    spec.flux = 0.25;
    spec.K = 2;
    const auto D = build_circle_dirac(spec);
    const auto fp = frequency_projectors(D, ray, 1e-8);
    for (int i = 0; i < 5; ++i) {
      const int k = D.mode_labels[i];
      CHECK(std::abs(fp.p_gt.m(i, i) - cxd(k >= 0 ? 1.0 : 0.0)) < 1e-12);
      CHECK(std::abs(fp.p_lt.m(i, i) - cxd(k <= -1 ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("semigroup examples and group law") {
  std::string warn;
  CHECK(std::abs(semigroup(OperatorMatrix(Matrix::Constant(1, 1, 2.0)), M_PI / 2).m(0, 0) -
                 cxd(-1.0)) < 1e-12);
  CHECK(std::abs(semigroup(OperatorMatrix(Matrix::Constant(1, 1, 2.0)), cxd(0.0, 1.0)).m(0, 0) -
                 cxd(std::exp(-2.0))) < 1e-14);
  CHECK((semigroup(OperatorMatrix(Matrix::Zero(2, 2)), 0.7).m - Matrix::Identity(2, 2)).norm() <
        1e-14);
  CHECK(warn.empty());

  Matrix A(2, 2);
  A << cxd(1.0, 0.2), cxd(0.4, -0.3), 0.0, cxd(-0.5, 0.1);
  OperatorMatrix Ao(A);
  for (double t : {0.3, 2.0}) {
    for (double s : {-1.0, 5.0}) {
      const Matrix lhs = semigroup(Ao, t).m * semigroup(Ao, s).m;
      const Matrix rhs = semigroup(Ao, t + s).m;
      CHECK((lhs - rhs).norm() < 1e-9 * std::max(1.0, rhs.norm()));
    }
  }

  // the lower half-plane is allowed in finite dimension but flagged
  std::string w2;
  (void)semigroup(Ao, cxd(0.0, -0.5), &w2);
  CHECK(!w2.empty());
}

TEST_CASE("projector algebra on random separated matrices") {
  std::mt19937_64 rng(20240811);
  RaySpec ray;
  int done = 0;
  std::uniform_int_distribution<int> dims(2, 12);
  while (done < 200) {
    const int dim = dims(rng);
    auto M = separated_random(rng, dim, 1e-3);
    if (!M) continue;
    ++done;
    OperatorMatrix Mo(*M);
    const Matrix one = Matrix::Identity(dim, dim);

    const Matrix p0m = generalized_kernel_projector(Mo, 1e-8).m;
    CHECK((p0m * p0m - p0m).norm() < 1e-10);
    CHECK((Mo.m * p0m - p0m * Mo.m).norm() < 1e-10);

    const auto fp = frequency_projectors(Mo, ray, 1e-8);
    const Matrix pg = fp.p_gt.m, pl = fp.p_lt.m, p0 = fp.p0.m;
    CHECK((pg + pl + p0 - one).norm() < 1e-10);
    CHECK((pg * pg - pg).norm() < 1e-10);
    CHECK((pl * pl - pl).norm() < 1e-10);
    CHECK((pg * pl).norm() < 1e-10);
    CHECK((pg * p0).norm() < 1e-10);
    CHECK((pl * p0).norm() < 1e-10);
    CHECK((pg * Mo.m - Mo.m * pg).norm() < 1e-10);

    // (p_> - p_<) D = Delta_theta^{1/2}
    const Matrix delta_sqrt =
        complex_power(laplace_from_dirac(Mo), 0.5, ray, 1e-8).m;
    CHECK(((pg - pl) * Mo.m - delta_sqrt).norm() < 1e-10);
  }
}

TEST_CASE("empirical strip bound for the square roots of circle models") {
  RaySpec ray;
  std::vector<OperatorMatrix> models;
  {
    CircleOperatorSpec spec;
    spec.flux = cxd(0.3, 0.4);
    spec.K = 10;
    models.push_back(build_circle_dirac(spec));
  }
  {
    CircleOperatorSpec spec;
    spec.flux = 0.25;
    spec.K = 10;
    spec.potential[1] = Matrix::Constant(1, 1, cxd(0.4, 0.2));
    spec.potential[-1] = Matrix::Constant(1, 1, 0.3);
    models.push_back(build_circle_dirac(spec));
  }
  models.push_back(build_jordan_model(6));
  for (const auto& D : models) {
    const auto sqrt_delta = complex_power(laplace_from_dirac(D), 0.5, ray, 1e-8);
    const double C = strip_bound(sqrt_delta, 1e-8);
    CHECK(std::isfinite(C));
    CHECK(C < 2.0);  // half-plane-and-strip containment with a small constant
    for (const cxd mu : ClusterCalculus(sqrt_delta.m, 1e-8).eigenvalues()) {
      CHECK(mu.real() >= -C - 1e-12);
      CHECK(std::abs(mu.imag()) <= C + 1e-12);
    }
  }
}

TEST_CASE("ambiguous clustering is reported") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.0;
  m(1, 1) = 1.5e-6;
  CHECK_THROWS_AS((void)schur_clusters(OperatorMatrix(m), 1e-6), Error);
}
