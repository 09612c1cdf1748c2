#include <doctest.h>

#include <cmath>

#include "findex/index.hpp"
#include "findex/propagator.hpp"

using namespace findex;

namespace {

CylinderModel flux_path(double a0, double a1, int K, double T = 1.0) {
  CylinderModel m;
  m.t_minus = 0.0;
  m.t_plus = T;
  m.flux_start = a0;
  m.flux_end = a1;
  m.product_margin = 0.1 * T;
  m.base.K = K;
  return m;
}

}  // namespace

TEST_CASE("smooth step is an exact plateau outside [0,1]") {
  CHECK(smooth_step(-0.2) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(1.4) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(smooth_step_rate(0.0) == 0.0);
  CHECK(smooth_step_rate(1.0) == 0.0);
  CHECK(smooth_step_rate(0.5) > 0.0);
  // rate matches a centered difference
  const double h = 1e-6;
  CHECK(std::abs(smooth_step_rate(0.3) - (smooth_step(0.3 + h) - smooth_step(0.3 - h)) / (2 * h)) <
        1e-8);
}

TEST_CASE("model path is constant on the product margins") {
  const auto m = flux_path(0.3, 1.3, 4);
  CHECK(m.flux(0.0) == cxd(0.3));
  CHECK(m.flux(0.05) == cxd(0.3));
  CHECK(m.flux(0.1) == cxd(0.3));
  CHECK(m.flux(0.95) == cxd(1.3));
  CHECK(m.flux(1.0) == cxd(1.3));
  CHECK(m.flux_rate(0.05) == cxd(0.0));
  CHECK(std::abs(m.flux(0.5) - cxd(0.8)) < 1e-12);
}

TEST_CASE("constant-flux evolution is the exact diagonal exponential") {
  auto m = flux_path(0.3, 0.3, 5, 2.0);
  const auto ev = evolve(m);
  CHECK(ev.steps == 1);
  for (int k = -5; k <= 5; ++k) {
    const cxd expect = std::exp(-kI * 2.0 * (static_cast<double>(k) + 0.3));
    CHECK(std::abs(ev.U(k + 5, k + 5) - expect) < 1e-13);
  }
}

TEST_CASE("real flux path evolves unitarily") {
  const auto m = flux_path(0.3, 1.3, 16);
  const auto ev = evolve(m);
  const Matrix res = ev.U.adjoint() * ev.U - Matrix::Identity(ev.U.rows(), ev.U.cols());
  CHECK(res.norm() < 1e-10);
  CHECK(ev.condition < 1.0 + 1e-9);
}

TEST_CASE("empty evolution interval gives the identity") {
  const auto m = flux_path(0.3, 1.3, 4);
  const auto ev = evolve_between(m, 0.5, 0.5);
  CHECK((ev.U - Matrix::Identity(9, 9)).norm() == 0.0);
}

TEST_CASE("Fredholm pair index on the calibration paths") {
  RaySpec ray;
  {
    const auto r = fredholm_pair_index(flux_path(0.3, 0.3, 12), ray);
    CHECK(r.rounded_index == 0);
    CHECK(r.residual < 1e-10);
  }
  {
    const auto r = fredholm_pair_index(flux_path(0.3, 1.3, 12), ray);
    CHECK(r.rounded_index == 1);
    CHECK(r.residual < 1e-9);
    CHECK(r.outer_mode_trace < 1e-9);
  }
  {
    const auto r = fredholm_pair_index(flux_path(0.25, -1.75, 12), ray);
    CHECK(r.rounded_index == -2);
    CHECK(r.residual < 1e-9);
  }
}

TEST_CASE("spectral flow enumeration oracle") {
  CHECK(spectral_flow(flux_path(0.3, 1.3, 8)) == 1);
  CHECK(spectral_flow(flux_path(0.3, 0.9, 8)) == 0);
  CHECK(spectral_flow(flux_path(0.5, 3.5, 8)) == 3);
  CHECK(spectral_flow(flux_path(0.25, -1.75, 8)) == -2);
  // both endpoints integral: the >= convention fixes the count on both ends
  CHECK(spectral_flow(flux_path(0.0, 1.0, 8)) == 1);
  // exactly one integral endpoint cannot be resolved
  CHECK_THROWS_AS((void)spectral_flow(flux_path(0.0, 0.5, 8)), Error);
}

TEST_CASE("index equals spectral flow and is homotopy invariant") {
  RaySpec ray;
  for (auto [a0, a1] : std::vector<std::pair<double, double>>{{0.3, 1.3}, {0.25, -1.75}}) {
    const auto fast = fredholm_pair_index(flux_path(a0, a1, 10, 1.0), ray);
    const auto slow = fredholm_pair_index(flux_path(a0, a1, 10, 10.0), ray);
    CHECK(fast.rounded_index == spectral_flow(flux_path(a0, a1, 10)));
    CHECK(slow.rounded_index == fast.rounded_index);
    CHECK(std::abs(slow.trace_index - fast.trace_index) < 1e-8);
  }
}

TEST_CASE("index stacks over composable paths") {
  RaySpec ray;
  const int iA = fredholm_pair_index(flux_path(0.3, 0.8, 10), ray).rounded_index;
  const int iB = fredholm_pair_index(flux_path(0.8, 1.3, 10), ray).rounded_index;
  const int iC = fredholm_pair_index(flux_path(0.3, 1.3, 10), ray).rounded_index;
  CHECK(iA + iB == iC);
}

TEST_CASE("Xi right-hand side of the index formula") {
  RaySpec ray;
  {
    const auto x = xi_index_rhs(flux_path(0.3, 1.3, 40), ray);
    CHECK(std::abs(x.xi_plus - x.xi_minus) < 1e-11);  // same spectrum set
    CHECK(x.curvature_integral == doctest::Approx(1.0));
    CHECK(std::abs(x.rhs - cxd(1.0)) < 1e-10);
  }
  {
    const auto x = xi_index_rhs(flux_path(0.3, 0.6, 40), ray);
    CHECK(std::abs(x.xi_plus - x.xi_minus - cxd(-0.3)) < 1e-11);
    CHECK(std::abs(x.rhs) < 1e-10);
  }
  {
    const auto x = xi_index_rhs(flux_path(0.7, 0.7, 40), ray);
    CHECK(std::abs(x.rhs) < 1e-12);
  }
}

TEST_CASE("integrated Dirac current matches the index on both boundaries") {
  RaySpec ray;
  {
    const auto m = flux_path(0.4, 0.4, 8);
    for (double t : {0.0, 0.37, 1.0}) CHECK(std::abs(dirac_current(m, ray, t)) < 1e-10);
  }
  {
    const auto m = flux_path(0.3, 1.3, 10);
    const auto r = fredholm_pair_index(m, ray);
    const cxd jp = dirac_current(m, ray, m.t_plus);
    const cxd jm = dirac_current(m, ray, m.t_minus);
    CHECK(std::abs(jp - r.trace_index) < 1e-6);
    CHECK(std::abs(jm - jp) < 1e-6);  // hypersurface independence
    CHECK_THROWS_AS((void)dirac_current(m, ray, 0.5), Error);
  }
}

TEST_CASE("duality of the evolution with its formal dual") {
  CHECK(duality_check(flux_path(0.3, 1.3, 10)) < 1e-9);
  {
    CylinderModel m = flux_path(0.3, 1.3, 8);
    m.flux_start = cxd(0.3, 0.2);
    m.flux_end = cxd(1.3, -0.4);
    CHECK(duality_check(m) < 1e-8);
  }
  {
    // with a potential, and non-self-adjoint at that
    CylinderModel m = flux_path(0.25, 1.25, 8);
    m.base.potential[1] = Matrix::Constant(1, 1, cxd(0.3, 0.1));
    m.base.potential[-1] = Matrix::Constant(1, 1, 0.2);
    CHECK(duality_check(m) < 1e-8);
  }
}

TEST_CASE("full experiment report is internally consistent") {
  RaySpec ray;
  const auto r = run_index_experiment(flux_path(0.3, 1.3, 12), ray);
  CHECK(r.rounded_index == 1);
  REQUIRE(r.spectral_flow.has_value());
  CHECK(*r.spectral_flow == r.rounded_index);
  CHECK(std::abs(r.rhs - cxd(static_cast<double>(r.rounded_index))) < 2e-3);
  CHECK(r.duality_residual < 1e-8);
  CHECK(std::abs(r.current_plus - r.trace_index) < 1e-6);
}
