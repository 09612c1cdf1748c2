#include <doctest.h>

#include <cmath>

#include "findex/circle.hpp"
#include "findex/eta.hpp"

using namespace findex;

namespace {

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / (n - 1.0));
  return g;
}

OperatorMatrix flux_model(cxd a, int K) {
  CircleOperatorSpec spec;
  spec.flux = a;
  spec.K = K;
  return build_circle_dirac(spec);
}

}  // namespace

TEST_CASE("zeta route on closed-form fluxes") {
  RaySpec ray;
  {
    const auto r = eta_zeta(flux_model(0.25, 60), ray);
    CHECK(std::abs(r.eta - cxd(0.5)) < 1e-12);
    CHECK(r.h == 0);
    CHECK(std::abs(r.xi - cxd(0.25)) < 1e-12);
  }
  {
    const auto r = eta_zeta(flux_model(0.0, 60), ray);
    CHECK(std::abs(r.eta) < 1e-12);
    CHECK(r.h == 1);
    CHECK(std::abs(r.xi - cxd(0.5)) < 1e-12);
  }
  {
    const auto r = eta_zeta(flux_model(0.5, 60), ray);
    CHECK(std::abs(r.eta) < 1e-12);
    CHECK(r.h == 0);
    CHECK(std::abs(r.xi) < 1e-12);
  }
  // lattice closed form agrees with the zeta continuation route
  for (double a : {0.1, 0.25, 0.4, 0.6, 0.9, 1.3, -0.7}) {
    const auto r = eta_zeta(flux_model(a, 60), ray);
    const auto cf = eta_lattice_closed_form(a);
    CHECK(std::abs(r.eta - cf.eta) < 1e-11);
    CHECK(r.h == cf.h);
  }
}

TEST_CASE("zeta route rejects potentials") {
  CircleOperatorSpec spec;
  spec.K = 8;
  spec.potential[1] = Matrix::Constant(1, 1, 0.5);
  spec.potential[-1] = Matrix::Constant(1, 1, 0.5);
  RaySpec ray;
  CHECK_THROWS_AS((void)eta_zeta(build_circle_dirac(spec), ray), Error);
}

TEST_CASE("heat route matches the zeta route on fluxes") {
  RaySpec ray;
  const auto grid = geometric_grid(0.02, 0.2, 12);
  for (double a : {0.1, 0.25, 0.4, 0.6, 0.9}) {
    const auto rz = eta_zeta(flux_model(a, 100), ray);
    const auto rh = eta_heat(flux_model(a, 100), ray, grid);
    CHECK(std::abs(rh.eta - rz.eta) < 1e-3);
    CHECK(rh.h == rz.h);
    CHECK(std::abs(rh.eta - rz.eta) <= rh.error_estimate + rz.error_estimate + 1e-3);
  }
}

TEST_CASE("heat route is exactly zero for a symmetric spectrum") {
  RaySpec ray;
  const auto grid = geometric_grid(0.02, 0.2, 10);
  const auto r = eta_heat(flux_model(0.5, 80), ray, grid);
  CHECK(std::abs(r.eta) < 1e-6);
  CHECK(std::abs(r.eta) <= r.error_estimate);  // Hermitian symmetric spectrum
  CHECK(std::abs(r.fit->log_coef) < 1e-6);
  CHECK(r.h == 0);
}

TEST_CASE("smeared route returns Xi directly") {
  RaySpec ray;
  const auto grid = geometric_grid(0.02, 0.2, 12);
  {
    const auto r = eta_smeared(flux_model(0.25, 100), ray, grid);
    CHECK(std::abs(r.xi - cxd(0.25)) < 1e-3);
  }
  {
    const auto r = eta_smeared(flux_model(0.0, 80), ray, grid);
    CHECK(std::abs(r.xi - cxd(0.5)) < 1e-3);
    CHECK(r.h == 1);
  }
  {
    const auto r = eta_smeared(flux_model(0.5, 80), ray, grid);
    CHECK(std::abs(r.xi) < 1e-3);
  }
}

TEST_CASE("window violation and grid validation") {
  RaySpec ray;
  CHECK_THROWS_AS((void)eta_heat(flux_model(0.25, 40), ray, geometric_grid(1e-5, 0.2, 12)),
                  Error);
  CHECK_THROWS_AS((void)eta_heat(flux_model(0.25, 40), ray, geometric_grid(0.02, 0.2, 4)),
                  Error);
}

TEST_CASE("periodicity and reflection of the lattice eta") {
  RaySpec ray;
  const auto r1 = eta_zeta(flux_model(0.3, 80), ray);
  const auto r2 = eta_zeta(flux_model(1.3, 80), ray);
  CHECK(std::abs(r1.eta - r2.eta) < 1e-9);
  CHECK(std::abs(r1.xi - r2.xi) < 1e-9);

  const auto rm = eta_zeta(flux_model(-0.3, 80), ray);
  CHECK(std::abs(rm.eta + r1.eta) < 1e-9);
  CHECK(rm.h == r1.h);
}

TEST_CASE("Jordan model counts the algebraic kernel and the routes agree") {
  RaySpec ray;
  const auto D = build_jordan_model(30);
  const auto grid = geometric_grid(0.03, 0.3, 12);
  const auto rh = eta_heat(D, ray, grid);
  CHECK(rh.h == 2);  // algebraic, not geometric, kernel dimension
  CHECK(std::abs(rh.eta) < 1e-6);

  const auto rs = eta_smeared(D, ray, grid);
  CHECK(rs.h == 2);
  CHECK(std::abs(rs.xi - cxd(1.0)) < 1e-6);
  CHECK(std::abs(rh.eta - rs.eta) < 1e-6);
}

TEST_CASE("complex flux keeps the closed form eta = 1 - 2a") {
  RaySpec ray;
  const cxd a(0.3, 0.2);
  const auto r = eta_zeta(flux_model(a, 60), ray);
  CHECK(std::abs(r.eta - (cxd(1.0) - 2.0 * a)) < 1e-10);
}
