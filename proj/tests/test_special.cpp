#include <doctest.h>

#include <cmath>

#include "findex/quadrature.hpp"
#include "findex/special.hpp"

using namespace findex;

TEST_CASE("gamma and reciprocal gamma") {
  CHECK(std::abs(gamma_c(5.0) - cxd(24.0)) < 1e-12);
  CHECK(std::abs(gamma_c(0.5) - cxd(std::sqrt(M_PI))) < 1e-13);
  // Gamma(1+i) from reflection-checked reference
  const cxd g1i = gamma_c(cxd(1.0, 1.0));
  CHECK(std::abs(g1i - cxd(0.49801566811835607, -0.15494982830181069)) < 1e-12);
  // rgamma is entire with zeros at non-positive integers
  CHECK(std::abs(rgamma_c(-3.0)) < 1e-13);
  CHECK(std::abs(rgamma_c(0.0)) < 1e-13);
  CHECK(std::abs(rgamma_c(2.5) * gamma_c(2.5) - cxd(1.0)) < 1e-12);
}

TEST_CASE("digamma") {
  const double euler = 0.5772156649015329;
  CHECK(std::abs(digamma_c(1.0) + euler) < 1e-12);
  CHECK(std::abs(digamma_c(0.5) - cxd(-euler - 2.0 * std::log(2.0))) < 1e-12);
  // recurrence psi(z+1) = psi(z) + 1/z at a complex point
  const cxd z(0.3, 0.7);
  CHECK(std::abs(digamma_c(z + 1.0) - digamma_c(z) - 1.0 / z) < 1e-12);
}

TEST_CASE("hurwitz zeta continuation") {
  // zeta(0, q) = 1/2 - q
  CHECK(std::abs(hurwitz_zeta(0.0, 0.25) - cxd(0.25)) < 1e-12);
  CHECK(std::abs(hurwitz_zeta(0.0, cxd(0.3, 0.1)) - (cxd(0.5) - cxd(0.3, 0.1))) < 1e-12);
  // zeta(-1, q) = -(q^2 - q + 1/6)/2
  const double q = 0.7;
  CHECK(std::abs(hurwitz_zeta(-1.0, q) + 0.5 * (q * q - q + 1.0 / 6.0)) < 1e-12);
  // zeta(2, 1) = pi^2/6
  CHECK(std::abs(hurwitz_zeta(2.0, 1.0) - cxd(M_PI * M_PI / 6.0)) < 1e-12);
  // spectrum Z + a: eta(0) = zeta(0,a) - zeta(0,1-a) = 1 - 2a
  for (double a : {0.1, 0.25, 0.4, 0.6, 0.9}) {
    const cxd eta0 = hurwitz_zeta(0.0, a) - hurwitz_zeta(0.0, 1.0 - a);
    CHECK(std::abs(eta0 - cxd(1.0 - 2.0 * a)) < 1e-12);
  }
}

TEST_CASE("cauchy derivative of an entire function") {
  auto f = [](cxd z) { return std::exp(2.0 * z); };
  CHECK(std::abs(cauchy_derivative(f, cxd(0.3), 1) - 2.0 * std::exp(0.6)) < 1e-12);
  CHECK(std::abs(cauchy_derivative(f, cxd(0.3), 2) - 4.0 * std::exp(0.6)) < 1e-11);
}

TEST_CASE("gauss rules integrate their exact classes") {
  auto gl = gauss_legendre(12, 0.0, 2.0);
  double s = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 7);
  CHECK(std::abs(s - 32.0) < 1e-12);  // int_0^2 x^7 = 2^8/8

  auto gh = gauss_hermite(20);
  double m2 = 0.0;
  for (size_t i = 0; i < gh.nodes.size(); ++i) m2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
  CHECK(std::abs(m2 - std::sqrt(M_PI) / 2.0) < 1e-12);

  // int_0^1 s^a * s^2 ds = 1/(a+3)
  const double a = -0.5;
  auto gj = gauss_jacobi01(8, a);
  double sj = 0.0;
  for (size_t i = 0; i < gj.nodes.size(); ++i) sj += gj.weights[i] * gj.nodes[i] * gj.nodes[i];
  CHECK(std::abs(sj - 1.0 / (a + 3.0)) < 1e-12);
}

TEST_CASE("adaptive quadrature") {
  auto f = [](double x) { return cxd(std::exp(-x * x), std::sin(3.0 * x)); };
  const cxd v = integrate_adaptive(f, -6.5, 6.5);
  CHECK(std::abs(v.real() - std::sqrt(M_PI)) < 1e-10);
  CHECK(std::abs(v.imag()) < 1e-10);
}
