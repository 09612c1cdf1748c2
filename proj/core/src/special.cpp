#include "findex/special.hpp"

#include <array>
#include <cmath>

namespace findex {

namespace {

// Lanczos g = 7, n = 9
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

cxd lgamma_positive(cxd z) {
  // valid for Re(z) > 0.5
  z -= 1.0;
  cxd x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cxd t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cxd lgamma_c(cxd z) {
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - lgamma_positive(1.0 - z);
  }
  return lgamma_positive(z);
}

cxd gamma_c(cxd z) {
  if (z.real() < 0.5) {
    const cxd s = std::sin(M_PI * z);
    if (s == cxd(0.0)) return cxd(std::numeric_limits<double>::infinity(), 0.0);
    return M_PI / (s * std::exp(lgamma_positive(1.0 - z)));
  }
  return std::exp(lgamma_positive(z));
}

cxd rgamma_c(cxd z) {
  if (z.real() < 0.5) {
    // 1/Gamma(z) = sin(pi z)/pi * Gamma(1-z); entire, vanishes at 0, -1, ...
    return std::sin(M_PI * z) / M_PI * std::exp(lgamma_positive(1.0 - z));
  }
  return std::exp(-lgamma_positive(z));
}

cxd digamma_c(cxd z) {
  if (z.real() < 0.5) {
    // digamma(z) = digamma(1-z) - pi cot(pi z)
    return digamma_c(1.0 - z) - M_PI / std::tan(M_PI * z);
  }
  cxd acc = 0.0;
  while (z.real() < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cxd res = std::log(z) - 0.5 / z;
  const cxd z2 = 1.0 / (z * z);
  cxd p = z2;
  for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
    res -= kBernoulli[j] / (2.0 * (j + 1.0)) * p;
    p *= z2;
  }
  return res + acc;
}

cxd hurwitz_zeta(cxd s, cxd q) {
  if (q.real() <= 0.0) fail(Errc::config_invalid, "hurwitz_zeta requires Re(q) > 0");
  if (std::abs(s - cxd(1.0)) < 1e-14) fail(Errc::config_invalid, "hurwitz_zeta pole at s = 1");
  const int N = 24 + static_cast<int>(std::abs(s));
  cxd sum = 0.0;
  for (int k = 0; k < N; ++k) sum += std::exp(-s * std::log(q + static_cast<double>(k)));
  const cxd a = q + static_cast<double>(N);
  const cxd la = std::log(a);
  sum += std::exp((1.0 - s) * la) / (s - 1.0);
  sum += 0.5 * std::exp(-s * la);
  // Euler-Maclaurin tail: sum_j B_2j/(2j)! * (s)_{2j-1} * a^{-s-2j+1}
  cxd poch = s;            // (s)_1
  double fact = 2.0;       // (2j)!
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    sum += kBernoulli[j - 1] / fact * poch * std::exp(-(s + (2.0 * j - 1.0)) * la);
    poch *= (s + (2.0 * j - 1.0)) * (s + (2.0 * j));
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

}  // namespace findex
