#pragma once

#include <string>
#include <vector>

#include "findex/testfunction.hpp"
#include "findex/types.hpp"

namespace findex {

/// C(beta, n) = 2^{-n-2 beta} pi^{(2-n)/2} / ((beta+(n-2)/2)! beta!);
/// entire in beta through the reciprocal Gamma.
cxd coeff_C(cxd beta, int n);
/// d/d beta C(beta, n)
cxd dcoeff_C(cxd beta, int n);
/// Ctilde(beta, n, Lambda) = (i/pi) C'(beta, n) + (Lambda - 1) C(beta, n)
cxd coeff_Ctilde(cxd beta, int n, double Lambda);
/// d/d beta Ctilde(beta, n, Lambda)
cxd dcoeff_Ctilde(cxd beta, int n, double Lambda);

enum class DistFamily { f, h, t_pm, F, G, R, R_tilde };

struct DistributionQuery {
  DistFamily family = DistFamily::F;
  cxd beta = 0.0;
  int sign = +1;  // the +/- of the family
  int n = 2;      // dimension
  double Lambda = 0.0;       // for G only
  std::vector<double> epsilon_ladder;  // empty: default 0.5 * 2^{-j}, j = 0..12
  int box_transfers = -1;    // -1: choose automatically
  int quad_points = 0;       // 0: dimension-dependent default

  void validate() const;
};

struct PairResult {
  cxd value = 0.0;
  double error_estimate = 0.0;
};

/// Pairing <family_beta^sign, phi>: wave operators are transferred onto phi
/// analytically, the i0 prescription is realized as an epsilon ladder with
/// generalized Richardson extrapolation, cone integrals use Gauss-Jacobi.
PairResult pair(const DistributionQuery& query, const TestFunction& phi);

struct IdentityCheck {
  std::string identity;
  cxd beta;
  int phi_index;
  cxd lhs, rhs;
  double scale;    // magnitude the deviation is measured against
  double rel_dev;  // |lhs - rhs| / scale
  bool pass;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  double tolerance = 1e-6;
  int failures = 0;
  bool pass() const { return failures == 0; }
};

/// Both sides of the structural identities of the F/G/Riesz families,
/// independently quadratured: multiplication by gamma, the real/imaginary
/// Riesz splittings, the box transfer (evaluated non-circularly), Lorentz
/// invariance, the integer-beta G sum, and the one-dimensional boundary
/// value relations.
IdentityReport identity_suite(const std::vector<cxd>& betas, int n, double Lambda,
                              const std::vector<TestFunction>& phis, double tolerance = 1e-6);

}  // namespace findex
