#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace findex {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cxd kI{0.0, 1.0};

// Failure modes named by the operation contracts.
enum class Errc {
  fails_to_converge,
  ambiguous_clustering,
  zero_not_isolated,
  eigenvalue_on_ray,
  lower_half_plane,
  frequency_overflow,
  no_closed_form_tail,
  fit_ill_conditioned,
  truncation_window_violated,
  solver_tolerance_not_met,
  noninteger_index,
  endpoint_zero_ambiguous,
  outside_product_region,
  support_violation,
  pole_at_beta,
  quadrature_not_converged,
  dimension_unsupported,
  config_invalid,
};

const char* to_string(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

/// Finite square complex matrix, optionally tagged with the Fourier mode
/// index of each basis vector.
struct OperatorMatrix {
  Matrix m;
  std::vector<int> mode_labels;  // empty when unset

  OperatorMatrix() = default;
  explicit OperatorMatrix(Matrix mat, std::vector<int> labels = {})
      : m(std::move(mat)), mode_labels(std::move(labels)) {
    validate();
  }

  Eigen::Index dim() const { return m.rows(); }
  void validate() const;
};

inline OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  return OperatorMatrix(a.m * b.m, a.mode_labels);
}

}  // namespace findex
