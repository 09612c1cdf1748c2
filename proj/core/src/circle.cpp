#include "findex/circle.hpp"

namespace findex {

void CircleOperatorSpec::validate() const {
  if (K < 1) fail(Errc::config_invalid, "truncation order K must be >= 1");
  if (rank < 1) fail(Errc::config_invalid, "bundle rank must be >= 1");
  for (const auto& [freq, coef] : potential) {
    if (std::abs(freq) > 2 * K)
      fail(Errc::frequency_overflow,
           "potential frequency " + std::to_string(freq) + " exceeds 2K; it would alias");
    if (coef.rows() != rank || coef.cols() != rank)
      fail(Errc::config_invalid, "potential coefficient must be rank x rank");
    if (!coef.allFinite()) fail(Errc::config_invalid, "potential coefficient not finite");
  }
}

OperatorMatrix build_circle_dirac(const CircleOperatorSpec& spec) {
  spec.validate();
  const int K = spec.K, r = spec.rank;
  const int modes = 2 * K + 1;
  const Eigen::Index d = static_cast<Eigen::Index>(modes) * r;
  Matrix D = Matrix::Zero(d, d);
  std::vector<int> labels(d);
  for (int k = -K; k <= K; ++k) {
    const Eigen::Index row = static_cast<Eigen::Index>(k + K) * r;
    for (int i = 0; i < r; ++i) {
      labels[row + i] = k;
      D(row + i, row + i) = static_cast<double>(k) + spec.flux;
    }
  }
  // V(theta) = sum_f V_f e^{i f theta} couples mode l to mode l + f
  for (const auto& [freq, coef] : spec.potential) {
    for (int l = -K; l <= K; ++l) {
      const int k = l + freq;
      if (k < -K || k > K) continue;
      const Eigen::Index row = static_cast<Eigen::Index>(k + K) * r;
      const Eigen::Index col = static_cast<Eigen::Index>(l + K) * r;
      D.block(row, col, r, r) += coef;
    }
  }
  return OperatorMatrix(std::move(D), std::move(labels));
}

OperatorMatrix build_jordan_model(int K) {
  if (K < 1) fail(Errc::config_invalid, "K must be >= 1");
  const int modes = 2 * K + 1;
  const Eigen::Index d = static_cast<Eigen::Index>(modes) * 2;
  Matrix D = Matrix::Zero(d, d);
  std::vector<int> labels(d);
  for (int k = -K; k <= K; ++k) {
    const Eigen::Index row = static_cast<Eigen::Index>(k + K) * 2;
    labels[row] = labels[row + 1] = k;
    D(row, row) = k;
    D(row + 1, row + 1) = k;
  }
  // k = 0 coupling between the two components
  const Eigen::Index z = static_cast<Eigen::Index>(K) * 2;
  D(z, z + 1) = 1.0;
  return OperatorMatrix(std::move(D), std::move(labels));
}

OperatorMatrix laplace_from_dirac(const OperatorMatrix& D) {
  D.validate();
  return OperatorMatrix(D.m * D.m, D.mode_labels);
}

}  // namespace findex
