#pragma once

#include <map>

#include "findex/spectral.hpp"
#include "findex/types.hpp"

namespace findex {

/// Fourier-truncated operator -i d/dtheta + a + V(theta) on sections of a
/// rank-`rank` bundle over the circle of circumference 2*pi, modes -K..K.
struct CircleOperatorSpec {
  cxd flux = 0.0;                       // constant gauge shift a
  std::map<int, Matrix> potential;     // frequency -> rank x rank coefficient
  int rank = 1;
  int K = 8;

  void validate() const;
};

/// Matrix of -i d/dtheta + a + V(theta) in the basis e^{i k theta} (x) C^rank,
/// ordered k-major; mode_labels carry k.
OperatorMatrix build_circle_dirac(const CircleOperatorSpec& spec);

/// Rank-2 model [[-i d/dtheta, chi], [0, -i d/dtheta]] with chi the
/// projection onto the k = 0 mode; minimal non-self-adjoint Dirac-type
/// example with a 2x2 nilpotent block over the zero cluster.
OperatorMatrix build_jordan_model(int K);

OperatorMatrix laplace_from_dirac(const OperatorMatrix& D);

}  // namespace findex
