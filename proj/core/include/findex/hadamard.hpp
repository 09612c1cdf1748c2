#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "findex/evolution.hpp"
#include "findex/types.hpp"

namespace findex {

/// multi-index for coordinate derivatives in up to 3 variables
using Multi = std::array<int, 3>;

inline int multi_order(const Multi& a) { return a[0] + a[1] + a[2]; }

/// Matrix-valued field on flat R^n together with all coordinate derivatives
/// up to the order the transport recursion requests.
using MatrixFieldJet =
    std::function<Matrix(const Eigen::VectorXd& x, const Multi& alpha)>;

MatrixFieldJet constant_field(const Matrix& B);
MatrixFieldJet zero_field(int rank);
/// B(x) = diag over the given coordinate, e.g. B(x) = c * x_i * Id
MatrixFieldJet coordinate_field(int rank, int coordinate, cxd scale);
/// B(x) = f(x_0) * Id with f supplied together with its t-derivatives
MatrixFieldJet profile_field(int rank, std::function<cxd(double, int)> f);

/// Normally hyperbolic operator P = Box^nabla + B on flat R^n (metric
/// -dt^2 + dx^2), nabla = d + i A with the U(1) gauge field A = alpha(t)
/// dtheta (coordinate 1).  alpha(t, k) returns the k-th t-derivative;
/// a null alpha means the untwisted connection.
struct FlatOperatorSpec {
  int n = 2;
  int rank = 1;
  MatrixFieldJet B;
  std::function<cxd(double, int)> alpha;  // may be null

  void validate() const;
};

/// V_0 .. V_kmax at (x, y), solved by the radial form of the transport
/// equations with nested Gauss-Legendre quadrature along the segment.
std::vector<Matrix> solve_transport(const FlatOperatorSpec& spec, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y, int k_max);

struct HadamardDiagonal {
  Eigen::VectorXd x;
  std::vector<Matrix> values;  // V_0(x,x) .. V_kmax(x,x)
};

/// Diagonal coefficients by the analytic sigma -> 0 limit,
/// V_k(x,x) = -(P_(1) V_{k-1})(x,x); no 0/0 quadrature involved.
HadamardDiagonal diagonal_coefficients(const FlatOperatorSpec& spec, const Eigen::VectorXd& x,
                                       int k_max);

/// Largest relative residual of the transport equation along the segment
/// from y to x, sampled at `samples` interior points, for k = 1..k_max.
double transport_residual(const FlatOperatorSpec& spec, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y, int k_max, int samples = 10);

/// The two chiral square specs of the twisted cylinder Dirac operator:
/// D_R D_L = Box^nabla + B_L and D_L D_R = Box^nabla + B_R with
/// B_{L/R} = +-i a'(t) for the gauge path a(t).
FlatOperatorSpec cylinder_left_square(const CylinderModel& model);
FlatOperatorSpec cylinder_right_square(const CylinderModel& model);

/// Index density at x = (t, theta): the phase convention is fixed once by
/// the spectral-flow calibration together with kCurvatureSign.
double index_density(const CylinderModel& model, const Eigen::Vector2d& x);

/// Integral of the index density over the cylinder.
double index_density_integral(const CylinderModel& model, int t_points = 64,
                              double* abs_error = nullptr);

struct SingularityCoefficients {
  cxd a0;      // constant coefficient of the short-time singularity
  cxd a1;      // 1/t coefficient
  cxd c;       // log|t| coefficient
};

/// Short-separation expansion coefficients of the traced regularized
/// kernel for the twisted cylinder at a point y on the hypersurface.
SingularityCoefficients singularity_coefficients(const CylinderModel& model, double t, double y,
                                                 double Lambda);

}  // namespace findex
