#include "findex/types.hpp"

namespace findex {

const char* to_string(Errc c) {
  switch (c) {
    case Errc::fails_to_converge: return "FAILS_TO_CONVERGE";
    case Errc::ambiguous_clustering: return "AMBIGUOUS_CLUSTERING";
    case Errc::zero_not_isolated: return "ZERO_NOT_ISOLATED";
    case Errc::eigenvalue_on_ray: return "EIGENVALUE_ON_RAY";
    case Errc::lower_half_plane: return "LOWER_HALF_PLANE";
    case Errc::frequency_overflow: return "FREQUENCY_OVERFLOW";
    case Errc::no_closed_form_tail: return "NO_CLOSED_FORM_TAIL";
    case Errc::fit_ill_conditioned: return "FIT_ILL_CONDITIONED";
    case Errc::truncation_window_violated: return "TRUNCATION_WINDOW_VIOLATED";
    case Errc::solver_tolerance_not_met: return "SOLVER_TOLERANCE_NOT_MET";
    case Errc::noninteger_index: return "NONINTEGER_INDEX";
    case Errc::endpoint_zero_ambiguous: return "ENDPOINT_ZERO_AMBIGUOUS";
    case Errc::outside_product_region: return "OUTSIDE_PRODUCT_REGION";
    case Errc::support_violation: return "SUPPORT_VIOLATION";
    case Errc::pole_at_beta: return "POLE_AT_BETA";
    case Errc::quadrature_not_converged: return "QUADRATURE_NOT_CONVERGED";
    case Errc::dimension_unsupported: return "DIMENSION_UNSUPPORTED";
    case Errc::config_invalid: return "CONFIG_INVALID";
  }
  return "UNKNOWN";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

void OperatorMatrix::validate() const {
  if (m.rows() != m.cols()) fail(Errc::config_invalid, "operator matrix must be square");
  if (!m.allFinite()) fail(Errc::config_invalid, "operator matrix has non-finite entries");
  if (!mode_labels.empty() && static_cast<Eigen::Index>(mode_labels.size()) != m.rows())
    fail(Errc::config_invalid, "mode_labels size does not match dimension");
}

}  // namespace findex
