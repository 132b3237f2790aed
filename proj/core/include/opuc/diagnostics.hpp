#pragma once

// Study runners: entropy of the orthonormal polynomials, L^p distance of
// phi_n^* to the Szegő function, growth of ||Phi_n^*||_inf, and the suite of
// exact identities satisfied by Phi_n and Phi_n^*.

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opuc/weights.hpp"

namespace opuc {

struct StudyFlag {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct StudyRow {
  int n = 0;
  double entropy = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> lp_error;  ///< ||phi_n^* - S||_p, one per requested p
  double sup_norm = std::numeric_limits<double>::quiet_NaN();  ///< ||Phi_n^*||_inf
  double norm_2w = std::numeric_limits<double>::quiet_NaN();   ///< ||Phi_n||_{2,w}
};

struct StudyReport {
  std::string spec;
  std::optional<double> t, s;
  std::vector<double> p_list;
  std::vector<StudyRow> rows;  ///< sorted by n
  double entropy_limit = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> decay_slopes;  ///< slope of log ||phi^* - S||_p vs log n, per p
  double sup_exponent = std::numeric_limits<double>::quiet_NaN();
  std::vector<StudyFlag> flags;

  bool passed() const;
  const StudyFlag* flag(std::string_view name) const;
};

struct StudyOptions {
  double slack = 1.1;          ///< allowed growth between consecutive rows
  double noise_floor = 1e-12;  ///< values below this count as zero
  int grid = 0;                ///< uniform grid for S and L^p norms (0: automatic, >= 2^20 for singular weights)
  int profile_resolution = 0;  ///< > 0 fills t and s
  int sup_fit_from = 64;       ///< rows with n >= this enter the exponent fit
};

/// E(n, w) = integral |phi_n|^2 log|phi_n| w dtheta against the limit
/// -(1/4pi) integral log(2pi w). Requires ||w||_1 = 1 (InvalidArgument).
/// Flag: gap nonincreasing up to the slack factor.
StudyReport entropy_study(const WeightSpec& w, std::span<const int> n_list,
                          const StudyOptions& options = {});

/// ||phi_n^* - S||_p for each p, ||Phi_n^*||_inf, ||Phi_n||_{2,w}, and
/// fitted slopes. Flags per p: nonincreasing up to the slack, final value
/// below a tenth of the first; and sup exponent < 1/2.
StudyReport convergence_study(const WeightSpec& w, std::span<const int> n_list,
                              std::span<const double> p_list, const StudyOptions& options = {});

struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Default tolerance: 1e-6 for weights with singularities, 1e-7 otherwise.
double default_residual_tolerance(const WeightSpec& w);

/// Every identity satisfied by the Levinson Phi_n, Phi_n^* (relative L2
/// residuals on the operator grid) plus the Cauchy-Schwarz balance bound.
std::vector<Residual> residual_suite(const WeightSpec& w, int n,
                                     std::optional<double> tolerance = std::nullopt);

/// Least-squares slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace opuc
