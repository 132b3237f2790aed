#pragma once

// Fixed-point formulations Phi_n^* = f + O Phi_n^* and their Neumann-series
// solution. Every mode is an exact identity satisfied by Phi_n^*:
//
//   simple_alpha   O = P (1 - alpha w) .              f = 1
//   three_region   O = O1 + O2 + O3                   f = 1 + f1 + f3
//       O1 = eps^j P (1 - w/L) chi1 (w/eps)^j D_j     f1 = eps^j P (1 - w/L) chi1 (w/eps)^j z''_j
//       O2 = P (1 - w/L) chi2                         chi1 = [w <= eps], chi2 = [eps < w < L]
//       O3 = L^-l P (1 - w/L) (L/w)^l chi3 B_l        f3 = L^-l P (1 - w/L) (L/w)^l chi3 y''_l
//                                                     chi3 = [w >= L]
//   small_st       O = G_n = [P, 1/w][w, P]           f = 1 - (1/w) P(w)
//   w_ge_1         O = L_n = (1/w)[w, P]              f = 1
//   w_le_1         O = -[1/w, P] (w .)                f = 1
//
// with P = P_[1,n] and L the threshold Lambda.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opuc/operators.hpp"
#include "opuc/opuc.hpp"
#include "opuc/weights.hpp"

namespace opuc {

enum class SolverMode { simple_alpha, three_region, small_st, w_ge_1, w_le_1 };

std::string_view to_string(SolverMode mode);
/// Throws ParseError on an unknown name.
SolverMode parse_solver_mode(std::string_view name);

struct SolverParams {
  double alpha = 0.0;
  double epsilon = 0.0;
  double lambda = 0.0;
  int j = 1;
  int l = 1;
  double p = 2.0;
  double tol = 1e-10;
  int max_iter = 20000;
  std::uint64_t seed = 20240917;
};

/// Throws InvalidArgument when params do not fit the mode (p < 2, tol <= 0,
/// eps >= Lambda or non-positive thresholds for three_region, j or l < 1).
void validate(const SolverParams& params, SolverMode mode);

struct FixedPointProblem {
  BandOperator op;
  Samples rhs;
};

/// O and f for the given mode on a context of degree n.
FixedPointProblem fixed_point_problem(const ContextPtr& ctx, const SolverParams& params,
                                      SolverMode mode);

struct ThreeRegionParts {
  BandOperator o1, o2, o3;
  Samples f1, f3;
  int nodes_in[3] = {0, 0, 0};  ///< grid nodes falling in Omega_1..3
};
ThreeRegionParts three_region_parts(const ContextPtr& ctx, const SolverParams& params);

struct ContractionReport {
  SolverMode mode = SolverMode::simple_alpha;
  double p = 2.0;
  // Norm probes are lower bounds (NaN when not computed).
  double norm_o1 = std::numeric_limits<double>::quiet_NaN();
  double norm_o2 = std::numeric_limits<double>::quiet_NaN();
  double norm_o3 = std::numeric_limits<double>::quiet_NaN();
  double norm_sum = std::numeric_limits<double>::quiet_NaN();
  double norm_op = std::numeric_limits<double>::quiet_NaN();  ///< ||O|| for the other modes
  double f_norm = std::numeric_limits<double>::quiet_NaN();
  bool probes_converged = true;

  int iterations = 0;
  bool converged = false;
  double final_increment = std::numeric_limits<double>::quiet_NaN();
  double contraction_factor = std::numeric_limits<double>::quiet_NaN();
  double constant_term_error = std::numeric_limits<double>::quiet_NaN();  ///< |Phi*(0) - 1|
  double truncation = std::numeric_limits<double>::quiet_NaN();  ///< L2 mass outside [0, n]
  std::vector<double> increments;

  std::optional<int> l_star;
  std::vector<double> l_scan;  ///< Lambda^-l ||B_l||, l = 1..
};

struct NeumannResult {
  Polynomial phi_star;
  ContractionReport report;
};

/// x_{m+1} = f + O x_m from x_0 = f until ||x_{m+1} - x_m||_p <= tol.
/// A preflight of 10 homogeneous steps from a seeded random start, and the
/// running increment ratios, raise NoContraction when the measured factor
/// is >= 1 - 1e-3.
NeumannResult neumann_solve(const WeightSpec& w, int n, const SolverParams& params,
                            SolverMode mode);
NeumannResult neumann_solve(const ContextPtr& ctx, const SolverParams& params, SolverMode mode);

struct ReportOptions {
  NormProbeOptions probe{};
  int l_scan_max = 6;  ///< 0 disables the l scan
};

/// Norm probes of O1, O2, O3 (three_region) or of O (other modes) on inputs
/// with modes [0, n], ||f||_p, and the scan of Lambda^-l ||B_l||.
ContractionReport contraction_report(const ContextPtr& ctx, const SolverParams& params,
                                     SolverMode mode, const ReportOptions& options = {});

struct ScanGrid {
  std::vector<double> epsilon;
  std::vector<double> lambda;
  std::vector<int> j;
  std::vector<int> l;
};

/// eps in {1/(4s~), 1/(8s~)}, Lambda in {4t~, 8t~, 16t~}, j, l in 1..6,
/// with t~ = max(t, 1), s~ = max(s, 1).
ScanGrid default_scan_grid(double t, double s);

struct ScanRow {
  double epsilon = 0.0, lambda = 0.0;
  int j = 0, l = 0;
  double o1 = 0.0, o2 = 0.0, o3 = 0.0;
  double sum() const { return o1 + o2 + o3; }
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::optional<std::size_t> witness;  ///< row with the smallest sum, if < 1
};

/// Probes every grid point; norms shared between rows are computed once.
ScanResult contraction_scan(const ContextPtr& ctx, double p, const ScanGrid& grid,
                            const NormProbeOptions& probe = {});

/// ||B_l||_{p,p} (lower bounds) for l = 1..l_max on inputs with modes [0, n].
std::vector<double> split_norms(const ContextPtr& ctx, double p, int l_max,
                                const NormProbeOptions& probe = {});

/// Empirical minimiser of Lambda^-l ||B_l|| given norms[l - 1] = ||B_l||.
struct LStar {
  int l = 0;
  std::vector<double> values;  ///< Lambda^-l ||B_l||
};
LStar optimal_order(std::span<const double> b_norms, double lambda);

}  // namespace opuc
