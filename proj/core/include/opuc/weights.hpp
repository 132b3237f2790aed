#pragma once

// Weight families on the circle, their evaluation, normalization and the
// measured characteristics used by the rest of the library.
//
// Spec grammar:
//     spec   := factor ('*' factor)* ['@norm']
//     factor := 'const' | 'trig:beta=' F | 'bs:a=' F | 'logsing:c=' F | 'invlog:c=' F
//
// Raw family values (theta taken mod 2pi into [-pi, pi]):
//     const        1
//     trig(beta)   1 + beta cos(theta),                     |beta| < 1
//     bs(a)        (1 - a^2) / |1 - a e^{i theta}|^2,       |a| < 1
//     logsing(c)   1 + c log(pi/|theta|),                    c > 0
//     invlog(c)    1 / (1 + c log(pi/|theta|)),              c > 0
// logsing and invlog declare a singularity at theta = 0.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opuc/grid_fourier.hpp"
#include "opuc/quadrature.hpp"

namespace opuc {

enum class WeightFamily { constant, trig, bernstein_szego, logsing, invlog };

struct WeightFactor {
  WeightFamily family = WeightFamily::constant;
  double param = 0.0;
};

class WeightSpec {
 public:
  /// Parses the grammar above. A trailing '@norm' sets the scale so that
  /// ||w||_1 = 1. Throws ParseError or InvalidArgument (bad parameters).
  static WeightSpec parse(std::string_view text);

  const std::string& text() const noexcept { return text_; }
  std::span<const WeightFactor> factors() const noexcept { return factors_; }
  double scale() const noexcept { return scale_; }
  bool normalized() const noexcept { return normalized_; }

  /// Same shape with the scale multiplied by alpha > 0.
  WeightSpec scaled(double alpha) const;
  /// Same shape rescaled to unit L1 norm.
  WeightSpec normalized_copy() const;

  std::span<const double> singular_points() const noexcept { return singular_; }
  bool has_singularities() const noexcept { return !singular_.empty(); }
  bool is_constant() const;

  /// w(theta); throws InvalidArgument at a declared singularity.
  double operator()(double theta) const;
  double inverse(double theta) const;
  double log_value(double theta) const;

  /// Number of Fourier modes after which the coefficients of w, 1/w and
  /// small powers of w drop below double precision. Zero for singular
  /// weights (they have no such band).
  int smooth_band() const;

 private:
  double raw(double theta) const;
  double raw_log(double theta) const;
  void rebuild_text();

  std::string text_;
  std::vector<WeightFactor> factors_;
  std::vector<double> singular_;
  double scale_ = 1.0;
  bool normalized_ = false;
};

/// Parses spec_text and optionally forces normalization (in addition to any
/// '@norm' suffix). Normalized weights satisfy integral w = 1 to 1e-10.
WeightSpec build_weight(std::string_view spec_text, bool normalize = false);

/// Samples on a uniform grid (nodes never hit theta = 0).
GridFunction sample_weight(const WeightSpec& w, const CircleGrid& grid);

/// Quadrature rule able to analyse (w^j * band-`capacity` polynomial) at
/// windows up to `capacity`: graded panels for singular weights, an FFT grid
/// with at least 16 (capacity + 1) nodes otherwise.
QuadratureGrid quadrature_for(const WeightSpec& w, int capacity);

/// Integral over [-pi, pi] of g(theta) with panels graded toward the
/// singularities of w.
double integrate_against(const WeightSpec& w, const std::function<double(double)>& g,
                         int panels = 64);

struct WeightProfile {
  double t = 0.0;               ///< BMO estimate of w
  double s = 0.0;               ///< BMO estimate of 1/w
  double l1_w = 0.0;            ///< integral of w
  double l1_winv = 0.0;         ///< integral of 1/w
  double szego_integral = 0.0;  ///< integral of log w
  double a2_char = 0.0;         ///< sup over arcs of <w>_I <1/w>_I
  int resolution = 0;
  double balance_constant = 0.0;
  bool lower_bound_ok = false;  ///< l1_w * l1_winv >= 4 pi^2 (Cauchy-Schwarz)
  bool balance_ok = false;      ///< lower bound and l1_winv <= K (1 + (1 + t) s)
};

inline constexpr double kDefaultBalanceConstant = 100.0;

/// Mean oscillation (1/|I|) int_I |g - <g>_I| maximised over dyadic and
/// half-shifted dyadic arcs of length >= 2pi 2^{-resolution}.
WeightProfile profile(const WeightSpec& w, int resolution,
                      double balance_constant = kDefaultBalanceConstant);

enum class P0Regime { general, w_ge_1, w_le_1 };

/// Exponent suggested by the growth formulas with every unknown absolute
/// constant set to 1. `value` is the bare formula; `clamped` is restricted
/// to [2.05, 64] for use as a study exponent. Always heuristic.
struct P0Suggestion {
  double value = 0.0;
  double clamped = 0.0;
  bool large_branch = false;  ///< st (resp. t, s) above e
};

P0Suggestion suggest_p0(double t, double s, P0Regime regime);

}  // namespace opuc
