#pragma once

// Quadrature rules on [-pi, pi] used to sample non-band-limited functions
// (weights and their products with polynomials) and to extract Fourier
// coefficients from the samples.
//
// Two kinds of rule share one interface:
//   uniform - the offset CircleGrid with equal weights 2pi/N, analysis by FFT;
//             spectrally accurate for smooth periodic integrands.
//   panel   - composite 20-point Gauss-Legendre panels, graded dyadically
//             toward declared singular points; analysis by direct sums.

#include <functional>
#include <span>
#include <vector>

#include "opuc/grid_fourier.hpp"

namespace opuc {

struct PanelOptions {
  /// Upper bound for (integrand frequency) * (panel half-width).
  double oscillation_budget = 10.0;
  double max_panel_width = 0.25;
  /// Number of dyadic refinements toward each singular point.
  int grading_levels = 60;
};

class QuadratureGrid {
 public:
  enum class Kind { uniform, panel };

  /// Offset uniform grid of `size` nodes. Windows and input bands up to
  /// `capacity` are accepted; size must be at least 4 * capacity + 4.
  static QuadratureGrid uniform(int size, int capacity);

  /// Graded Gauss-Legendre panels resolving integrands of frequency up to
  /// 2 * capacity (a band-`capacity` input analysed at a band-`capacity`
  /// window).
  static QuadratureGrid graded(std::vector<double> singular_points, int capacity,
                               const PanelOptions& options = {});

  Kind kind() const noexcept { return kind_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  int capacity() const noexcept { return capacity_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> singular_points() const noexcept { return singular_; }

  std::vector<cplx> sample(const std::function<cplx(double)>& f) const;
  std::vector<double> sample_real(const std::function<double(double)>& f) const;

  /// c_k = (1/2pi) sum_i weight_i f_i exp(-i k theta_i) for k in [lo, hi].
  FourierSeries analyze(std::span<const cplx> samples, int lo, int hi) const;
  /// Values of a band-limited series at the nodes.
  std::vector<cplx> synthesize(const FourierSeries& f) const;

  cplx integrate(std::span<const cplx> samples) const;
  double integrate(std::span<const double> samples) const;
  double lp_norm(std::span<const cplx> samples, double p) const;

  /// Throws CapacityError if |k| > capacity for some k in [lo, hi].
  void check_window(int lo, int hi) const;

 private:
  QuadratureGrid() = default;

  Kind kind_ = Kind::uniform;
  int capacity_ = 0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> singular_;
};

/// Integral of f over [a, b] using graded Gauss-Legendre panels. Points of
/// `singular_points` inside [a, b] (taken mod 2pi) become panel breakpoints
/// with dyadic grading on both sides. `panels` uniform panels per segment.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> singular_points, int panels = 4,
                        int grading_levels = 60);

}  // namespace opuc
