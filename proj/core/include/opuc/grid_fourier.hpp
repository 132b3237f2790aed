#pragma once

// Discrete harmonic analysis on the unit circle.
//
// Fourier convention used throughout the library:
//     c_k = (1/2pi) * integral_{-pi}^{pi} f(theta) exp(-i k theta) dtheta,
// so the mean of f is c_0 and ||f||_2^2 = 2pi * sum |c_k|^2.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace opuc {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform grid on [-pi, pi) with a half-cell offset:
///     theta_m = -pi + (m + 1/2) * 2pi/N,  m = 0..N-1.
/// theta = 0 is never a node, the nodes are symmetric about 0.
class CircleGrid {
 public:
  /// N must be a power of two, N >= 4.
  explicit CircleGrid(int size);

  int size() const noexcept { return size_; }
  double step() const noexcept { return kTwoPi / size_; }
  double node(int m) const noexcept { return -kPi + (m + 0.5) * step(); }
  std::vector<double> nodes() const;

  /// Largest |k| returned by analysis.
  int max_mode() const noexcept { return size_ / 2 - 1; }

  friend bool operator==(const CircleGrid&, const CircleGrid&) = default;

 private:
  int size_;
};

/// Complex samples of a function on a CircleGrid.
class GridFunction {
 public:
  GridFunction(CircleGrid grid, std::vector<cplx> values);
  GridFunction(CircleGrid grid, const std::function<cplx(double)>& f);

  const CircleGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }
  cplx operator[](std::size_t m) const { return values_[m]; }

  double sup_norm() const;

 private:
  CircleGrid grid_;
  std::vector<cplx> values_;
};

/// Coefficients c_k for k in the window [k_min, k_max]; zero outside.
class FourierSeries {
 public:
  FourierSeries() : FourierSeries(0, 0) {}
  /// Zero series on [k_min, k_max].
  FourierSeries(int k_min, int k_max);
  FourierSeries(int k_min, std::vector<cplx> coeffs);

  static FourierSeries monomial(int k, cplx value = 1.0);

  int k_min() const noexcept { return k_min_; }
  int k_max() const noexcept { return k_max_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  /// Coefficient of exp(i k theta); zero outside the window.
  cplx operator[](int k) const noexcept {
    return (k < k_min_ || k > k_max_) ? cplx{} : coeffs_[k - k_min_];
  }
  /// Mutable access; k must lie in the window.
  cplx& at(int k);

  /// Same function on a wider (or narrower) window.
  FourierSeries rewindowed(int k_min, int k_max) const;
  /// Multiplication by z^m = exp(i m theta).
  FourierSeries shifted(int m) const;
  FourierSeries conj_reflected() const;

  /// ||f||_2 over [-pi, pi] by Parseval.
  double l2_norm() const;
  double max_abs() const;

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator-=(const FourierSeries& other);
  FourierSeries& operator*=(cplx s);

  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a -= b; }
  friend FourierSeries operator*(cplx s, FourierSeries a) { return a *= s; }

 private:
  int k_min_;
  int k_max_;
  std::vector<cplx> coeffs_;
};

/// <f, g> = integral f conj(g) dtheta = 2pi sum f_k conj(g_k).
cplx inner_product(const FourierSeries& f, const FourierSeries& g);

/// Analysis: returns c_k for |k| <= N/2 - 1.
FourierSeries analyze(const GridFunction& f);
/// Synthesis: evaluates sum c_k exp(i k theta_m). Throws CapacityError when
/// the series window does not fit in [-(N/2 - 1), N/2 - 1].
GridFunction synthesize(const FourierSeries& f, const CircleGrid& grid);

/// Band projection P_[i,j]: keeps modes i..j, zeroes the rest.
FourierSeries project(const FourierSeries& f, int i, int j);

enum class SpectralMultiplier {
  hilbert,      ///< exp(ik.) -> -i sgn(k) exp(ik.), H(1) = 0
  riesz_plus,   ///< keeps k >= 0
  mean,         ///< keeps k = 0
};

FourierSeries hilbert_riesz(const FourierSeries& f, SpectralMultiplier which);
inline FourierSeries hilbert(const FourierSeries& f) {
  return hilbert_riesz(f, SpectralMultiplier::hilbert);
}
inline FourierSeries riesz_plus(const FourierSeries& f) {
  return hilbert_riesz(f, SpectralMultiplier::riesz_plus);
}

/// P_[1,n] assembled from shifted Riesz projections:
///     z P+ z^{-1} f - z^{n+1} P+ z^{-(n+1)} f.
FourierSeries band_projection_via_riesz(const FourierSeries& f, int n);

/// (integral |f|^p w dtheta)^{1/p} by the rectangle rule (2pi/N) sum.
/// Throws InvalidArgument for p < 1, negative weights, or non-finite samples.
double lp_norm(const GridFunction& f, double p);
double lp_norm(const GridFunction& f, double p, const GridFunction& weight);

}  // namespace opuc
