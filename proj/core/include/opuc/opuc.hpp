#pragma once

// Monic orthogonal polynomials on the unit circle for dsigma = w dtheta.
//
// Recursion (Verblunsky coefficients alpha_k, |alpha_k| < 1):
//     Phi_{k+1}(z)  = z Phi_k(z) - conj(alpha_k) Phi_k^*(z)
//     Phi_{k+1}^*(z) = Phi_k^*(z) - alpha_k z Phi_k(z)
//     ||Phi_{k+1}||^2 = (1 - |alpha_k|^2) ||Phi_k||^2,   ||Phi_0||^2 = c_0
// with moments c_k = integral exp(-i k theta) w(theta) dtheta.

#include <span>
#include <vector>

#include "opuc/grid_fourier.hpp"
#include "opuc/weights.hpp"

namespace opuc {

/// Polynomial q_0 + q_1 z + ... + q_n z^n stored in the monomial basis.
class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{1.0}} {}
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx operator[](int j) const noexcept {
    return (j < 0 || j > degree()) ? cplx{} : coeffs_[j];
  }

  cplx operator()(cplx z) const;
  cplx on_circle(double theta) const { return (*this)(std::polar(1.0, theta)); }

  /// The same function as a Fourier series on modes [0, degree].
  FourierSeries as_series() const { return FourierSeries(0, coeffs_); }
  static Polynomial from_series(const FourierSeries& f, int degree);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<cplx> coeffs_;
};

/// Degree-n reversal with conjugation: q_0..q_n -> conj(q_n)..conj(q_0).
/// Throws InvalidArgument when deg Q > n.
Polynomial star(const Polynomial& q, int n);

/// L2 distance of coefficient vectors (missing entries are zero).
double coefficient_distance(const Polynomial& a, const Polynomial& b);

struct VerblunskySequence {
  std::vector<cplx> alphas;      ///< alpha_0 .. alpha_{n-1}
  std::vector<double> norms_sq;  ///< ||Phi_k||^2_{L2(w)}, k = 0..n
  std::vector<cplx> moments;     ///< c_0 .. c_n
  double max_norm_drift = 0.0;   ///< relative gap found at the periodic re-anchoring
};

/// c_0..c_n by quadrature adapted to w. Throws QuadratureError if c_0 does
/// not match an independent graded integral of w to 1e-10 (relative).
std::vector<cplx> moments(const WeightSpec& w, int n);

/// Output of the Szegő recursion up to degree n.
class SzegoRecursion {
 public:
  SzegoRecursion(VerblunskySequence seq, Polynomial phi);

  int degree() const noexcept { return static_cast<int>(seq_.alphas.size()); }
  const VerblunskySequence& sequence() const noexcept { return seq_; }
  std::span<const cplx> alphas() const noexcept { return seq_.alphas; }

  const Polynomial& phi() const noexcept { return phi_; }
  Polynomial phi_star() const { return star(phi_, degree()); }
  double norm_sq() const { return seq_.norms_sq.back(); }

  /// Phi_k, Phi_k^* for k <= degree() (replays the recursion).
  Polynomial phi(int k) const;
  Polynomial phi_star(int k) const { return star(phi(k), k); }

  /// Phi_k for every k in `degrees` with a single replay; degrees sorted.
  std::vector<Polynomial> phis(std::span<const int> degrees) const;

 private:
  VerblunskySequence seq_;
  Polynomial phi_;
};

/// Szegő/Levinson recursion on the moment vector c_0..c_n. Norms are
/// recomputed from the moments every 64 steps. Throws BreakdownError when
/// |alpha_k| >= 1 - 1e-13.
SzegoRecursion szego_levinson(std::span<const cplx> moments, int n);

/// Recursion coefficients replayed into Phi_n (no moments needed).
Polynomial phi_from_alphas(std::span<const cplx> alphas);

/// Independent route to Phi_n: the n x n Toeplitz orthogonality system
/// solved by LU with partial pivoting. Throws IllConditioned when the
/// condition estimate exceeds 1e12.
Polynomial dense_oracle(std::span<const cplx> moments, int n);

/// Condition estimate (1-norm) of the Toeplitz system used by dense_oracle.
double toeplitz_condition(std::span<const cplx> moments, int n);

struct PolynomialSamples {
  GridFunction values;
  double sup_norm = 0.0;
  int resolution = 0;      ///< K
  bool certified = false;  ///< K >= 64 (n + 1)
};

/// Values on the size-K offset grid by zero-padded inverse transform.
/// Throws InvalidArgument if K is not a power of two.
PolynomialSamples evaluate(const Polynomial& p, int K);

}  // namespace opuc
