#pragma once

// Boundary values of the Szegő function: the outer function S on the disk
// with |S(e^{i theta})|^{-2} = 2pi w(theta) and S(0) > 0. With
// u = -1/2 log(2pi w), S = exp(u + i H u) on the circle.

#include "opuc/grid_fourier.hpp"
#include "opuc/weights.hpp"

namespace opuc {

struct SzegoBoundary {
  GridFunction samples;
  /// max |c_k(log S)| over k < 0 (outerness certificate)
  double log_negative_residual = 0.0;
  /// exp of the mean of log S, the mean taken by graded quadrature
  double s_at_zero = 0.0;
};

/// Samples of S on the size-N offset grid. Throws QuadratureError when
/// log w is not finite at a node.
SzegoBoundary szego_boundary(const WeightSpec& w, int N);

/// max over nodes with |theta| > exclusion of | |S|^{-2} - 2pi w | / (2pi w),
/// where |theta| is measured to the nearest declared singularity.
double modulus_residual(const SzegoBoundary& s, const WeightSpec& w, double exclusion = 0.0);

/// -(1/4pi) integral log(2pi w): the mean of log|S|, i.e. log S(0).
double log_szego_mean(const WeightSpec& w);

}  // namespace opuc
