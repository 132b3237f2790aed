#pragma once

// Operator calculus built from multiplication by (functions of) the weight
// and the band projection P = P_[1,n]:
//
//   C_0 = P,  C_l = [w, C_{l-1}]              (commutators with w)
//   C~_0 = P, C~_l = [1/w, C~_{l-1}]          (commutators with 1/w)
//   B_j f = y'_j,  D_j f = z'_j               (linear parts of the y/z recursions)
//
//   y_0 = f,  y_j = w^j + sum_{l<j} binom(j-1, l) C_{l+1} y_{j-1-l}
//   z_{-1} = y_1, z_0 = f,
//   z_j = w^{-j} - sum_{l<=j} binom(j, l) C~_{l+1} z_{j-l-1}
//
// Functions are represented by samples on the nodes of a QuadratureGrid
// adapted to the weight, so multiplication is exact and only projections
// go through quadrature. Operators are applied, never assembled (except by
// `materialize`, used for small cross-checks).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opuc/grid_fourier.hpp"
#include "opuc/opuc.hpp"
#include "opuc/quadrature.hpp"
#include "opuc/weights.hpp"

namespace opuc {

using Samples = std::vector<cplx>;

/// Quadrature grid plus the weight sampled on it, for operators of degree n.
class OperatorContext {
 public:
  /// Grid able to take inputs of band `input_band` and project onto windows
  /// up to max(n, input_band).
  OperatorContext(const WeightSpec& w, int n, int input_band);
  /// Weight-free context on a uniform grid (for H and P probes).
  static std::shared_ptr<const OperatorContext> plain(int capacity);

  const QuadratureGrid& grid() const noexcept { return grid_; }
  int degree() const noexcept { return n_; }
  int capacity() const noexcept { return grid_.capacity(); }
  const std::optional<WeightSpec>& weight_spec() const noexcept { return spec_; }

  /// w and 1/w at the nodes (empty for plain contexts).
  const Samples& weight() const noexcept { return w_; }
  const Samples& inverse_weight() const noexcept { return w_inv_; }
  Samples weight_power(int j) const;  ///< w^j, any sign of j

  Samples synthesize(const FourierSeries& f) const { return grid_.synthesize(f); }
  FourierSeries analyze(const Samples& f, int lo, int hi) const { return grid_.analyze(f, lo, hi); }
  /// P_[i,j] f sampled back on the nodes.
  Samples project(const Samples& f, int i, int j) const;
  double lp_norm(const Samples& f, double p) const { return grid_.lp_norm(f, p); }
  Samples constant(cplx c) const { return Samples(grid_.size(), c); }

 private:
  OperatorContext(QuadratureGrid grid, int n);

  QuadratureGrid grid_;
  int n_ = 0;
  std::optional<WeightSpec> spec_;
  Samples w_;
  Samples w_inv_;
};

using ContextPtr = std::shared_ptr<const OperatorContext>;

// Pointwise helpers.
Samples operator+(const Samples& a, const Samples& b);
Samples operator-(const Samples& a, const Samples& b);
Samples operator*(cplx s, const Samples& a);
Samples hadamard(const Samples& a, const Samples& b);

/// Linear operator on node samples, with its adjoint for the quadrature
/// inner product sum_i weight_i f_i conj(g_i).
class BandOperator {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual Samples apply(const Samples& f) const = 0;
    virtual Samples adjoint(const Samples& g) const = 0;
    virtual std::string describe() const = 0;
    virtual bool is_zero() const { return false; }
  };

  BandOperator(ContextPtr ctx, std::shared_ptr<const Node> node)
      : ctx_(std::move(ctx)), node_(std::move(node)) {}

  static BandOperator identity(ContextPtr ctx);
  static BandOperator zero(ContextPtr ctx);
  static BandOperator multiply(ContextPtr ctx, Samples m, std::string label = "m");
  /// P_[i,j]; throws CapacityError if the window exceeds the grid capacity.
  static BandOperator project(ContextPtr ctx, int i, int j);
  /// Fourier multiplier symbol(k) on the modes |k| <= capacity.
  static BandOperator spectral(ContextPtr ctx, std::function<cplx(int)> symbol,
                               std::string label);

  Samples operator()(const Samples& f) const { return node_->apply(f); }
  Samples adjoint(const Samples& g) const { return node_->adjoint(g); }
  std::string describe() const { return node_->describe(); }
  bool is_zero() const { return node_->is_zero(); }
  const ContextPtr& context() const noexcept { return ctx_; }

  /// Applies to a band-limited series (checked against capacity).
  Samples apply(const FourierSeries& f) const;

  BandOperator operator*(const BandOperator& rhs) const;  ///< composition
  BandOperator operator+(const BandOperator& rhs) const;
  BandOperator operator-(const BandOperator& rhs) const;
  friend BandOperator operator*(cplx s, const BandOperator& a);
  BandOperator adjoint_operator() const;

 private:
  ContextPtr ctx_;
  std::shared_ptr<const Node> node_;
};

/// [A, B] = AB - BA.
BandOperator commutator(const BandOperator& a, const BandOperator& b);

/// Hilbert transform on the modes |k| <= capacity.
BandOperator hilbert_operator(ContextPtr ctx);

enum class CommutatorVariant {
  weight,          ///< C_l, commutators with w
  inverse_weight,  ///< C~_l, commutators with 1/w
};

/// C_l (or C~_l) of order l >= 0 with base projection P_[1,n], evaluated as
///     C_l f = sum_k binom(l, k) (-1)^k m^{l-k} P(m^k f),   m = w or 1/w.
BandOperator commutator_power(ContextPtr ctx, int order, CommutatorVariant variant);

/// Same operator built literally as [m, [m, ... [m, P]]] (2^l projections).
BandOperator nested_commutator(ContextPtr ctx, int order, CommutatorVariant variant);

enum class SplitVariant { B, D };

/// B_j or D_j, j >= 1. The adjoint runs the recursion in reverse.
/// Throws InvalidArgument for D when w is not bounded away from 0 on the grid.
BandOperator split_operator(ContextPtr ctx, int j, SplitVariant variant);

/// y''_j and z''_j (independent of f).
struct InhomogeneousTerms {
  Samples y;
  Samples z;
};
InhomogeneousTerms inhomogeneous_terms(const ContextPtr& ctx, int j);

/// Full affine maps f -> y_j, f -> z_j (reference values for tests).
Samples y_recursion(const ContextPtr& ctx, const Samples& f, int j);
Samples z_recursion(const ContextPtr& ctx, const Samples& f, int j);

/// Dense matrix of `op` restricted to inputs on modes [lo, hi] and read back
/// on the same modes. Intended for bands <= 128.
std::vector<std::vector<cplx>> materialize(const BandOperator& op, int lo, int hi);

// ---------------------------------------------------------------------------
// Operator-norm probing.

struct NormEstimate {
  double value = 0.0;  ///< best ratio ||A x||_p / ||x||_p found (a lower bound)
  bool converged = false;
  int iterations = 0;
  std::vector<double> history;  ///< best ratio per iteration, last restart
};

struct NormProbeOptions {
  int iters = 60;
  int restarts = 3;
  std::uint64_t seed = 20240917;
  double rel_tol = 1e-9;
  /// Extra deterministic starting vectors (band-limited, on [lo, hi]).
  std::vector<FourierSeries> starts;
};

/// Lower bound for ||A||_{p,p} over inputs with modes in [lo, hi] by a
/// Boyd-type iteration: x -> P_V psi_{p'}(P_V A^* psi_p(A x)), with
/// psi_q(y) = |y|^{q-1} y/|y|. Reduces to the power method at p = 2.
NormEstimate op_norm_estimate(const BandOperator& op, double p, int lo, int hi,
                              const NormProbeOptions& options = {});

}  // namespace opuc
