#include "opuc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "opuc/error.hpp"

namespace opuc {

// ---------------------------------------------------------------------------
// Context

OperatorContext::OperatorContext(const WeightSpec& w, int n, int input_band)
    : grid_(quadrature_for(w, std::max(n, input_band))), n_(n), spec_(w) {
  if (n < 1) throw InvalidArgument("OperatorContext: n must be >= 1");
  const auto nodes = grid_.nodes();
  w_.resize(nodes.size());
  w_inv_.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = w(nodes[i]);
    w_[i] = v;
    w_inv_[i] = 1.0 / v;
  }
}

OperatorContext::OperatorContext(QuadratureGrid grid, int n) : grid_(std::move(grid)), n_(n) {}

ContextPtr OperatorContext::plain(int capacity) {
  if (capacity < 1) throw InvalidArgument("OperatorContext::plain: capacity must be >= 1");
  const int size = static_cast<int>(std::bit_ceil(static_cast<unsigned>(4 * capacity + 4)));
  return std::shared_ptr<const OperatorContext>(
      new OperatorContext(QuadratureGrid::uniform(size, capacity), capacity));
}

Samples OperatorContext::weight_power(int j) const {
  if (w_.empty()) throw InvalidArgument("weight_power: context has no weight");
  Samples out(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) out[i] = std::pow(w_[i].real(), j);
  return out;
}

Samples OperatorContext::project(const Samples& f, int i, int j) const {
  if (i > j) return Samples(f.size());
  return grid_.synthesize(grid_.analyze(f, i, j));
}

// ---------------------------------------------------------------------------
// Pointwise helpers

Samples operator+(const Samples& a, const Samples& b) {
  Samples out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Samples operator-(const Samples& a, const Samples& b) {
  Samples out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Samples operator*(cplx s, const Samples& a) {
  Samples out(a);
  for (auto& v : out) v *= s;
  return out;
}

Samples hadamard(const Samples& a, const Samples& b) {
  Samples out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

namespace {

Samples conj_of(const Samples& a) {
  Samples out(a);
  for (auto& v : out) v = std::conj(v);
  return out;
}

void axpy(Samples& y, cplx a, const Samples& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// Primitive nodes

struct IdentityNode final : BandOperator::Node {
  Samples apply(const Samples& f) const override { return f; }
  Samples adjoint(const Samples& g) const override { return g; }
  std::string describe() const override { return "I"; }
};

struct ZeroNode final : BandOperator::Node {
  Samples apply(const Samples& f) const override { return Samples(f.size()); }
  Samples adjoint(const Samples& g) const override { return Samples(g.size()); }
  std::string describe() const override { return "0"; }
  bool is_zero() const override { return true; }
};

struct MultiplyNode final : BandOperator::Node {
  Samples m, m_conj;
  std::string label;
  bool zero;
  MultiplyNode(Samples mult, std::string lbl)
      : m(std::move(mult)), m_conj(conj_of(m)), label(std::move(lbl)),
        zero(std::all_of(m.begin(), m.end(), [](cplx v) { return v == cplx{}; })) {}
  Samples apply(const Samples& f) const override { return hadamard(m, f); }
  Samples adjoint(const Samples& g) const override { return hadamard(m_conj, g); }
  std::string describe() const override { return label; }
  bool is_zero() const override { return zero; }
};

struct SpectralNode final : BandOperator::Node {
  ContextPtr ctx;
  int lo, hi;
  std::vector<cplx> symbol;  // indexed by k - lo
  std::string label;
  SpectralNode(ContextPtr c, int l, int h, std::vector<cplx> s, std::string lbl)
      : ctx(std::move(c)), lo(l), hi(h), symbol(std::move(s)), label(std::move(lbl)) {}
  Samples run(const Samples& f, bool conjugate) const {
    if (lo > hi) return Samples(f.size());
    FourierSeries c = ctx->analyze(f, lo, hi);
    for (int k = lo; k <= hi; ++k)
      c.at(k) *= conjugate ? std::conj(symbol[k - lo]) : symbol[k - lo];
    return ctx->synthesize(c);
  }
  Samples apply(const Samples& f) const override { return run(f, false); }
  Samples adjoint(const Samples& g) const override { return run(g, true); }
  std::string describe() const override { return label; }
  bool is_zero() const override { return lo > hi; }
};

struct ComposeNode final : BandOperator::Node {
  std::shared_ptr<const Node> a, b;  // a after b
  ComposeNode(std::shared_ptr<const Node> x, std::shared_ptr<const Node> y)
      : a(std::move(x)), b(std::move(y)) {}
  Samples apply(const Samples& f) const override { return a->apply(b->apply(f)); }
  Samples adjoint(const Samples& g) const override { return b->adjoint(a->adjoint(g)); }
  std::string describe() const override { return a->describe() + " " + b->describe(); }
  bool is_zero() const override { return a->is_zero() || b->is_zero(); }
};

struct SumNode final : BandOperator::Node {
  std::shared_ptr<const Node> a, b;
  double sign;
  SumNode(std::shared_ptr<const Node> x, std::shared_ptr<const Node> y, double s)
      : a(std::move(x)), b(std::move(y)), sign(s) {}
  Samples apply(const Samples& f) const override {
    Samples out = a->apply(f);
    axpy(out, sign, b->apply(f));
    return out;
  }
  Samples adjoint(const Samples& g) const override {
    Samples out = a->adjoint(g);
    axpy(out, sign, b->adjoint(g));
    return out;
  }
  std::string describe() const override {
    return "(" + a->describe() + (sign > 0 ? " + " : " - ") + b->describe() + ")";
  }
  bool is_zero() const override { return a->is_zero() && b->is_zero(); }
};

struct ScaleNode final : BandOperator::Node {
  cplx s;
  std::shared_ptr<const Node> a;
  ScaleNode(cplx scale, std::shared_ptr<const Node> x) : s(scale), a(std::move(x)) {}
  Samples apply(const Samples& f) const override { return s * a->apply(f); }
  Samples adjoint(const Samples& g) const override { return std::conj(s) * a->adjoint(g); }
  std::string describe() const override { return "s " + a->describe(); }
  bool is_zero() const override { return s == cplx{} || a->is_zero(); }
};

struct AdjointNode final : BandOperator::Node {
  std::shared_ptr<const Node> a;
  explicit AdjointNode(std::shared_ptr<const Node> x) : a(std::move(x)) {}
  Samples apply(const Samples& f) const override { return a->adjoint(f); }
  Samples adjoint(const Samples& g) const override { return a->apply(g); }
  std::string describe() const override { return "(" + a->describe() + ")^*"; }
  bool is_zero() const override { return a->is_zero(); }
};

// ---------------------------------------------------------------------------
// Commutator powers.
//
// With T_k = P(m^k v) tabulated once, every C_l v for l <= K is a cheap
// combination: C_l v = sum_k binom(l, k) (-1)^k m^{l-k} T_k. The adjoint
// uses the same table built with conj(m): C_l^* g = sum_k binom(l, k) (-1)^k
// conj(m)^k P(conj(m)^{l-k} g).

struct PowerTable {
  const OperatorContext* ctx;
  const std::vector<Samples>* mpow;  // m^0 .. m^K (or their conjugates)
  std::vector<Samples> proj;         // P(m^k v)

  PowerTable(const OperatorContext& c, const std::vector<Samples>& powers, const Samples& v,
             int K)
      : ctx(&c), mpow(&powers) {
    const int n = c.degree();
    proj.reserve(K + 1);
    Samples cur = v;
    proj.push_back(c.project(cur, 1, n));
    for (int k = 1; k <= K; ++k) {
      cur = hadamard(powers[1], cur);
      proj.push_back(c.project(cur, 1, n));
    }
  }

  Samples forward(int l) const {
    Samples out(proj[0].size());
    for (int k = 0; k <= l; ++k) {
      const double c = binom(l, k) * (k % 2 ? -1.0 : 1.0);
      const Samples& mp = (*mpow)[l - k];
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * mp[i] * proj[k][i];
    }
    return out;
  }

  Samples backward(int l) const {
    Samples out(proj[0].size());
    for (int k = 0; k <= l; ++k) {
      const double c = binom(l, k) * (k % 2 ? -1.0 : 1.0);
      const Samples& mp = (*mpow)[k];
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * mp[i] * proj[l - k][i];
    }
    return out;
  }
};

std::vector<Samples> powers_of(const Samples& m, int K) {
  std::vector<Samples> out;
  out.reserve(K + 1);
  out.emplace_back(m.size(), cplx{1.0});
  for (int k = 1; k <= K; ++k) out.push_back(hadamard(out.back(), m));
  return out;
}

const Samples& multiplier_of(const OperatorContext& ctx, CommutatorVariant v) {
  if (ctx.weight().empty()) throw InvalidArgument("commutator: context has no weight");
  return v == CommutatorVariant::weight ? ctx.weight() : ctx.inverse_weight();
}

struct CommutatorPowerNode final : BandOperator::Node {
  ContextPtr ctx;
  int order;
  CommutatorVariant variant;
  std::vector<Samples> pw, pw_conj;
  CommutatorPowerNode(ContextPtr c, int l, CommutatorVariant v)
      : ctx(std::move(c)), order(l), variant(v) {
    const Samples& m = multiplier_of(*ctx, v);
    pw = powers_of(m, l);
    pw_conj = powers_of(conj_of(m), l);
  }
  Samples apply(const Samples& f) const override {
    return PowerTable(*ctx, pw, f, order).forward(order);
  }
  Samples adjoint(const Samples& g) const override {
    return PowerTable(*ctx, pw_conj, g, order).backward(order);
  }
  std::string describe() const override {
    return std::string(variant == CommutatorVariant::weight ? "C" : "C~") + "_" +
           std::to_string(order);
  }
};

// ---------------------------------------------------------------------------
// y / z recursions. Index r of the z-arrays stores z_{r-1}.

struct RecursionTables {
  std::vector<Samples> w_pow, w_pow_conj, winv_pow, winv_pow_conj;
};

RecursionTables recursion_tables(const OperatorContext& ctx, int j, bool with_inverse) {
  RecursionTables t;
  t.w_pow = powers_of(ctx.weight(), j + 1);
  t.w_pow_conj = powers_of(conj_of(ctx.weight()), j + 1);
  if (with_inverse) {
    t.winv_pow = powers_of(ctx.inverse_weight(), j + 2);
    t.winv_pow_conj = powers_of(conj_of(ctx.inverse_weight()), j + 2);
  }
  return t;
}

Samples run_y(const OperatorContext& ctx, const RecursionTables& t, const Samples& f, int j,
              bool inhomogeneous) {
  std::vector<Samples> ys{f};
  std::vector<PowerTable> tables;
  for (int m = 1; m <= j; ++m) {
    tables.emplace_back(ctx, t.w_pow, ys[m - 1], j - (m - 1));
    Samples next(f.size());
    if (inhomogeneous) next = t.w_pow[m];
    for (int l = 0; l <= m - 1; ++l) axpy(next, binom(m - 1, l), tables[m - 1 - l].forward(l + 1));
    ys.push_back(std::move(next));
  }
  return ys[j];
}

Samples run_z(const OperatorContext& ctx, const RecursionTables& t, const Samples& f, int j,
              bool inhomogeneous) {
  // z_{-1} = y_1 = (w) + C_1 f, z_0 = f
  Samples zm1 = PowerTable(ctx, t.w_pow, f, 1).forward(1);
  if (inhomogeneous) zm1 = zm1 + t.w_pow[1];
  std::vector<Samples> zs{std::move(zm1), f};
  std::vector<PowerTable> tables;
  tables.emplace_back(ctx, t.winv_pow, zs[0], j + 1);
  for (int m = 1; m <= j; ++m) {
    tables.emplace_back(ctx, t.winv_pow, zs[m], j - (m - 1));
    Samples next(f.size());
    if (inhomogeneous) next = t.winv_pow[m];
    for (int l = 0; l <= m; ++l)
      axpy(next, -binom(m, l), tables[m - l].forward(l + 1));  // z_{m-l-1} sits at m-l
    zs.push_back(std::move(next));
  }
  return zs[j + 1];
}

// Reverse sweep of run_y with zero inhomogeneity.
Samples run_y_adjoint(const OperatorContext& ctx, const RecursionTables& t, const Samples& g,
                      int j) {
  std::vector<Samples> bar(j + 1, Samples(g.size()));
  bar[j] = g;
  for (int m = j; m >= 1; --m) {
    const PowerTable table(ctx, t.w_pow_conj, bar[m], m);
    for (int l = 0; l <= m - 1; ++l) axpy(bar[m - 1 - l], binom(m - 1, l), table.backward(l + 1));
  }
  return bar[0];
}

Samples run_z_adjoint(const OperatorContext& ctx, const RecursionTables& t, const Samples& g,
                      int j) {
  std::vector<Samples> bar(j + 2, Samples(g.size()));  // bar[r] ~ z_{r-1}
  bar[j + 1] = g;
  for (int m = j; m >= 1; --m) {
    const PowerTable table(ctx, t.winv_pow_conj, bar[m + 1], m + 1);
    for (int l = 0; l <= m; ++l) axpy(bar[m - l], -binom(m, l), table.backward(l + 1));
  }
  // z_{-1} = C_1 f, z_0 = f
  Samples out = bar[1];
  axpy(out, 1.0, PowerTable(ctx, t.w_pow_conj, bar[0], 1).backward(1));
  return out;
}

void require_positive_weight(const OperatorContext& ctx) {
  for (std::size_t i = 0; i < ctx.weight().size(); ++i) {
    const double v = ctx.weight()[i].real();
    const double inv = ctx.inverse_weight()[i].real();
    if (!(v > 0.0) || !std::isfinite(inv))
      throw InvalidArgument("D_j: w is not bounded away from 0 on the grid");
  }
}

struct SplitNode final : BandOperator::Node {
  ContextPtr ctx;
  int j;
  SplitVariant variant;
  RecursionTables tables;
  SplitNode(ContextPtr c, int order, SplitVariant v)
      : ctx(std::move(c)), j(order), variant(v),
        tables(recursion_tables(*ctx, order, v == SplitVariant::D)) {}
  Samples apply(const Samples& f) const override {
    return variant == SplitVariant::B ? run_y(*ctx, tables, f, j, false)
                                      : run_z(*ctx, tables, f, j, false);
  }
  Samples adjoint(const Samples& g) const override {
    return variant == SplitVariant::B ? run_y_adjoint(*ctx, tables, g, j)
                                      : run_z_adjoint(*ctx, tables, g, j);
  }
  std::string describe() const override {
    return std::string(variant == SplitVariant::B ? "B_" : "D_") + std::to_string(j);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// BandOperator

BandOperator BandOperator::identity(ContextPtr ctx) {
  return BandOperator(std::move(ctx), std::make_shared<IdentityNode>());
}

BandOperator BandOperator::zero(ContextPtr ctx) {
  return BandOperator(std::move(ctx), std::make_shared<ZeroNode>());
}

BandOperator BandOperator::multiply(ContextPtr ctx, Samples m, std::string label) {
  if (m.size() != static_cast<std::size_t>(ctx->grid().size()))
    throw InvalidArgument("BandOperator::multiply: multiplier length does not match the grid");
  return BandOperator(std::move(ctx), std::make_shared<MultiplyNode>(std::move(m), std::move(label)));
}

BandOperator BandOperator::project(ContextPtr ctx, int i, int j) {
  if (i <= j) ctx->grid().check_window(i, j);
  std::vector<cplx> sym(i <= j ? j - i + 1 : 0, cplx{1.0});
  const std::string label = "P[" + std::to_string(i) + "," + std::to_string(j) + "]";
  auto node = std::make_shared<SpectralNode>(ctx, i, j, std::move(sym), label);
  return BandOperator(std::move(ctx), std::move(node));
}

BandOperator BandOperator::spectral(ContextPtr ctx, std::function<cplx(int)> symbol,
                                    std::string label) {
  const int cap = ctx->capacity();
  std::vector<cplx> sym(2 * cap + 1);
  for (int k = -cap; k <= cap; ++k) sym[k + cap] = symbol(k);
  auto node = std::make_shared<SpectralNode>(ctx, -cap, cap, std::move(sym), std::move(label));
  return BandOperator(std::move(ctx), std::move(node));
}

Samples BandOperator::apply(const FourierSeries& f) const {
  ctx_->grid().check_window(f.k_min(), f.k_max());
  return (*this)(ctx_->synthesize(f));
}

BandOperator BandOperator::operator*(const BandOperator& rhs) const {
  return BandOperator(ctx_, std::make_shared<ComposeNode>(node_, rhs.node_));
}

BandOperator BandOperator::operator+(const BandOperator& rhs) const {
  return BandOperator(ctx_, std::make_shared<SumNode>(node_, rhs.node_, 1.0));
}

BandOperator BandOperator::operator-(const BandOperator& rhs) const {
  return BandOperator(ctx_, std::make_shared<SumNode>(node_, rhs.node_, -1.0));
}

BandOperator operator*(cplx s, const BandOperator& a) {
  return BandOperator(a.ctx_, std::make_shared<ScaleNode>(s, a.node_));
}

BandOperator BandOperator::adjoint_operator() const {
  return BandOperator(ctx_, std::make_shared<AdjointNode>(node_));
}

BandOperator commutator(const BandOperator& a, const BandOperator& b) { return a * b - b * a; }

BandOperator hilbert_operator(ContextPtr ctx) {
  return BandOperator::spectral(
      std::move(ctx),
      [](int k) { return k > 0 ? cplx{0.0, -1.0} : (k < 0 ? cplx{0.0, 1.0} : cplx{}); }, "H");
}

BandOperator commutator_power(ContextPtr ctx, int order, CommutatorVariant variant) {
  if (order < 0) throw InvalidArgument("commutator_power: order must be >= 0");
  ctx->grid().check_window(1, ctx->degree());
  auto node = std::make_shared<CommutatorPowerNode>(ctx, order, variant);
  return BandOperator(std::move(ctx), std::move(node));
}

BandOperator nested_commutator(ContextPtr ctx, int order, CommutatorVariant variant) {
  if (order < 0) throw InvalidArgument("nested_commutator: order must be >= 0");
  const BandOperator m = BandOperator::multiply(ctx, multiplier_of(*ctx, variant),
                                                variant == CommutatorVariant::weight ? "w" : "1/w");
  BandOperator c = BandOperator::project(ctx, 1, ctx->degree());
  for (int l = 1; l <= order; ++l) c = commutator(m, c);
  return c;
}

BandOperator split_operator(ContextPtr ctx, int j, SplitVariant variant) {
  if (j < 1) throw InvalidArgument("split_operator: j must be >= 1");
  if (ctx->weight().empty()) throw InvalidArgument("split_operator: context has no weight");
  ctx->grid().check_window(1, ctx->degree());
  if (variant == SplitVariant::D) require_positive_weight(*ctx);
  auto node = std::make_shared<SplitNode>(ctx, j, variant);
  return BandOperator(std::move(ctx), std::move(node));
}

InhomogeneousTerms inhomogeneous_terms(const ContextPtr& ctx, int j) {
  if (j < 1) throw InvalidArgument("inhomogeneous_terms: j must be >= 1");
  require_positive_weight(*ctx);
  const RecursionTables t = recursion_tables(*ctx, j, true);
  const Samples zero(ctx->grid().size());
  return {run_y(*ctx, t, zero, j, true), run_z(*ctx, t, zero, j, true)};
}

Samples y_recursion(const ContextPtr& ctx, const Samples& f, int j) {
  const RecursionTables t = recursion_tables(*ctx, j, false);
  return run_y(*ctx, t, f, j, true);
}

Samples z_recursion(const ContextPtr& ctx, const Samples& f, int j) {
  require_positive_weight(*ctx);
  const RecursionTables t = recursion_tables(*ctx, j, true);
  return run_z(*ctx, t, f, j, true);
}

std::vector<std::vector<cplx>> materialize(const BandOperator& op, int lo, int hi) {
  const auto& ctx = op.context();
  ctx->grid().check_window(lo, hi);
  const int m = hi - lo + 1;
  std::vector<std::vector<cplx>> a(m, std::vector<cplx>(m));
  for (int c = 0; c < m; ++c) {
    const Samples col = op.apply(FourierSeries::monomial(lo + c));
    const FourierSeries out = ctx->analyze(col, lo, hi);
    for (int r = 0; r < m; ++r) a[r][c] = out[lo + r];
  }
  return a;
}

// ---------------------------------------------------------------------------
// Norm probe

namespace {

// |y|^{q-1} y/|y|, the L^q duality direction (unnormalized).
Samples duality_map(const Samples& y, double q) {
  Samples out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = std::abs(y[i]);
    out[i] = r > 0.0 ? y[i] * std::pow(r, q - 2.0) : cplx{};
  }
  return out;
}

}  // namespace

NormEstimate op_norm_estimate(const BandOperator& op, double p, int lo, int hi,
                              const NormProbeOptions& options) {
  if (!(p >= 2.0 && p <= 16.0)) throw InvalidArgument("op_norm_estimate: p must lie in [2, 16]");
  if (lo > hi) throw InvalidArgument("op_norm_estimate: empty band");
  const auto& ctx = op.context();
  ctx->grid().check_window(lo, hi);

  NormEstimate est;
  if (op.is_zero()) {
    est.converged = true;
    return est;
  }

  std::vector<FourierSeries> starts;
  for (const auto& s : options.starts) starts.push_back(s.rewindowed(lo, hi));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  for (int r = 0; r < options.restarts; ++r) {
    FourierSeries s(lo, hi);
    for (int k = lo; k <= hi; ++k) s.at(k) = cplx{normal(rng), normal(rng)};
    starts.push_back(std::move(s));
  }

  const double q = p / (p - 1.0);
  const auto restrict_to_band = [&](const Samples& f) {
    return ctx->synthesize(ctx->analyze(f, lo, hi));
  };

  bool first = true;
  for (const auto& start : starts) {
    Samples x = ctx->synthesize(start);
    std::vector<double> history;
    bool settled = false;
    double best = 0.0;
    double prev = -1.0;
    int it = 0;
    for (; it < options.iters; ++it) {
      const double nx = ctx->lp_norm(x, p);
      if (!(nx > 0.0)) break;
      x = (1.0 / nx) * x;
      const Samples y = op(x);
      const double ratio = ctx->lp_norm(y, p);
      best = std::max(best, ratio);
      history.push_back(best);
      if (prev >= 0.0 && std::abs(ratio - prev) <= options.rel_tol * std::max(ratio, 1e-300)) {
        settled = true;
        break;
      }
      prev = ratio;
      if (!(ratio > 0.0)) break;
      Samples z = restrict_to_band(op.adjoint(duality_map(y, p)));
      x = p == 2.0 ? std::move(z) : restrict_to_band(duality_map(z, q));
    }
    if (first || best > est.value) {
      est.value = best;
      est.converged = settled;
      est.history = std::move(history);
      est.iterations = it;
      first = false;
    }
  }
  return est;
}

}  // namespace opuc
