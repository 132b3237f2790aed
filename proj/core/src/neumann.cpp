#include "opuc/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <tuple>

#include "opuc/error.hpp"

namespace opuc {

namespace {

constexpr double kNoContraction = 1.0 - 1e-3;
constexpr int kWindow = 10;

struct ModeName {
  SolverMode mode;
  std::string_view name;
};

constexpr ModeName kModeNames[] = {
    {SolverMode::simple_alpha, "simple_alpha"}, {SolverMode::three_region, "three_region"},
    {SolverMode::small_st, "small_st"},         {SolverMode::w_ge_1, "w_ge_1"},
    {SolverMode::w_le_1, "w_le_1"},
};

Samples real_samples(std::size_t n, const std::function<double(std::size_t)>& f) {
  Samples out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

bool all_zero(const Samples& s) {
  return std::all_of(s.begin(), s.end(), [](cplx v) { return v == cplx{}; });
}

FourierSeries random_series(int lo, int hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  FourierSeries s(lo, hi);
  for (int k = lo; k <= hi; ++k) s.at(k) = cplx{normal(rng), normal(rng)};
  return s;
}

}  // namespace

std::string_view to_string(SolverMode mode) {
  for (const auto& m : kModeNames)
    if (m.mode == mode) return m.name;
  return "unknown";
}

SolverMode parse_solver_mode(std::string_view name) {
  for (const auto& m : kModeNames)
    if (m.name == name) return m.mode;
  throw ParseError("unknown solver mode '" + std::string(name) + "'");
}

void validate(const SolverParams& params, SolverMode mode) {
  if (!(params.p >= 2.0)) throw InvalidArgument("solver: p must be >= 2");
  if (!(params.tol > 0.0)) throw InvalidArgument("solver: tol must be positive");
  if (params.max_iter < 1) throw InvalidArgument("solver: max_iter must be >= 1");
  if (mode == SolverMode::three_region) {
    if (!(params.epsilon > 0.0) || !(params.lambda > 0.0))
      throw InvalidArgument("three_region: eps and Lambda must be positive");
    if (!(params.epsilon < params.lambda))
      throw InvalidArgument("three_region: eps must be smaller than Lambda");
    if (params.j < 1 || params.l < 1)
      throw InvalidArgument("three_region: orders j and l must be >= 1");
  }
}

ThreeRegionParts three_region_parts(const ContextPtr& ctx, const SolverParams& params) {
  validate(params, SolverMode::three_region);
  const int n = ctx->degree();
  const double eps = params.epsilon;
  const double lam = params.lambda;
  const int j = params.j;
  const int l = params.l;
  const auto& w = ctx->weight();
  const std::size_t size = w.size();

  ThreeRegionParts parts{BandOperator::zero(ctx), BandOperator::zero(ctx), BandOperator::zero(ctx),
                         Samples(size), Samples(size)};
  for (const auto& v : w) {
    const double x = v.real();
    ++parts.nodes_in[x <= eps ? 0 : (x < lam ? 1 : 2)];
  }

  const Samples m1 = real_samples(size, [&](std::size_t i) {
    const double x = w[i].real();
    return x <= eps ? std::pow(eps, j) * (1.0 - x / lam) * std::pow(x / eps, j) : 0.0;
  });
  const Samples m2 = real_samples(size, [&](std::size_t i) {
    const double x = w[i].real();
    return (x > eps && x < lam) ? 1.0 - x / lam : 0.0;
  });
  const Samples m3 = real_samples(size, [&](std::size_t i) {
    const double x = w[i].real();
    return x >= lam ? std::pow(lam, -l) * (1.0 - x / lam) * std::pow(lam / x, l) : 0.0;
  });

  const BandOperator proj = BandOperator::project(ctx, 1, n);
  if (!all_zero(m2)) parts.o2 = proj * BandOperator::multiply(ctx, m2, "(1-w/L)chi2");
  if (!all_zero(m1)) {
    const auto terms = inhomogeneous_terms(ctx, j);
    const BandOperator mult = BandOperator::multiply(ctx, m1, "(1-w/L)chi1(w/e)^j");
    parts.o1 = proj * mult * split_operator(ctx, j, SplitVariant::D);
    parts.f1 = ctx->project(hadamard(m1, terms.z), 1, n);
  }
  if (!all_zero(m3)) {
    const auto terms = inhomogeneous_terms(ctx, l);
    const BandOperator mult = BandOperator::multiply(ctx, m3, "(1-w/L)(L/w)^l chi3");
    parts.o3 = proj * mult * split_operator(ctx, l, SplitVariant::B);
    parts.f3 = ctx->project(hadamard(m3, terms.y), 1, n);
  }
  return parts;
}

FixedPointProblem fixed_point_problem(const ContextPtr& ctx, const SolverParams& params,
                                      SolverMode mode) {
  validate(params, mode);
  const int n = ctx->degree();
  const std::size_t size = ctx->grid().size();
  const BandOperator proj = BandOperator::project(ctx, 1, n);
  const BandOperator w = BandOperator::multiply(ctx, ctx->weight(), "w");
  const BandOperator w_inv = BandOperator::multiply(ctx, ctx->inverse_weight(), "1/w");
  const Samples one = ctx->constant(1.0);

  switch (mode) {
    case SolverMode::simple_alpha: {
      const Samples m = real_samples(size, [&](std::size_t i) {
        return 1.0 - params.alpha * ctx->weight()[i].real();
      });
      if (all_zero(m)) return {BandOperator::zero(ctx), one};
      return {proj * BandOperator::multiply(ctx, m, "(1-aw)"), one};
    }
    case SolverMode::three_region: {
      auto parts = three_region_parts(ctx, params);
      return {parts.o1 + parts.o2 + parts.o3, one + parts.f1 + parts.f3};
    }
    case SolverMode::small_st: {
      // G_n = [P, 1/w][w, P], f = 1 + [P, 1/w] w = 1 - (1/w) P(w)
      const BandOperator g = commutator(proj, w_inv) * commutator(w, proj);
      const Samples pw = ctx->project(ctx->weight(), 1, n);
      return {g, one - hadamard(ctx->inverse_weight(), pw)};
    }
    case SolverMode::w_ge_1:
      return {w_inv * commutator(w, proj), one};
    case SolverMode::w_le_1:
      return {(-1.0) * (commutator(w_inv, proj) * w), one};
  }
  throw InvalidArgument("fixed_point_problem: unknown mode");
}

// ---------------------------------------------------------------------------

NeumannResult neumann_solve(const WeightSpec& w, int n, const SolverParams& params,
                            SolverMode mode) {
  validate(params, mode);
  return neumann_solve(std::make_shared<OperatorContext>(w, n, n), params, mode);
}

NeumannResult neumann_solve(const ContextPtr& ctx, const SolverParams& params, SolverMode mode) {
  const int n = ctx->degree();
  const double p = params.p;
  const auto problem = fixed_point_problem(ctx, params, mode);
  const BandOperator& op = problem.op;
  const Samples& f = problem.rhs;

  ContractionReport report;
  report.mode = mode;
  report.p = p;

  // Preflight: the data f may sit in a contracting subspace while O does
  // not contract (O = P with f = 1 converges at once to a wrong answer).
  if (!op.is_zero()) {
    // one step first: the drop from the initial projection is not a rate
    Samples u = op(ctx->synthesize(random_series(0, n, params.seed)));
    const double u0 = ctx->lp_norm(u, p);
    for (int it = 0; it < kWindow; ++it) u = op(u);
    const double factor = u0 > 0.0 ? std::pow(ctx->lp_norm(u, p) / u0, 1.0 / kWindow) : 0.0;
    if (!(factor < kNoContraction)) throw NoContraction(factor);
  }

  Samples x = f;
  for (int it = 1; it <= params.max_iter; ++it) {
    Samples next = f + op(x);
    const double d = ctx->lp_norm(next - x, p);
    x = std::move(next);
    report.increments.push_back(d);
    report.iterations = it;
    report.final_increment = d;

    const auto& inc = report.increments;
    const int k = static_cast<int>(inc.size());
    const int span = std::min(kWindow, k - 1);
    if (span >= 1 && inc[k - 1 - span] > 0.0)
      report.contraction_factor = std::pow(inc[k - 1] / inc[k - 1 - span], 1.0 / span);
    if (!std::isfinite(d)) throw NoContraction(std::numeric_limits<double>::infinity());
    if (d <= params.tol) {
      report.converged = true;
      break;
    }
    if (span == kWindow && !(report.contraction_factor < kNoContraction))
      throw NoContraction(report.contraction_factor);
  }

  const FourierSeries coeffs = ctx->analyze(x, 0, n);
  const Samples poly = ctx->synthesize(coeffs);
  report.truncation = ctx->lp_norm(x - poly, 2.0);
  report.constant_term_error = std::abs(coeffs[0] - 1.0);
  return {Polynomial::from_series(coeffs, n), std::move(report)};
}

// ---------------------------------------------------------------------------

namespace {

double probe(const BandOperator& op, double p, int n, const NormProbeOptions& options,
             bool* converged) {
  const NormEstimate e = op_norm_estimate(op, p, 0, n, options);
  if (converged && !e.converged) *converged = false;
  return e.value;
}

}  // namespace

std::vector<double> split_norms(const ContextPtr& ctx, double p, int l_max,
                                const NormProbeOptions& options) {
  std::vector<double> out;
  for (int l = 1; l <= l_max; ++l)
    out.push_back(probe(split_operator(ctx, l, SplitVariant::B), p, ctx->degree(), options, nullptr));
  return out;
}

LStar optimal_order(std::span<const double> b_norms, double lambda) {
  if (b_norms.empty()) throw InvalidArgument("optimal_order: no norms");
  LStar out;
  for (std::size_t i = 0; i < b_norms.size(); ++i)
    out.values.push_back(std::pow(lambda, -static_cast<double>(i + 1)) * b_norms[i]);
  out.l = static_cast<int>(std::min_element(out.values.begin(), out.values.end()) -
                           out.values.begin()) + 1;
  return out;
}

ContractionReport contraction_report(const ContextPtr& ctx, const SolverParams& params,
                                     SolverMode mode, const ReportOptions& options) {
  validate(params, mode);
  const int n = ctx->degree();
  const double p = params.p;
  ContractionReport report;
  report.mode = mode;
  report.p = p;

  if (mode == SolverMode::three_region) {
    const auto parts = three_region_parts(ctx, params);
    report.norm_o1 = probe(parts.o1, p, n, options.probe, &report.probes_converged);
    report.norm_o2 = probe(parts.o2, p, n, options.probe, &report.probes_converged);
    report.norm_o3 = probe(parts.o3, p, n, options.probe, &report.probes_converged);
    report.norm_sum = report.norm_o1 + report.norm_o2 + report.norm_o3;
    report.f_norm = ctx->lp_norm(ctx->constant(1.0) + parts.f1 + parts.f3, p);
    if (options.l_scan_max > 0) {
      const auto norms = split_norms(ctx, p, options.l_scan_max, options.probe);
      const LStar best = optimal_order(norms, params.lambda);
      report.l_star = best.l;
      report.l_scan = best.values;
    }
  } else {
    const auto problem = fixed_point_problem(ctx, params, mode);
    report.norm_op = probe(problem.op, p, n, options.probe, &report.probes_converged);
    report.f_norm = ctx->lp_norm(problem.rhs, p);
  }
  return report;
}

ScanGrid default_scan_grid(double t, double s) {
  const double tt = std::max(t, 1.0);
  const double ss = std::max(s, 1.0);
  ScanGrid g;
  g.epsilon = {1.0 / (4.0 * ss), 1.0 / (8.0 * ss)};
  g.lambda = {4.0 * tt, 8.0 * tt, 16.0 * tt};
  for (int k = 1; k <= 6; ++k) {
    g.j.push_back(k);
    g.l.push_back(k);
  }
  return g;
}

ScanResult contraction_scan(const ContextPtr& ctx, double p, const ScanGrid& grid,
                            const NormProbeOptions& options) {
  const int n = ctx->degree();
  std::map<std::tuple<double, double, int>, double> o1_cache;
  std::map<std::pair<double, double>, double> o2_cache;
  std::map<std::pair<double, int>, double> o3_cache;

  ScanResult result;
  for (double eps : grid.epsilon)
    for (double lam : grid.lambda) {
      if (!(eps < lam)) continue;
      for (int j : grid.j)
        for (int l : grid.l) {
          SolverParams sp;
          sp.epsilon = eps;
          sp.lambda = lam;
          sp.j = j;
          sp.l = l;
          sp.p = p;
          ScanRow row{eps, lam, j, l};
          const bool need1 = !o1_cache.count({eps, lam, j});
          const bool need2 = !o2_cache.count({eps, lam});
          const bool need3 = !o3_cache.count({lam, l});
          if (need1 || need2 || need3) {
            const auto parts = three_region_parts(ctx, sp);
            if (need1) o1_cache[{eps, lam, j}] = probe(parts.o1, p, n, options, nullptr);
            if (need2) o2_cache[{eps, lam}] = probe(parts.o2, p, n, options, nullptr);
            if (need3) o3_cache[{lam, l}] = probe(parts.o3, p, n, options, nullptr);
          }
          row.o1 = o1_cache[{eps, lam, j}];
          row.o2 = o2_cache[{eps, lam}];
          row.o3 = o3_cache[{lam, l}];
          result.rows.push_back(row);
        }
    }

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const double s = result.rows[i].sum();
    if (s < 1.0 && (!result.witness || s < result.rows[*result.witness].sum())) result.witness = i;
  }
  return result;
}

}  // namespace opuc
