#include "opuc/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "opuc/error.hpp"
#include "opuc/operators.hpp"
#include "opuc/opuc.hpp"
#include "opuc/parallel.hpp"
#include "opuc/szego.hpp"

namespace opuc {

bool StudyReport::passed() const {
  return std::all_of(flags.begin(), flags.end(), [](const StudyFlag& f) { return f.pass; });
}

const StudyFlag* StudyReport::flag(std::string_view name) const {
  for (const auto& f : flags)
    if (f.name == name) return &f;
  return nullptr;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgument("log_log_slope: need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

std::vector<int> sorted_degrees(std::span<const int> n_list) {
  if (n_list.empty()) throw InvalidArgument("study: empty n list");
  std::vector<int> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.front() < 1) throw InvalidArgument("study: degrees must be >= 1");
  return ns;
}

void require_normalized(const WeightSpec& w) {
  const double mass = integrate_against(w, [&](double t) { return w(t); });
  if (std::abs(mass - 1.0) > 1e-8)
    throw InvalidArgument("study requires a normalized weight (integral of w is " +
                          std::to_string(mass) + "); append @norm");
}

std::string p_label(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

// x[i] <= slack * x[i-1] for every i, with values under the floor read as the floor.
StudyFlag nonincreasing_flag(std::string name, std::span<const double> x, double slack,
                             double floor) {
  double worst = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    worst = std::max(worst, std::max(x[i], floor) / std::max(x[i - 1], floor));
  return {std::move(name), worst, slack, worst <= slack};
}

void fill_profile(StudyReport& r, const WeightSpec& w, const StudyOptions& options) {
  if (options.profile_resolution <= 0) return;
  const WeightProfile prof = profile(w, options.profile_resolution);
  r.t = prof.t;
  r.s = prof.s;
}

}  // namespace

// ---------------------------------------------------------------------------

StudyReport entropy_study(const WeightSpec& w, std::span<const int> n_list,
                          const StudyOptions& options) {
  require_normalized(w);
  const std::vector<int> ns = sorted_degrees(n_list);
  const int n_max = ns.back();

  StudyReport report;
  report.spec = w.text();
  fill_profile(report, w, options);
  report.entropy_limit = log_szego_mean(w);

  const auto rec = szego_levinson(moments(w, n_max), n_max);
  const auto phis = rec.phis(ns);
  const QuadratureGrid q = quadrature_for(w, n_max);
  const auto wq = q.sample_real([&](double t) { return w(t); });

  report.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t r) {
    const int n = ns[r];
    const double scale = 1.0 / std::sqrt(rec.sequence().norms_sq[n]);
    const auto vals = q.synthesize(phis[r].as_series());
    std::vector<double> integrand(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double a = std::max(std::abs(vals[i]) * scale, 1e-300);
      integrand[i] = a * a * std::log(a) * wq[i];
    }
    StudyRow& row = report.rows[r];
    row.n = n;
    row.entropy = q.integrate(integrand);
    row.gap = std::abs(row.entropy - report.entropy_limit);
    row.norm_2w = std::sqrt(rec.sequence().norms_sq[n]);
  });

  std::vector<double> gaps;
  for (const auto& row : report.rows) gaps.push_back(row.gap);
  report.flags.push_back(
      nonincreasing_flag("entropy_gap_nonincreasing", gaps, options.slack, options.noise_floor));
  return report;
}

// ---------------------------------------------------------------------------

StudyReport convergence_study(const WeightSpec& w, std::span<const int> n_list,
                              std::span<const double> p_list, const StudyOptions& options) {
  const std::vector<int> ns = sorted_degrees(n_list);
  if (p_list.empty()) throw InvalidArgument("convergence_study: empty p list");
  for (double p : p_list)
    if (!(p >= 1.0)) throw InvalidArgument("convergence_study: p must be >= 1");
  const int n_max = ns.back();

  StudyReport report;
  report.spec = w.text();
  report.p_list.assign(p_list.begin(), p_list.end());
  fill_profile(report, w, options);

  // S of a singular weight is itself singular; the L^p distance only settles
  // once the grid resolves the spike, hence the floor of 2^20 nodes.
  int K = options.grid;
  if (K <= 0) {
    K = static_cast<int>(std::bit_ceil(static_cast<unsigned>(64 * (n_max + 1))));
    if (w.has_singularities()) K = std::max(K, 1 << 20);
  }
  const CircleGrid grid(K);
  const SzegoBoundary S = szego_boundary(w, K);

  const auto rec = szego_levinson(moments(w, n_max), n_max);
  const auto phis = rec.phis(ns);

  report.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t r) {
    const int n = ns[r];
    const Polynomial ps = star(phis[r], n);
    const double norm = std::sqrt(rec.sequence().norms_sq[n]);
    const GridFunction vals = synthesize(ps.as_series(), grid);
    std::vector<cplx> diff(K);
    for (int m = 0; m < K; ++m) diff[m] = vals[m] / norm - S.samples[m];
    const GridFunction d(grid, std::move(diff));

    StudyRow& row = report.rows[r];
    row.n = n;
    row.norm_2w = norm;
    for (double p : p_list) row.lp_error.push_back(lp_norm(d, p));
    const int Ks = static_cast<int>(std::bit_ceil(static_cast<unsigned>(64 * (n + 1))));
    row.sup_norm = evaluate(ps, std::max(Ks, 4)).sup_norm;
  });

  for (std::size_t k = 0; k < p_list.size(); ++k) {
    const std::string label = p_label(p_list[k]);
    std::vector<double> errs, fit_x, fit_y;
    for (const auto& row : report.rows) {
      errs.push_back(row.lp_error[k]);
      if (row.lp_error[k] > options.noise_floor) {
        fit_x.push_back(row.n);
        fit_y.push_back(row.lp_error[k]);
      }
    }
    report.decay_slopes.push_back(fit_x.size() >= 2
                                      ? log_log_slope(fit_x, fit_y)
                                      : std::numeric_limits<double>::quiet_NaN());
    report.flags.push_back(nonincreasing_flag("lp_error_nonincreasing_p=" + label, errs,
                                              options.slack, options.noise_floor));
    const double first = std::max(errs.front(), options.noise_floor);
    const double last = std::max(errs.back(), options.noise_floor);
    const double ratio = last / first;
    report.flags.push_back({"lp_error_final_below_tenth_p=" + label, ratio, 0.1,
                            ratio < 0.1 || last <= options.noise_floor});
  }

  std::vector<double> sx, sy;
  for (const auto& row : report.rows)
    if (row.n >= options.sup_fit_from) {
      sx.push_back(row.n);
      sy.push_back(row.sup_norm);
    }
  if (sx.size() < 2) {
    sx.clear();
    sy.clear();
    for (const auto& row : report.rows) {
      sx.push_back(row.n);
      sy.push_back(row.sup_norm);
    }
  }
  if (sx.size() >= 2) {
    report.sup_exponent = log_log_slope(sx, sy);
    report.flags.push_back(
        {"sup_exponent_below_half", report.sup_exponent, 0.5, report.sup_exponent < 0.5});
  }
  return report;
}

// ---------------------------------------------------------------------------

double default_residual_tolerance(const WeightSpec& w) {
  return w.has_singularities() ? 1e-6 : 1e-7;
}

std::vector<Residual> residual_suite(const WeightSpec& w, int n, std::optional<double> tolerance) {
  if (n < 1) throw InvalidArgument("residual_suite: n must be >= 1");
  const double tol = tolerance.value_or(default_residual_tolerance(w));
  std::vector<Residual> out;
  const auto add = [&](std::string name, double value, double t) {
    out.push_back({std::move(name), value, t, value <= t});
  };

  const auto c = moments(w, n);
  const auto rec = szego_levinson(c, n);
  const auto ctx = std::make_shared<const OperatorContext>(w, n, n);
  const auto l2 = [&](const Samples& f) { return ctx->lp_norm(f, 2.0); };
  // relative to the larger of ||a|| and ||ref|| (P Phi^* vanishes for constant w)
  const auto rel = [&](const Samples& a, const Samples& b, const Samples& ref) {
    const double d = l2(a - b);
    const double scale = std::max(l2(a), l2(ref));
    return d == 0.0 ? 0.0 : d / scale;
  };

  const Samples phi = ctx->synthesize(rec.phi().as_series());
  const Samples ps = ctx->synthesize(rec.phi_star().as_series());
  const Samples& wv = ctx->weight();
  const Samples one = ctx->constant(1.0);
  const Samples wps = hadamard(wv, ps);
  const Samples pps = ctx->project(ps, 1, n);

  // Orthogonality and the annihilation it implies for Phi^*.
  const Samples wphi = hadamard(wv, phi);
  add("orthogonality P[0,n-1](w Phi_n)", l2(ctx->project(wphi, 0, n - 1)) / l2(wphi), tol);
  add("annihilation P[1,n](w Phi_n^*)", l2(ctx->project(wps, 1, n)) / l2(wps), tol);

  // |Phi^*| = |Phi| on the circle.
  {
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      worst = std::max(worst, std::abs(std::abs(phi[i]) - std::abs(ps[i])));
      scale = std::max(scale, std::abs(phi[i]));
    }
    add("modulus |Phi_n^*| = |Phi_n|", worst / scale, tol);
  }

  // Norm recursion against a direct quadrature of ||Phi_n||^2_w.
  {
    std::vector<double> sq(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) sq[i] = std::norm(phi[i]) * wv[i].real();
    const double direct = ctx->grid().integrate(sq);
    add("norm recursion ||Phi_n||^2", std::abs(direct - rec.norm_sq()) / direct, tol);
  }

  // Levinson against the dense Toeplitz solve, tolerance scaled by conditioning.
  try {
    const Polynomial dense = dense_oracle(c, n);
    const double cond = toeplitz_condition(c, n);
    double scale = 0.0;
    for (auto v : rec.phi().coeffs()) scale += std::norm(v);
    add("levinson vs dense", coefficient_distance(rec.phi(), dense) / std::sqrt(scale),
        std::max(tol, cond * 1e-14));
  } catch (const IllConditioned&) {
    // no trustworthy dense reference at this size
  }

  // Fixed-point forms.
  for (double alpha : {0.0, 1.0, kTwoPi}) {
    Samples m(wv.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 1.0 - alpha * wv[i].real();
    const Samples rhs = one + ctx->project(hadamard(m, ps), 1, n);
    const std::string label = alpha == kTwoPi ? "2pi" : (alpha == 0.0 ? "0" : "1");
    add("fixed point 1 + P((1 - a w) Phi^*), a=" + label, rel(ps, rhs, ps), tol);
  }
  const BandOperator c1 = commutator_power(ctx, 1, CommutatorVariant::weight);
  const BandOperator ct1 = commutator_power(ctx, 1, CommutatorVariant::inverse_weight);
  add("fixed point 1 + (1/w)[w,P] Phi^*",
      rel(ps, one + hadamard(ctx->inverse_weight(), c1(ps)), ps), tol);
  add("fixed point 1 - [1/w,P](w Phi^*)", rel(ps, one - ct1(wps), ps), tol);

  // Commutator expansions of w^{+-j} P Phi^*.
  std::vector<BandOperator> C, Ct;
  for (int l = 0; l <= 4; ++l) {
    C.push_back(commutator_power(ctx, l, CommutatorVariant::weight));
    Ct.push_back(commutator_power(ctx, l, CommutatorVariant::inverse_weight));
  }
  const auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int j = 1; j <= 3; ++j) {
    const Samples lhs = hadamard(ctx->weight_power(j), pps);
    const Samples ref = hadamard(ctx->weight_power(j), ps);
    Samples rhs(lhs.size());
    for (int l = 1; l <= j; ++l) {
      const Samples term = C[l](hadamard(ctx->weight_power(j - l), ps));
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += binom(j - 1, l - 1) * term[i];
    }
    add("expansion w^" + std::to_string(j) + " P Phi^*", rel(lhs, rhs, ref), tol);

    const Samples lhs_inv = hadamard(ctx->weight_power(-j), pps);
    const Samples ref_inv = hadamard(ctx->weight_power(-j), ps);
    Samples rhs_inv(lhs.size());
    for (int l = 0; l <= j; ++l) {
      const Samples term = Ct[l + 1](hadamard(ctx->weight_power(-(j - l)), wps));
      for (std::size_t i = 0; i < rhs_inv.size(); ++i) rhs_inv[i] -= binom(j, l) * term[i];
    }
    add("expansion w^-" + std::to_string(j) + " P Phi^*", rel(lhs_inv, rhs_inv, ref_inv), tol);
  }

  // Split representations w^{+-j} Phi^* = y''_j + B_j Phi^*, z''_j + D_j Phi^*.
  for (int j = 1; j <= 2; ++j) {
    const auto terms = inhomogeneous_terms(ctx, j);
    const Samples lhs = hadamard(ctx->weight_power(j), ps);
    add("split w^" + std::to_string(j) + " Phi^* = y''_j + B_j Phi^*",
        rel(lhs, terms.y + split_operator(ctx, j, SplitVariant::B)(ps), lhs), tol);
    const Samples lhs_inv = hadamard(ctx->weight_power(-j), ps);
    add("split w^-" + std::to_string(j) + " Phi^* = z''_j + D_j Phi^*",
        rel(lhs_inv, terms.z + split_operator(ctx, j, SplitVariant::D)(ps), lhs_inv), tol);
  }

  // Band projection assembled from shifted Riesz projections.
  {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    FourierSeries f(-2 * n, 2 * n);
    for (int k = -2 * n; k <= 2 * n; ++k) f.at(k) = cplx{normal(rng), normal(rng)};
    const FourierSeries a = band_projection_via_riesz(f, n);
    const FourierSeries b = project(f, 1, n);
    add("band projection via Riesz", (a - b).l2_norm() / b.l2_norm(), tol);
  }

  // Cauchy-Schwarz: ||w||_1 ||1/w||_1 >= 4 pi^2.
  {
    const double l1 = integrate_against(w, [&](double t) { return w(t); });
    const double l1_inv = integrate_against(w, [&](double t) { return w.inverse(t); });
    add("balance ||w||_1 ||1/w||_1 >= 4pi^2",
        std::max(0.0, 1.0 - l1 * l1_inv / (4.0 * kPi * kPi)), 1e-8);
  }
  return out;
}

}  // namespace opuc
