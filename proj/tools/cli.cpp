#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "opuc/diagnostics.hpp"
#include "opuc/error.hpp"
#include "opuc/neumann.hpp"
#include "opuc/operators.hpp"
#include "opuc/opuc.hpp"
#include "opuc/weights.hpp"

namespace opuc::cli {
namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Quotes a text field when it carries a separator or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

json pair_array(std::span<const cplx> v) {
  json a = json::array();
  for (cplx c : v) a.push_back({c.real(), c.imag()});
  return a;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Output goes to --out when given, else stdout. The destination is opened
// before any work starts so an unwritable path fails fast with exit 3.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot open '" + path_ + "' for writing");
    }
  }
  void write(const std::string& text) {
    if (path_.empty()) {
      std::cout << text << std::flush;
      return;
    }
    file_ << text;
    file_.flush();
    if (!file_) throw IoError("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

std::string resolved_format(const RunConfig& cfg, const std::string& fallback) {
  if (!cfg.format.empty()) return cfg.format;
  if (cfg.out.size() > 5 && cfg.out.ends_with(".json")) return "json";
  if (cfg.out.size() > 4 && cfg.out.ends_with(".csv")) return "csv";
  return fallback;
}

WeightSpec require_weight(const RunConfig& cfg) {
  if (cfg.weight.empty()) throw UsageError("--weight is required");
  return build_weight(cfg.weight);
}

int require_degree(const RunConfig& cfg) {
  if (cfg.n_list.empty()) throw UsageError("--n is required");
  return cfg.n_list.back();
}

void report_flags(const StudyReport& r) {
  for (const auto& f : r.flags)
    std::cerr << (f.pass ? "PASS " : "FAIL ") << f.name << " value=" << num(f.value)
              << " threshold=" << num(f.threshold) << '\n';
}

json flags_json(const StudyReport& r) {
  json a = json::array();
  for (const auto& f : r.flags)
    a.push_back({{"name", f.name}, {"value", number_or_null(f.value)},
                 {"threshold", f.threshold}, {"pass", f.pass}});
  return a;
}

StudyOptions study_options(const RunConfig& cfg) {
  StudyOptions o;
  o.grid = cfg.grid;
  o.profile_resolution = 12;
  return o;
}

NormProbeOptions probe_options(const RunConfig& cfg) {
  NormProbeOptions o;
  o.seed = cfg.seed;
  return o;
}

// --- compute ---------------------------------------------------------------

int cmd_compute(const RunConfig& cfg) {
  const WeightSpec w = require_weight(cfg);
  const int n = require_degree(cfg);
  Sink sink(cfg.out);

  const auto mom = moments(w, n);
  const auto rec = szego_levinson(mom, n);
  const Polynomial ps = rec.phi_star();
  const auto& seq = rec.sequence();

  if (resolved_format(cfg, "json") == "json") {
    json doc;
    doc["spec"] = w.text();
    doc["n"] = n;
    doc["moments"] = pair_array(mom);
    doc["alphas"] = pair_array(seq.alphas);
    doc["norms_sq"] = seq.norms_sq;
    doc["phi_star_coeffs"] = pair_array(ps.coeffs());
    sink.write(doc.dump(2) + "\n");
    return kPass;
  }
  std::ostringstream os;
  os << "k,moment_re,moment_im,alpha_re,alpha_im,norm_sq,phi_star_re,phi_star_im\n";
  for (int k = 0; k <= n; ++k) {
    os << k << ',' << num(mom[k].real()) << ',' << num(mom[k].imag()) << ',';
    if (k < n)
      os << num(seq.alphas[k].real()) << ',' << num(seq.alphas[k].imag());
    else
      os << ',';
    os << ',' << num(seq.norms_sq[k]) << ',' << num(ps[k].real()) << ',' << num(ps[k].imag())
       << '\n';
  }
  sink.write(os.str());
  return kPass;
}

// --- study -----------------------------------------------------------------

int cmd_entropy(const RunConfig& cfg) {
  const WeightSpec w = require_weight(cfg);
  if (cfg.n_list.empty()) throw UsageError("--n is required");
  Sink sink(cfg.out);
  const StudyReport r = entropy_study(w, cfg.n_list, study_options(cfg));

  if (resolved_format(cfg, "csv") == "json") {
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"n", row.n}, {"entropy", row.entropy}, {"gap", row.gap}});
    json doc{{"spec", r.spec}, {"kind", "entropy"}, {"limit", r.entropy_limit},
             {"rows", rows}, {"flags", flags_json(r)}};
    sink.write(doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n,entropy,limit,gap\n";
    for (const auto& row : r.rows)
      os << row.n << ',' << num(row.entropy) << ',' << num(r.entropy_limit) << ','
         << num(row.gap) << '\n';
    sink.write(os.str());
  }
  report_flags(r);
  return r.passed() ? kPass : kAssertionFailed;
}

int cmd_convergence(const RunConfig& cfg) {
  const WeightSpec w = require_weight(cfg);
  if (cfg.n_list.empty()) throw UsageError("--n is required");
  const std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{2.0} : cfg.p_list;
  Sink sink(cfg.out);
  const StudyReport r = convergence_study(w, cfg.n_list, ps, study_options(cfg));

  if (resolved_format(cfg, "csv") == "json") {
    json rows = json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"n", row.n}, {"norm_2w", row.norm_2w}, {"sup_norm", row.sup_norm},
                      {"lp_error", row.lp_error}});
    json slopes = json::array();
    for (double s : r.decay_slopes) slopes.push_back(number_or_null(s));
    json doc{{"spec", r.spec},         {"kind", "convergence"},
             {"p", ps},                {"rows", rows},
             {"decay_slopes", slopes}, {"sup_exponent", number_or_null(r.sup_exponent)},
             {"flags", flags_json(r)}};
    sink.write(doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n,norm_2w,sup_norm";
    for (double p : ps) os << ",lp_error_p=" << num(p);
    os << '\n';
    for (const auto& row : r.rows) {
      os << row.n << ',' << num(row.norm_2w) << ',' << num(row.sup_norm);
      for (double e : row.lp_error) os << ',' << num(e);
      os << '\n';
    }
    sink.write(os.str());
  }
  for (std::size_t k = 0; k < ps.size(); ++k)
    std::cerr << "decay slope p=" << num(ps[k]) << ": " << num(r.decay_slopes[k]) << '\n';
  std::cerr << "sup exponent: " << num(r.sup_exponent) << '\n';
  report_flags(r);
  return r.passed() ? kPass : kAssertionFailed;
}

SolverParams solver_params(const RunConfig& cfg) {
  SolverParams sp;
  sp.alpha = cfg.alpha.value_or(0.0);
  sp.epsilon = cfg.epsilon.value_or(0.0);
  sp.lambda = cfg.lambda.value_or(0.0);
  if (!cfg.orders.empty()) {
    if (cfg.orders.size() != 2) throw UsageError("--orders expects j,l");
    sp.j = cfg.orders[0];
    sp.l = cfg.orders[1];
  }
  sp.p = cfg.p_list.empty() ? 2.0 : cfg.p_list.front();
  if (cfg.tol) sp.tol = *cfg.tol;
  sp.seed = cfg.seed;
  return sp;
}

SolverMode solver_mode(const RunConfig& cfg) {
  if (!cfg.mode.empty()) return parse_solver_mode(cfg.mode);
  if (cfg.alpha && !cfg.epsilon && !cfg.lambda) return SolverMode::simple_alpha;
  return SolverMode::three_region;
}

// Three-region scans cost one probe per distinct operator; the CLI trims
// the probe to a single restart of 30 steps.
NormProbeOptions scan_probe(const RunConfig& cfg) {
  NormProbeOptions o = probe_options(cfg);
  o.iters = 30;
  o.restarts = 1;
  return o;
}

constexpr double kAgreementTolerance = 1e-6;

int cmd_contraction(const RunConfig& cfg) {
  const WeightSpec w = require_weight(cfg);
  const int n = require_degree(cfg);
  SolverParams sp = solver_params(cfg);
  const SolverMode mode = solver_mode(cfg);
  const bool want_json = resolved_format(cfg, "csv") == "json";
  Sink sink(cfg.out);

  auto ctx = std::make_shared<const OperatorContext>(w, n, n);
  const Polynomial levinson = szego_levinson(moments(w, n), n).phi_star();

  if (mode != SolverMode::three_region) {
    validate(sp, mode);
    ReportOptions ro;
    ro.probe = probe_options(cfg);
    ro.l_scan_max = 0;
    const ContractionReport rep = contraction_report(ctx, sp, mode, ro);
    double dist = std::numeric_limits<double>::quiet_NaN();
    ContractionReport solve;
    std::string failure;
    try {
      const NeumannResult res = neumann_solve(ctx, sp, mode);
      solve = res.report;
      dist = coefficient_distance(res.phi_star, levinson);
    } catch (const NoContraction& e) {
      failure = e.what();
      solve.contraction_factor = e.factor();
    }
    const bool pass = failure.empty() && solve.converged && dist <= kAgreementTolerance;
    if (want_json) {
      json doc{{"spec", w.text()},
               {"kind", "contraction"},
               {"mode", std::string(to_string(mode))},
               {"n", n},
               {"p", sp.p},
               {"norm_op_lower_bound", number_or_null(rep.norm_op)},
               {"f_norm", number_or_null(rep.f_norm)},
               {"iterations", solve.iterations},
               {"converged", solve.converged},
               {"contraction_factor", number_or_null(solve.contraction_factor)},
               {"levinson_distance", number_or_null(dist)},
               {"pass", pass}};
      sink.write(doc.dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "mode,n,p,norm_op_lower_bound,f_norm,iterations,converged,contraction_factor,"
            "levinson_distance\n";
      os << to_string(mode) << ',' << n << ',' << num(sp.p) << ',' << num(rep.norm_op) << ','
         << num(rep.f_norm) << ',' << solve.iterations << ',' << (solve.converged ? 1 : 0) << ','
         << num(solve.contraction_factor) << ',' << num(dist) << '\n';
      sink.write(os.str());
    }
    if (!failure.empty()) std::cerr << "FAIL " << failure << '\n';
    std::cerr << (pass ? "PASS" : "FAIL") << " neumann_matches_levinson distance=" << num(dist)
              << " threshold=" << num(kAgreementTolerance) << '\n';
    return pass ? kPass : kAssertionFailed;
  }

  ScanGrid grid;
  if (cfg.epsilon || cfg.lambda || !cfg.orders.empty()) {
    if (!cfg.epsilon || !cfg.lambda) throw UsageError("--eps and --lambda go together");
    validate(sp, mode);
    grid = {{sp.epsilon}, {sp.lambda}, {sp.j}, {sp.l}};
  } else {
    const WeightProfile prof = profile(w, 12);
    grid = default_scan_grid(prof.t, prof.s);
  }
  const ScanResult scan = contraction_scan(ctx, sp.p, grid, scan_probe(cfg));

  double dist = std::numeric_limits<double>::quiet_NaN();
  ContractionReport solve;
  std::string failure;
  if (scan.witness) {
    const ScanRow& row = scan.rows[*scan.witness];
    sp.epsilon = row.epsilon;
    sp.lambda = row.lambda;
    sp.j = row.j;
    sp.l = row.l;
    try {
      const NeumannResult res = neumann_solve(ctx, sp, mode);
      solve = res.report;
      dist = coefficient_distance(res.phi_star, levinson);
    } catch (const NoContraction& e) {
      failure = e.what();
    }
  } else {
    failure = "no scanned parameter set has o1 + o2 + o3 < 1";
  }
  const bool pass = failure.empty() && solve.converged && dist <= kAgreementTolerance;

  if (want_json) {
    json rows = json::array();
    for (const auto& r : scan.rows)
      rows.push_back({{"epsilon", r.epsilon}, {"lambda", r.lambda}, {"j", r.j}, {"l", r.l},
                      {"o1", r.o1}, {"o2", r.o2}, {"o3", r.o3}, {"sum", r.sum()}});
    json doc{{"spec", w.text()},
             {"kind", "contraction"},
             {"mode", "three_region"},
             {"n", n},
             {"p", sp.p},
             {"rows", rows},
             {"witness", scan.witness ? json(*scan.witness) : json(nullptr)},
             {"iterations", solve.iterations},
             {"converged", solve.converged},
             {"levinson_distance", number_or_null(dist)},
             {"pass", pass}};
    sink.write(doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "epsilon,lambda,j,l,o1,o2,o3,sum\n";
    for (const auto& r : scan.rows)
      os << num(r.epsilon) << ',' << num(r.lambda) << ',' << r.j << ',' << r.l << ','
         << num(r.o1) << ',' << num(r.o2) << ',' << num(r.o3) << ',' << num(r.sum()) << '\n';
    sink.write(os.str());
  }
  if (scan.witness) {
    const ScanRow& row = scan.rows[*scan.witness];
    std::cerr << "witness eps=" << num(row.epsilon) << " lambda=" << num(row.lambda)
              << " j=" << row.j << " l=" << row.l << " sum=" << num(row.sum()) << '\n';
    std::cerr << "neumann iterations=" << solve.iterations
              << " factor=" << num(solve.contraction_factor) << '\n';
  }
  if (!failure.empty()) std::cerr << "FAIL " << failure << '\n';
  std::cerr << (pass ? "PASS" : "FAIL") << " neumann_matches_levinson distance=" << num(dist)
            << " threshold=" << num(kAgreementTolerance) << '\n';
  return pass ? kPass : kAssertionFailed;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
  const WeightSpec w = require_weight(cfg);
  if (cfg.n_list.empty()) throw UsageError("--n is required");
  Sink sink(cfg.out);
  bool all = true;
  std::ostringstream os;
  json rows = json::array();
  os << "n,identity,residual,tolerance,pass\n";
  for (int n : cfg.n_list) {
    for (const auto& r : residual_suite(w, n, cfg.tol)) {
      all = all && r.pass;
      os << n << ',' << csv_field(r.name) << ',' << num(r.value) << ',' << num(r.tolerance) << ','
         << (r.pass ? "pass" : "FAIL") << '\n';
      rows.push_back({{"n", n}, {"identity", r.name}, {"residual", r.value},
                      {"tolerance", r.tolerance}, {"pass", r.pass}});
    }
  }
  if (resolved_format(cfg, "csv") == "json")
    sink.write(json{{"spec", w.text()}, {"residuals", rows}, {"pass", all}}.dump(2) + "\n");
  else
    sink.write(os.str());
  return all ? kPass : kAssertionFailed;
}

// --- opnorm ----------------------------------------------------------------

struct ProbeTarget {
  BandOperator op;
  int lo, hi;
};

ProbeTarget probe_target(const RunConfig& cfg, int n) {
  const std::string& k = cfg.kind;
  if (k == "projection") {
    auto ctx = OperatorContext::plain(n);
    return {BandOperator::project(ctx, 1, n), -n, n};
  }
  if (k == "hilbert") {
    auto ctx = OperatorContext::plain(n);
    return {hilbert_operator(ctx), -n, n};
  }
  const WeightSpec w = require_weight(cfg);
  auto ctx = std::make_shared<const OperatorContext>(w, n, n);
  const int j = cfg.orders.empty() ? 1 : cfg.orders.front();
  if (k == "commutator") return {commutator_power(ctx, j, CommutatorVariant::weight), 0, n};
  if (k == "commutator_inverse")
    return {commutator_power(ctx, j, CommutatorVariant::inverse_weight), 0, n};
  if (k == "split_b") return {split_operator(ctx, j, SplitVariant::B), 0, n};
  if (k == "split_d") return {split_operator(ctx, j, SplitVariant::D), 0, n};
  // solver
  const SolverMode mode = solver_mode(cfg);
  const SolverParams sp = solver_params(cfg);
  validate(sp, mode);
  return {fixed_point_problem(ctx, sp, mode).op, 0, n};
}

int cmd_opnorm(const RunConfig& cfg) {
  if (cfg.n_list.empty()) throw UsageError("--n is required");
  const std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{2.0} : cfg.p_list;
  Sink sink(cfg.out);
  NormProbeOptions po = probe_options(cfg);
  std::ostringstream os;
  json rows = json::array();
  os << "operator,n,p,lower_bound,converged,iterations\n";
  for (int n : cfg.n_list) {
    const ProbeTarget t = probe_target(cfg, n);
    for (double p : ps) {
      const NormEstimate e = op_norm_estimate(t.op, p, t.lo, t.hi, po);
      os << cfg.kind << ',' << n << ',' << num(p) << ',' << num(e.value) << ','
         << (e.converged ? 1 : 0) << ',' << e.iterations << '\n';
      rows.push_back({{"operator", cfg.kind}, {"n", n}, {"p", p}, {"lower_bound", e.value},
                      {"converged", e.converged}, {"iterations", e.iterations}});
    }
  }
  if (resolved_format(cfg, "csv") == "json")
    sink.write(json{{"estimates", rows}}.dump(2) + "\n");
  else
    sink.write(os.str());
  return kPass;
}

// --- profile ---------------------------------------------------------------

int cmd_profile(const RunConfig& cfg) {
  const WeightSpec w = require_weight(cfg);
  int resolution = 12;
  if (cfg.grid > 0) resolution = std::countr_zero(static_cast<unsigned>(cfg.grid));
  Sink sink(cfg.out);
  const WeightProfile p = profile(w, resolution);
  const P0Suggestion g = suggest_p0(p.t, p.s, P0Regime::general);
  const P0Suggestion ge = suggest_p0(p.t, p.s, P0Regime::w_ge_1);
  const P0Suggestion le = suggest_p0(p.t, p.s, P0Regime::w_le_1);

  const std::vector<std::pair<std::string, double>> fields = {
      {"t", p.t},
      {"s", p.s},
      {"l1_w", p.l1_w},
      {"l1_winv", p.l1_winv},
      {"szego_integral", p.szego_integral},
      {"a2_char", p.a2_char},
      {"resolution", p.resolution},
      {"balance_constant", p.balance_constant},
      {"lower_bound_ok", p.lower_bound_ok ? 1.0 : 0.0},
      {"balance_ok", p.balance_ok ? 1.0 : 0.0},
      {"p0_general", g.value},
      {"p0_general_clamped", g.clamped},
      {"p0_w_ge_1", ge.value},
      {"p0_w_ge_1_clamped", ge.clamped},
      {"p0_w_le_1", le.value},
      {"p0_w_le_1_clamped", le.clamped},
  };
  if (resolved_format(cfg, "csv") == "json") {
    json doc{{"spec", w.text()}};
    for (const auto& [k, v] : fields) doc[k] = number_or_null(v);
    sink.write(doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : fields) os << k << ',' << num(v) << '\n';
    sink.write(os.str());
  }
  return p.lower_bound_ok && p.balance_ok ? kPass : kAssertionFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--weight", cfg.weight, "weight spec, e.g. trig:beta=0.5@norm");
  sub->add_option("--n", cfg.n_list, "comma-separated degrees")->delimiter(',');
  sub->add_option("--p", cfg.p_list, "comma-separated exponents")->delimiter(',');
  sub->add_option("--alpha", cfg.alpha, "simple_alpha parameter");
  sub->add_option("--eps", cfg.epsilon, "lower threshold epsilon");
  sub->add_option("--lambda", cfg.lambda, "upper threshold Lambda");
  sub->add_option("--orders", cfg.orders, "orders j,l")->delimiter(',')->expected(1, 2);
  sub->add_option("--mode", cfg.mode,
                  "solver mode: simple_alpha, three_region, small_st, w_ge_1, w_le_1");
  sub->add_option("--grid", cfg.grid, "grid size (power of two)")
      ->check([](const std::string& s) -> std::string {
        try {
          const long v = std::stol(s);
          if (v >= 4 && std::has_single_bit(static_cast<unsigned long>(v))) return {};
        } catch (...) {
        }
        return "--grid must be a power of two >= 4";
      });
  sub->add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "seed for norm-probe restarts");
  sub->add_option("--out", cfg.out, "output path (default: stdout)");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"opuc: orthogonal polynomials on the unit circle lab", "opuc"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* compute = app.add_subcommand("compute", "Verblunsky data and Phi_n^* of a weight");
  auto* study = app.add_subcommand("study", "entropy, convergence or contraction study");
  auto* verify = app.add_subcommand("verify", "identity-residual suite");
  auto* opnorm = app.add_subcommand("opnorm", "operator-norm lower bounds");
  auto* prof = app.add_subcommand("profile", "BMO profile, balance check and p0 suggestions");
  for (auto* s : {compute, study, verify, opnorm, prof}) add_common(s, cfg);
  study->add_option("--kind", cfg.kind, "study kind")
      ->required()
      ->check(CLI::IsMember({"entropy", "convergence", "contraction"}));
  opnorm->add_option("--kind", cfg.kind, "operator")
      ->required()
      ->check(CLI::IsMember({"projection", "hilbert", "commutator", "commutator_inverse",
                             "split_b", "split_d", "solver"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  std::sort(cfg.n_list.begin(), cfg.n_list.end());
  cfg.n_list.erase(std::unique(cfg.n_list.begin(), cfg.n_list.end()), cfg.n_list.end());

  try {
    if (!cfg.n_list.empty() && cfg.n_list.front() < 1) throw UsageError("--n values must be >= 1");
    for (double p : cfg.p_list)
      if (!(p >= 1.0)) throw UsageError("--p values must be >= 1");
    if (compute->parsed()) return cmd_compute(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (opnorm->parsed()) return cmd_opnorm(cfg);
    if (prof->parsed()) return cmd_profile(cfg);
    if (cfg.kind == "entropy") return cmd_entropy(cfg);
    if (cfg.kind == "convergence") return cmd_convergence(cfg);
    return cmd_contraction(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAssertionFailed;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> copy = args;
  std::vector<char*> argv;
  argv.reserve(copy.size() + 1);
  for (auto& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(copy.size()), argv.data());
}

}  // namespace opuc::cli
