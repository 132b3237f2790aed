// Acceptance run: one verdict line per criterion AC1..AC10, detail lines
// indented below it. Usage: acceptance <opuc binary> <scratch dir>
//                                      [--expect-fail AC5,AC7]
// Exit status is 0 when the failing set equals the expected-failure set.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "opuc/diagnostics.hpp"
#include "opuc/error.hpp"
#include "opuc/neumann.hpp"
#include "opuc/operators.hpp"
#include "opuc/opuc.hpp"
#include "opuc/szego.hpp"
#include "opuc/weights.hpp"

using namespace opuc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; n *= 2) v.push_back(n);
  return v;
}

const std::vector<std::string> kFamilies = {
    "trig:beta=0.3@norm", "trig:beta=0.5@norm", "trig:beta=0.9@norm", "bs:a=0.5@norm",
    "bs:a=0.9@norm",      "logsing:c=1@norm",   "invlog:c=1@norm",
};

// --- AC1 ---------------------------------------------------------------

Verdict constant_weight() {
  Verdict v;
  const auto t0 = Clock::now();
  const WeightSpec w = build_weight("const@norm");
  const int nmax = 512;
  const auto rec = szego_levinson(moments(w, nmax), nmax);

  double max_alpha = 0.0;
  for (cplx a : rec.alphas()) max_alpha = std::max(max_alpha, std::abs(a));
  v.check(max_alpha <= 1e-12, fmt("max |alpha_k| = %.3e (<= 1e-12)", max_alpha));

  // sup |Phi_n^* - 1| is bounded by the l1 norm of the coefficient error
  std::vector<int> all(nmax);
  std::iota(all.begin(), all.end(), 1);
  const auto phis = rec.phis(all);
  double worst = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Polynomial ps = star(phis[i], all[i]);
    double l1 = std::abs(ps[0] - 1.0);
    for (int k = 1; k <= ps.degree(); ++k) l1 += std::abs(ps[k]);
    worst = std::max(worst, l1);
  }
  v.check(worst <= 1e-10, fmt("max_n ||Phi_n^* - 1||_inf <= %.3e (<= 1e-10)", worst));

  const auto ns = powers_of_two(1, nmax);
  const StudyReport ent = entropy_study(w, ns);
  double worst_e = std::abs(ent.entropy_limit);
  for (const auto& row : ent.rows) worst_e = std::max(worst_e, std::abs(row.entropy));
  v.check(worst_e <= 1e-10, fmt("max |E(n)|, |limit| = %.3e (<= 1e-10)", worst_e));

  const SzegoBoundary S = szego_boundary(w, 4096);
  double worst_s = 0.0;
  for (cplx s : S.samples.values()) worst_s = std::max(worst_s, std::abs(s - 1.0));
  v.check(worst_s <= 1e-12, fmt("max |S - 1| = %.3e (<= 1e-12)", worst_s));

  const double t = since(t0);
  v.check(t < 5.0, fmt("runtime %.2f s (< 5 s)", t));
  return v;
}

// --- AC2 ---------------------------------------------------------------

Verdict residuals() {
  Verdict v;
  const auto t0 = Clock::now();
  for (const auto& spec : kFamilies) {
    const WeightSpec w = build_weight(spec);
    const double tol = default_residual_tolerance(w);
    for (int n : {16, 64, 256}) {
      const auto rs = residual_suite(w, n);
      double worst = 0.0;
      std::string worst_name;
      bool ok = true;
      for (const auto& r : rs) {
        ok = ok && r.pass;
        if (r.value >= worst) {
          worst = r.value;
          worst_name = r.name;
        }
      }
      v.check(ok, fmt("%-20s n=%-3d %zu identities, worst %.2e (%s), tol %.0e", spec.c_str(), n,
                      rs.size(), worst, worst_name.c_str(), tol));
    }
  }
  const double t = since(t0);
  v.check(t < 60.0, fmt("runtime %.1f s (< 60 s)", t));
  return v;
}

// --- AC3 ---------------------------------------------------------------

Verdict cross_algorithm() {
  Verdict v;
  const int n = 64;
  for (const char* spec :
       {"trig:beta=0.3@norm", "trig:beta=0.9@norm", "bs:a=0.5@norm", "bs:a=0.9@norm"}) {
    const WeightSpec w = build_weight(spec);
    const auto mom = moments(w, n);
    const Polynomial lev = szego_levinson(mom, n).phi_star();
    const Polynomial dense = star(dense_oracle(mom, n), n);

    auto ctx = std::make_shared<const OperatorContext>(w, n, n);
    double lo = 1e300, hi = 0.0;
    for (cplx x : ctx->weight()) {
      lo = std::min(lo, x.real());
      hi = std::max(hi, x.real());
    }
    SolverParams sp;
    sp.alpha = 2.0 / (lo + hi);  // minimises sup |1 - alpha w|
    sp.tol = 1e-12;
    sp.max_iter = 100000;
    const NeumannResult nr = neumann_solve(ctx, sp, SolverMode::simple_alpha);

    const double ld = coefficient_distance(lev, dense);
    const double ln = coefficient_distance(lev, nr.phi_star);
    const double dn = coefficient_distance(dense, nr.phi_star);
    v.check(nr.report.converged && std::max({ld, ln, dn}) <= 1e-7,
            fmt("%-20s lev-dense %.1e lev-neumann %.1e dense-neumann %.1e (%d its)", spec, ld,
                ln, dn, nr.report.iterations));
  }
  return v;
}

// --- AC4 ---------------------------------------------------------------

Verdict entropy() {
  Verdict v;
  {
    const WeightSpec w = build_weight("bs:a=0.5@norm");
    const auto ns = powers_of_two(16, 512);
    const StudyReport r = entropy_study(w, ns);
    const double closed = -0.5 * std::log(0.75);
    v.check(std::abs(r.entropy_limit - closed) <= 1e-10,
            fmt("bs:a=0.5 limit %.12f vs -log(0.75)/2 = %.12f", r.entropy_limit, closed));
    const double gap = r.rows.back().gap;
    v.check(gap <= 1e-4, fmt("bs:a=0.5 |E(512) - limit| = %.2e (<= 1e-4)", gap));
  }
  {
    const WeightSpec w = build_weight("logsing:c=1@norm");
    const auto ns = powers_of_two(16, 1024);
    const StudyReport r = entropy_study(w, ns);
    std::string gaps;
    for (const auto& row : r.rows) gaps += fmt(" %.2e", row.gap);
    const StudyFlag* f = r.flag("entropy_gap_nonincreasing");
    v.check(f && f->pass, fmt("logsing:c=1 gaps nonincreasing (slack 1.1):%s", gaps.c_str()));
  }
  return v;
}

// --- AC5 / AC6 -----------------------------------------------------------

Verdict convergence() {
  Verdict v;
  const auto ns = powers_of_two(16, 512);
  std::vector<std::string> families = {"const@norm"};
  families.insert(families.end(), kFamilies.begin(), kFamilies.end());
  for (const auto& spec : families) {
    const WeightSpec w = build_weight(spec);
    const bool extra_p = spec == "logsing:c=1@norm";
    const std::vector<double> ps = extra_p ? std::vector<double>{2.0, 2.1} : std::vector<double>{2.0};
    const StudyReport r = convergence_study(w, ns, ps);
    for (double p : ps) {
      const std::string label = p == 2.0 ? "2" : "2.1";
      const StudyFlag* mono = r.flag("lp_error_nonincreasing_p=" + label);
      const StudyFlag* tenth = r.flag("lp_error_final_below_tenth_p=" + label);
      const std::size_t k = p == 2.0 ? 0 : 1;
      v.check(mono && tenth && mono->pass && tenth->pass,
              fmt("%-20s p=%-3s err(16) %.2e err(512) %.2e ratio %.4f, max step %.3f", spec.c_str(),
                  label.c_str(), r.rows.front().lp_error[k], r.rows.back().lp_error[k],
                  tenth ? tenth->value : NAN, mono ? mono->value : NAN));
    }
  }
  return v;
}

Verdict sup_growth() {
  Verdict v;
  const auto ns = powers_of_two(64, 1024);
  const std::vector<double> ps{2.0};
  for (const char* spec : {"logsing:c=1@norm", "invlog:c=1@norm"}) {
    const StudyReport r = convergence_study(build_weight(spec), ns, ps);
    v.check(r.sup_exponent < 0.5, fmt("%-18s fitted exponent %.4f (< 0.5), sup at 1024 = %.4f",
                                      spec, r.sup_exponent, r.rows.back().sup_norm));
  }
  return v;
}

// --- AC7 ---------------------------------------------------------------

FourierSeries random_series(int lo, int hi, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FourierSeries f(lo, hi);
  for (int k = lo; k <= hi; ++k) f.at(k) = {g(rng), g(rng)};
  return f;
}

double rel_diff(const Samples& a, const Samples& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

Verdict norm_probes() {
  Verdict v;
  {
    const int n = 64;
    auto ctx = OperatorContext::plain(n);
    const NormEstimate e = op_norm_estimate(BandOperator::project(ctx, 1, n), 2.0, -n, n);
    v.check(std::abs(e.value - 1.0) <= 1e-6, fmt("||P_[1,64]||_2 estimate %.12f", e.value));
  }
  {
    const int band = 512;
    const double p = 4.0;
    const double target = 1.0 / std::tan(kPi / 8.0);
    auto ctx = OperatorContext::plain(band);
    NormProbeOptions po;
    // sign(theta) |cot(theta/2)|^a nearly saturates the bound as a -> 1/4
    const CircleGrid fine(1 << 18);
    const GridFunction g(fine, [](double t) {
      return cplx{(t > 0 ? 1.0 : -1.0) * std::pow(std::abs(1.0 / std::tan(t / 2)), 0.249), 0.0};
    });
    po.starts.push_back(analyze(g).rewindowed(-band, band));
    const NormEstimate e = op_norm_estimate(hilbert_operator(ctx), p, -band, band, po);
    const double rel = 1.0 - e.value / target;
    v.check(rel <= 0.02, fmt("||H||_4 lower bound %.6f at band 512, target %.6f, short by %.1f%% "
                             "(<= 2%%)",
                             e.value, target, 100.0 * rel));
  }
  {
    std::mt19937_64 rng(20240917);
    double worst = 0.0;
    for (const auto& spec : kFamilies) {
      const WeightSpec w = build_weight(spec);
      const int n = 64;
      auto base = std::make_shared<const OperatorContext>(w, n, n);
      const Samples f = base->synthesize(random_series(0, n, rng));
      const Samples c1 = commutator_power(base, 1, CommutatorVariant::weight)(f);
      for (double alpha : {0.5, 2.0, 10.0}) {
        auto scaled = std::make_shared<const OperatorContext>(w.scaled(alpha), n, n);
        const Samples ca = commutator_power(scaled, 1, CommutatorVariant::weight)(f);
        worst = std::max(worst, rel_diff(ca, cplx{alpha} * c1));
      }
    }
    v.check(worst <= 1e-12, fmt("[a w, P] = a [w, P]: worst relative gap %.2e (<= 1e-12)", worst));
  }
  {
    double worst = 0.0;
    std::string where;
    NormProbeOptions po;
    po.iters = 30;
    po.restarts = 1;
    for (const auto& spec : kFamilies) {
      const WeightSpec w = build_weight(spec);
      const double t = profile(w, 12).t;
      for (int n : {64, 256}) {
        auto ctx = std::make_shared<const OperatorContext>(w, n, n);
        const BandOperator c1 = commutator_power(ctx, 1, CommutatorVariant::weight);
        for (double p : {2.0, 3.0, 4.0, 6.0, 8.0}) {
          const double ratio = op_norm_estimate(c1, p, 0, n, po).value / (p * p * t);
          if (ratio > worst) {
            worst = ratio;
            where = fmt("%s n=%d p=%g", spec.c_str(), n, p);
          }
        }
      }
    }
    v.check(worst <= 1.0, fmt("max ||[w,P]||_p / (p^2 t) = %.3f at %s (<= 1)", worst,
                              where.c_str()));
  }
  return v;
}

// --- AC8 ---------------------------------------------------------------

Verdict contraction() {
  Verdict v;
  const auto t0 = Clock::now();
  const WeightSpec w = build_weight("logsing:c=1@norm");
  const int n = 256;
  const double p = 2.05;
  const WeightProfile prof = profile(w, 12);
  auto ctx = std::make_shared<const OperatorContext>(w, n, n);
  NormProbeOptions po;
  po.iters = 30;
  po.restarts = 1;
  const ScanResult scan = contraction_scan(ctx, p, default_scan_grid(prof.t, prof.s), po);
  v.check(scan.witness.has_value(), fmt("scan of %zu parameter sets finds a sum < 1",
                                        scan.rows.size()));
  if (!scan.witness) return v;
  const ScanRow& row = scan.rows[*scan.witness];
  v.note(fmt("witness eps=%.5f lambda=%.4f j=%d l=%d: %.4f + %.4f + %.4f = %.4f", row.epsilon,
             row.lambda, row.j, row.l, row.o1, row.o2, row.o3, row.sum()));

  SolverParams sp;
  sp.epsilon = row.epsilon;
  sp.lambda = row.lambda;
  sp.j = row.j;
  sp.l = row.l;
  sp.p = p;
  sp.tol = 1e-12;
  const NeumannResult nr = neumann_solve(ctx, sp, SolverMode::three_region);
  const Polynomial lev = szego_levinson(moments(w, n), n).phi_star();
  const double d = coefficient_distance(nr.phi_star, lev);
  v.check(nr.report.converged && d <= 1e-6,
          fmt("three-region solve: %d iterations, factor %.4f, distance to Levinson %.2e "
              "(<= 1e-6)",
              nr.report.iterations, nr.report.contraction_factor, d));
  v.note(fmt("runtime %.1f s", since(t0)));
  return v;
}

// --- AC9 ---------------------------------------------------------------

Verdict balance() {
  Verdict v;
  const double four_pi_sq = 4.0 * kPi * kPi;
  std::vector<std::string> families = {"const@norm"};
  families.insert(families.end(), kFamilies.begin(), kFamilies.end());
  families.push_back("trig:beta=0.3*logsing:c=1@norm");
  for (const auto& spec : families) {
    const WeightProfile pr = profile(build_weight(spec), 12);
    const double excess = pr.l1_winv - four_pi_sq;
    const bool constant = spec == "const@norm";
    const bool ok = excess >= -1e-8 && (constant ? excess <= 1e-8 : excess > 1e-8);
    v.check(ok, fmt("%-32s ||1/w||_1 - 4pi^2 = %.3e%s", spec.c_str(), excess,
                    constant ? " (equality case)" : ""));
  }
  return v;
}

// --- AC10 --------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism(const std::string& opuc, const fs::path& dir) {
  Verdict v;
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"entropy", "study --kind entropy --weight bs:a=0.5@norm --n 16,32,64,128"},
      {"convergence", "study --kind convergence --weight logsing:c=1@norm --n 16,32,64 --p 2,2.1"},
      {"opnorm", "opnorm --kind commutator --weight trig:beta=0.5@norm --n 32 --p 3,4 --seed 7"},
      {"verify", "verify --weight bs:a=0.9@norm --n 16"},
  };
  for (const auto& [name, args] : runs) {
    std::string bytes[2];
    bool ran = true;
    for (int r = 0; r < 2; ++r) {
      const fs::path out = dir / (name + "_" + std::to_string(r) + ".csv");
      const std::string cmd = "\"" + opuc + "\" " + args + " --out \"" + out.string() + "\" 2>/dev/null";
      // exit 1 (a failed study assertion) still writes the table
      const int status = std::system(cmd.c_str());
      ran = ran && WIFEXITED(status) && WEXITSTATUS(status) <= 1;
      bytes[r] = slurp(out);
    }
    v.check(ran && !bytes[0].empty() && bytes[0] == bytes[1],
            fmt("%-12s %zu bytes, identical across two runs", name.c_str(), bytes[0].size()));
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <opuc binary> <scratch dir> [--expect-fail AC5,AC7]\n",
                 argv[0]);
    return 2;
  }
  const std::string opuc = argv[1];
  const fs::path scratch = argv[2];
  std::set<std::string> expected;
  for (int i = 3; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--expect-fail") {
      std::stringstream ss(argv[i + 1]);
      for (std::string id; std::getline(ss, id, ',');) expected.insert(id);
    }

  const std::vector<std::pair<std::string, std::pair<std::string, std::function<Verdict()>>>>
      criteria = {
          {"AC1", {"constant-weight exactness", constant_weight}},
          {"AC2", {"identity-residual suite", residuals}},
          {"AC3", {"Levinson / dense / Neumann agreement", cross_algorithm}},
          {"AC4", {"entropy limit", entropy}},
          {"AC5", {"L^p convergence of phi_n^* to S", convergence}},
          {"AC6", {"sup-norm growth exponent", sup_growth}},
          {"AC7", {"operator-norm probes", norm_probes}},
          {"AC8", {"three-region contraction", contraction}},
          {"AC9", {"balance inequality", balance}},
          {"AC10", {"determinism", [&] { return determinism(opuc, scratch); }}},
      };

  std::vector<std::string> failed;
  int unexpected = 0;
  for (const auto& [id, item] : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = item.second();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const bool xfail = expected.count(id) > 0;
    std::printf("%-4s %s  %s (%.1f s)%s\n", id.c_str(), v.pass ? "PASS" : "FAIL",
                item.first.c_str(), since(t0),
                !v.pass && xfail ? "  [expected failure]" : (v.pass && xfail ? "  [unexpected pass]" : ""));
    for (const auto& n : v.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    if (!v.pass) failed.push_back(id);
    if (v.pass == xfail) ++unexpected;
  }
  std::printf("summary: %zu/%zu criteria pass", criteria.size() - failed.size(), criteria.size());
  if (!failed.empty()) {
    std::printf("; failing:");
    for (const auto& id : failed) std::printf(" %s", id.c_str());
  }
  std::printf("\n");
  return unexpected == 0 ? 0 : 1;
}
