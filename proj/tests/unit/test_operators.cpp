#include <doctest.h>

#include <cmath>
#include <random>

#include "opuc/error.hpp"
#include "opuc/operators.hpp"

using namespace opuc;

namespace {

FourierSeries random_series(int lo, int hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FourierSeries f(lo, hi);
  for (int k = lo; k <= hi; ++k) f.at(k) = {g(rng), g(rng)};
  return f;
}

double norm2(const ContextPtr& ctx, const Samples& f) { return ctx->lp_norm(f, 2.0); }

double rel(const ContextPtr& ctx, const Samples& a, const Samples& b) {
  const double d = norm2(ctx, a - b);
  const double s = std::max(norm2(ctx, a), norm2(ctx, b));
  return s > 0.0 ? d / s : d;
}

cplx quad_inner(const ContextPtr& ctx, const Samples& f, const Samples& g) {
  const auto wt = ctx->grid().weights();
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += wt[i] * f[i] * std::conj(g[i]);
  return s;
}

ContextPtr context(const char* spec, int n) {
  return std::make_shared<const OperatorContext>(build_weight(spec), n, n);
}

}  // namespace

TEST_CASE("commutators") {
  const int n = 24;
  SUBCASE("constant weight commutes with P") {
    auto ctx = context("const@norm", n);
    const Samples f = ctx->synthesize(random_series(-n, n, 1));
    CHECK(norm2(ctx, commutator_power(ctx, 1, CommutatorVariant::weight)(f)) < 1e-15);
  }
  for (const char* spec : {"trig:beta=0.5@norm", "logsing:c=1@norm"}) {
    auto ctx = context(spec, n);
    const Samples f = ctx->synthesize(random_series(0, n, 2));
    const Samples& w = ctx->weight();
    const BandOperator P = BandOperator::project(ctx, 1, n);
    const BandOperator W = BandOperator::multiply(ctx, w, "w");

    const Samples c1 = commutator_power(ctx, 1, CommutatorVariant::weight)(f);
    const Samples direct = hadamard(w, P(f)) - P(hadamard(w, f));
    CHECK(rel(ctx, c1, direct) < 1e-12);
    CHECK(rel(ctx, c1, commutator(W, P)(f)) < 1e-12);

    const BandOperator C1 = commutator_power(ctx, 1, CommutatorVariant::weight);
    const Samples c2 = commutator_power(ctx, 2, CommutatorVariant::weight)(f);
    CHECK(rel(ctx, c2, hadamard(w, C1(f)) - C1(hadamard(w, f))) < 1e-12);
    for (int l = 0; l <= 4; ++l)
      for (auto var : {CommutatorVariant::weight, CommutatorVariant::inverse_weight})
        CHECK(rel(ctx, commutator_power(ctx, l, var)(f), nested_commutator(ctx, l, var)(f)) < 1e-11);
  }
}

TEST_CASE("adjoints under the quadrature inner product") {
  const int n = 20;
  auto ctx = context("logsing:c=1@norm", n);
  const Samples f = ctx->synthesize(random_series(0, n, 3));
  const Samples g = ctx->synthesize(random_series(-n, n, 4));
  std::vector<BandOperator> ops = {
      BandOperator::project(ctx, 1, n),
      commutator_power(ctx, 3, CommutatorVariant::weight),
      commutator_power(ctx, 2, CommutatorVariant::inverse_weight),
      split_operator(ctx, 3, SplitVariant::B),
      split_operator(ctx, 2, SplitVariant::D),
      hilbert_operator(ctx),
  };
  for (const auto& A : ops) {
    const cplx lhs = quad_inner(ctx, A(f), g);
    const cplx rhs = quad_inner(ctx, f, A.adjoint(g));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("split operators and their inhomogeneous terms") {
  const int n = 16;
  auto ctx = context("trig:beta=0.5@norm", n);
  const Samples f = ctx->synthesize(random_series(0, n, 5));
  const Samples g = ctx->synthesize(random_series(0, n, 6));

  CHECK(rel(ctx, split_operator(ctx, 1, SplitVariant::B)(f),
            commutator_power(ctx, 1, CommutatorVariant::weight)(f)) < 1e-14);
  CHECK(rel(ctx, inhomogeneous_terms(ctx, 1).y, ctx->weight()) < 1e-15);

  for (int j = 1; j <= 4; ++j) {
    const auto terms = inhomogeneous_terms(ctx, j);
    const BandOperator B = split_operator(ctx, j, SplitVariant::B);
    const BandOperator D = split_operator(ctx, j, SplitVariant::D);
    CHECK(rel(ctx, y_recursion(ctx, f, j), terms.y + B(f)) < 1e-12);
    CHECK(rel(ctx, z_recursion(ctx, f, j), terms.z + D(f)) < 1e-12);
    const cplx a{0.3, -1.2}, b{2.0, 0.5};
    const Samples comb = a * f + b * g;
    CHECK(rel(ctx, B(comb), a * B(f) + b * B(g)) < 1e-12);
    CHECK(rel(ctx, D(comb), a * D(f) + b * D(g)) < 1e-12);
  }
}

TEST_CASE("identities at the Levinson solution") {
  const int n = 48;
  const WeightSpec w = build_weight("bs:a=0.5*logsing:c=1@norm");
  auto ctx = std::make_shared<const OperatorContext>(w, n, n);
  const Polynomial ps = szego_levinson(moments(w, n), n).phi_star();
  const Samples phi = ctx->synthesize(ps.as_series());
  const Samples& wt = ctx->weight();
  const BandOperator P = BandOperator::project(ctx, 1, n);
  const BandOperator C1 = commutator_power(ctx, 1, CommutatorVariant::weight);
  const BandOperator C2 = commutator_power(ctx, 2, CommutatorVariant::weight);

  // w^2 P Phi^* = C_1 (w Phi^*) + C_2 Phi^*
  const Samples lhs = hadamard(ctx->weight_power(2), P(phi));
  CHECK(rel(ctx, lhs, C1(hadamard(wt, phi)) + C2(phi)) < 1e-10);

  for (int j = 1; j <= 3; ++j) {
    const auto t = inhomogeneous_terms(ctx, j);
    CHECK(rel(ctx, hadamard(ctx->weight_power(j), phi), t.y + split_operator(ctx, j, SplitVariant::B)(phi)) < 1e-10);
    CHECK(rel(ctx, hadamard(ctx->weight_power(-j), phi), t.z + split_operator(ctx, j, SplitVariant::D)(phi)) < 1e-10);
  }
}

TEST_CASE("dense materialization matches application") {
  const int n = 8;
  auto ctx = context("trig:beta=0.3@norm", n);
  const BandOperator A = commutator_power(ctx, 2, CommutatorVariant::weight);
  const auto M = materialize(A, 0, n);
  REQUIRE(M.size() == static_cast<std::size_t>(n + 1));
  const FourierSeries f = random_series(0, n, 7);
  const FourierSeries af = ctx->analyze(A.apply(f), 0, n);
  for (int r = 0; r <= n; ++r) {
    cplx s = 0.0;
    for (int c = 0; c <= n; ++c) s += M[r][c] * f[c];
    CHECK(std::abs(s - af[r]) < 1e-13);
  }
}

TEST_CASE("capacity and positivity checks") {
  auto ctx = context("trig:beta=0.3@norm", 8);
  CHECK_THROWS_AS(BandOperator::project(ctx, 1, ctx->capacity() + 1), CapacityError);
  CHECK_THROWS_AS(BandOperator::identity(ctx).apply(random_series(0, ctx->capacity() + 1, 8)),
                  CapacityError);
}

TEST_CASE("norm probes") {
  SUBCASE("projection at p = 2") {
    auto ctx = OperatorContext::plain(64);
    const NormEstimate e = op_norm_estimate(BandOperator::project(ctx, 1, 64), 2.0, -64, 64);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(e.converged);
  }
  SUBCASE("Hilbert transform on the zero-mean band at p = 2") {
    auto ctx = OperatorContext::plain(32);
    const NormEstimate e = op_norm_estimate(hilbert_operator(ctx), 2.0, 1, 32);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("Hilbert transform at p = 4 rises toward cot(pi/8) from below") {
    const double target = 1.0 / std::tan(kPi / 8);
    NormProbeOptions o;
    o.restarts = 1;
    double prev = 0.0;
    for (int band : {16, 64, 256}) {
      auto ctx = OperatorContext::plain(band);
      const double v = op_norm_estimate(hilbert_operator(ctx), 4.0, -band, band, o).value;
      CHECK(v < target);
      CHECK(v > prev);
      prev = v;
    }
    CHECK(prev > 1.7);
  }
  SUBCASE("zero operator and contract checks") {
    auto ctx = context("const@norm", 16);
    const NormEstimate z = op_norm_estimate(commutator_power(ctx, 1, CommutatorVariant::weight), 3.0, 0, 16);
    CHECK(z.value < 1e-14);
    CHECK_THROWS_AS(op_norm_estimate(BandOperator::identity(ctx), 1.5, 0, 16), InvalidArgument);
    CHECK_THROWS_AS(op_norm_estimate(BandOperator::identity(ctx), 20.0, 0, 16), InvalidArgument);
  }
  SUBCASE("seeded probes are reproducible") {
    auto ctx = context("bs:a=0.5@norm", 32);
    const BandOperator c = commutator_power(ctx, 1, CommutatorVariant::weight);
    NormProbeOptions o;
    o.seed = 11;
    CHECK(op_norm_estimate(c, 3.0, 0, 32, o).value == op_norm_estimate(c, 3.0, 0, 32, o).value);
  }
  SUBCASE("commutator scales with the weight") {
    const WeightSpec w = build_weight("logsing:c=1@norm");
    auto a = std::make_shared<const OperatorContext>(w, 32, 32);
    auto b = std::make_shared<const OperatorContext>(w.scaled(10.0), 32, 32);
    const Samples f = a->synthesize(random_series(0, 32, 9));
    const Samples ca = commutator_power(a, 1, CommutatorVariant::weight)(f);
    const Samples cb = commutator_power(b, 1, CommutatorVariant::weight)(f);
    CHECK(rel(a, cb, cplx{10.0} * ca) < 1e-12);
  }
}
