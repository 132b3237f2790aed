#include <doctest.h>

#include <cmath>

#include "opuc/error.hpp"
#include "opuc/opuc.hpp"
#include "opuc/szego.hpp"

using namespace opuc;

TEST_CASE("star operation") {
  const cplx i{0.0, 1.0};
  const Polynomial q({3.0, 2.0 * i, 1.0});
  const Polynomial qs = star(q, 2);
  CHECK(qs[0] == cplx{1.0});
  CHECK(qs[1] == -2.0 * i);
  CHECK(qs[2] == cplx{3.0});
  CHECK(star(qs, 2) == q);

  const Polynomial zn({0.0, 0.0, 0.0, 0.0, 1.0});
  CHECK(star(zn, 4) == Polynomial({1.0, 0.0, 0.0, 0.0, 0.0}));
  CHECK_THROWS_AS(star(zn, 3), InvalidArgument);
  // degree padding
  CHECK(star(Polynomial({1.0}), 2)[2] == cplx{1.0});
}

TEST_CASE("moments of closed-form families") {
  const auto c = moments(build_weight("const@norm"), 8);
  CHECK(std::abs(c[0] - 1.0) < 1e-13);
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(c[k]) < 1e-14);

  const auto t = moments(build_weight("trig:beta=0.5@norm"), 8);
  CHECK(std::abs(t[1] - 0.25) < 1e-14);
  for (int k = 2; k <= 8; ++k) CHECK(std::abs(t[k]) < 1e-14);

  const auto b = moments(build_weight("bs:a=0.5@norm"), 20);
  for (int k = 0; k <= 20; ++k) CHECK(std::abs(b[k] - std::pow(0.5, k)) < 1e-13);

  // moments of logsing: c_0 = 1, real and decaying
  const auto l = moments(build_weight("logsing:c=1@norm"), 64);
  CHECK(std::abs(l[0] - 1.0) < 1e-12);
  for (int k = 1; k <= 64; ++k) CHECK(std::abs(l[k].imag()) < 1e-14);
  CHECK(std::abs(l[64]) < std::abs(l[1]));
  CHECK_THROWS_AS(moments(build_weight("const"), -1), InvalidArgument);
}

TEST_CASE("Levinson recursion") {
  SUBCASE("constant weight") {
    const auto rec = szego_levinson(moments(build_weight("const@norm"), 16), 16);
    for (cplx a : rec.alphas()) CHECK(std::abs(a) < 1e-14);
    CHECK(std::abs(rec.phi()[16] - 1.0) < 1e-14);
    CHECK(std::abs(rec.phi_star()[0] - 1.0) < 1e-14);
  }
  SUBCASE("trig first step") {
    const auto rec = szego_levinson(moments(build_weight("trig:beta=0.5@norm"), 1), 1);
    CHECK(std::abs(rec.phi()[0] + 0.25) < 1e-14);
    CHECK(std::abs(rec.phi()[1] - 1.0) < 1e-15);
    const Polynomial d = dense_oracle(moments(build_weight("trig:beta=0.5@norm"), 1), 1);
    CHECK(coefficient_distance(d, rec.phi()) < 1e-12);
  }
  SUBCASE("Bernstein-Szego") {
    const auto rec = szego_levinson(moments(build_weight("bs:a=0.5@norm"), 32), 32);
    CHECK(std::abs(rec.alphas()[0] - 0.5) < 1e-12);
    for (int k = 1; k < 32; ++k) CHECK(std::abs(rec.alphas()[k]) < 1e-8);
  }
  SUBCASE("invariants of the sequence") {
    const auto rec = szego_levinson(moments(build_weight("logsing:c=1@norm"), 128), 128);
    const auto& seq = rec.sequence();
    for (int k = 0; k < 128; ++k) {
      CHECK(std::abs(seq.alphas[k]) < 1.0);
      CHECK(seq.norms_sq[k + 1] <= seq.norms_sq[k]);
      CHECK(seq.norms_sq[k + 1] ==
            doctest::Approx((1 - std::norm(seq.alphas[k])) * seq.norms_sq[k]).epsilon(1e-12));
    }
    CHECK(seq.max_norm_drift < 1e-10);
    CHECK(rec.phi(128) == rec.phi());
    const std::vector<int> ks{3, 40};
    const auto ps = rec.phis(ks);
    CHECK(ps[0] == rec.phi(3));
    CHECK(ps[1] == rec.phi(40));
    CHECK(coefficient_distance(phi_from_alphas(seq.alphas), rec.phi()) < 1e-13);
  }
}

TEST_CASE("Szego limit of the norms") {
  const WeightSpec w = build_weight("trig:beta=0.5@norm");
  const auto rec = szego_levinson(moments(w, 256), 256);
  // limit of ||Phi_n||^2 is exp((1/2pi) int log(2 pi w)) = S(0)^-2
  const double limit = std::exp(-2.0 * log_szego_mean(w));
  double prev = 1e300;
  for (int n : {1, 2, 4, 8, 16}) {
    const double gap = std::abs(rec.sequence().norms_sq[n] - limit);
    CHECK(gap <= prev);
    prev = gap;
  }
  CHECK(rec.norm_sq() == doctest::Approx(limit).epsilon(1e-13));
}

TEST_CASE("dense oracle") {
  const auto c = moments(build_weight("const@norm"), 8);
  const Polynomial p8 = dense_oracle(c, 8);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(p8[k]) < 1e-14);
  CHECK(p8[8] == cplx{1.0});

  const auto b = moments(build_weight("bs:a=0.9@norm"), 32);
  CHECK(coefficient_distance(dense_oracle(b, 32), szego_levinson(b, 32).phi()) < 1e-7);
  CHECK(toeplitz_condition(b, 32) > 1.0);

  // positive definite but hopeless: three point masses plus a trace of Lebesgue
  std::vector<cplx> bad(11);
  for (int k = 0; k <= 10; ++k) {
    for (double th : {0.3, 1.7, -2.2}) bad[k] += std::polar(1.0, -k * th) / 3.0;
    if (k == 0) bad[k] += 1e-15;
  }
  CHECK_THROWS_AS(dense_oracle(bad, 10), IllConditioned);
}

TEST_CASE("breakdown is reported, not clamped") {
  std::vector<cplx> c{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(szego_levinson(c, 2), BreakdownError);
}

TEST_CASE("evaluation on the circle") {
  const PolynomialSamples one = evaluate(Polynomial({1.0}), 64);
  CHECK(one.sup_norm == doctest::Approx(1.0));
  CHECK(one.certified);
  const PolynomialSamples zn = evaluate(Polynomial({0.0, 0.0, 0.0, 1.0}), 256);
  CHECK(zn.sup_norm == doctest::Approx(1.0));
  CHECK(zn.certified);
  CHECK_FALSE(evaluate(Polynomial({0.0, 0.0, 0.0, 1.0}), 128).certified);
  CHECK_THROWS_AS(evaluate(Polynomial({1.0}), 100), InvalidArgument);

  // |Phi_n^*| = |Phi_n| on the circle
  const auto rec = szego_levinson(moments(build_weight("bs:a=0.9@norm"), 40), 40);
  const auto a = evaluate(rec.phi(), 4096).values;
  const auto s = evaluate(rec.phi_star(), 4096).values;
  for (int m = 0; m < 4096; ++m) CHECK(std::abs(std::abs(a[m]) - std::abs(s[m])) < 1e-12);
  const Polynomial q({1.0, 2.0, 3.0});
  CHECK(std::abs(q.on_circle(0.3) - (1.0 + 2.0 * std::polar(1.0, 0.3) + 3.0 * std::polar(1.0, 0.6))) < 1e-14);
}
