#include <doctest.h>

#include <cmath>
#include <random>

#include "opuc/error.hpp"
#include "opuc/grid_fourier.hpp"

using namespace opuc;

namespace {

FourierSeries random_series(int lo, int hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FourierSeries f(lo, hi);
  for (int k = lo; k <= hi; ++k) f.at(k) = {g(rng), g(rng)};
  return f;
}

double max_gap(const FourierSeries& a, const FourierSeries& b) {
  const int lo = std::min(a.k_min(), b.k_min()), hi = std::max(a.k_max(), b.k_max());
  double m = 0.0;
  for (int k = lo; k <= hi; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("circle grid nodes are offset, increasing and symmetric") {
  const CircleGrid g(64);
  CHECK(g.max_mode() == 31);
  for (int m = 0; m < 64; ++m) {
    CHECK(g.node(m) > -kPi);
    CHECK(g.node(m) < kPi);
    CHECK(g.node(m) != 0.0);
    CHECK(g.node(m) == doctest::Approx(-g.node(63 - m)).epsilon(1e-15));
    if (m > 0) CHECK(g.node(m) > g.node(m - 1));
  }
  CHECK_THROWS_AS(CircleGrid(48), InvalidArgument);
  CHECK_THROWS_AS(CircleGrid(2), InvalidArgument);
}

TEST_CASE("analysis of elementary functions") {
  const CircleGrid g(32);
  const FourierSeries c = analyze(GridFunction(g, [](double t) { return cplx{std::cos(t)}; }));
  for (int k = c.k_min(); k <= c.k_max(); ++k) {
    const double expect = std::abs(k) == 1 ? 0.5 : 0.0;
    CHECK(std::abs(c[k] - expect) < 1e-15);
  }
  const FourierSeries one = analyze(GridFunction(g, [](double) { return cplx{1.0}; }));
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  CHECK(one.max_abs() == doctest::Approx(1.0));
}

TEST_CASE("synthesis then analysis is the identity on in-band series") {
  const FourierSeries f = random_series(-5, 5, 1);
  const FourierSeries back = analyze(synthesize(f, CircleGrid(64)));
  CHECK(max_gap(f, back) < 1e-12);
  CHECK_THROWS_AS(synthesize(random_series(-40, 3, 2), CircleGrid(64)), CapacityError);
}

TEST_CASE("band projection") {
  const FourierSeries one = FourierSeries::monomial(0);
  CHECK(project(one, 1, 7).max_abs() == 0.0);

  const FourierSeries f = FourierSeries::monomial(2) + FourierSeries::monomial(-1);
  const FourierSeries p = project(f, 1, 3);
  CHECK(max_gap(p, FourierSeries::monomial(2)) == 0.0);

  const FourierSeries r = random_series(-9, 12, 3);
  const FourierSeries once = project(r, 1, 6);
  CHECK(max_gap(once, project(once, 1, 6)) == 0.0);
  CHECK(once.l2_norm() <= r.l2_norm());

  // self-adjoint on L^2
  const FourierSeries s = random_series(-9, 12, 4);
  CHECK(std::abs(inner_product(project(r, 1, 6), s) - inner_product(r, project(s, 1, 6))) < 1e-12);
  CHECK_THROWS_AS(project(r, 3, 2), InvalidArgument);
  CHECK(project(r, 40, 50).max_abs() == 0.0);
}

TEST_CASE("Hilbert transform and Riesz projection") {
  const CircleGrid g(32);
  const FourierSeries c = analyze(GridFunction(g, [](double t) { return cplx{std::cos(t)}; }));
  const GridFunction hc = synthesize(hilbert(c), g);
  for (int m = 0; m < g.size(); ++m) CHECK(std::abs(hc[m] - std::sin(g.node(m))) < 1e-14);
  CHECK(hilbert(FourierSeries::monomial(0, 3.0)).max_abs() == 0.0);

  // H^2 = -1 on zero-mean series
  FourierSeries f = random_series(-8, 8, 5);
  f.at(0) = 0.0;
  CHECK(max_gap(hilbert(hilbert(f)), cplx{-1.0} * f) < 1e-12);

  const FourierSeries pp = riesz_plus(f);
  for (int k = -8; k <= 8; ++k) CHECK(pp[k] == (k >= 0 ? f[k] : cplx{}));
  const FourierSeries mean = hilbert_riesz(random_series(-3, 3, 6), SpectralMultiplier::mean);
  CHECK(mean.k_min() <= 0);
  for (int k = mean.k_min(); k <= mean.k_max(); ++k)
    if (k != 0) CHECK(mean[k] == cplx{});
}

TEST_CASE("shifted Riesz projections reproduce the band projection") {
  for (int n : {1, 4, 17}) {
    const FourierSeries f = random_series(-30, 30, 7 + n);
    CHECK(max_gap(band_projection_via_riesz(f, n), project(f, 1, n)) < 1e-12);
  }
}

TEST_CASE("Parseval and L^p quadrature") {
  const CircleGrid g(128);
  const GridFunction one(g, [](double) { return cplx{1.0}; });
  for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(one, p) == doctest::Approx(std::pow(kTwoPi, 1 / p)));
  CHECK(lp_norm(GridFunction(g, [](double t) { return cplx{std::cos(t)}; }), 2.0) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(lp_norm(GridFunction(g, [](double t) { return std::polar(1.0, t); }), 2.0) ==
        doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));

  const FourierSeries f = random_series(-20, 20, 8);
  const double parseval = f.l2_norm();
  double sum = 0.0;
  for (cplx c : f.coeffs()) sum += std::norm(c);
  CHECK(parseval == doctest::Approx(std::sqrt(kTwoPi * sum)).epsilon(1e-14));
  CHECK(std::abs(lp_norm(synthesize(f, g), 2.0) - parseval) < 1e-12 * parseval);

  const GridFunction half(g, [](double) { return cplx{0.5}; });
  CHECK(lp_norm(one, 2.0, half) == doctest::Approx(std::sqrt(kPi)));
  CHECK_THROWS_AS(lp_norm(one, 0.5), InvalidArgument);
  const GridFunction bad(g, [](double) { return cplx{NAN}; });
  CHECK_THROWS_AS(lp_norm(bad, 2.0), InvalidArgument);
  const GridFunction neg(g, [](double) { return cplx{-1.0}; });
  CHECK_THROWS_AS(lp_norm(one, 2.0, neg), InvalidArgument);
}

TEST_CASE("series windows and shifts") {
  const FourierSeries f = random_series(-2, 3, 9);
  const FourierSeries s = f.shifted(4);
  CHECK(s.k_min() == 2);
  CHECK(s[7] == f[3]);
  const FourierSeries w = f.rewindowed(-6, 1);
  CHECK(w[-6] == cplx{});
  CHECK(w[1] == f[1]);
  CHECK(w[2] == cplx{});
  CHECK_THROWS_AS(FourierSeries(3, 2), InvalidArgument);
}
