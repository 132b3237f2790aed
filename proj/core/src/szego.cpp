#include "opuc/szego.hpp"

#include <cmath>

#include "opuc/error.hpp"

namespace opuc {

double log_szego_mean(const WeightSpec& w) {
  const double integral = integrate_against(w, [&](double t) { return w.log_value(t); });
  return -(kTwoPi * std::log(kTwoPi) + integral) / (2.0 * kTwoPi);
}

SzegoBoundary szego_boundary(const WeightSpec& w, int N) {
  const CircleGrid grid(N);
  std::vector<cplx> u(N);
  for (int m = 0; m < N; ++m) {
    const double lw = w.log_value(grid.node(m));
    if (!std::isfinite(lw))
      throw QuadratureError("szego_boundary: log w not finite at theta = " +
                            std::to_string(grid.node(m)));
    u[m] = -0.5 * (std::log(kTwoPi) + lw);
  }
  const GridFunction u_grid(grid, u);
  const FourierSeries u_hat = analyze(u_grid);
  const GridFunction conj_u = synthesize(hilbert(u_hat), grid);

  std::vector<cplx> s(N), log_s(N);
  for (int m = 0; m < N; ++m) {
    log_s[m] = cplx{u[m].real(), conj_u[m].real()};
    s[m] = std::exp(log_s[m]);
  }
  const FourierSeries log_hat = analyze(GridFunction(grid, log_s));
  double negative = 0.0;
  for (int k = log_hat.k_min(); k < 0; ++k) negative = std::max(negative, std::abs(log_hat[k]));

  return SzegoBoundary{GridFunction(grid, std::move(s)), negative,
                       std::exp(log_szego_mean(w))};
}

double modulus_residual(const SzegoBoundary& s, const WeightSpec& w, double exclusion) {
  const auto& grid = s.samples.grid();
  double worst = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    const double t = grid.node(m);
    bool excluded = false;
    for (double p : w.singular_points()) {
      const double d = std::abs(std::remainder(t - p, kTwoPi));
      if (d <= exclusion) excluded = true;
    }
    if (excluded) continue;
    const double target = kTwoPi * w(t);
    const double got = 1.0 / std::norm(s.samples[m]);
    worst = std::max(worst, std::abs(got - target) / target);
  }
  return worst;
}

}  // namespace opuc
