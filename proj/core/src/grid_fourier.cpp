#include "opuc/grid_fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "fft.hpp"
#include "opuc/error.hpp"

namespace opuc {

namespace detail {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard lock(plan_mutex());
  auto key = std::make_pair(n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<cplx> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(std::vector<cplx>& data, bool forward) {
  const int n = static_cast<int>(data.size());
  fftw_plan plan = plan_for(n, forward ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace detail

// ---------------------------------------------------------------------------

CircleGrid::CircleGrid(int size) : size_(size) {
  if (size < 4 || !std::has_single_bit(static_cast<unsigned>(size)))
    throw InvalidArgument("CircleGrid size must be a power of two >= 4, got " +
                          std::to_string(size));
}

std::vector<double> CircleGrid::nodes() const {
  std::vector<double> out(size_);
  for (int m = 0; m < size_; ++m) out[m] = node(m);
  return out;
}

GridFunction::GridFunction(CircleGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw InvalidArgument("GridFunction: expected " + std::to_string(grid_.size()) +
                          " samples, got " + std::to_string(values_.size()));
}

GridFunction::GridFunction(CircleGrid grid, const std::function<cplx(double)>& f)
    : grid_(grid), values_(grid.size()) {
  for (int m = 0; m < grid_.size(); ++m) values_[m] = f(grid_.node(m));
}

double GridFunction::sup_norm() const {
  double s = 0.0;
  for (auto v : values_) s = std::max(s, std::abs(v));
  return s;
}

// ---------------------------------------------------------------------------

FourierSeries::FourierSeries(int k_min, int k_max)
    : k_min_(k_min), k_max_(k_max) {
  if (k_min > k_max) throw InvalidArgument("FourierSeries: k_min > k_max");
  coeffs_.assign(static_cast<std::size_t>(k_max - k_min + 1), cplx{});
}

FourierSeries::FourierSeries(int k_min, std::vector<cplx> coeffs)
    : k_min_(k_min), k_max_(k_min + static_cast<int>(coeffs.size()) - 1),
      coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("FourierSeries: empty coefficient vector");
}

FourierSeries FourierSeries::monomial(int k, cplx value) {
  return FourierSeries(k, std::vector<cplx>{value});
}

cplx& FourierSeries::at(int k) {
  if (k < k_min_ || k > k_max_)
    throw CapacityError("FourierSeries::at: mode " + std::to_string(k) +
                        " outside window");
  return coeffs_[k - k_min_];
}

FourierSeries FourierSeries::rewindowed(int k_min, int k_max) const {
  FourierSeries out(k_min, k_max);
  const int lo = std::max(k_min, k_min_);
  const int hi = std::min(k_max, k_max_);
  for (int k = lo; k <= hi; ++k) out.coeffs_[k - k_min] = coeffs_[k - k_min_];
  return out;
}

FourierSeries FourierSeries::shifted(int m) const {
  return FourierSeries(k_min_ + m, coeffs_);
}

FourierSeries FourierSeries::conj_reflected() const {
  std::vector<cplx> c(coeffs_.rbegin(), coeffs_.rend());
  for (auto& v : c) v = std::conj(v);
  return FourierSeries(-k_max_, std::move(c));
}

double FourierSeries::l2_norm() const {
  double s = 0.0;
  for (auto v : coeffs_) s += std::norm(v);
  return std::sqrt(kTwoPi * s);
}

double FourierSeries::max_abs() const {
  double s = 0.0;
  for (auto v : coeffs_) s = std::max(s, std::abs(v));
  return s;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  if (other.k_min_ < k_min_ || other.k_max_ > k_max_)
    *this = rewindowed(std::min(k_min_, other.k_min_), std::max(k_max_, other.k_max_));
  for (int k = other.k_min_; k <= other.k_max_; ++k)
    coeffs_[k - k_min_] += other.coeffs_[k - other.k_min_];
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& other) {
  if (other.k_min_ < k_min_ || other.k_max_ > k_max_)
    *this = rewindowed(std::min(k_min_, other.k_min_), std::max(k_max_, other.k_max_));
  for (int k = other.k_min_; k <= other.k_max_; ++k)
    coeffs_[k - k_min_] -= other.coeffs_[k - other.k_min_];
  return *this;
}

FourierSeries& FourierSeries::operator*=(cplx s) {
  for (auto& v : coeffs_) v *= s;
  return *this;
}

cplx inner_product(const FourierSeries& f, const FourierSeries& g) {
  cplx s{};
  const int lo = std::max(f.k_min(), g.k_min());
  const int hi = std::min(f.k_max(), g.k_max());
  for (int k = lo; k <= hi; ++k) s += f[k] * std::conj(g[k]);
  return kTwoPi * s;
}

// ---------------------------------------------------------------------------
// With theta_m = -pi + (m + 1/2) h the analysis sum factors as
//   (1/N) sum_m f_m e^{-ik theta_m} = (1/N) e^{ik(pi - h/2)} FFT(f)_k.

namespace {

cplx offset_phase(int k, int n) {
  // e^{ik pi} e^{-ik pi/N}; the first factor is exactly +-1.
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, -kPi * static_cast<double>(k) / n);
}

}  // namespace

FourierSeries analyze(const GridFunction& f) {
  const int n = f.grid().size();
  std::vector<cplx> data(f.values().begin(), f.values().end());
  detail::fft_inplace(data, true);
  const int kmax = f.grid().max_mode();
  FourierSeries out(-kmax, kmax);
  for (int k = -kmax; k <= kmax; ++k) {
    const int idx = ((k % n) + n) % n;
    out.at(k) = data[idx] * offset_phase(k, n) / static_cast<double>(n);
  }
  return out;
}

GridFunction synthesize(const FourierSeries& f, const CircleGrid& grid) {
  const int n = grid.size();
  if (f.k_min() < -grid.max_mode() || f.k_max() > grid.max_mode())
    throw CapacityError("synthesize: series window [" + std::to_string(f.k_min()) + ", " +
                        std::to_string(f.k_max()) + "] exceeds grid capacity " +
                        std::to_string(grid.max_mode()));
  std::vector<cplx> data(n, cplx{});
  for (int k = f.k_min(); k <= f.k_max(); ++k) {
    const int idx = ((k % n) + n) % n;
    data[idx] += f[k] * std::conj(offset_phase(k, n));
  }
  detail::fft_inplace(data, false);
  return GridFunction(grid, std::move(data));
}

FourierSeries project(const FourierSeries& f, int i, int j) {
  if (i > j) throw InvalidArgument("project: empty window");
  FourierSeries out(i, j);
  const int lo = std::max(i, f.k_min());
  const int hi = std::min(j, f.k_max());
  for (int k = lo; k <= hi; ++k) out.at(k) = f[k];
  return out;
}

FourierSeries hilbert_riesz(const FourierSeries& f, SpectralMultiplier which) {
  FourierSeries out = f;
  for (int k = f.k_min(); k <= f.k_max(); ++k) {
    cplx& c = out.at(k);
    switch (which) {
      case SpectralMultiplier::hilbert:
        c *= (k > 0) ? cplx{0, -1} : (k < 0 ? cplx{0, 1} : cplx{});
        break;
      case SpectralMultiplier::riesz_plus:
        if (k < 0) c = 0;
        break;
      case SpectralMultiplier::mean:
        if (k != 0) c = 0;
        break;
    }
  }
  return out;
}

FourierSeries band_projection_via_riesz(const FourierSeries& f, int n) {
  FourierSeries first = riesz_plus(f.shifted(-1)).shifted(1);
  FourierSeries second = riesz_plus(f.shifted(-(n + 1))).shifted(n + 1);
  return first - second;
}

// ---------------------------------------------------------------------------

namespace {

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("lp_norm: p must be >= 1");
}

}  // namespace

double lp_norm(const GridFunction& f, double p) {
  check_p(p);
  double s = 0.0;
  for (auto v : f.values()) {
    const double a = std::abs(v);
    if (!std::isfinite(a)) throw InvalidArgument("lp_norm: non-finite sample");
    s += std::pow(a, p);
  }
  return std::pow(f.grid().step() * s, 1.0 / p);
}

double lp_norm(const GridFunction& f, double p, const GridFunction& weight) {
  check_p(p);
  if (!(weight.grid() == f.grid())) throw InvalidArgument("lp_norm: grid mismatch");
  double s = 0.0;
  for (int m = 0; m < f.grid().size(); ++m) {
    const double a = std::abs(f[m]);
    const double w = weight[m].real();
    if (!std::isfinite(a) || !std::isfinite(w)) throw InvalidArgument("lp_norm: non-finite sample");
    if (w < 0.0) throw InvalidArgument("lp_norm: negative weight");
    s += std::pow(a, p) * w;
  }
  return std::pow(f.grid().step() * s, 1.0 / p);
}

}  // namespace opuc
