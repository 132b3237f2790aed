#include "opuc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <string>

#include "opuc/error.hpp"
#include "opuc/parallel.hpp"

namespace opuc {

namespace {

constexpr int kGaussPoints = 20;

struct GaussRule {
  std::array<double, kGaussPoints> x;
  std::array<double, kGaussPoints> w;
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using boost::math::quadrature::gauss;
    const auto& abs = gauss<double, kGaussPoints>::abscissa();
    const auto& wts = gauss<double, kGaussPoints>::weights();
    GaussRule r{};
    // boost stores the non-negative half of the symmetric rule.
    const int half = static_cast<int>(abs.size());
    for (int i = 0; i < half; ++i) {
      r.x[half - 1 - i] = -abs[i];
      r.w[half - 1 - i] = wts[i];
      r.x[half + i] = abs[i];
      r.w[half + i] = wts[i];
    }
    return r;
  }();
  return rule;
}

void add_panel(double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  const auto& g = gauss_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < kGaussPoints; ++i) {
    nodes.push_back(mid + half * g.x[i]);
    weights.push_back(half * g.w[i]);
  }
}

// Panel [a, b] refined dyadically toward a (toward_left) or b.
void add_graded_panel(double a, double b, bool toward_left, int levels,
                      std::vector<double>& nodes, std::vector<double>& weights) {
  const double h = b - a;
  double scale = 1.0;
  for (int l = 0; l < levels; ++l) {
    const double outer = scale;
    const double inner = scale * 0.5;
    if (toward_left)
      add_panel(a + inner * h, a + outer * h, nodes, weights);
    else
      add_panel(b - outer * h, b - inner * h, nodes, weights);
    scale = inner;
  }
  if (toward_left)
    add_panel(a, a + scale * h, nodes, weights);
  else
    add_panel(b - scale * h, b, nodes, weights);
}

double wrap_to_circle(double theta) {
  double t = std::remainder(theta, kTwoPi);  // in [-pi, pi]
  if (t <= -kPi) t += kTwoPi;
  return t;
}

struct Segment {
  double a, b;
  bool singular_a, singular_b;
};

std::vector<Segment> segments_for(std::span<const double> singular, double lo, double hi) {
  std::vector<double> cuts;
  bool sing_lo = false, sing_hi = false;
  const bool full_circle = std::abs((hi - lo) - kTwoPi) < 1e-14;
  for (double s : singular) {
    // Map s into the interval's frame, allowing a shift by a period.
    for (int shift = -1; shift <= 1; ++shift) {
      const double t = wrap_to_circle(s) + shift * kTwoPi;
      const double tol = 1e-15 * (1.0 + std::abs(t));
      if (std::abs(t - lo) <= tol) {
        sing_lo = true;
        if (full_circle) sing_hi = true;
      } else if (std::abs(t - hi) <= tol) {
        sing_hi = true;
        if (full_circle) sing_lo = true;
      } else if (t > lo && t < hi) {
        cuts.push_back(t);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segs;
  double a = lo;
  bool sa = sing_lo;
  for (double c : cuts) {
    segs.push_back({a, c, sa, true});
    a = c;
    sa = true;
  }
  segs.push_back({a, hi, sa, sing_hi});
  return segs;
}

void build_segment(const Segment& s, double target_width, int levels,
                   std::vector<double>& nodes, std::vector<double>& weights) {
  int m = std::max(1, static_cast<int>(std::ceil((s.b - s.a) / target_width)));
  if (m == 1 && s.singular_a && s.singular_b) m = 2;
  const double h = (s.b - s.a) / m;
  for (int i = 0; i < m; ++i) {
    const double a = s.a + i * h;
    const double b = (i == m - 1) ? s.b : a + h;
    if (i == 0 && s.singular_a)
      add_graded_panel(a, b, true, levels, nodes, weights);
    else if (i == m - 1 && s.singular_b)
      add_graded_panel(a, b, false, levels, nodes, weights);
    else
      add_panel(a, b, nodes, weights);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

QuadratureGrid QuadratureGrid::uniform(int size, int capacity) {
  CircleGrid grid(size);
  if (capacity < 0 || size < 4 * capacity + 4)
    throw InvalidArgument("QuadratureGrid::uniform: size " + std::to_string(size) +
                          " too small for capacity " + std::to_string(capacity));
  QuadratureGrid q;
  q.kind_ = Kind::uniform;
  q.capacity_ = capacity;
  q.nodes_ = grid.nodes();
  q.weights_.assign(size, grid.step());
  return q;
}

QuadratureGrid QuadratureGrid::graded(std::vector<double> singular_points, int capacity,
                                      const PanelOptions& options) {
  if (capacity < 0) throw InvalidArgument("QuadratureGrid::graded: negative capacity");
  QuadratureGrid q;
  q.kind_ = Kind::panel;
  q.capacity_ = capacity;
  for (double& s : singular_points) s = wrap_to_circle(s);
  std::sort(singular_points.begin(), singular_points.end());
  singular_points.erase(std::unique(singular_points.begin(), singular_points.end()),
                        singular_points.end());
  q.singular_ = singular_points;

  const double frequency = std::max(1.0, 2.0 * capacity);
  const double width =
      std::min(options.max_panel_width, 2.0 * options.oscillation_budget / frequency);
  for (const auto& seg : segments_for(q.singular_, -kPi, kPi))
    build_segment(seg, width, options.grading_levels, q.nodes_, q.weights_);
  return q;
}

std::vector<cplx> QuadratureGrid::sample(const std::function<cplx(double)>& f) const {
  std::vector<cplx> out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
  return out;
}

std::vector<double> QuadratureGrid::sample_real(const std::function<double(double)>& f) const {
  std::vector<double> out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = f(nodes_[i]);
  return out;
}

void QuadratureGrid::check_window(int lo, int hi) const {
  if (lo < -capacity_ || hi > capacity_)
    throw CapacityError("window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] exceeds quadrature capacity " + std::to_string(capacity_));
}

FourierSeries QuadratureGrid::analyze(std::span<const cplx> samples, int lo, int hi) const {
  if (samples.size() != nodes_.size())
    throw InvalidArgument("QuadratureGrid::analyze: sample count mismatch");
  if (lo > hi) throw InvalidArgument("QuadratureGrid::analyze: empty window");
  check_window(lo, hi);

  if (kind_ == Kind::uniform) {
    CircleGrid grid(static_cast<int>(nodes_.size()));
    GridFunction g(grid, std::vector<cplx>(samples.begin(), samples.end()));
    return project(opuc::analyze(g), lo, hi);
  }

  // Direct sums with real arithmetic: the phase e^{-ik theta_i} of every node
  // advances by one multiplication per k and is reseeded at each chunk start.
  const std::size_t m = nodes_.size();
  std::vector<double> wr(m), wi(m), sr(m), si(m);
  for (std::size_t i = 0; i < m; ++i) {
    const cplx wf = samples[i] * weights_[i];
    wr[i] = wf.real();
    wi[i] = wf.imag();
    sr[i] = std::cos(nodes_[i]);
    si[i] = -std::sin(nodes_[i]);
  }

  constexpr int kChunk = 64;
  const int count = hi - lo + 1;
  const int chunks = (count + kChunk - 1) / kChunk;
  FourierSeries out(lo, hi);
  auto coeffs = out.coeffs();
  parallel_for(chunks, [&](std::size_t c) {
    const int k0 = lo + static_cast<int>(c) * kChunk;
    const int len = std::min(kChunk, hi - k0 + 1);
    std::vector<double> pr(m), pi(m);
    for (std::size_t i = 0; i < m; ++i) {
      pr[i] = std::cos(k0 * nodes_[i]);
      pi[i] = -std::sin(k0 * nodes_[i]);
    }
    for (int j = 0; j < len; ++j) {
      double ar[4] = {0, 0, 0, 0}, ai[4] = {0, 0, 0, 0};
      for (std::size_t i = 0; i < m; ++i) {
        const double a = pr[i], b = pi[i];
        ar[i & 3] += wr[i] * a - wi[i] * b;
        ai[i & 3] += wr[i] * b + wi[i] * a;
        pr[i] = a * sr[i] - b * si[i];
        pi[i] = a * si[i] + b * sr[i];
      }
      coeffs[k0 - lo + j] =
          cplx{(ar[0] + ar[1]) + (ar[2] + ar[3]), (ai[0] + ai[1]) + (ai[2] + ai[3])} / kTwoPi;
    }
  });
  return out;
}

std::vector<cplx> QuadratureGrid::synthesize(const FourierSeries& f) const {
  check_window(f.k_min(), f.k_max());
  if (kind_ == Kind::uniform) {
    CircleGrid grid(static_cast<int>(nodes_.size()));
    auto g = opuc::synthesize(f, grid);
    return {g.values().begin(), g.values().end()};
  }

  const std::size_t m = nodes_.size();
  std::vector<cplx> out(m);
  constexpr std::size_t kBlock = 256;
  constexpr int kReseed = 64;
  const std::size_t blocks = (m + kBlock - 1) / kBlock;
  const auto c = f.coeffs();
  const int k_min = f.k_min();
  parallel_for(blocks, [&](std::size_t bl) {
    const std::size_t i0 = bl * kBlock;
    const std::size_t len = std::min(m, i0 + kBlock) - i0;
    std::array<double, kBlock> sr, si, pr, pi, outr{}, outi{};
    for (std::size_t i = 0; i < len; ++i) {
      sr[i] = std::cos(nodes_[i0 + i]);
      si[i] = std::sin(nodes_[i0 + i]);
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j % kReseed == 0) {
        const double k = k_min + static_cast<double>(j);
        for (std::size_t i = 0; i < len; ++i) {
          pr[i] = std::cos(k * nodes_[i0 + i]);
          pi[i] = std::sin(k * nodes_[i0 + i]);
        }
      }
      const double cr = c[j].real(), ci = c[j].imag();
      for (std::size_t i = 0; i < len; ++i) {
        const double a = pr[i], b = pi[i];
        outr[i] += cr * a - ci * b;
        outi[i] += cr * b + ci * a;
        pr[i] = a * sr[i] - b * si[i];
        pi[i] = a * si[i] + b * sr[i];
      }
    }
    for (std::size_t i = 0; i < len; ++i) out[i0 + i] = cplx{outr[i], outi[i]};
  });
  return out;
}

cplx QuadratureGrid::integrate(std::span<const cplx> samples) const {
  if (samples.size() != nodes_.size())
    throw InvalidArgument("QuadratureGrid::integrate: sample count mismatch");
  cplx s{};
  for (std::size_t i = 0; i < samples.size(); ++i) s += weights_[i] * samples[i];
  return s;
}

double QuadratureGrid::integrate(std::span<const double> samples) const {
  if (samples.size() != nodes_.size())
    throw InvalidArgument("QuadratureGrid::integrate: sample count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) s += weights_[i] * samples[i];
  return s;
}

double QuadratureGrid::lp_norm(std::span<const cplx> samples, double p) const {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  if (samples.size() != nodes_.size())
    throw InvalidArgument("QuadratureGrid::lp_norm: sample count mismatch");
  double s = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < samples.size(); ++i) s += weights_[i] * std::norm(samples[i]);
    return std::sqrt(s);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double a = std::abs(samples[i]);
    if (!std::isfinite(a)) throw InvalidArgument("lp_norm: non-finite sample");
    if (a > 0.0) s += weights_[i] * std::pow(a, p);
  }
  return std::pow(s, 1.0 / p);
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> singular_points, int panels,
                        int grading_levels) {
  if (!(b > a)) throw InvalidArgument("integrate_graded: need a < b");
  std::vector<double> nodes, weights;
  const double width = (b - a) / std::max(1, panels);
  for (const auto& seg : segments_for(singular_points, a, b))
    build_segment(seg, width, grading_levels, nodes, weights);
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = f(nodes[i]);
    if (!std::isfinite(v)) throw QuadratureError("integrate_graded: non-finite integrand");
    s += weights[i] * v;
  }
  return s;
}

}  // namespace opuc
