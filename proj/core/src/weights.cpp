#include "opuc/weights.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "opuc/error.hpp"

namespace opuc {

namespace {

double wrap(double theta) {
  double t = std::remainder(theta, kTwoPi);
  if (t <= -kPi) t += kTwoPi;
  return t;
}

double parse_number(std::string_view s, std::string_view context) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || s.empty())
    throw ParseError("weight spec: bad number '" + std::string(s) + "' in '" +
                     std::string(context) + "'");
  return v;
}

WeightFactor parse_factor(std::string_view f) {
  if (f == "const") return {WeightFamily::constant, 0.0};
  const auto colon = f.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("weight spec: unknown factor '" + std::string(f) + "'");
  const auto name = f.substr(0, colon);
  const auto rest = f.substr(colon + 1);
  const auto eq = rest.find('=');
  if (eq == std::string_view::npos)
    throw ParseError("weight spec: expected key=value in '" + std::string(f) + "'");
  const auto key = rest.substr(0, eq);
  const double value = parse_number(rest.substr(eq + 1), f);

  auto expect_key = [&](std::string_view want) {
    if (key != want)
      throw ParseError("weight spec: family '" + std::string(name) + "' takes '" +
                       std::string(want) + "', got '" + std::string(key) + "'");
  };
  if (name == "trig") {
    expect_key("beta");
    if (!(std::abs(value) < 1.0)) throw InvalidArgument("trig: need |beta| < 1");
    return {WeightFamily::trig, value};
  }
  if (name == "bs") {
    expect_key("a");
    if (!(std::abs(value) < 1.0)) throw InvalidArgument("bs: need |a| < 1");
    return {WeightFamily::bernstein_szego, value};
  }
  if (name == "logsing") {
    expect_key("c");
    if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument("logsing: need c > 0");
    return {WeightFamily::logsing, value};
  }
  if (name == "invlog") {
    expect_key("c");
    if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument("invlog: need c > 0");
    return {WeightFamily::invlog, value};
  }
  throw ParseError("weight spec: unknown family '" + std::string(name) + "'");
}

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string factor_text(const WeightFactor& f) {
  switch (f.family) {
    case WeightFamily::constant: return "const";
    case WeightFamily::trig: return "trig:beta=" + format_param(f.param);
    case WeightFamily::bernstein_szego: return "bs:a=" + format_param(f.param);
    case WeightFamily::logsing: return "logsing:c=" + format_param(f.param);
    case WeightFamily::invlog: return "invlog:c=" + format_param(f.param);
  }
  return {};
}

// Decay rate r of the Fourier coefficients (|c_k| ~ r^k) of the factor and
// of its reciprocal.
double decay_rate(const WeightFactor& f) {
  switch (f.family) {
    case WeightFamily::trig: {
      const double b = std::abs(f.param);
      if (b == 0.0) return 0.0;
      return (1.0 - std::sqrt(1.0 - b * b)) / b;
    }
    case WeightFamily::bernstein_szego: return std::abs(f.param);
    default: return 0.0;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

WeightSpec WeightSpec::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  if (body.empty()) throw ParseError("weight spec: empty");

  WeightSpec spec;
  if (const auto at = body.find('@'); at != std::string_view::npos) {
    if (body.substr(at + 1) != "norm")
      throw ParseError("weight spec: unknown suffix '" + std::string(body.substr(at)) + "'");
    spec.normalized_ = true;
    body = body.substr(0, at);
  }
  while (true) {
    const auto star = body.find('*');
    const auto piece = body.substr(0, star);
    if (piece.empty()) throw ParseError("weight spec: empty factor in '" + std::string(text) + "'");
    spec.factors_.push_back(parse_factor(piece));
    if (star == std::string_view::npos) break;
    body = body.substr(star + 1);
  }
  for (const auto& f : spec.factors_)
    if (f.family == WeightFamily::logsing || f.family == WeightFamily::invlog) {
      spec.singular_ = {0.0};
      break;
    }

  if (spec.normalized_) {
    const double mass = integrate_against(spec, [&](double t) { return spec.raw(t); });
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw QuadratureError("weight spec: weight is not normalizable");
    spec.scale_ = 1.0 / mass;
  }
  spec.rebuild_text();
  return spec;
}

void WeightSpec::rebuild_text() {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += '*';
    out += factor_text(factors_[i]);
  }
  if (normalized_) out += "@norm";
  text_ = std::move(out);
}

WeightSpec WeightSpec::scaled(double alpha) const {
  if (!(alpha > 0.0)) throw InvalidArgument("WeightSpec::scaled: alpha must be positive");
  WeightSpec out = *this;
  out.scale_ *= alpha;
  out.normalized_ = false;
  out.rebuild_text();
  return out;
}

WeightSpec WeightSpec::normalized_copy() const {
  if (normalized_) return *this;
  WeightSpec out = *this;
  const double mass = integrate_against(out, [&](double t) { return out.raw(t); });
  out.scale_ = 1.0 / mass;
  out.normalized_ = true;
  out.rebuild_text();
  return out;
}

bool WeightSpec::is_constant() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const WeightFactor& f) {
    return f.family == WeightFamily::constant ||
           (f.family == WeightFamily::trig && f.param == 0.0) ||
           (f.family == WeightFamily::bernstein_szego && f.param == 0.0);
  });
}

double WeightSpec::raw(double theta) const {
  const double t = wrap(theta);
  double v = 1.0;
  for (const auto& f : factors_) {
    switch (f.family) {
      case WeightFamily::constant: break;
      case WeightFamily::trig: v *= 1.0 + f.param * std::cos(t); break;
      case WeightFamily::bernstein_szego: {
        const double a = f.param;
        v *= (1.0 - a * a) / (1.0 - 2.0 * a * std::cos(t) + a * a);
        break;
      }
      case WeightFamily::logsing:
        if (t == 0.0) throw InvalidArgument("weight evaluated at a declared singularity");
        v *= 1.0 + f.param * std::log(kPi / std::abs(t));
        break;
      case WeightFamily::invlog:
        if (t == 0.0) throw InvalidArgument("weight evaluated at a declared singularity");
        v /= 1.0 + f.param * std::log(kPi / std::abs(t));
        break;
    }
  }
  return v;
}

double WeightSpec::raw_log(double theta) const {
  const double t = wrap(theta);
  double v = 0.0;
  for (const auto& f : factors_) {
    switch (f.family) {
      case WeightFamily::constant: break;
      case WeightFamily::trig: v += std::log1p(f.param * std::cos(t)); break;
      case WeightFamily::bernstein_szego: {
        const double a = f.param;
        v += std::log1p(-a * a) - std::log(1.0 - 2.0 * a * std::cos(t) + a * a);
        break;
      }
      case WeightFamily::logsing:
        if (t == 0.0) throw InvalidArgument("weight evaluated at a declared singularity");
        v += std::log1p(f.param * std::log(kPi / std::abs(t)));
        break;
      case WeightFamily::invlog:
        if (t == 0.0) throw InvalidArgument("weight evaluated at a declared singularity");
        v -= std::log1p(f.param * std::log(kPi / std::abs(t)));
        break;
    }
  }
  return v;
}

double WeightSpec::operator()(double theta) const { return scale_ * raw(theta); }
double WeightSpec::inverse(double theta) const { return 1.0 / (scale_ * raw(theta)); }
double WeightSpec::log_value(double theta) const { return std::log(scale_) + raw_log(theta); }

int WeightSpec::smooth_band() const {
  if (has_singularities()) return 0;
  double band = 0.0;
  for (const auto& f : factors_) {
    const double r = decay_rate(f);
    if (r > 0.0) band += 40.0 / -std::log(r);
  }
  return static_cast<int>(std::ceil(2.0 * band));
}

// ---------------------------------------------------------------------------

WeightSpec build_weight(std::string_view spec_text, bool normalize) {
  WeightSpec w = WeightSpec::parse(spec_text);
  return normalize ? w.normalized_copy() : w;
}

GridFunction sample_weight(const WeightSpec& w, const CircleGrid& grid) {
  return GridFunction(grid, [&](double t) { return cplx{w(t), 0.0}; });
}

QuadratureGrid quadrature_for(const WeightSpec& w, int capacity) {
  if (w.has_singularities()) {
    std::vector<double> pts(w.singular_points().begin(), w.singular_points().end());
    return QuadratureGrid::graded(std::move(pts), capacity);
  }
  const int needed = std::max({16 * (capacity + 1), 4 * capacity + 4,
                               2 * capacity + 2 * w.smooth_band(), 64});
  const int size = static_cast<int>(std::bit_ceil(static_cast<unsigned>(needed)));
  return QuadratureGrid::uniform(size, capacity);
}

double integrate_against(const WeightSpec& w, const std::function<double(double)>& g,
                         int panels) {
  // Smooth but sharply peaked factors need panels narrower than their
  // distance to the nearest complex pole.
  panels = std::max(panels, w.smooth_band() / 2);
  return integrate_graded(g, -kPi, kPi, w.singular_points(), panels);
}

// ---------------------------------------------------------------------------

namespace {

struct ArcStats {
  double osc_w = 0.0;
  double osc_inv = 0.0;
  double a2 = 0.0;
};

ArcStats arc_stats(const WeightSpec& w, double a, double b) {
  const auto sing = w.singular_points();
  constexpr int kPanels = 4;
  constexpr int kLevels = 40;
  const double len = b - a;
  const double mean_w =
      integrate_graded([&](double t) { return w(t); }, a, b, sing, kPanels, kLevels) / len;
  const double mean_inv =
      integrate_graded([&](double t) { return w.inverse(t); }, a, b, sing, kPanels, kLevels) / len;
  ArcStats s;
  s.osc_w = integrate_graded([&](double t) { return std::abs(w(t) - mean_w); }, a, b, sing,
                             kPanels, kLevels) / len;
  s.osc_inv = integrate_graded([&](double t) { return std::abs(w.inverse(t) - mean_inv); }, a,
                               b, sing, kPanels, kLevels) / len;
  s.a2 = mean_w * mean_inv;
  return s;
}

}  // namespace

WeightProfile profile(const WeightSpec& w, int resolution, double balance_constant) {
  if (resolution < 3) throw InvalidArgument("profile: resolution must be >= 3");
  WeightProfile p;
  p.resolution = resolution;
  p.balance_constant = balance_constant;

  p.l1_w = integrate_against(w, [&](double t) { return w(t); });
  p.l1_winv = integrate_against(w, [&](double t) { return w.inverse(t); });
  p.szego_integral = integrate_against(w, [&](double t) { return w.log_value(t); });

  if (w.is_constant()) {
    // Every mean oscillation vanishes identically.
    p.t = p.s = 0.0;
    p.a2_char = 1.0;
  } else {
    for (int d = 0; d <= resolution; ++d) {
      const int count = 1 << d;
      const double len = kTwoPi / count;
      for (int shifted = 0; shifted < 2; ++shifted) {
        if (d == 0 && shifted) continue;  // the whole circle only once
        for (int k = 0; k < count; ++k) {
          const double a = -kPi + (k + 0.5 * shifted) * len;
          const auto st = arc_stats(w, a, a + len);
          p.t = std::max(p.t, st.osc_w);
          p.s = std::max(p.s, st.osc_inv);
          p.a2_char = std::max(p.a2_char, st.a2);
        }
      }
    }
  }

  constexpr double kLowerTol = 1e-8;
  p.lower_bound_ok = p.l1_w * p.l1_winv >= 4.0 * kPi * kPi * (1.0 - kLowerTol);
  p.balance_ok = p.lower_bound_ok && p.l1_winv <= balance_constant * (1.0 + (1.0 + p.t) * p.s);
  return p;
}

P0Suggestion suggest_p0(double t, double s, P0Regime regime) {
  double x = 0.0;
  switch (regime) {
    case P0Regime::general: x = s * t; break;
    case P0Regime::w_ge_1: x = t; break;
    case P0Regime::w_le_1: x = s; break;
  }
  if (x < 0.0 || !std::isfinite(x)) throw InvalidArgument("suggest_p0: need t, s >= 0");
  P0Suggestion out;
  const double e = std::exp(1.0);
  out.large_branch = x > e;
  if (x == 0.0) {
    out.value = std::numeric_limits<double>::infinity();
  } else if (regime == P0Regime::general) {
    const double L = std::log(x);
    out.value = out.large_branch ? 2.0 + 1.0 / (x * L * L) : std::pow(x, -0.25);
  } else {
    out.value = out.large_branch ? 2.0 + 1.0 / (x * std::log(x)) : 1.0 / std::sqrt(x);
  }
  out.clamped = std::clamp(out.value, 2.05, 64.0);
  return out;
}

}  // namespace opuc
