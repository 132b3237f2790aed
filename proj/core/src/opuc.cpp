#include "opuc/opuc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "opuc/error.hpp"

namespace opuc {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("Polynomial: empty coefficient vector");
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::from_series(const FourierSeries& f, int degree) {
  std::vector<cplx> c(degree + 1);
  for (int j = 0; j <= degree; ++j) c[j] = f[j];
  return Polynomial(std::move(c));
}

Polynomial star(const Polynomial& q, int n) {
  if (q.degree() > n)
    throw InvalidArgument("star: degree " + std::to_string(q.degree()) + " exceeds n = " +
                          std::to_string(n));
  std::vector<cplx> c(n + 1);
  for (int j = 0; j <= n; ++j) c[j] = std::conj(q[n - j]);
  return Polynomial(std::move(c));
}

double coefficient_distance(const Polynomial& a, const Polynomial& b) {
  const int n = std::max(a.degree(), b.degree());
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

std::vector<cplx> moments(const WeightSpec& w, int n) {
  if (n < 0) throw InvalidArgument("moments: n must be >= 0");
  const QuadratureGrid q = quadrature_for(w, n);
  const auto samples = q.sample([&](double t) { return cplx{w(t), 0.0}; });
  const FourierSeries coeffs = q.analyze(samples, 0, n);
  std::vector<cplx> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = kTwoPi * coeffs[k];

  const double mass = integrate_against(w, [&](double t) { return w(t); });
  if (std::abs(c[0].real() - mass) > 1e-10 * mass)
    throw QuadratureError("moments: c_0 = " + std::to_string(c[0].real()) +
                          " disagrees with the graded integral " + std::to_string(mass));
  return c;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kBreakdown = 1.0 - 1e-13;
constexpr int kReanchorPeriod = 64;

// c_{m} for any sign of m, using c_{-m} = conj(c_m).
cplx moment_at(std::span<const cplx> c, int m) {
  return m >= 0 ? c[m] : std::conj(c[-m]);
}

// One recursion step applied to the coefficient vector of Phi_k.
void advance(std::vector<cplx>& q, cplx alpha) {
  const int k = static_cast<int>(q.size()) - 1;
  std::vector<cplx> next(k + 2);
  const cplx ca = std::conj(alpha);
  for (int j = 0; j <= k + 1; ++j) {
    const cplx shifted = j >= 1 ? q[j - 1] : cplx{};
    const cplx reversed = j <= k ? std::conj(q[k - j]) : cplx{};
    next[j] = shifted - ca * reversed;
  }
  q.swap(next);
}

}  // namespace

SzegoRecursion::SzegoRecursion(VerblunskySequence seq, Polynomial phi)
    : seq_(std::move(seq)), phi_(std::move(phi)) {}

Polynomial SzegoRecursion::phi(int k) const {
  if (k < 0 || k > degree()) throw InvalidArgument("SzegoRecursion::phi: k out of range");
  if (k == degree()) return phi_;
  return phi_from_alphas(std::span<const cplx>(seq_.alphas).first(k));
}

std::vector<Polynomial> SzegoRecursion::phis(std::span<const int> degrees) const {
  std::vector<Polynomial> out;
  out.reserve(degrees.size());
  std::vector<cplx> q{cplx{1.0}};
  int k = 0;
  for (int target : degrees) {
    if (target < k || target > degree())
      throw InvalidArgument("SzegoRecursion::phis: degrees must be sorted and <= n");
    for (; k < target; ++k) advance(q, seq_.alphas[k]);
    out.emplace_back(q);
  }
  return out;
}

Polynomial phi_from_alphas(std::span<const cplx> alphas) {
  std::vector<cplx> q{cplx{1.0}};
  for (auto a : alphas) advance(q, a);
  return Polynomial(std::move(q));
}

SzegoRecursion szego_levinson(std::span<const cplx> c, int n) {
  if (n < 0) throw InvalidArgument("szego_levinson: n must be >= 0");
  if (static_cast<int>(c.size()) < n + 1)
    throw InvalidArgument("szego_levinson: need moments c_0..c_n");
  if (!(c[0].real() > 0.0)) throw InvalidArgument("szego_levinson: c_0 must be positive");

  VerblunskySequence seq;
  seq.moments.assign(c.begin(), c.begin() + n + 1);
  seq.alphas.reserve(n);
  seq.norms_sq.reserve(n + 1);
  seq.norms_sq.push_back(c[0].real());

  std::vector<cplx> q{cplx{1.0}};
  for (int k = 0; k < n; ++k) {
    // conj(alpha_k) ||Phi_k||^2 = <z Phi_k, 1>_w = sum_j q_j conj(c_{j+1})
    cplx acc{};
    for (int j = 0; j <= k; ++j) acc += std::conj(q[j]) * c[j + 1];
    const cplx alpha = acc / seq.norms_sq[k];
    const double modulus = std::abs(alpha);
    if (!(modulus < kBreakdown)) throw BreakdownError(k, modulus);
    seq.alphas.push_back(alpha);
    advance(q, alpha);

    double norm = (1.0 - modulus * modulus) * seq.norms_sq[k];
    if ((k + 1) % kReanchorPeriod == 0) {
      // ||Phi_m||^2 = <Phi_m, z^m>_w = sum_j q_j c_{m-j}
      const int m = k + 1;
      cplx direct{};
      for (int j = 0; j <= m; ++j) direct += q[j] * moment_at(c, m - j);
      const double fresh = direct.real();
      if (fresh > 0.0) {
        seq.max_norm_drift = std::max(seq.max_norm_drift, std::abs(fresh - norm) / fresh);
        norm = fresh;
      }
    }
    seq.norms_sq.push_back(norm);
  }
  return SzegoRecursion(std::move(seq), Polynomial(std::move(q)));
}

// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXcd toeplitz_matrix(std::span<const cplx> c, int n) {
  Eigen::MatrixXcd t(n, n);
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j) t(m, j) = moment_at(c, m - j);
  return t;
}

}  // namespace

double toeplitz_condition(std::span<const cplx> c, int n) {
  if (n == 0) return 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(toeplitz_matrix(c, n));
  const double rc = lu.rcond();
  return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

Polynomial dense_oracle(std::span<const cplx> c, int n) {
  if (n < 0) throw InvalidArgument("dense_oracle: n must be >= 0");
  if (static_cast<int>(c.size()) < n + 1)
    throw InvalidArgument("dense_oracle: need moments c_0..c_n");
  if (n == 0) return Polynomial();

  // sum_{j<n} c_{m-j} q_j = -c_{m-n},  m = 0..n-1
  const Eigen::MatrixXcd t = toeplitz_matrix(c, n);
  Eigen::VectorXcd rhs(n);
  for (int m = 0; m < n; ++m) rhs(m) = -moment_at(c, m - n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(t);
  const double rc = lu.rcond();
  const double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (cond > 1e12) throw IllConditioned(cond);
  const Eigen::VectorXcd x = lu.solve(rhs);

  std::vector<cplx> q(n + 1);
  for (int j = 0; j < n; ++j) q[j] = x(j);
  q[n] = 1.0;
  return Polynomial(std::move(q));
}

// ---------------------------------------------------------------------------

PolynomialSamples evaluate(const Polynomial& p, int K) {
  if (K < 4 || !std::has_single_bit(static_cast<unsigned>(K)))
    throw InvalidArgument("evaluate: K must be a power of two, got " + std::to_string(K));
  CircleGrid grid(K);
  GridFunction values = synthesize(p.as_series(), grid);
  const double sup = values.sup_norm();
  const bool certified = K >= 64 * (p.degree() + 1);
  return PolynomialSamples{std::move(values), sup, K, certified};
}

}  // namespace opuc
