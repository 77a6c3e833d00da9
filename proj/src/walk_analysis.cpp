#include "wsls/walk_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wsls {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_walk_spec(const WalkSpec& spec) {
  if (!(spec.p > 0.0 && spec.p < 1.0) && spec.p != 1.0 && spec.p != 0.0)
    throw std::invalid_argument("walk: p must be in [0,1]");
  if (spec.delta1 < 1 || spec.delta2 < 1)
    throw std::invalid_argument("walk: delta1, delta2 must be >= 1");
}

}  // namespace

double ruin_probability(const WalkSpec& spec) {
  check_walk_spec(spec);
  const double p = spec.p;
  if (p == 1.0) return 0.0;
  if (p == 0.0) return 1.0;
  if (p == 0.5)
    return static_cast<double>(spec.delta2) / (spec.delta1 + spec.delta2);
  const double r = (1.0 - p) / p;  // phi(s) = r^s
  if (r < 1.0) {
    // (1 - r^d2) / (r^-d1 - r^d2), all terms bounded
    const double rd2 = std::pow(r, spec.delta2);
    return (1.0 - rd2) / (std::pow(r, -spec.delta1) - rd2);
  }
  // r > 1: multiply through by r^-d2 to keep magnitudes tame
  const double s = 1.0 / r;
  return (1.0 - std::pow(s, spec.delta2)) /
         (1.0 - std::pow(s, spec.delta1 + spec.delta2));
}

double ruin_mgf(double p, double rho, int delta2) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("ruin_mgf: p must be in (0,1)");
  if (rho < 1.0) throw std::invalid_argument("ruin_mgf: rho must be >= 1");
  if (delta2 < 1) throw std::invalid_argument("ruin_mgf: delta2 must be >= 1");

  double disc = 1.0 - 4.0 * p * (1.0 - p) * rho * rho;
  constexpr double kSnap = 32.0 * std::numeric_limits<double>::epsilon();
  if (disc < -kSnap)
    throw std::domain_error("ruin_mgf: 4p(1-p)rho^2 > 1, no real branch");
  if (std::abs(disc) <= kSnap) disc = 0.0;
  const double base = (1.0 - std::sqrt(disc)) / (2.0 * (1.0 - p) * rho);
  return std::pow(base, delta2);
}

namespace {

TailBound make_tail(double exact, double bound_log2) {
  TailBound t;
  t.exact = exact;
  t.bound_log2 = bound_log2;
  t.bound = bound_log2 >= 0.0 ? 1.0 : std::exp2(bound_log2);
  return t;
}

}  // namespace

TailBound poisson_lower_tail(double mu, double k) {
  if (mu < 0.0) throw std::invalid_argument("poisson_lower_tail: mu < 0");
  double exact;
  if (mu == 0.0) {
    exact = k >= 0.0 ? 1.0 : 0.0;
  } else if (k < 0.0) {
    exact = 0.0;
  } else {
    double term = std::exp(-mu);
    double sum = term;
    const auto kmax = static_cast<std::int64_t>(std::floor(k));
    for (std::int64_t q = 1; q <= kmax; ++q) {
      term *= mu / static_cast<double>(q);
      sum += term;
    }
    exact = std::min(sum, 1.0);
  }
  return make_tail(exact, -mu / 2.0);
}

TailBound poisson_upper_tail(double mu, double k) {
  if (mu < 0.0) throw std::invalid_argument("poisson_upper_tail: mu < 0");
  const double lower =
      k < 1.0 ? 0.0 : poisson_lower_tail(mu, std::ceil(k) - 1.0).exact;
  const double log2_bound = (mu * (std::exp(1.0) - 1.0) - k) / kLn2;
  return make_tail(1.0 - lower, log2_bound);
}

void StarBoundSpec::validate() const {
  if (degree <= 15)
    throw std::invalid_argument("star bound: needs degree > 15");
  if (!(g0 > 1.0 && g0 < g1 && g1 < g2))
    throw std::invalid_argument("star bound: needs 1 < g0 < g1 < g2");
  if (std::abs(g2 - (degree / 3.0 - 2.0)) > 1e-9)
    throw std::invalid_argument("star bound: g2 must equal d/3 - 2");
  if (!(m_prime > 0.0))
    throw std::invalid_argument("star bound: m_prime must be positive");
}

BoundValue star_escape_bound(const StarBoundSpec& spec) {
  spec.validate();
  const double log2_rho = 0.5 * std::log2(9.0 / 8.0);
  double raw = std::exp2(-spec.delta1());
  if (std::isfinite(spec.m_prime)) {
    const double mu = spec.mu();
    const double log2_mid =
        -std::sqrt(mu) / 2.0 * log2_rho + spec.delta2() * 0.5;
    raw += log2_mid > 1023.0 ? std::numeric_limits<double>::infinity()
                             : std::exp2(log2_mid);
    raw += std::exp2(-mu / 2.0);
  }
  return {std::min(raw, 1.0), raw};
}

ExpansionRates expansion_rates(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::domain_error("expansion_rates: epsilon must be in (0, 1/2)");
  ExpansionRates r;
  r.epsilon = epsilon;
  r.eps_prime = 2.0 - 1.0 / (0.5 + epsilon);
  r.eps_dprime = 2.0 / (3.0 - r.eps_prime) - 2.0 / 3.0;
  const double up = 2.0 / 3.0 + r.eps_dprime;
  const double down = 1.0 / 3.0 - r.eps_dprime;
  r.rate = std::cbrt(0.5 * up / down);
  if (!(up / r.rate + down * r.rate * r.rate < 1.0))
    throw std::domain_error(
        "expansion_rates: supermartingale inequality failed");
  return r;
}

AbsorptionResult birth_death_absorption_exact(const WalkSpec& spec) {
  check_walk_spec(spec);
  const std::int64_t levels =
      static_cast<std::int64_t>(spec.delta1) + spec.delta2;
  if (levels > 10000)
    throw std::length_error("birth_death_absorption_exact: delta1+delta2 > 1e4");

  // Interior levels 1..levels-1; x_i = q x_{i-1} + p x_{i+1} (+1 for the
  // expected-time system). Thomas algorithm on the tridiagonal system.
  const double p = spec.p, q = 1.0 - spec.p;
  const auto n = static_cast<std::size_t>(levels - 1);
  auto solve = [&](double x0, double xn, bool add_one) {
    std::vector<double> cp(n), dp(n);
    for (std::size_t i = 0; i < n; ++i) {
      double rhs = add_one ? 1.0 : 0.0;
      if (i == 0) rhs += q * x0;
      if (i == n - 1) rhs += p * xn;
      const double a = (i == 0) ? 0.0 : -q;     // sub-diagonal
      const double c = (i == n - 1) ? 0.0 : -p; // super-diagonal
      const double denom = 1.0 - a * (i == 0 ? 0.0 : cp[i - 1]);
      cp[i] = c / denom;
      dp[i] = (rhs - a * (i == 0 ? 0.0 : dp[i - 1])) / denom;
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;)
      x[i] = dp[i] - cp[i] * (i + 1 < n ? x[i + 1] : 0.0);
    return x;
  };

  AbsorptionResult out;
  const auto start = static_cast<std::size_t>(spec.delta1) - 1;
  out.prob_lower_first = solve(1.0, 0.0, false)[start];
  out.expected_steps = solve(0.0, 0.0, true)[start];
  return out;
}

double crossing_upper_bound(int n, double p_prime, std::int64_t levels) {
  if (!(p_prime >= 0.0 && p_prime <= 1.0))
    throw std::invalid_argument("crossing_upper_bound: p' must be in [0,1]");
  if (n < 1 || levels < 0)
    throw std::invalid_argument("crossing_upper_bound: bad n or T");
  if (p_prime == 1.0) return 0.0;
  const double x = 3.0 * std::sqrt(1.0 - p_prime);
  if (x >= 1.0)
    throw std::domain_error(
        "crossing_upper_bound: needs 3 sqrt(1-p') < 1, bound inapplicable");
  const double t = static_cast<double>(levels);
  return t * t * std::pow(x, (n - 1) / 2.0) / (1.0 - x);
}

}  // namespace wsls
