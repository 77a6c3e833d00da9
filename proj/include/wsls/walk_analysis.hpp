#pragma once

#include <cstdint>

namespace wsls {

// Asymmetric walk between two absorbing levels: start in the middle,
// delta1 steps above the lower barrier, delta2 below the upper one.
struct WalkSpec {
  double p = 0.5;  // up-probability, in (0,1)
  int delta1 = 1;
  int delta2 = 1;
};

// P[lower barrier is hit before the upper one]. Gambler's-ruin closed form
// with phi(s) = ((1-p)/p)^s; the p = 1/2 case is the analytic limit
// delta2/(delta1+delta2).
double ruin_probability(const WalkSpec& spec);

// E[rho^{T}] for T the first-passage time to +delta2 of the walk on all of
// Z. Requires 4p(1-p)rho^2 <= 1 and rho >= 1. A discriminant within a few
// ulps of zero is snapped to zero; this keeps the critical rho = sqrt(9/8),
// p = 2/3 case exact instead of amplifying roundoff through the sqrt.
double ruin_mgf(double p, double rho, int delta2);

struct TailBound {
  double exact = 0.0;       // the tail probability itself
  double bound = 0.0;       // the moment-bound value, clamped to [0,1]
  double bound_log2 = 0.0;  // unclamped bound, as log2
};

// Lower tail P[Q <= k] for Q ~ Poisson(mu), against the bound 2^{-mu/2}.
TailBound poisson_lower_tail(double mu, double k);

// Companion upper tail P[Q >= k] against e^{mu(e-1) - k}.
TailBound poisson_upper_tail(double mu, double k);

// Escape bound for the leaf-defector count of a star: thresholds
// g0 < g1 < g2 = d/3 - 2, time horizon m_prime (may be +infinity, which
// drops the two horizon terms).
struct StarBoundSpec {
  double g0 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double m_prime = 0.0;
  int degree = 0;

  double delta1() const { return g1 - g0; }
  double delta2() const { return g2 - g1; }
  double mu() const { return g0 * m_prime; }
  void validate() const;
};

struct BoundValue {
  double clamped = 0.0;  // min(raw, 1)
  double raw = 0.0;      // may exceed 1 (or be +inf at extreme parameters)
};

// 2^{-delta1} + rho^{-sqrt(mu)/2} * sqrt(2)^{delta2} + 2^{-mu/2} with
// rho = sqrt(9/8).
BoundValue star_escape_bound(const StarBoundSpec& spec);

struct ExpansionRates {
  double epsilon = 0.0;
  double eps_prime = 0.0;
  double eps_dprime = 0.0;
  double rate = 0.0;  // the supermartingale base a > 1
};

// From the expansion slack epsilon in (0, 1/2): eps' with
// 2 - eps' = (1/2 + eps)^{-1}, eps'' = 2/(3 - eps') - 2/3, and
// a = [(1/2)(2/3 + eps'')(1/3 - eps'')^{-1}]^{1/3}. Checks
// (2/3 + eps'') a^{-1} + (1/3 - eps'') a^2 < 1 before returning.
ExpansionRates expansion_rates(double epsilon);

struct AbsorptionResult {
  double prob_lower_first = 0.0;
  double expected_steps = 0.0;
};

// Tridiagonal linear solve for the birth-death chain's absorption
// probability and expected absorption time. Independent check for
// ruin_probability / ruin_mgf; limited to delta1 + delta2 <= 10^4.
AbsorptionResult birth_death_absorption_exact(const WalkSpec& spec);

// T^2 (3 sqrt(1-p'))^{(n-1)/2} / (1 - 3 sqrt(1-p')); requires
// 3 sqrt(1-p') < 1. Returns 0 when p' == 1 (no closed edges, so the dual
// cannot cross at all).
double crossing_upper_bound(int n, double p_prime, std::int64_t levels);

}  // namespace wsls
