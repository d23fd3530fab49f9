#pragma once

#include <cstdint>

#include "rng.hpp"
#include "survival_laws.hpp"

namespace frog {

// Decay ratio of the right-displacement tail of a walker that survives each
// step with probability p: P(D >= n) = ratio^n. Computed as
// p/(1+sqrt(1-p^2)), the cancellation-free form of (1-sqrt(1-p^2))/p.
double displacement_ratio(double p);

// P(rightward displacement >= n) = ratio^n, evaluated in log space.
// p in (0,1]; p == 1 gives 1 for every n.
double tail_right(double p, std::int64_t n);

// Geometric draw with P(D >= n) = ratio^n via inverse CDF. p in (0,1).
std::int64_t sample_d_right(double p, RngStream& rng);

// Geometric lifetime with P(L >= k) = p^k. p in (0,1).
std::int64_t sample_lifetime(double p, RngStream& rng);

// One brute-force walker: sample a lifetime, walk that many fair steps,
// record extremes. Independent oracle for the closed-form tail.
struct WalkSample {
  std::int64_t lifetime = 0;
  std::int64_t d_right = 0;  // max position reached
  std::int64_t d_left = 0;   // max leftward distance reached
  std::int64_t d_star = 0;   // max(d_right, d_left)
};
WalkSample walk_oracle(double p, RngStream& rng);

struct TailEstimate {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double std_err = 0.0;
  std::int64_t replicas = 0;
};

// Rao-Blackwellized marginal tail P(D >= n) under a survival-parameter law:
// average the exact conditional tail over sampled parameters. 95% normal CI.
TailEstimate marginal_tail_right(const SurvivalLaw& law, std::int64_t n,
                                 std::uint64_t seed, std::int64_t replicas);

}  // namespace frog
