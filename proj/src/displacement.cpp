#include "displacement.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace frog {

double displacement_ratio(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("displacement_ratio: p in (0,1]");
  // (1-p)(1+p) keeps 1-p^2 accurate for p near 1.
  return p / (1.0 + std::sqrt((1.0 - p) * (1.0 + p)));
}

double tail_right(double p, std::int64_t n) {
  if (n < 0) throw ParamError("tail_right: n must be >= 0");
  const double r = displacement_ratio(p);
  if (n == 0) return 1.0;
  if (r == 1.0) return 1.0;
  return std::exp(static_cast<double>(n) * std::log(r));
}

std::int64_t sample_d_right(double p, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) {
    throw NonTerminatingError("sample_d_right: p must be in (0,1)");
  }
  const double log_r = std::log(displacement_ratio(p));
  return static_cast<std::int64_t>(
      std::floor(std::log(rng.uniform_open01()) / log_r));
}

std::int64_t sample_lifetime(double p, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) {
    throw NonTerminatingError("sample_lifetime: p must be in (0,1)");
  }
  return static_cast<std::int64_t>(
      std::floor(std::log(rng.uniform_open01()) / std::log(p)));
}

WalkSample walk_oracle(double p, RngStream& rng) {
  WalkSample out;
  out.lifetime = sample_lifetime(p, rng);
  std::int64_t pos = 0, hi = 0, lo = 0;
  for (std::int64_t i = 0; i < out.lifetime; ++i) {
    pos += rng.coin() ? 1 : -1;
    hi = std::max(hi, pos);
    lo = std::min(lo, pos);
  }
  out.d_right = hi;
  out.d_left = -lo;
  out.d_star = std::max(out.d_right, out.d_left);
  return out;
}

TailEstimate marginal_tail_right(const SurvivalLaw& law, std::int64_t n,
                                 std::uint64_t seed, std::int64_t replicas) {
  if (replicas <= 0) throw ParamError("marginal_tail_right: replicas must be > 0");
  if (n < 0) throw ParamError("marginal_tail_right: n must be >= 0");
  RngStream rng = substream(seed, kStreamScratch, 0xD15B, static_cast<std::uint64_t>(n));
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < replicas; ++i) {
    const double p = law.sampler(rng);
    const double t = tail_right(p, n);
    sum += t;
    sum_sq += t * t;
  }
  TailEstimate est;
  est.replicas = replicas;
  const double r = static_cast<double>(replicas);
  est.mean = sum / r;
  const double var = std::max(0.0, (sum_sq - sum * sum / r) / std::max(1.0, r - 1.0));
  est.std_err = std::sqrt(var / r);
  est.ci_lo = est.mean - 1.959963984540054 * est.std_err;
  est.ci_hi = est.mean + 1.959963984540054 * est.std_err;
  return est;
}

}  // namespace frog
