#pragma once

// Shared assertions and independent numeric oracles for the test suites.
// Everything here is deliberately naive (fixed-grid quadrature, plain sorts)
// so it cannot share a failure mode with the adaptive code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace testutil {

// |phat - p| within sig standard deviations of a Binomial(n, p) frequency,
// plus one count of slack for discreteness.
inline bool binom_ok(double phat, double p, std::int64_t n, double sig = 3.0) {
  const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                              static_cast<double>(n));
  return std::abs(phat - p) <= sig * se + 1.0 / static_cast<double>(n);
}

// Kolmogorov-Smirnov distance between an ordered sample and a CDF.
inline double ks_vs_cdf(std::vector<double> xs,
                        const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Two-sample KS for integer-valued data, via exact empirical CDFs.
inline double ks_two_sample(const std::vector<std::int64_t>& a,
                            const std::vector<std::int64_t>& b) {
  std::map<std::int64_t, std::pair<double, double>> steps;
  for (std::int64_t v : a) steps[v].first += 1.0;
  for (std::int64_t v : b) steps[v].second += 1.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double fa = 0.0, fb = 0.0, d = 0.0;
  for (const auto& [v, counts] : steps) {
    fa += counts.first / na;
    fb += counts.second / nb;
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// Composite Simpson on a uniform grid; panels must be even.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

// Hill estimator of a right tail index from the k largest order statistics.
inline double hill_tail_index(std::vector<double> xs, std::size_t k) {
  std::sort(xs.begin(), xs.end(), std::greater<double>());
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(xs[i] / xs[k]);
  return static_cast<double>(k) / acc;
}

}  // namespace testutil
