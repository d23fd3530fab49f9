#pragma once

#include <cstdint>

#include "survival_laws.hpp"

namespace frog {

// Numeric health checks for a survival law: density normalization, edge
// ratio against the declared (beta, L) behaviour, and a Kolmogorov-Smirnov
// comparison of sampler draws against the CDF (closed form when present,
// numeric otherwise).  Fields are NaN when the law lacks what a check needs.
struct LawDiagnostics {
  bool has_density = false;
  bool has_cdf = false;
  double normalization = 0.0;  // integral of the density over the support
  double edge_ratio = 0.0;     // density / [(1-u)^{beta-1} L(1/(1-u))] at 1-u = 1e-8
  double ks_distance = 0.0;
  std::int64_t ks_samples = 0;
};

LawDiagnostics law_check(const SurvivalLaw& law, std::uint64_t seed,
                         std::int64_t ks_samples);

}  // namespace frog
