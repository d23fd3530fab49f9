#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "rng.hpp"

namespace frog {

enum class InitialFamily { Degenerate, Geometric, Poisson, ZetaTail, Custom };

// Law of the number of sleeping particles per site (nonnegative integers).
// mean may be +infinity; p_zero is P(eta = 0).
struct InitialLaw {
  std::function<std::int64_t(RngStream&)> sampler;
  double mean = 0.0;
  double p_zero = 0.0;
  InitialFamily family = InitialFamily::Custom;
  double param = 0.0;  // the family's defining parameter (k, q, m, or c)
  std::string description;
};

// eta == k surely.
InitialLaw make_degenerate(std::int64_t k);

// P(eta = j) = (1-q) q^j for j >= 0; mean q/(1-q), p_zero = 1-q.
InitialLaw make_geometric(double q);

// Poisson(mean).
InitialLaw make_poisson(double mean);

// Heavy tail P(eta > n) = c/(n+c) for n >= 0: p_zero = 0, infinite mean,
// n*P(eta > n) -> c. Sampled exactly as ceil(c*(1/U - 1)).
InitialLaw make_zeta_tail(double c);

}  // namespace frog
