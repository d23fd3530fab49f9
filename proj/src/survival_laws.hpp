#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "rng.hpp"
#include "slow_varying.hpp"

namespace frog {

enum class SurvivalFamily {
  PowerEdge,
  Beta,
  GammaRatio,
  GenBetaI,
  OddsDerived,
  Custom,
};

// Distribution of the per-particle survival parameter on (0,1). The density
// is carried as log f(u) evaluated from (log u, log(1-u)) supplied by the
// caller; keeping both logs lets quadrature probe the u->1 edge at gaps far
// below 1e-16 without losing the gap to rounding. edge_beta and edge_L
// describe the edge behaviour f(u) ~ (1-u)^{edge_beta-1} * edge_L(1/(1-u)).
struct SurvivalLaw {
  std::function<double(double, double)> log_density_uv;  // empty: sampler-only
  std::function<double(RngStream&)> sampler;
  double edge_beta = 0.0;
  SlowVaryingFn edge_L;
  SurvivalFamily family = SurvivalFamily::Custom;
  std::string description;
  std::optional<std::function<double(double)>> cdf;  // closed form if any
  double support_lo = 0.0;  // density vanishes on (0, support_lo)

  bool has_density() const { return static_cast<bool>(log_density_uv); }
  double density(double u) const;             // u in (0,1)
  double log_density_gap(double log_v) const; // log f(1-v) from log v, v<1
  double density_from_gap(double v) const;    // f(1-v), v in (0,1)
};

enum class OddsFamily {
  Pareto1,
  Lomax,
  Gpd,
  BetaPrime,
  FDist,
  BurrXII,
  InverseGamma,
  Frechet,
  LogPareto,
  SymmetricStable,
  Custom,
};

// Law of a positive odds variable X with regularly varying right tail:
// density f(t) ~ t^{-(tail_beta+1)} * tail_L(t) as t -> infinity.
struct OddsLaw {
  std::function<double(double)> log_density;  // log f(t) from log t; may be empty
  std::function<double(RngStream&)> sampler;
  double tail_beta = 0.0;
  SlowVaryingFn tail_L;
  OddsFamily family = OddsFamily::Custom;
  std::string description;
  std::optional<std::function<double(double)>> cdf;
  double support_lo = 0.0;

  bool has_density() const { return static_cast<bool>(log_density); }
  double density(double t) const;  // t > 0
};

// f(u) = beta*(1-u)^{beta-1} on (0,1); CDF 1-(1-u)^beta, sampled by exact
// inversion. Edge factor is the constant beta.
SurvivalLaw make_power_edge(double beta);

// Beta(alpha,beta), sampled through the Gamma-ratio construction.
SurvivalLaw make_beta(double alpha, double beta);

// Ratio U = X/(X+Y) of independent Gamma(alpha,lambda1), Gamma(beta,lambda2):
// f(u) = [Γ(a+b)/(Γ(a)Γ(b))] λ1^a λ2^b u^{a-1}(1-u)^{b-1} / (λ1 u + λ2(1-u))^{a+b}.
// Coincides with Beta(alpha,beta) when lambda1 == lambda2.
SurvivalLaw make_gamma_ratio(double alpha, double beta, double lambda1,
                             double lambda2);

// f(u) = c/B(a,b) * u^{ac-1} (1-u^c)^{b-1}; edge exponent b, edge constant
// c^b/B(a,b). Sampled as Beta(a,b)^{1/c}.
SurvivalLaw make_gen_beta1(double a, double b, double c);

// Critical-exponent law with an oscillating edge factor:
// f(u) = C (1-u)^{-1/2} L(1/(1-u)) on [1-e^{-2}, 1) with L the oscillating
// slowly varying function; liminf/limsup of L(n^2) are 0 and infinity, so
// the classifier stays silent on it. Rejection-sampled; construction fails
// if the envelope acceptance rate is below 0.1.
SurvivalLaw make_osc_critical();

OddsLaw make_pareto1(double xm, double alpha);
OddsLaw make_lomax(double alpha, double lambda);
OddsLaw make_gpd(double xi, double sigma);
OddsLaw make_beta_prime(double a, double b);
OddsLaw make_f_dist(double d1, double d2);
OddsLaw make_burr12(double c, double k);
OddsLaw make_inverse_gamma(double a, double b);
OddsLaw make_frechet(double alpha);
OddsLaw make_log_pareto(double alpha, double rho);

// Dispatch by family tag with named parameters; throws ParamError for
// missing/unknown keys and UnsupportedFamilyError for SymmetricStable
// (no closed-form density or tail constant exists).
OddsLaw make_odds_family(OddsFamily tag,
                         const std::map<std::string, double>& params);

// Push an odds law through u = x/(1+x): f_u(u) = f_x(u/(1-u))/(1-u)^2.
// Edge exponent and edge factor equal the odds tail exponent and factor.
SurvivalLaw odds_to_survival(const OddsLaw& x);

// Law of Z = X*Y for an independent positive factor Y with
// E[Y^{tail_beta}] = y_moment_beta (finite, positive; Y must have a density
// for the tail index to transfer). The result carries a sampler and the
// declared tail only -- no closed-form density.
OddsLaw product_transfer(const OddsLaw& x, double y_moment_beta,
                         std::function<double(RngStream&)> y_sampler,
                         const std::string& y_desc = {});

}  // namespace frog
