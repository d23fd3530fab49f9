#pragma once

#include "rng.hpp"

namespace frog {

// log Gamma(x), x > 0. Thin wrapper so the accuracy contract lives in one
// place: glibc lgamma is < 2 ulp for positive arguments, comfortably inside
// the 1e-12 relative budget the critical constants need.
double log_gamma(double x);

// log B(a,b) = logΓ(a) + logΓ(b) − logΓ(a+b), a,b > 0.
double log_beta_fn(double a, double b);

// Regularized lower incomplete gamma P(s,x), s > 0, x >= 0.
double gamma_p(double s, double x);

// Upper incomplete gamma Γ(s,x) (non-regularized), any real s, x > 0.
// For s <= 0 uses the downward recurrence Γ(s,x) = (Γ(s+1,x) − x^s e^{−x})/s.
double upper_gamma(double s, double x);

// Clamp into the open unit interval: survival parameters must satisfy
// 0 < p < 1 so geometric sampling terminates.
double clamp_open01(double u);

// Standard normal via Box-Muller (two uniforms per variate, stateless).
double sample_normal(RngStream& rng);

// Gamma(shape, rate) by Marsaglia-Tsang squeeze; shape < 1 boosted through
// Gamma(shape+1) * U^{1/shape}. Hand-rolled so draws are identical across
// standard libraries.
double sample_gamma(double shape, double rate, RngStream& rng);

// Beta(a,b) as X/(X+Y) with X~Gamma(a,1), Y~Gamma(b,1), clamped to (0,1).
double sample_beta(double a, double b, RngStream& rng);

// Poisson(mean) by inversion for small means, halving recursion above.
long long sample_poisson(double mean, RngStream& rng);

}  // namespace frog
