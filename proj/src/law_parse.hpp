#pragma once

#include <string>

#include "initial_law.hpp"
#include "survival_laws.hpp"

namespace frog {

// Law spec grammar (one line, no spaces):
//   family:key=value,key=value,...
// Survival families: power:beta=, beta:alpha=,beta=, gammaratio:alpha=,beta=,
// lambda1=,lambda2=, genbeta1:a=,b=,c=, osc-critical (no params).
// Heavy-tailed odds families parse to their odds law and are wrapped through
// the odds transform t -> t/(1+t): pareto1:xm=,alpha=  lomax:alpha=,lambda=
// gpd:xi=,sigma=  betaprime:a=,b=  f:d1=,d2=  burr12:c=,k=  invgamma:a=,b=
// frechet:alpha=  logpareto:alpha=,rho=.  stable: is rejected (no closed
// form).  Product construction:
//   oddsprod:base=family(key=value,...),ymoment=<E[Y^beta]>[,ylo=,yhi=]
// with Y uniform on (ylo,yhi), default (0,1); omit ymoment to estimate it
// from 10^6 draws (flagged in the description).
// Malformed specs raise ParseError with a column offset; out-of-domain
// values raise ParamError from the family constructors.
SurvivalLaw parse_survival_law(const std::string& spec);

// Initial-law specs: degenerate:<k> (bare nonnegative integer),
// geometric:q=, poisson:m=, zetatail:c=.
InitialLaw parse_initial_law(const std::string& spec);

}  // namespace frog
