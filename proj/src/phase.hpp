#pragma once

#include <string>

#include "initial_law.hpp"
#include "slow_varying.hpp"

namespace frog {

enum class Verdict { Extinct, SurvivesWPP, Inconclusive };

// rule records the clause that fired (or why none did); margin is the signed
// slack of the fired strict inequality, NaN when no inequality fired.
struct PhaseVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string rule;
  double margin = 0.0;
};

// Which side's sufficient condition holds, evaluated independently.  The two
// are provably disjoint; exposed so the exclusion can be scanned exhaustively.
struct ClauseFire {
  bool extinct = false;
  bool survive = false;
};
ClauseFire classify_clauses(double edge_beta, Limit liminf_lnsq,
                            Limit limsup_lnsq, const InitialLaw& eta);

// Phase dichotomy for edge density exponent beta and the liminf/limsup of
// L(n^2) (nullopt = unknown, +infinity allowed):
//   Extinct      if E(eta) < inf and (beta > 1/2, or beta = 1/2 and
//                8*limsup < 1/E(eta));
//   SurvivesWPP  if P(eta=0) < 1 and (beta < 1/2, or beta = 1/2 and
//                sqrt(2)*liminf > 1/E(eta))   [1/E(eta) := 0 when E = inf];
//   Inconclusive otherwise (unknown limits at beta = 1/2, strict-inequality
//                boundaries, or unmet hypotheses).
PhaseVerdict classify(double edge_beta, Limit liminf_lnsq, Limit limsup_lnsq,
                      const InitialLaw& eta);

// Beta(alpha,beta) parameter specialization: at beta = 1/2 the L constant is
// 1/B(alpha,1/2), so the clauses become B(alpha,1/2) > 8*E(eta) (extinct) and
// B(alpha,1/2) < sqrt(2)*E(eta) (survive).  Elsewhere defers to classify.
PhaseVerdict classify_beta_family(double alpha, double beta,
                                  const InitialLaw& eta);

// One-sided density bounds: an upper bound on the density of the form
// (1-u)^{beta-1} L(1/(1-u)) can only prove extinction; a lower bound only
// survival.  The disabled side is reported Inconclusive.
enum class DensityBoundKind { UpperDensityBound, LowerDensityBound };
PhaseVerdict classify_one_sided(DensityBoundKind kind, double edge_beta,
                                const SlowVaryingFn& L, const InitialLaw& eta);

// One-directional coverage (firework) criterion for heavy-tailed initial
// laws with n*P(eta>n) -> c: survival with positive probability when
// c > sqrt(2).  The constant comes from an external coverage result and is
// labelled as such; applies only to the ZetaTail family.
struct FireworksNote {
  bool survives = false;
  std::string note;
};
FireworksNote inconclusive_fireworks_criterion(const InitialLaw& eta);

// CSV row serialization: beta,liminf,limsup,eta_mean,eta_pzero,verdict,rule,
// margin.  Unknown limits print as "unknown".
std::string verdict_csv_row(double edge_beta, Limit liminf_lnsq,
                            Limit limsup_lnsq, const InitialLaw& eta,
                            const PhaseVerdict& v);
const char* verdict_token(Verdict v);

}  // namespace frog
