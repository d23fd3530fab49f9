#include "phase.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"
#include "fmt_util.hpp"
#include "special.hpp"

namespace frog {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2_v<double>;

double nan_margin() { return std::numeric_limits<double>::quiet_NaN(); }

void validate(double edge_beta, const InitialLaw& eta) {
  if (!(edge_beta > 0.0)) throw ParamError("edge exponent beta must be > 0");
  if (!(eta.p_zero >= 0.0 && eta.p_zero <= 1.0))
    throw ParamError("p_zero must lie in [0,1]");
  if (std::isnan(eta.mean) || eta.mean < 0.0)
    throw ParamError("initial-law mean must be >= 0 (or +inf)");
  if (eta.mean == 0.0 && eta.p_zero < 1.0)
    throw ParamError("zero-mean initial law must have p_zero = 1");
}

// 1/E(eta) for the extinction side: E = 0 gives +inf (any finite limsup
// passes), E = +inf never reaches here (hypothesis E < inf).
double inv_mean_extinct(double mean) {
  return mean == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / mean;
}

// 1/E(eta) for the survival side, with the convention 1/E := 0 at E = inf.
double inv_mean_survive(double mean) {
  return std::isinf(mean) ? 0.0 : 1.0 / mean;
}

struct ClauseEval {
  bool extinct_hypo = false;  // E(eta) < inf
  bool survive_hypo = false;  // P(eta=0) < 1
  bool extinct = false;
  bool survive = false;
  // At beta = 1/2 only: which comparisons were evaluable / hit equality.
  bool extinct_known = false;
  bool survive_known = false;
  bool boundary = false;
  double extinct_margin = 0.0;
  double survive_margin = 0.0;
};

ClauseEval evaluate(double beta, Limit liminf, Limit limsup,
                    const InitialLaw& eta) {
  ClauseEval ev;
  ev.extinct_hypo = std::isfinite(eta.mean);
  ev.survive_hypo = eta.p_zero < 1.0;

  if (ev.extinct_hypo) {
    if (beta > 0.5) {
      ev.extinct = true;
      ev.extinct_margin = beta - 0.5;
    } else if (beta == 0.5 && limsup.has_value()) {
      ev.extinct_known = true;
      const double inv = inv_mean_extinct(eta.mean);
      const double lhs = 8.0 * *limsup;
      // Strict comparisons throughout: equality is deliberately left
      // undecided (boundary case).
      if (lhs < inv) {
        ev.extinct = true;
        ev.extinct_margin = inv - lhs;
      } else if (lhs == inv) {
        ev.boundary = true;
      }
    }
  }
  if (ev.survive_hypo) {
    if (beta < 0.5) {
      ev.survive = true;
      ev.survive_margin = 0.5 - beta;
    } else if (beta == 0.5 && liminf.has_value()) {
      ev.survive_known = true;
      const double inv = inv_mean_survive(eta.mean);
      const double lhs = kSqrt2 * *liminf;
      if (lhs > inv) {
        ev.survive = true;
        ev.survive_margin = lhs - inv;
      } else if (lhs == inv) {
        ev.boundary = true;
      }
    }
  }
  return ev;
}

PhaseVerdict verdict_from(const ClauseEval& ev, double beta,
                          bool enable_extinct, bool enable_survive,
                          const char* disabled_note) {
  if (enable_extinct && ev.extinct) {
    if (beta > 0.5) return {Verdict::Extinct, "beta>1/2", ev.extinct_margin};
    return {Verdict::Extinct, "beta=1/2 and 8*limsup(L)<1/E(eta)",
            ev.extinct_margin};
  }
  if (enable_survive && ev.survive) {
    if (beta < 0.5)
      return {Verdict::SurvivesWPP, "beta<1/2", ev.survive_margin};
    return {Verdict::SurvivesWPP, "beta=1/2 and sqrt2*liminf(L)>1/E(eta)",
            ev.survive_margin};
  }

  PhaseVerdict out;
  out.verdict = Verdict::Inconclusive;
  out.margin = nan_margin();
  if (disabled_note != nullptr) {
    out.rule = disabled_note;
    return out;
  }
  if (beta == 0.5) {
    const bool unknown_blocked = (ev.extinct_hypo && !ev.extinct_known) ||
                                 (ev.survive_hypo && !ev.survive_known);
    if (ev.boundary) {
      out.rule = "boundary - theorem silent";
    } else if (unknown_blocked) {
      out.rule = "beta=1/2 with unknown L limit";
    } else {
      out.rule = "beta=1/2 with neither strict inequality met";
    }
  } else if (beta > 0.5) {
    out.rule = "beta>1/2 with E(eta) infinite";
  } else {
    out.rule = "beta<1/2 with P(eta=0)=1";
  }
  return out;
}

}  // namespace

ClauseFire classify_clauses(double edge_beta, Limit liminf_lnsq,
                            Limit limsup_lnsq, const InitialLaw& eta) {
  validate(edge_beta, eta);
  const ClauseEval ev = evaluate(edge_beta, liminf_lnsq, limsup_lnsq, eta);
  return {ev.extinct, ev.survive};
}

PhaseVerdict classify(double edge_beta, Limit liminf_lnsq, Limit limsup_lnsq,
                      const InitialLaw& eta) {
  validate(edge_beta, eta);
  const ClauseEval ev = evaluate(edge_beta, liminf_lnsq, limsup_lnsq, eta);
  return verdict_from(ev, edge_beta, true, true, nullptr);
}

PhaseVerdict classify_beta_family(double alpha, double beta,
                                  const InitialLaw& eta) {
  if (!(alpha > 0.0)) throw ParamError("alpha must be > 0");
  validate(beta, eta);
  const double b_const = std::exp(log_beta_fn(alpha, beta));
  if (beta != 0.5) {
    // Away from the critical exponent the L constant is irrelevant; defer
    // with liminf = limsup = 1/B(alpha,beta).
    return classify(beta, 1.0 / b_const, 1.0 / b_const, eta);
  }
  // Critical line: L == 1/B(alpha,1/2), and the clauses simplify to
  // B(alpha,1/2) > 8*E(eta)  (extinct) / B(alpha,1/2) < sqrt2*E(eta)
  // (survive); still strict, still hypothesis-gated.
  const double b = b_const;
  if (std::isfinite(eta.mean) && b > 8.0 * eta.mean)
    return {Verdict::Extinct, "beta=1/2 and B(alpha,1/2)>8*E(eta)",
            b - 8.0 * eta.mean};
  if (eta.p_zero < 1.0) {
    const double rhs = kSqrt2 * eta.mean;  // +inf when E(eta) = inf
    if (b < rhs)
      return {Verdict::SurvivesWPP, "beta=1/2 and B(alpha,1/2)<sqrt2*E(eta)",
              rhs - b};
  }
  PhaseVerdict out;
  out.verdict = Verdict::Inconclusive;
  out.margin = nan_margin();
  const bool boundary =
      (std::isfinite(eta.mean) && b == 8.0 * eta.mean) ||
      (eta.p_zero < 1.0 && b == kSqrt2 * eta.mean);
  out.rule = boundary ? "boundary - theorem silent"
                      : "beta=1/2 with neither strict inequality met";
  return out;
}

PhaseVerdict classify_one_sided(DensityBoundKind kind, double edge_beta,
                                const SlowVaryingFn& L, const InitialLaw& eta) {
  validate(edge_beta, eta);
  const ClauseEval ev =
      evaluate(edge_beta, L.liminf_nsq, L.limsup_nsq, eta);
  if (kind == DensityBoundKind::UpperDensityBound) {
    return verdict_from(ev, edge_beta, true, false,
                        "upper density bound - no extinction clause fired");
  }
  return verdict_from(ev, edge_beta, false, true,
                      "lower density bound - no survival clause fired");
}

FireworksNote inconclusive_fireworks_criterion(const InitialLaw& eta) {
  if (eta.family != InitialFamily::ZetaTail)
    throw ParamError(
        "fireworks criterion applies only to zetatail initial laws");
  const double c = eta.param;
  FireworksNote note;
  if (c > kSqrt2) {
    note.survives = true;
    note.note =
        "survives with positive probability: one-directional coverage "
        "criterion c > sqrt(2) (externally sourced constant); c=" +
        fmt_double(c);
  } else {
    note.survives = false;
    note.note =
        "no conclusion: coverage criterion requires c > sqrt(2) strictly; c=" +
        fmt_double(c);
  }
  return note;
}

const char* verdict_token(Verdict v) {
  switch (v) {
    case Verdict::Extinct:
      return "Extinct";
    case Verdict::SurvivesWPP:
      return "SurvivesWPP";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string verdict_csv_row(double edge_beta, Limit liminf_lnsq,
                            Limit limsup_lnsq, const InitialLaw& eta,
                            const PhaseVerdict& v) {
  auto limit_token = [](Limit l) {
    return l.has_value() ? fmt_double(*l) : std::string("unknown");
  };
  std::string row = fmt_double(edge_beta);
  row += ',';
  row += limit_token(liminf_lnsq);
  row += ',';
  row += limit_token(limsup_lnsq);
  row += ',';
  row += fmt_double(eta.mean);
  row += ',';
  row += fmt_double(eta.p_zero);
  row += ',';
  row += verdict_token(v.verdict);
  row += ',';
  row += v.rule;
  row += ',';
  row += fmt_double(v.margin);
  return row;
}

}  // namespace frog
