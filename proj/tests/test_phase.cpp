#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "helpers.hpp"
#include "initial_law.hpp"
#include "phase.hpp"
#include "rng.hpp"
#include "slow_varying.hpp"

using namespace frog;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = std::numbers::sqrt2_v<double>;
}  // namespace

TEST_CASE("classifier fires the exact clause for each canonical case") {
  const InitialLaw one = make_degenerate(1);

  // Supercritical exponent: extinct regardless of L.
  PhaseVerdict v = classify(0.7, std::nullopt, std::nullopt, one);
  CHECK(v.verdict == Verdict::Extinct);
  CHECK(v.rule == "beta>1/2");
  CHECK(v.margin == doctest::Approx(0.2).epsilon(1e-12));

  // Subcritical exponent: survives whenever eta can be nonzero.
  v = classify(0.3, std::nullopt, std::nullopt, one);
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(v.rule == "beta<1/2");
  CHECK(v.margin == doctest::Approx(0.2).epsilon(1e-12));

  // Critical line, L = 1/2, E = 1: neither strict inequality holds
  // (8*0.5 = 4 is not < 1, sqrt2*0.5 = 0.707 is not > 1).
  v = classify(0.5, 0.5, 0.5, one);
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "beta=1/2 with neither strict inequality met");
  CHECK(std::isnan(v.margin));

  // Same L, heavier initial mean: survival clause fires.
  v = classify(0.5, 0.5, 0.5, make_degenerate(2));
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(v.rule == "beta=1/2 and sqrt2*liminf(L)>1/E(eta)");
  CHECK(v.margin == kSqrt2 * 0.5 - 0.5);

  // Same L, light initial mean: extinction clause fires with margin
  // 1/E - 8*limsup = 5 - 4.
  v = classify(0.5, 0.5, 0.5, make_poisson(0.2));
  CHECK(v.verdict == Verdict::Extinct);
  CHECK(v.rule == "beta=1/2 and 8*limsup(L)<1/E(eta)");
  CHECK(v.margin == 1.0 / 0.2 - 8.0 * 0.5);
}

TEST_CASE("critical-line conventions: infinite mean, zero mean, zero limits") {
  // E = inf counts as 1/E = 0 on the survival side: any liminf > 0 wins.
  PhaseVerdict v = classify(0.5, 0.01, 0.01, make_zeta_tail(2.0));
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(v.margin == kSqrt2 * 0.01);

  // ...but liminf = 0 gives equality 0 > 0, a boundary the theorem skips.
  v = classify(0.5, 0.0, 0.0, make_zeta_tail(2.0));
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "boundary - theorem silent");

  // E = 0 makes 1/E = +inf on the extinction side: any finite limsup wins,
  // with infinite margin.
  v = classify(0.5, 0.0, 1e6, make_degenerate(0));
  CHECK(v.verdict == Verdict::Extinct);
  CHECK(std::isinf(v.margin));

  // Hypothesis gating away from the critical line.
  v = classify(0.7, std::nullopt, std::nullopt, make_zeta_tail(2.0));
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "beta>1/2 with E(eta) infinite");
  CHECK(std::isnan(v.margin));

  v = classify(0.3, std::nullopt, std::nullopt, make_degenerate(0));
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "beta<1/2 with P(eta=0)=1");

  // Unknown liminf blocks the survival comparison at beta = 1/2.
  v = classify(0.5, std::nullopt, 0.2, make_degenerate(1));
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "beta=1/2 with unknown L limit");

  // Boundary report takes precedence over the unknown-limit report.
  v = classify(0.5, std::nullopt, 0.125, make_degenerate(1));
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "boundary - theorem silent");
}

TEST_CASE("beta-family specialization at the critical exponent") {
  // B(1, 1/2) = 2.
  PhaseVerdict v = classify_beta_family(1.0, 0.5, make_degenerate(1));
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "beta=1/2 with neither strict inequality met");

  v = classify_beta_family(1.0, 0.5, make_degenerate(3));
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(v.rule == "beta=1/2 and B(alpha,1/2)<sqrt2*E(eta)");
  CHECK(v.margin == doctest::Approx(3.0 * kSqrt2 - 2.0).epsilon(1e-12));

  v = classify_beta_family(1.0, 0.5, make_poisson(0.2));
  CHECK(v.verdict == Verdict::Extinct);
  CHECK(v.rule == "beta=1/2 and B(alpha,1/2)>8*E(eta)");
  CHECK(v.margin == doctest::Approx(2.0 - 1.6).epsilon(1e-12));

  // Infinite-mean eta survives at the critical exponent for any alpha.
  v = classify_beta_family(1.0, 0.5, make_zeta_tail(1.0));
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(std::isinf(v.margin));

  // Away from beta = 1/2 the family defers to the exponent rule.
  v = classify_beta_family(2.0, 0.7, make_degenerate(1));
  CHECK(v.verdict == Verdict::Extinct);
  CHECK(v.rule == "beta>1/2");
  v = classify_beta_family(2.0, 0.3, make_zeta_tail(2.0));
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(v.rule == "beta<1/2");
}

TEST_CASE("one-sided density bounds disable the opposite clause") {
  const SlowVaryingFn half = SlowVaryingFn::constant(0.5);
  const InitialLaw one = make_degenerate(1);

  // Upper bound proves extinction when the extinction clause fires...
  PhaseVerdict v = classify_one_sided(DensityBoundKind::UpperDensityBound, 0.7,
                                      half, one);
  CHECK(v.verdict == Verdict::Extinct);
  CHECK(v.rule == "beta>1/2");

  // ...and reports the disabled side otherwise, even when the survival
  // clause would have fired under the two-sided rule.
  v = classify_one_sided(DensityBoundKind::UpperDensityBound, 0.3, half, one);
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "upper density bound - no extinction clause fired");
  CHECK(std::isnan(v.margin));

  v = classify_one_sided(DensityBoundKind::LowerDensityBound, 0.3, half, one);
  CHECK(v.verdict == Verdict::SurvivesWPP);
  CHECK(v.rule == "beta<1/2");

  v = classify_one_sided(DensityBoundKind::LowerDensityBound, 0.7, half, one);
  CHECK(v.verdict == Verdict::Inconclusive);
  CHECK(v.rule == "lower density bound - no survival clause fired");

  // Critical line goes through the same strict comparisons.
  v = classify_one_sided(DensityBoundKind::UpperDensityBound, 0.5, half,
                         make_poisson(0.2));
  CHECK(v.verdict == Verdict::Extinct);
  v = classify_one_sided(DensityBoundKind::LowerDensityBound, 0.5, half,
                         make_degenerate(2));
  CHECK(v.verdict == Verdict::SurvivesWPP);
}

TEST_CASE("fireworks criterion is strict and family-gated") {
  FireworksNote n = inconclusive_fireworks_criterion(make_zeta_tail(2.0));
  CHECK(n.survives);
  CHECK(n.note.find("c > sqrt(2)") != std::string::npos);
  CHECK(n.note.find("externally sourced") != std::string::npos);
  CHECK(n.note.find("c=2") != std::string::npos);

  n = inconclusive_fireworks_criterion(make_zeta_tail(1.0));
  CHECK_FALSE(n.survives);
  CHECK(n.note.find("no conclusion") != std::string::npos);

  // Equality c = sqrt(2) stays on the inconclusive side.
  n = inconclusive_fireworks_criterion(make_zeta_tail(kSqrt2));
  CHECK_FALSE(n.survives);

  CHECK_THROWS_AS(inconclusive_fireworks_criterion(make_geometric(0.5)),
                  ParamError);
  CHECK_THROWS_AS(inconclusive_fireworks_criterion(make_degenerate(1)),
                  ParamError);
}

TEST_CASE("extinction and survival clauses never fire together") {
  std::vector<Limit> limits = {std::nullopt, 0.0,   1e-3, 0.01, 0.0884,
                               0.125,        0.177, 1.0,  kInf};
  std::vector<InitialLaw> etas;
  etas.push_back(make_degenerate(0));
  etas.push_back(make_degenerate(1));
  etas.push_back(make_degenerate(2));
  etas.push_back(make_geometric(0.1));
  etas.push_back(make_geometric(0.5));
  etas.push_back(make_geometric(0.9));
  etas.push_back(make_poisson(0.2));
  etas.push_back(make_poisson(3.0));
  etas.push_back(make_zeta_tail(2.0));

  std::size_t combos = 0;
  for (int bi = 1; bi <= 21; ++bi) {
    const double beta = 0.05 * bi;
    for (const Limit& lo : limits) {
      for (const Limit& hi : limits) {
        if (lo.has_value() && hi.has_value() && *lo > *hi) continue;
        for (const InitialLaw& eta : etas) {
          const ClauseFire fire = classify_clauses(beta, lo, hi, eta);
          CHECK_FALSE((fire.extinct && fire.survive));
          // The verdict must agree with whichever clause fired.
          const PhaseVerdict v = classify(beta, lo, hi, eta);
          if (fire.extinct) CHECK(v.verdict == Verdict::Extinct);
          if (fire.survive) CHECK(v.verdict == Verdict::SurvivesWPP);
          if (!fire.extinct && !fire.survive)
            CHECK(v.verdict == Verdict::Inconclusive);
          ++combos;
        }
      }
    }
  }
  CHECK(combos >= 10000);
}

TEST_CASE("verdict is monotone in the initial mean on the critical line") {
  // With L = 1/2 fixed, extinction needs E < 1/4 and survival E > sqrt(2);
  // increasing the mean can only move Extinct -> Inconclusive -> Survives.
  auto rank = [](Verdict v) {
    return v == Verdict::Extinct ? 0 : (v == Verdict::Inconclusive ? 1 : 2);
  };
  int prev = 0;
  bool saw_extinct = false, saw_survive = false;
  for (double m : {0.05, 0.1, 0.2, 0.24, 0.26, 0.5, 1.0, 1.41, 1.42, 2.0, 5.0,
                   20.0}) {
    const PhaseVerdict v = classify(0.5, 0.5, 0.5, make_poisson(m));
    CHECK(rank(v.verdict) >= prev);
    prev = rank(v.verdict);
    saw_extinct |= v.verdict == Verdict::Extinct;
    saw_survive |= v.verdict == Verdict::SurvivesWPP;
  }
  CHECK(saw_extinct);
  CHECK(saw_survive);
}

TEST_CASE("beta-family verdicts match the general rule with L = 1/B") {
  std::vector<InitialLaw> etas;
  for (int j = 0; j < 20; ++j)
    etas.push_back(make_poisson(0.03 * std::pow(1.35, j)));
  etas.push_back(make_degenerate(0));
  etas.push_back(make_degenerate(1));
  etas.push_back(make_degenerate(3));
  etas.push_back(make_zeta_tail(1.5));
  etas.push_back(make_geometric(0.7));

  std::size_t combos = 0;
  for (int i = 0; i < 40; ++i) {
    const double alpha = 0.08 * std::pow(1.18, i);
    const double b = std::exp(std::lgamma(alpha) + std::lgamma(0.5) -
                              std::lgamma(alpha + 0.5));
    for (const InitialLaw& eta : etas) {
      const PhaseVerdict fam = classify_beta_family(alpha, 0.5, eta);
      const PhaseVerdict gen = classify(0.5, 1.0 / b, 1.0 / b, eta);
      CHECK(fam.verdict == gen.verdict);
      ++combos;
    }
  }
  CHECK(combos >= 1000);
}

TEST_CASE("csv rows and verdict tokens serialize exactly") {
  CHECK(std::string(verdict_token(Verdict::Extinct)) == "Extinct");
  CHECK(std::string(verdict_token(Verdict::SurvivesWPP)) == "SurvivesWPP");
  CHECK(std::string(verdict_token(Verdict::Inconclusive)) == "Inconclusive");

  const InitialLaw geo = make_geometric(0.5);  // mean 1, p_zero 0.5
  PhaseVerdict v = classify(0.25, std::nullopt, std::nullopt, geo);
  CHECK(verdict_csv_row(0.25, std::nullopt, std::nullopt, geo, v) ==
        "0.25,unknown,unknown,1,0.5,SurvivesWPP,beta<1/2,0.25");

  v = classify(0.5, std::nullopt, 0.25, geo);
  CHECK(verdict_csv_row(0.5, std::nullopt, 0.25, geo, v) ==
        "0.5,unknown,0.25,1,0.5,Inconclusive,beta=1/2 with unknown L limit,"
        "nan");

  const InitialLaw zt = make_zeta_tail(2.0);
  v = classify(0.5, 0.5, 0.5, zt);
  const std::string row = verdict_csv_row(0.5, 0.5, 0.5, zt, v);
  CHECK(row.find("0.5,0.5,0.5,inf,0,SurvivesWPP,") == 0);
}

TEST_CASE("parameter validation rejects malformed inputs") {
  const InitialLaw one = make_degenerate(1);
  CHECK_THROWS_AS(classify(0.0, std::nullopt, std::nullopt, one), ParamError);
  CHECK_THROWS_AS(classify(-0.5, std::nullopt, std::nullopt, one), ParamError);
  CHECK_THROWS_AS(classify_beta_family(0.0, 0.5, one), ParamError);
  CHECK_THROWS_AS(classify_beta_family(-1.0, 0.5, one), ParamError);

  InitialLaw bad;
  bad.mean = 1.0;
  bad.p_zero = 1.5;
  CHECK_THROWS_AS(classify(0.5, 0.5, 0.5, bad), ParamError);
  bad.p_zero = -0.1;
  CHECK_THROWS_AS(classify(0.5, 0.5, 0.5, bad), ParamError);
  bad.p_zero = 0.3;
  bad.mean = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(classify(0.5, 0.5, 0.5, bad), ParamError);
  bad.mean = 0.0;  // zero mean forces eta == 0 a.s., so p_zero must be 1
  CHECK_THROWS_AS(classify(0.5, 0.5, 0.5, bad), ParamError);
  bad.p_zero = 1.0;
  CHECK_NOTHROW(classify(0.5, 0.5, 0.5, bad));
}

TEST_CASE("initial-law makers expose exact moments") {
  InitialLaw d = make_degenerate(3);
  CHECK(d.mean == 3.0);
  CHECK(d.p_zero == 0.0);
  CHECK(d.family == InitialFamily::Degenerate);
  CHECK(d.param == 3.0);
  RngStream rng = substream(401, kStreamScratch, 1);
  for (int i = 0; i < 20; ++i) CHECK(d.sampler(rng) == 3);

  d = make_degenerate(0);
  CHECK(d.mean == 0.0);
  CHECK(d.p_zero == 1.0);
  CHECK(d.sampler(rng) == 0);

  const InitialLaw g = make_geometric(0.5);
  CHECK(g.mean == 1.0);
  CHECK(g.p_zero == 0.5);
  CHECK(g.family == InitialFamily::Geometric);
  CHECK(g.param == 0.5);

  const InitialLaw p = make_poisson(3.0);
  CHECK(p.mean == 3.0);
  CHECK(p.p_zero == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
  CHECK(p.family == InitialFamily::Poisson);

  const InitialLaw z = make_zeta_tail(2.0);
  CHECK(std::isinf(z.mean));
  CHECK(z.p_zero == 0.0);
  CHECK(z.family == InitialFamily::ZetaTail);
  CHECK(z.param == 2.0);

  CHECK_THROWS_AS(make_degenerate(-1), ParamError);
  CHECK_THROWS_AS(make_geometric(1.0), ParamError);
  CHECK_THROWS_AS(make_geometric(-0.1), ParamError);
  CHECK_THROWS_AS(make_poisson(-1.0), ParamError);
  CHECK_THROWS_AS(make_zeta_tail(0.0), ParamError);
  CHECK_THROWS_AS(make_zeta_tail(kInf), ParamError);
}

TEST_CASE("initial-law samplers match their declared distributions") {
  const std::int64_t n = 100000;

  // Geometric(q=0.5): mean 1, variance q/(1-q)^2 = 2, p_zero 1/2.
  RngStream rng = substream(402, kStreamScratch, 2);
  const InitialLaw g = make_geometric(0.5);
  double sum = 0.0;
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t x = g.sampler(rng);
    CHECK(x >= 0);
    sum += static_cast<double>(x);
    zeros += x == 0;
  }
  CHECK(std::abs(sum / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(testutil::binom_ok(static_cast<double>(zeros) / n, 0.5, n));

  // Poisson(3): mean 3, variance 3, p_zero e^{-3}.
  rng = substream(403, kStreamScratch, 3);
  const InitialLaw p = make_poisson(3.0);
  sum = 0.0;
  zeros = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t x = p.sampler(rng);
    CHECK(x >= 0);
    sum += static_cast<double>(x);
    zeros += x == 0;
  }
  CHECK(std::abs(sum / n - 3.0) < 5.0 * std::sqrt(3.0 / n));
  CHECK(testutil::binom_ok(static_cast<double>(zeros) / n, std::exp(-3.0), n));

  // ZetaTail(2): support {1,2,...}, P(eta > k) = c/(k+c) exactly.
  rng = substream(404, kStreamScratch, 4);
  const InitialLaw z = make_zeta_tail(2.0);
  const std::int64_t nz = 1000000;
  std::int64_t over1 = 0, over1000 = 0;
  for (std::int64_t i = 0; i < nz; ++i) {
    const std::int64_t x = z.sampler(rng);
    CHECK(x >= 1);
    over1 += x > 1;
    over1000 += x > 1000;
  }
  CHECK(testutil::binom_ok(static_cast<double>(over1) / nz, 2.0 / 3.0, nz));
  // n*P(eta > n) -> c: at n = 1000 the exact value is 2000/1002.
  const double scaled = 1000.0 * static_cast<double>(over1000) / nz;
  CHECK(scaled == doctest::Approx(2.0).epsilon(0.10));
  CHECK(testutil::binom_ok(static_cast<double>(over1000) / nz, 2.0 / 1002.0,
                           nz, 4.0));
}
