#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "displacement.hpp"
#include "errors.hpp"
#include "frog_sim.hpp"
#include "helpers.hpp"
#include "initial_law.hpp"
#include "rng.hpp"
#include "survival_laws.hpp"

using namespace frog;

namespace {

SurvivalLaw constant_p(double p) {
  SurvivalLaw law;
  law.sampler = [p](RngStream&) { return p; };
  law.description = "constant";
  return law;
}

// One sleeper at the first queried site, none anywhere else.
InitialLaw one_then_zero() {
  InitialLaw law;
  int calls = 0;
  law.sampler = [calls](RngStream&) mutable -> std::int64_t {
    return ++calls == 1 ? 1 : 0;
  };
  law.mean = 0.0;
  law.p_zero = 1.0;
  law.description = "one-then-zero";
  return law;
}

bool same_outcome(const RunOutcome& a, const RunOutcome& b) {
  return a.status == b.status && a.extinct_t == b.extinct_t &&
         a.total_activated == b.total_activated && a.max_right == b.max_right &&
         a.max_left == b.max_left;
}

}  // namespace

TEST_CASE("empty origin is extinct at time zero") {
  SimConfig cfg;
  cfg.survival_law = make_beta(2.0, 2.0);
  cfg.initial_law = make_degenerate(0);
  cfg.horizon = 100;
  cfg.master_seed = 7001;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const RunOutcome out = run(cfg, i);
    CHECK(out.status == RunStatus::ExtinctAt);
    CHECK(out.extinct_t == 0);
    CHECK(out.total_activated == 0);
    CHECK(out.max_right == 0);
    CHECK(out.max_left == 0);
  }
}

TEST_CASE("near-zero survival parameter dies on the first tick") {
  SimConfig cfg;
  cfg.survival_law = constant_p(1e-9);
  cfg.initial_law = make_degenerate(1);
  cfg.horizon = 100;
  cfg.master_seed = 7002;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const RunOutcome out = run(cfg, i);
    CHECK(out.status == RunStatus::ExtinctAt);
    CHECK(out.extinct_t == 1);
    CHECK(out.total_activated == 1);
    CHECK(out.max_right == 0);
    CHECK(out.max_left == 0);
  }
}

TEST_CASE("frontier waking is a fair coin and activates on arrival") {
  SimConfig cfg;
  cfg.survival_law = constant_p(0.999999);
  cfg.initial_law = make_degenerate(1);
  cfg.horizon = 10;
  cfg.master_seed = 7003;
  const std::int64_t n = 2000;
  std::int64_t right = 0, used = 0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
    LatticeSim sim(cfg, i);
    CHECK(sim.active_count() == 1);
    CHECK(sim.total_activated() == 1);
    sim.step();
    if (sim.active_count() == 0) continue;  // ~1e-6 chance: died before moving
    CHECK(sim.time() == 1);
    // The moved walker woke exactly one neighbor, effective next tick.
    CHECK(sim.active_count() == 2);
    CHECK(sim.total_activated() == 2);
    CHECK(sim.visited_max() - sim.visited_min() == 1);
    right += sim.visited_max() == 1;
    ++used;
  }
  CHECK(used > n - 5);
  CHECK(testutil::binom_ok(static_cast<double>(right) / used, 0.5, used));
}

TEST_CASE("origin override confines activation to the seeded walker") {
  SimConfig cfg;
  cfg.survival_law = make_beta(2.0, 2.0);
  cfg.initial_law = make_degenerate(0);
  cfg.origin_law = make_degenerate(1);
  cfg.horizon = 1000000;
  cfg.master_seed = 7004;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const RunOutcome out = run(cfg, i);
    CHECK(out.status == RunStatus::ExtinctAt);
    CHECK(out.total_activated == 1);
    CHECK(out.max_right >= 0);
    CHECK(out.max_left <= 0);
    CHECK(sample_eta_at(cfg, i, 0) == 1);
    CHECK(sample_eta_at(cfg, i, 1) == 0);
    CHECK(sample_eta_at(cfg, i, -3) == 0);
  }
}

TEST_CASE("single-walker maximum matches the displacement oracle") {
  SimConfig cfg;
  cfg.survival_law = make_beta(2.0, 2.0);
  cfg.initial_law = make_degenerate(0);
  cfg.origin_law = make_degenerate(1);
  cfg.horizon = 1000000;
  cfg.master_seed = 7005;

  std::vector<std::int64_t> sim_max;
  sim_max.reserve(10000);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const RunOutcome out = run(cfg, i);
    REQUIRE(out.status == RunStatus::ExtinctAt);
    sim_max.push_back(out.max_right);
  }

  // Oracle: draw the survival parameter, then the rightward maximum directly
  // from its closed-form tail.
  const SurvivalLaw law = make_beta(2.0, 2.0);
  RngStream rng = substream(7005, kStreamScratch, 99);
  std::vector<std::int64_t> oracle;
  oracle.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    const double p = law.sampler(rng);
    oracle.push_back(sample_d_right(p, rng));
  }
  CHECK(testutil::ks_two_sample(sim_max, oracle) < 0.025);
}

TEST_CASE("site counts are a pure function of seed, run, and coordinate") {
  SimConfig cfg;
  cfg.survival_law = make_beta(2.0, 2.0);
  cfg.initial_law = make_geometric(0.5);
  cfg.horizon = 100;
  cfg.master_seed = 7006;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const RunOutcome out = run(cfg, i);
    REQUIRE(out.status != RunStatus::Truncated);
    std::int64_t sum = 0;
    for (std::int64_t s = out.max_left; s <= out.max_right; ++s)
      sum += sample_eta_at(cfg, i, s);
    CHECK(sum == out.total_activated);
    // Re-querying never disturbs the value.
    CHECK(sample_eta_at(cfg, i, 0) == sample_eta_at(cfg, i, 0));
  }

  // Heavy-tailed counts: the identity holds whenever the cap never fired.
  cfg.initial_law = make_zeta_tail(2.0);
  cfg.horizon = 50;
  cfg.max_particles = 50000;
  cfg.master_seed = 7007;
  int clean = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const RunOutcome out = run(cfg, i);
    if (out.status == RunStatus::Truncated) continue;
    std::int64_t sum = 0;
    for (std::int64_t s = out.max_left; s <= out.max_right; ++s)
      sum += sample_eta_at(cfg, i, s);
    CHECK(sum == out.total_activated);
    ++clean;
  }
  CHECK(clean > 50);
}

TEST_CASE("hitting the particle cap flags truncation instead of clipping") {
  SimConfig cfg;
  cfg.survival_law = constant_p(0.9999);
  cfg.initial_law = make_degenerate(2);
  cfg.horizon = 1000;
  cfg.max_particles = 3;
  cfg.master_seed = 7008;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const RunOutcome out = run(cfg, i);
    CHECK(out.status == RunStatus::Truncated);
    CHECK(out.extinct_t == -1);
    // Only the origin was instantiated; the first frontier site tripped the
    // cap before its sleepers were added.
    CHECK(out.total_activated == 2);
    CHECK(out.max_right - out.max_left == 1);
  }

  const SurvivalEstimate est = estimate_survival(cfg, 100, 1);
  CHECK(est.truncated_fraction == 1.0);
  CHECK(est.alive_fraction == 0.0);
}

TEST_CASE("stepping preserves the lattice invariants") {
  SimConfig cfg;
  cfg.survival_law = make_power_edge(0.3);
  cfg.initial_law = make_geometric(0.5);
  cfg.horizon = 1000;
  cfg.master_seed = 7009;
  LatticeSim sim(cfg, 3);
  std::int64_t prev_total = sim.total_activated();
  std::int64_t ticks = 0;
  while (ticks < 200 && sim.step()) {
    ++ticks;
    CHECK(sim.time() == ticks);
    CHECK(sim.total_activated() >= prev_total);
    prev_total = sim.total_activated();
    CHECK(sim.visited_min() <= 0);
    CHECK(sim.visited_max() >= 0);
    for (const LatticeSim::Particle& part : sim.particles()) {
      CHECK(part.pos >= sim.visited_min());
      CHECK(part.pos <= sim.visited_max());
      CHECK(part.steps_left >= 0);
      CHECK(part.survival_p > 0.0);
      CHECK(part.survival_p < 1.0);
    }
  }
  if (sim.active_count() == 0) {
    // Extinct: further stepping is a no-op and freezes the clock.
    const std::int64_t t = sim.time();
    CHECK_FALSE(sim.step());
    CHECK(sim.time() == t);
  }
}

TEST_CASE("replica outcomes are deterministic and thread-invariant") {
  SimConfig cfg;
  cfg.survival_law = make_beta(2.0, 1.0);
  cfg.initial_law = make_degenerate(1);
  cfg.horizon = 200;
  cfg.master_seed = 7010;

  const RunOutcome a = run(cfg, 7);
  const RunOutcome b = run(cfg, 7);
  CHECK(same_outcome(a, b));

  std::vector<RunOutcome> seq, par;
  const SurvivalEstimate e1 = estimate_survival(cfg, 300, 1, &seq);
  const SurvivalEstimate e4 = estimate_survival(cfg, 300, 4, &par);
  CHECK(e1.alive_fraction == e4.alive_fraction);
  CHECK(e1.truncated_fraction == e4.truncated_fraction);
  CHECK(e1.ci_lo == e4.ci_lo);
  CHECK(e1.ci_hi == e4.ci_hi);
  REQUIRE(seq.size() == 300);
  REQUIRE(par.size() == 300);
  for (std::size_t i = 0; i < seq.size(); ++i)
    CHECK(same_outcome(seq[i], par[i]));
}

TEST_CASE("estimate bookkeeping and validation") {
  SimConfig cfg;
  cfg.survival_law = make_beta(2.0, 2.0);
  cfg.initial_law = make_degenerate(0);
  cfg.horizon = 50;
  cfg.master_seed = 7011;

  const SurvivalEstimate est = estimate_survival(cfg, 1000, 2);
  CHECK(est.replicas == 1000);
  CHECK(est.alive_fraction == 0.0);
  CHECK(est.truncated_fraction == 0.0);
  CHECK(est.ci_lo == 0.0);
  CHECK(est.ci_hi > 0.0);
  CHECK(est.ci_hi < 0.01);

  CHECK_THROWS_AS(estimate_survival(cfg, 99), ParamError);
  cfg.horizon = 0;
  CHECK_THROWS_AS(run(cfg, 0), ParamError);
  cfg.horizon = 10;
  cfg.max_particles = 0;
  CHECK_THROWS_AS(run(cfg, 0), ParamError);
  cfg.max_particles = 100;
  cfg.survival_law = SurvivalLaw{};
  CHECK_THROWS_AS(run(cfg, 0), ParamError);
}

TEST_CASE("concentrated survival parameters go extinct fast") {
  SimConfig cfg;
  cfg.survival_law = make_beta(50.0, 50.0);
  cfg.initial_law = make_degenerate(1);
  cfg.horizon = 10000;
  cfg.master_seed = 7012;
  std::vector<RunOutcome> outs;
  const SurvivalEstimate est = estimate_survival(cfg, 1000, 0, &outs);
  CHECK(est.alive_fraction <= 0.01);
  CHECK(est.truncated_fraction == 0.0);
  std::int64_t latest = 0;
  for (const RunOutcome& o : outs)
    if (o.status == RunStatus::ExtinctAt) latest = std::max(latest, o.extinct_t);
  CHECK(latest < 1000);
}

TEST_CASE("horizon is an observation window, not a different trajectory") {
  SimConfig cfg;
  cfg.survival_law = make_power_edge(0.2);
  cfg.initial_law = make_geometric(0.5);
  cfg.max_particles = 20000;
  cfg.master_seed = 7013;

  const std::int64_t n = 150;
  std::vector<std::vector<RunOutcome>> by_h;
  for (std::int64_t h : {50, 200, 800}) {
    cfg.horizon = h;
    std::vector<RunOutcome> outs;
    estimate_survival(cfg, n, 0, &outs);
    by_h.push_back(std::move(outs));
  }

  std::int64_t alive50 = 0, alive200 = 0, alive800 = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const RunOutcome& o50 = by_h[0][static_cast<std::size_t>(i)];
    const RunOutcome& o200 = by_h[1][static_cast<std::size_t>(i)];
    const RunOutcome& o800 = by_h[2][static_cast<std::size_t>(i)];
    // A longer window can only demote alive -> (extinct | truncated).
    if (o800.status == RunStatus::AliveAtHorizon) {
      CHECK(o200.status == RunStatus::AliveAtHorizon);
    }
    if (o200.status == RunStatus::AliveAtHorizon) {
      CHECK(o50.status == RunStatus::AliveAtHorizon);
    }
    // Extinction within the shorter window is final: same time, same extent.
    if (o50.status == RunStatus::ExtinctAt) {
      CHECK(o200.status == RunStatus::ExtinctAt);
      CHECK(o200.extinct_t == o50.extinct_t);
      CHECK(o800.extinct_t == o50.extinct_t);
      CHECK(o200.max_right == o50.max_right);
      CHECK(o200.max_left == o50.max_left);
    }
    if (o50.status == RunStatus::Truncated)
      CHECK(o200.status == RunStatus::Truncated);
    alive50 += o50.status == RunStatus::AliveAtHorizon;
    alive200 += o200.status == RunStatus::AliveAtHorizon;
    alive800 += o800.status == RunStatus::AliveAtHorizon;
  }
  CHECK(alive50 >= alive200);
  CHECK(alive200 >= alive800);
  CHECK(alive800 >= 1);
}

TEST_CASE("firework reach is decided by the farthest radius") {
  const SurvivalLaw law = constant_p(0.6);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RngStream probe = substream(9000, kStreamScratch, seed);
    const std::int64_t radius = sample_d_right(0.6, probe);

    RngStream rng = substream(9000, kStreamScratch, seed);
    InitialLaw init = one_then_zero();
    const std::int64_t target = std::max<std::int64_t>(radius, 1);
    const bool hit = firework_run(init, law, target, rng);
    CHECK(hit == (radius >= 1));

    if (radius >= 1) {
      RngStream rng2 = substream(9000, kStreamScratch, seed);
      InitialLaw init2 = one_then_zero();
      CHECK_FALSE(firework_run(init2, law, radius + 1, rng2));
    }
  }
}

TEST_CASE("firework reach frequency is monotone in the target") {
  const InitialLaw eta = make_zeta_tail(2.0);
  const SurvivalLaw law = make_osc_critical();
  for (std::uint64_t i = 0; i < 400; ++i) {
    RngStream r100 = run_stream(4242, i);
    const bool hit100 = firework_run(eta, law, 100, r100);
    RngStream r10 = run_stream(4242, i);
    const bool hit10 = firework_run(eta, law, 10, r10);
    if (hit100) CHECK(hit10);
  }
}

TEST_CASE("heavy-tailed fireworks keep reaching far targets") {
  const InitialLaw eta = make_zeta_tail(2.0);
  const SurvivalLaw law = make_osc_critical();
  const ReachEstimate est = firework_estimate(eta, law, 1000, 1000, 4242, 0);
  CHECK(est.replicas == 1000);
  CHECK(est.fraction >= 0.05);
  CHECK(est.ci_lo <= est.fraction);
  CHECK(est.fraction <= est.ci_hi);

  // Repeated call is bit-for-bit reproducible.
  const ReachEstimate again = firework_estimate(eta, law, 1000, 1000, 4242, 3);
  CHECK(again.fraction == est.fraction);
  CHECK(again.ci_lo == est.ci_lo);
  CHECK(again.ci_hi == est.ci_hi);

  RngStream rng = run_stream(1, 1);
  CHECK_THROWS_AS(firework_run(eta, law, 0, rng), ParamError);
  CHECK_THROWS_AS(firework_run(eta, SurvivalLaw{}, 5, rng), ParamError);
  CHECK_THROWS_AS(firework_estimate(eta, law, 10, 0, 1), ParamError);
}

TEST_CASE("firework coverage does not outrun the lattice process") {
  // The coverage process uses the same per-particle rightward radii but
  // ignores walk timing, so its reach frequency cannot exceed the lattice
  // frequency of the same event at a generous horizon (up to noise).
  const InitialLaw eta = make_geometric(0.9);
  const SurvivalLaw law = make_power_edge(0.4);
  const std::int64_t target = 15;
  const std::int64_t n = 400;

  const ReachEstimate fw = firework_estimate(eta, law, target, n, 5353, 0);

  SimConfig cfg;
  cfg.survival_law = law;
  cfg.initial_law = eta;
  cfg.horizon = 150;
  cfg.max_particles = 200000;
  cfg.master_seed = 5353;
  std::vector<RunOutcome> outs;
  estimate_survival(cfg, n, 0, &outs);
  std::int64_t reached = 0;
  for (const RunOutcome& o : outs) reached += o.max_right >= target;
  const double fm = static_cast<double>(reached) / static_cast<double>(n);

  CHECK(fw.fraction <= fm + 3.0 * std::sqrt(0.5 / n));
}
