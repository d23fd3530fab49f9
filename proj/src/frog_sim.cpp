#include "frog_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "displacement.hpp"
#include "errors.hpp"

namespace frog {
namespace {

// Heavy-tailed counts can be astronomical at a single station; draws beyond
// the cap are dropped, which only shrinks the frontier (conservative for any
// reach-frequency lower bound).
constexpr std::int64_t kFireworkSiteCap = 1000000;

void validate_config(const SimConfig& cfg) {
  if (cfg.horizon < 1) throw ParamError("horizon must be >= 1");
  if (cfg.max_particles < 1) throw ParamError("max_particles must be >= 1");
  if (!cfg.survival_law.sampler) throw ParamError("survival law has no sampler");
  if (!cfg.initial_law.sampler) throw ParamError("initial law has no sampler");
  if (cfg.origin_law && !cfg.origin_law->sampler)
    throw ParamError("origin law has no sampler");
}

struct Wilson {
  double lo;
  double hi;
};

Wilson wilson95(std::int64_t successes, std::int64_t n) {
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2n = z * z / nn;
  const double denom = 1.0 + z2n;
  const double center = (phat + z2n / 2.0) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nn + z2n / (4.0 * nn)) / denom;
  Wilson w{std::max(0.0, center - half), std::min(1.0, center + half)};
  // The interval endpoints are exactly 0/1 at degenerate counts; don't let
  // cancellation residue leak through.
  if (successes == 0) w.lo = 0.0;
  if (successes == n) w.hi = 1.0;
  return w;
}

// Distributes [0, jobs) across a small pool; worker exceptions are rethrown
// on the caller thread after join.
template <typename Fn>
void parallel_for(std::int64_t jobs, int threads, Fn&& body) {
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = static_cast<int>(
      std::min<std::int64_t>(n_threads, std::max<std::int64_t>(jobs, 1)));
  if (n_threads == 1) {
    for (std::int64_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= jobs) return;
        try {
          body(i);
        } catch (...) {
          {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

const char* run_status_token(RunStatus s) {
  switch (s) {
    case RunStatus::ExtinctAt:
      return "extinct";
    case RunStatus::AliveAtHorizon:
      return "alive";
    case RunStatus::Truncated:
      return "truncated";
  }
  return "?";
}

std::int64_t sample_eta_at(const SimConfig& cfg, std::uint64_t run_index,
                           std::int64_t site) {
  RngStream stream = site_stream(cfg.master_seed, run_index, site);
  const InitialLaw& law =
      (site == 0 && cfg.origin_law) ? *cfg.origin_law : cfg.initial_law;
  return law.sampler(stream);
}

LatticeSim::LatticeSim(const SimConfig& cfg, std::uint64_t run_index)
    : cfg_(&cfg),
      run_index_(run_index),
      walk_rng_(run_stream(cfg.master_seed, run_index)) {
  validate_config(cfg);
  wake_site(0);
}

void LatticeSim::wake_site(std::int64_t site) {
  RngStream stream = site_stream(cfg_->master_seed, run_index_, site);
  const InitialLaw& law =
      (site == 0 && cfg_->origin_law) ? *cfg_->origin_law : cfg_->initial_law;
  const std::int64_t eta = law.sampler(stream);
  if (eta < 0) throw ParamError("initial law produced a negative count");
  if (static_cast<std::int64_t>(active_.size()) + eta > cfg_->max_particles) {
    // Cap would be exceeded: flag and stop rather than silently clipping.
    truncated_ = true;
    return;
  }
  for (std::int64_t i = 0; i < eta; ++i) {
    const double p = cfg_->survival_law.sampler(stream);
    if (!(p > 0.0 && p < 1.0))
      throw NumericError("survival sampler produced p outside (0,1)");
    active_.push_back({site, p, sample_lifetime(p, stream)});
  }
  total_activated_ += eta;
}

bool LatticeSim::step() {
  if (truncated_ || active_.empty()) return false;
  ++time_;
  bool reached_right = false;
  bool reached_left = false;
  const std::int64_t right_edge = vmax_ + 1;
  const std::int64_t left_edge = vmin_ - 1;
  std::size_t w = 0;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    Particle part = active_[i];
    if (part.steps_left == 0) continue;  // dies before moving this tick
    --part.steps_left;
    part.pos += walk_rng_.coin() ? 1 : -1;
    if (part.pos == right_edge) reached_right = true;
    if (part.pos == left_edge) reached_left = true;
    active_[w++] = part;
  }
  active_.resize(w);
  // Activation is effective next tick: woken particles are appended after
  // the move pass and take their first step in the following tick.
  if (reached_right) {
    vmax_ = right_edge;
    wake_site(right_edge);
  }
  if (reached_left && !truncated_) {
    vmin_ = left_edge;
    wake_site(left_edge);
  }
  return !truncated_ && !active_.empty();
}

RunOutcome run(const SimConfig& cfg, std::uint64_t run_index) {
  LatticeSim sim(cfg, run_index);
  while (!sim.truncated() && sim.active_count() > 0 &&
         sim.time() < cfg.horizon) {
    sim.step();
  }
  RunOutcome out;
  out.total_activated = sim.total_activated();
  out.max_right = sim.visited_max();
  out.max_left = sim.visited_min();
  if (sim.truncated()) {
    out.status = RunStatus::Truncated;
  } else if (sim.active_count() == 0) {
    out.status = RunStatus::ExtinctAt;
    out.extinct_t = sim.time();
  } else {
    out.status = RunStatus::AliveAtHorizon;
  }
  return out;
}

SurvivalEstimate estimate_survival(const SimConfig& cfg, std::int64_t replicas,
                                   int threads,
                                   std::vector<RunOutcome>* outcomes) {
  validate_config(cfg);
  if (replicas < 100) throw ParamError("replicas must be >= 100");
  std::vector<RunOutcome> local(static_cast<std::size_t>(replicas));
  parallel_for(replicas, threads, [&](std::int64_t i) {
    local[static_cast<std::size_t>(i)] =
        run(cfg, static_cast<std::uint64_t>(i));
  });

  std::int64_t alive = 0;
  std::int64_t truncated = 0;
  for (const RunOutcome& o : local) {
    alive += o.status == RunStatus::AliveAtHorizon;
    truncated += o.status == RunStatus::Truncated;
  }
  SurvivalEstimate est;
  est.replicas = replicas;
  est.alive_fraction =
      static_cast<double>(alive) / static_cast<double>(replicas);
  est.truncated_fraction =
      static_cast<double>(truncated) / static_cast<double>(replicas);
  const Wilson w = wilson95(alive, replicas);
  est.ci_lo = w.lo;
  est.ci_hi = w.hi;
  if (outcomes) *outcomes = std::move(local);
  return est;
}

bool firework_run(const InitialLaw& initial, const SurvivalLaw& survival,
                  std::int64_t reach_target, RngStream& rng) {
  if (reach_target < 1) throw ParamError("reach target must be >= 1");
  if (!initial.sampler || !survival.sampler)
    throw ParamError("fireworks needs sampler-equipped laws");
  std::int64_t frontier = 0;  // lit interval is [0, frontier]
  for (std::int64_t z = 0; z <= frontier; ++z) {
    std::int64_t count = initial.sampler(rng);
    if (count < 0) throw ParamError("initial law produced a negative count");
    count = std::min(count, kFireworkSiteCap);
    for (std::int64_t i = 0; i < count; ++i) {
      const double p = survival.sampler(rng);
      if (!(p > 0.0 && p < 1.0))
        throw NumericError("survival sampler produced p outside (0,1)");
      const std::int64_t radius = sample_d_right(p, rng);
      frontier = std::max(frontier, z + radius);
    }
    if (frontier >= reach_target) return true;
  }
  return false;
}

ReachEstimate firework_estimate(const InitialLaw& initial,
                                const SurvivalLaw& survival,
                                std::int64_t reach_target,
                                std::int64_t replicas,
                                std::uint64_t master_seed, int threads) {
  if (replicas < 1) throw ParamError("replicas must be >= 1");
  std::vector<unsigned char> reached(static_cast<std::size_t>(replicas), 0);
  parallel_for(replicas, threads, [&](std::int64_t i) {
    RngStream rng = run_stream(master_seed, static_cast<std::uint64_t>(i));
    reached[static_cast<std::size_t>(i)] =
        firework_run(initial, survival, reach_target, rng) ? 1 : 0;
  });
  std::int64_t hits = 0;
  for (unsigned char r : reached) hits += r;
  ReachEstimate est;
  est.replicas = replicas;
  est.fraction = static_cast<double>(hits) / static_cast<double>(replicas);
  const Wilson w = wilson95(hits, replicas);
  est.ci_lo = w.lo;
  est.ci_hi = w.hi;
  return est;
}

}  // namespace frog
