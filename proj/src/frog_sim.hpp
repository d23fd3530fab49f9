#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "initial_law.hpp"
#include "rng.hpp"
#include "survival_laws.hpp"

namespace frog {

struct SimConfig {
  SurvivalLaw survival_law;
  InitialLaw initial_law;
  // Per-site law for the origin only, when it should differ (e.g. one seeded
  // walker with empty sites elsewhere).  nullopt: same as initial_law.
  std::optional<InitialLaw> origin_law;
  std::int64_t horizon = 1;
  std::int64_t max_particles = 1000000;
  std::uint64_t master_seed = 0;
};

enum class RunStatus { ExtinctAt, AliveAtHorizon, Truncated };
const char* run_status_token(RunStatus s);

struct RunOutcome {
  RunStatus status = RunStatus::ExtinctAt;
  std::int64_t extinct_t = -1;  // -1 unless status == ExtinctAt
  std::int64_t total_activated = 0;
  std::int64_t max_right = 0;  // rightmost visited coordinate (>= 0)
  std::int64_t max_left = 0;   // leftmost visited coordinate (<= 0)
};

// The number of sleepers instantiated at a site is the first draw of the
// per-(seed, run, site) stream, hence a pure function of those keys and
// independent of when (or whether) the trajectory reaches the site.
std::int64_t sample_eta_at(const SimConfig& cfg, std::uint64_t run_index,
                           std::int64_t site);

// Synchronous-tick lattice simulation.  One tick: every active particle
// first dies if its remaining-step count is zero, otherwise moves one step
// left/right with equal probability; any never-visited site reached this
// tick has its sleepers instantiated and woken with fresh survival draws,
// effective next tick.  Because moves are +-1, the visited set is always an
// interval, so activation checks are O(1).
class LatticeSim {
 public:
  struct Particle {
    std::int64_t pos;
    double survival_p;        // in (0,1)
    std::int64_t steps_left;  // steps remaining before death
  };

  LatticeSim(const SimConfig& cfg, std::uint64_t run_index);

  // Advances one tick; returns true while active particles remain and the
  // particle cap has not been hit.  No-op (false) once extinct/truncated.
  bool step();

  std::int64_t time() const { return time_; }
  std::size_t active_count() const { return active_.size(); }
  const std::vector<Particle>& particles() const { return active_; }
  bool truncated() const { return truncated_; }
  std::int64_t total_activated() const { return total_activated_; }
  std::int64_t visited_min() const { return vmin_; }
  std::int64_t visited_max() const { return vmax_; }

 private:
  void wake_site(std::int64_t site);

  const SimConfig* cfg_;
  std::uint64_t run_index_;
  RngStream walk_rng_;
  std::vector<Particle> active_;
  std::int64_t time_ = 0;
  std::int64_t vmin_ = 0;
  std::int64_t vmax_ = 0;
  std::int64_t total_activated_ = 0;
  bool truncated_ = false;
};

// Runs one replica to extinction, horizon, or truncation; deterministic in
// (cfg.master_seed, run_index).
RunOutcome run(const SimConfig& cfg, std::uint64_t run_index);

struct SurvivalEstimate {
  double alive_fraction = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval for the alive fraction
  double ci_hi = 0.0;
  double truncated_fraction = 0.0;
  std::int64_t replicas = 0;
};

// Parallel replicas with per-run derived streams; outcomes (when requested)
// are indexed by run, so results do not depend on the thread count.
// alive_fraction counts AliveAtHorizon runs and is an upper-bound proxy for
// the survival probability at this horizon, not the asymptotic event.
SurvivalEstimate estimate_survival(const SimConfig& cfg, std::int64_t replicas,
                                   int threads = 0,
                                   std::vector<RunOutcome>* outcomes = nullptr);

// One-directional coverage process on sites 0,1,2,...: site 0 is lit; a lit
// site z with per-particle reach radii R (each a rightward-displacement draw
// under a fresh survival parameter) lights every site in (z, z+max R].
// Returns whether the lit interval reaches reach_target.  The per-site
// particle count is capped at 10^6 draws.
bool firework_run(const InitialLaw& initial, const SurvivalLaw& survival,
                  std::int64_t reach_target, RngStream& rng);

struct ReachEstimate {
  double fraction = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::int64_t replicas = 0;
};
ReachEstimate firework_estimate(const InitialLaw& initial,
                                const SurvivalLaw& survival,
                                std::int64_t reach_target,
                                std::int64_t replicas,
                                std::uint64_t master_seed, int threads = 0);

}  // namespace frog
