#include "frogmodel/frogmodel.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "displacement.hpp"
#include "errors.hpp"
#include "frog_sim.hpp"
#include "initial_law.hpp"
#include "law_check.hpp"
#include "law_parse.hpp"
#include "phase.hpp"
#include "rng.hpp"
#include "survival_laws.hpp"

struct fm_survival_law {
  frog::SurvivalLaw law;
};

struct fm_initial_law {
  frog::InitialLaw law;
};

namespace {

thread_local std::string g_last_error;

fm_status fail(fm_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Single exception-to-status mapping for the whole surface; new exception
// classes in errors.hpp need a branch here.
template <typename Fn>
fm_status guarded(Fn&& fn) {
  try {
    fn();
    return FM_OK;
  } catch (const frog::ParseError& e) {
    return fail(FM_EPARSE, e.what());
  } catch (const frog::UnsupportedFamilyError& e) {
    return fail(FM_EUNSUPPORTED, e.what());
  } catch (const frog::NonTerminatingError& e) {
    return fail(FM_EDOMAIN, e.what());
  } catch (const frog::ParamError& e) {
    return fail(FM_EPARAM, e.what());
  } catch (const frog::DomainError& e) {
    return fail(FM_EDOMAIN, e.what());
  } catch (const frog::UnderflowError& e) {
    return fail(FM_EUNDERFLOW, e.what());
  } catch (const frog::NumericError& e) {
    return fail(FM_ENUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(FM_EINTERNAL, e.what());
  } catch (...) {
    return fail(FM_EINTERNAL, "unknown error");
  }
}

fm_status copy_string(const std::string& s, char* buf, size_t cap) {
  if (!buf || cap == 0) return fail(FM_EPARAM, "null or empty buffer");
  std::snprintf(buf, cap, "%s", s.c_str());
  return FM_OK;
}

frog::Limit limit_from(const double* p) {
  if (!p) return std::nullopt;
  return *p;
}

int verdict_code(frog::Verdict v) {
  switch (v) {
    case frog::Verdict::Extinct:
      return FM_VERDICT_EXTINCT;
    case frog::Verdict::SurvivesWPP:
      return FM_VERDICT_SURVIVES_WPP;
    case frog::Verdict::Inconclusive:
      return FM_VERDICT_INCONCLUSIVE;
  }
  return FM_VERDICT_INCONCLUSIVE;
}

void fill_verdict(const frog::PhaseVerdict& v, fm_verdict* out) {
  out->verdict = verdict_code(v.verdict);
  out->margin = v.margin;
  std::snprintf(out->rule, sizeof out->rule, "%s", v.rule.c_str());
}

int run_status_code(frog::RunStatus s) {
  switch (s) {
    case frog::RunStatus::ExtinctAt:
      return FM_RUN_EXTINCT;
    case frog::RunStatus::AliveAtHorizon:
      return FM_RUN_ALIVE;
    case frog::RunStatus::Truncated:
      return FM_RUN_TRUNCATED;
  }
  return FM_RUN_EXTINCT;
}

void fill_outcome(const frog::RunOutcome& r, fm_run_outcome* out) {
  out->status = run_status_code(r.status);
  out->extinct_t = r.extinct_t;
  out->total_activated = r.total_activated;
  out->max_right = r.max_right;
  out->max_left = r.max_left;
}

int family_code(frog::InitialFamily f) {
  switch (f) {
    case frog::InitialFamily::Degenerate:
      return FM_ETA_DEGENERATE;
    case frog::InitialFamily::Geometric:
      return FM_ETA_GEOMETRIC;
    case frog::InitialFamily::Poisson:
      return FM_ETA_POISSON;
    case frog::InitialFamily::ZetaTail:
      return FM_ETA_ZETATAIL;
    case frog::InitialFamily::Custom:
      return FM_ETA_CUSTOM;
  }
  return FM_ETA_CUSTOM;
}

frog::SimConfig build_config(const fm_survival_law* law,
                             const fm_initial_law* eta,
                             const fm_initial_law* eta_origin,
                             const fm_sim_params* params) {
  frog::SimConfig cfg;
  cfg.survival_law = law->law;
  cfg.initial_law = eta->law;
  if (eta_origin) cfg.origin_law = eta_origin->law;
  cfg.horizon = params->horizon;
  cfg.max_particles = params->max_particles;
  cfg.master_seed = params->master_seed;
  return cfg;
}

frog::IntegralKind integral_kind_from(int kind) {
  switch (kind) {
    case FM_INTEGRAL_I:
      return frog::IntegralKind::I;
    case FM_INTEGRAL_J:
      return frog::IntegralKind::J;
    case FM_INTEGRAL_EXACT_TAIL:
      return frog::IntegralKind::ExactTail;
    default:
      throw frog::ParamError("unknown integral kind code");
  }
}

int integral_kind_code(frog::IntegralKind kind) {
  switch (kind) {
    case frog::IntegralKind::I:
      return FM_INTEGRAL_I;
    case frog::IntegralKind::J:
      return FM_INTEGRAL_J;
    case frog::IntegralKind::ExactTail:
      return FM_INTEGRAL_EXACT_TAIL;
  }
  return FM_INTEGRAL_J;
}

}  // namespace

extern "C" {

const char* fm_last_error(void) { return g_last_error.c_str(); }

const char* fm_version(void) { return "1.0.0"; }

fm_status fm_survival_law_parse(const char* spec, fm_survival_law** out) {
  if (!spec || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    auto handle = new fm_survival_law{frog::parse_survival_law(spec)};
    *out = handle;
  });
}

void fm_survival_law_free(fm_survival_law* law) { delete law; }

fm_status fm_initial_law_parse(const char* spec, fm_initial_law** out) {
  if (!spec || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    auto handle = new fm_initial_law{frog::parse_initial_law(spec)};
    *out = handle;
  });
}

void fm_initial_law_free(fm_initial_law* law) { delete law; }

fm_status fm_survival_law_get_info(const fm_survival_law* law,
                                   fm_survival_law_info* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out->edge_beta = law->law.edge_beta;
  out->support_lo = law->law.support_lo;
  out->has_density = law->law.has_density() ? 1 : 0;
  out->has_cdf = law->law.cdf.has_value() ? 1 : 0;
  out->liminf_known = law->law.edge_L.liminf_nsq.has_value() ? 1 : 0;
  out->limsup_known = law->law.edge_L.limsup_nsq.has_value() ? 1 : 0;
  out->liminf_nsq = law->law.edge_L.liminf_nsq.value_or(nan);
  out->limsup_nsq = law->law.edge_L.limsup_nsq.value_or(nan);
  return FM_OK;
}

fm_status fm_survival_law_describe(const fm_survival_law* law, char* buf,
                                   size_t cap) {
  if (!law) return fail(FM_EPARAM, "null argument");
  return copy_string(law->law.description, buf, cap);
}

fm_status fm_survival_law_density(const fm_survival_law* law, double u,
                                  double* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] { *out = law->law.density(u); });
}

fm_status fm_survival_law_cdf(const fm_survival_law* law, double u,
                              double* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  if (!law->law.cdf)
    return fail(FM_EUNSUPPORTED, "law has no closed-form CDF");
  return guarded([&] { *out = (*law->law.cdf)(u); });
}

fm_status fm_survival_law_sample(const fm_survival_law* law, uint64_t seed,
                                 uint64_t stream_id, int64_t count,
                                 double* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  if (count < 0) return fail(FM_EPARAM, "count must be >= 0");
  return guarded([&] {
    frog::RngStream rng = frog::substream(seed, frog::kStreamScratch,
                                          stream_id);
    for (int64_t i = 0; i < count; ++i) out[i] = law->law.sampler(rng);
  });
}

fm_status fm_initial_law_get_info(const fm_initial_law* law,
                                  fm_initial_law_info* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  out->mean = law->law.mean;
  out->p_zero = law->law.p_zero;
  out->param = law->law.param;
  out->family = family_code(law->law.family);
  return FM_OK;
}

fm_status fm_initial_law_describe(const fm_initial_law* law, char* buf,
                                  size_t cap) {
  if (!law) return fail(FM_EPARAM, "null argument");
  return copy_string(law->law.description, buf, cap);
}

fm_status fm_initial_law_sample(const fm_initial_law* law, uint64_t seed,
                                uint64_t stream_id, int64_t count,
                                int64_t* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  if (count < 0) return fail(FM_EPARAM, "count must be >= 0");
  return guarded([&] {
    frog::RngStream rng = frog::substream(seed, frog::kStreamScratch,
                                          stream_id);
    for (int64_t i = 0; i < count; ++i) out[i] = law->law.sampler(rng);
  });
}

fm_status fm_displacement_ratio(double p, double* out) {
  if (!out) return fail(FM_EPARAM, "null argument");
  return guarded([&] { *out = frog::displacement_ratio(p); });
}

fm_status fm_tail_right(double p, int64_t n, double* out) {
  if (!out) return fail(FM_EPARAM, "null argument");
  return guarded([&] { *out = frog::tail_right(p, n); });
}

fm_status fm_walk_tails(double p, int64_t n_max, uint64_t seed,
                        int64_t replicas, double* right_tails,
                        double* star_tails) {
  if (!right_tails) return fail(FM_EPARAM, "null argument");
  if (n_max < 0) return fail(FM_EPARAM, "n_max must be >= 0");
  if (replicas < 1) return fail(FM_EPARAM, "replicas must be >= 1");
  return guarded([&] {
    frog::RngStream rng = frog::substream(seed, frog::kStreamScratch,
                                          0x574Bull);
    std::vector<int64_t> hist_r(static_cast<size_t>(n_max) + 1, 0);
    std::vector<int64_t> hist_s(static_cast<size_t>(n_max) + 1, 0);
    for (int64_t i = 0; i < replicas; ++i) {
      const frog::WalkSample w = frog::walk_oracle(p, rng);
      ++hist_r[static_cast<size_t>(std::min(w.d_right, n_max))];
      ++hist_s[static_cast<size_t>(std::min(w.d_star, n_max))];
    }
    int64_t above_r = 0, above_s = 0;
    const double inv = 1.0 / static_cast<double>(replicas);
    for (int64_t n = n_max; n >= 0; --n) {
      above_r += hist_r[static_cast<size_t>(n)];
      above_s += hist_s[static_cast<size_t>(n)];
      right_tails[n] = static_cast<double>(above_r) * inv;
      if (star_tails) star_tails[n] = static_cast<double>(above_s) * inv;
    }
  });
}

fm_status fm_marginal_tail_right(const fm_survival_law* law, int64_t n,
                                 uint64_t seed, int64_t replicas,
                                 fm_tail_estimate* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::TailEstimate est =
        frog::marginal_tail_right(law->law, n, seed, replicas);
    out->mean = est.mean;
    out->ci_lo = est.ci_lo;
    out->ci_hi = est.ci_hi;
    out->std_err = est.std_err;
    out->replicas = est.replicas;
  });
}

fm_status fm_integral(const fm_survival_law* law, int kind, int64_t n,
                      fm_integral_report* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::IntegralReport rep =
        frog::compute_integral(law->law, integral_kind_from(kind), n);
    out->kind = integral_kind_code(rep.kind);
    out->n = rep.n;
    out->value = rep.value;
    out->normalized = rep.normalized;
    out->abs_err_est = rep.abs_err_est;
  });
}

fm_status fm_gn(const fm_survival_law* law, int64_t n, fm_gn_report* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::GnReport rep = frog::compute_gn(law->law, n);
    out->n = rep.n;
    out->tail = rep.tail;
    out->gn = rep.gn;
    out->a_n = rep.a_n;
    out->h_n = rep.h_n;
    out->identity_residual = rep.identity_residual;
  });
}

fm_status fm_classify(double edge_beta, const double* liminf_nsq,
                      const double* limsup_nsq, const fm_initial_law* eta,
                      fm_verdict* out) {
  if (!eta || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::PhaseVerdict v =
        frog::classify(edge_beta, limit_from(liminf_nsq),
                       limit_from(limsup_nsq), eta->law);
    fill_verdict(v, out);
  });
}

fm_status fm_classify_beta_family(double alpha, double beta,
                                  const fm_initial_law* eta, fm_verdict* out) {
  if (!eta || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::PhaseVerdict v =
        frog::classify_beta_family(alpha, beta, eta->law);
    fill_verdict(v, out);
  });
}

fm_status fm_classify_one_sided(int bound_kind, double edge_beta,
                                const double* liminf_nsq,
                                const double* limsup_nsq,
                                const fm_initial_law* eta, fm_verdict* out) {
  if (!eta || !out) return fail(FM_EPARAM, "null argument");
  if (bound_kind != FM_BOUND_UPPER_DENSITY &&
      bound_kind != FM_BOUND_LOWER_DENSITY)
    return fail(FM_EPARAM, "unknown bound kind code");
  return guarded([&] {
    // Only the limits of L enter the clauses, so a limits-only stand-in is
    // faithful here.
    frog::SlowVaryingFn L;
    L.log_eval = [](double) { return 0.0; };
    L.liminf_nsq = limit_from(liminf_nsq);
    L.limsup_nsq = limit_from(limsup_nsq);
    L.description = "limits-only";
    const frog::DensityBoundKind kind =
        bound_kind == FM_BOUND_UPPER_DENSITY
            ? frog::DensityBoundKind::UpperDensityBound
            : frog::DensityBoundKind::LowerDensityBound;
    const frog::PhaseVerdict v =
        frog::classify_one_sided(kind, edge_beta, L, eta->law);
    fill_verdict(v, out);
  });
}

fm_status fm_fireworks_criterion(const fm_initial_law* eta, int* survives,
                                 char* note_buf, size_t note_cap) {
  if (!eta || !survives) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::FireworksNote note =
        frog::inconclusive_fireworks_criterion(eta->law);
    *survives = note.survives ? 1 : 0;
    if (note_buf && note_cap > 0)
      std::snprintf(note_buf, note_cap, "%s", note.note.c_str());
  });
}

fm_status fm_sim_run(const fm_survival_law* law, const fm_initial_law* eta,
                     const fm_initial_law* eta_origin,
                     const fm_sim_params* params, uint64_t run_index,
                     fm_run_outcome* out) {
  if (!law || !eta || !params || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::RunOutcome r =
        frog::run(build_config(law, eta, eta_origin, params), run_index);
    fill_outcome(r, out);
  });
}

fm_status fm_estimate_survival(const fm_survival_law* law,
                               const fm_initial_law* eta,
                               const fm_initial_law* eta_origin,
                               const fm_sim_params* params, int64_t replicas,
                               int threads, fm_run_outcome* outcomes,
                               fm_survival_estimate* out) {
  if (!law || !eta || !params || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    std::vector<frog::RunOutcome> runs;
    const frog::SurvivalEstimate est = frog::estimate_survival(
        build_config(law, eta, eta_origin, params), replicas, threads,
        outcomes ? &runs : nullptr);
    out->alive_fraction = est.alive_fraction;
    out->ci_lo = est.ci_lo;
    out->ci_hi = est.ci_hi;
    out->truncated_fraction = est.truncated_fraction;
    out->replicas = est.replicas;
    if (outcomes)
      for (size_t i = 0; i < runs.size(); ++i) fill_outcome(runs[i], &outcomes[i]);
  });
}

fm_status fm_firework_run(const fm_initial_law* eta, const fm_survival_law* law,
                          int64_t reach_target, uint64_t seed,
                          uint64_t run_index, int* reached) {
  if (!eta || !law || !reached) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    frog::RngStream rng = frog::run_stream(seed, run_index);
    *reached = frog::firework_run(eta->law, law->law, reach_target, rng) ? 1 : 0;
  });
}

fm_status fm_firework_estimate(const fm_initial_law* eta,
                               const fm_survival_law* law, int64_t reach_target,
                               int64_t replicas, uint64_t master_seed,
                               int threads, fm_reach_estimate* out) {
  if (!eta || !law || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::ReachEstimate est = frog::firework_estimate(
        eta->law, law->law, reach_target, replicas, master_seed, threads);
    out->fraction = est.fraction;
    out->ci_lo = est.ci_lo;
    out->ci_hi = est.ci_hi;
    out->replicas = est.replicas;
  });
}

fm_status fm_law_check(const fm_survival_law* law, uint64_t seed,
                       int64_t ks_samples, fm_law_diagnostics* out) {
  if (!law || !out) return fail(FM_EPARAM, "null argument");
  return guarded([&] {
    const frog::LawDiagnostics diag =
        frog::law_check(law->law, seed, ks_samples);
    out->has_density = diag.has_density ? 1 : 0;
    out->has_cdf = diag.has_cdf ? 1 : 0;
    out->normalization = diag.normalization;
    out->edge_ratio = diag.edge_ratio;
    out->ks_distance = diag.ks_distance;
    out->ks_samples = diag.ks_samples;
  });
}

}  // extern "C"
