#ifndef FROGMODEL_H
#define FROGMODEL_H

/* C interface to the frog-model library: survival/initial laws as opaque
 * handles, tail formulas, tail integrals, the phase classifier, and the
 * lattice/firework simulators.  Every function returns an fm_status; on
 * anything but FM_OK the output arguments are untouched and fm_last_error()
 * holds a thread-local message describing what went wrong. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FM_BUILD_SHARED)
#    define FM_API __declspec(dllexport)
#  else
#    define FM_API __declspec(dllimport)
#  endif
#else
#  define FM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fm_status {
  FM_OK = 0,
  FM_EPARAM = 1,       /* invalid argument or parameter out of domain */
  FM_EPARSE = 2,       /* malformed law/eta spec text */
  FM_EDOMAIN = 3,      /* evaluation outside a function's domain */
  FM_ENUMERIC = 4,     /* quadrature failure or missing density */
  FM_EUNSUPPORTED = 5, /* family without the requested closed form */
  FM_EUNDERFLOW = 6,   /* value collapsed below the representable floor */
  FM_EINTERNAL = 7
} fm_status;

/* Message for the most recent failing call on this thread. */
FM_API const char* fm_last_error(void);
FM_API const char* fm_version(void);

/* ---- law handles ---- */

typedef struct fm_survival_law fm_survival_law;
typedef struct fm_initial_law fm_initial_law;

/* Spec grammar (one line, no spaces): family:key=value,key=value,...
 * Survival families: power:beta=  beta:alpha=,beta=
 * gammaratio:alpha=,beta=,lambda1=,lambda2=  genbeta1:a=,b=,c=  osc-critical.
 * Heavy-tailed odds families (wrapped through u = x/(1+x)): pareto1:xm=,alpha=
 * lomax:alpha=,lambda=  gpd:xi=,sigma=  betaprime:a=,b=  f:d1=,d2=
 * burr12:c=,k=  invgamma:a=,b=  frechet:alpha=  logpareto:alpha=,rho=.
 * Product construction: oddsprod:base=family(...),ymoment=<v>[,ylo=,yhi=].
 * stable: is rejected (FM_EUNSUPPORTED). */
FM_API fm_status fm_survival_law_parse(const char* spec, fm_survival_law** out);
FM_API void fm_survival_law_free(fm_survival_law* law);

/* Initial-law specs: degenerate:<k>  geometric:q=  poisson:m=  zetatail:c= */
FM_API fm_status fm_initial_law_parse(const char* spec, fm_initial_law** out);
FM_API void fm_initial_law_free(fm_initial_law* law);

typedef struct fm_survival_law_info {
  double edge_beta;  /* density ~ (1-u)^{edge_beta-1} L(1/(1-u)) near u=1 */
  double support_lo; /* density vanishes on (0, support_lo) */
  int has_density;
  int has_cdf;       /* closed-form CDF available */
  double liminf_nsq; /* liminf/limsup of L(n^2); meaningful iff *_known */
  double limsup_nsq;
  int liminf_known;
  int limsup_known;
} fm_survival_law_info;

FM_API fm_status fm_survival_law_get_info(const fm_survival_law* law,
                                          fm_survival_law_info* out);
/* Writes the NUL-terminated description, truncated to cap-1 characters. */
FM_API fm_status fm_survival_law_describe(const fm_survival_law* law,
                                          char* buf, size_t cap);
FM_API fm_status fm_survival_law_density(const fm_survival_law* law, double u,
                                         double* out);
/* FM_EUNSUPPORTED when the law has no closed-form CDF. */
FM_API fm_status fm_survival_law_cdf(const fm_survival_law* law, double u,
                                     double* out);
/* count draws from the stream keyed (seed, stream_id); reproducible. */
FM_API fm_status fm_survival_law_sample(const fm_survival_law* law,
                                        uint64_t seed, uint64_t stream_id,
                                        int64_t count, double* out);

enum {
  FM_ETA_DEGENERATE = 0,
  FM_ETA_GEOMETRIC = 1,
  FM_ETA_POISSON = 2,
  FM_ETA_ZETATAIL = 3,
  FM_ETA_CUSTOM = 4
};

typedef struct fm_initial_law_info {
  double mean; /* may be +infinity */
  double p_zero;
  double param; /* the family's defining parameter (k, q, m, or c) */
  int family;   /* FM_ETA_* */
} fm_initial_law_info;

FM_API fm_status fm_initial_law_get_info(const fm_initial_law* law,
                                         fm_initial_law_info* out);
FM_API fm_status fm_initial_law_describe(const fm_initial_law* law, char* buf,
                                         size_t cap);
FM_API fm_status fm_initial_law_sample(const fm_initial_law* law,
                                       uint64_t seed, uint64_t stream_id,
                                       int64_t count, int64_t* out);

/* ---- displacement tails ---- */

/* Decay ratio of P(D >= n) = ratio^n for survival parameter p in (0,1]. */
FM_API fm_status fm_displacement_ratio(double p, double* out);
FM_API fm_status fm_tail_right(double p, int64_t n, double* out);

/* Brute-force walker Monte Carlo: fills right_tails[n] with the empirical
 * P(max position >= n) for n = 0..n_max, and star_tails (may be NULL) with
 * the two-sided analogue P(max |extreme| >= n). */
FM_API fm_status fm_walk_tails(double p, int64_t n_max, uint64_t seed,
                               int64_t replicas, double* right_tails,
                               double* star_tails);

typedef struct fm_tail_estimate {
  double mean;
  double ci_lo; /* 95% normal interval */
  double ci_hi;
  double std_err;
  int64_t replicas;
} fm_tail_estimate;

/* Marginal tail P(D >= n) under a parameter law: exact conditional tails
 * averaged over sampled parameters. */
FM_API fm_status fm_marginal_tail_right(const fm_survival_law* law, int64_t n,
                                        uint64_t seed, int64_t replicas,
                                        fm_tail_estimate* out);

/* ---- tail integrals ---- */

enum {
  FM_INTEGRAL_I = 0,         /* upper kernel (1+sqrt(1-x))^{-n} */
  FM_INTEGRAL_J = 1,         /* exact kernel ((1-sqrt(1-x^2))/x)^n */
  FM_INTEGRAL_EXACT_TAIL = 2 /* J relabelled for tail grids */
};

typedef struct fm_integral_report {
  int kind;
  int64_t n;
  double value;
  double normalized; /* value * n^{2 beta - 1} / L(n^2) */
  double abs_err_est;
} fm_integral_report;

FM_API fm_status fm_integral(const fm_survival_law* law, int kind, int64_t n,
                             fm_integral_report* out);

typedef struct fm_gn_report {
  int64_t n;
  double tail; /* P(D >= n) */
  double gn;   /* n * tail * log(1/tail) */
  double a_n;
  double h_n;
  double identity_residual;
} fm_gn_report;

FM_API fm_status fm_gn(const fm_survival_law* law, int64_t n,
                       fm_gn_report* out);

/* ---- phase classifier ---- */

enum {
  FM_VERDICT_EXTINCT = 0,
  FM_VERDICT_SURVIVES_WPP = 1,
  FM_VERDICT_INCONCLUSIVE = 2
};

typedef struct fm_verdict {
  int verdict;
  double margin; /* slack of the fired strict inequality; NaN when none */
  char rule[160];
} fm_verdict;

/* liminf_nsq/limsup_nsq: pointers so NULL can mean "unknown"; +infinity is
 * a legal value. */
FM_API fm_status fm_classify(double edge_beta, const double* liminf_nsq,
                             const double* limsup_nsq,
                             const fm_initial_law* eta, fm_verdict* out);

FM_API fm_status fm_classify_beta_family(double alpha, double beta,
                                         const fm_initial_law* eta,
                                         fm_verdict* out);

enum { FM_BOUND_UPPER_DENSITY = 0, FM_BOUND_LOWER_DENSITY = 1 };

/* One-sided density bounds prove only one direction; the other side reports
 * FM_VERDICT_INCONCLUSIVE. */
FM_API fm_status fm_classify_one_sided(int bound_kind, double edge_beta,
                                       const double* liminf_nsq,
                                       const double* limsup_nsq,
                                       const fm_initial_law* eta,
                                       fm_verdict* out);

/* Coverage criterion for zetatail initial laws (n P(eta>n) -> c): *survives
 * is 1 iff c > sqrt(2) strictly.  Other families: FM_EPARAM. */
FM_API fm_status fm_fireworks_criterion(const fm_initial_law* eta,
                                        int* survives, char* note_buf,
                                        size_t note_cap);

/* ---- lattice simulation ---- */

typedef struct fm_sim_params {
  int64_t horizon;
  int64_t max_particles; /* cap; runs that hit it are reported truncated */
  uint64_t master_seed;
} fm_sim_params;

enum { FM_RUN_EXTINCT = 0, FM_RUN_ALIVE = 1, FM_RUN_TRUNCATED = 2 };

typedef struct fm_run_outcome {
  int status;
  int64_t extinct_t; /* -1 unless status == FM_RUN_EXTINCT */
  int64_t total_activated;
  int64_t max_right;
  int64_t max_left;
} fm_run_outcome;

/* One replica, deterministic in (master_seed, run_index).  eta_origin
 * overrides the initial law at site 0 only; NULL means same everywhere. */
FM_API fm_status fm_sim_run(const fm_survival_law* law,
                            const fm_initial_law* eta,
                            const fm_initial_law* eta_origin,
                            const fm_sim_params* params, uint64_t run_index,
                            fm_run_outcome* out);

typedef struct fm_survival_estimate {
  double alive_fraction; /* finite-horizon proxy, upper bound for survival */
  double ci_lo;          /* Wilson 95% */
  double ci_hi;
  double truncated_fraction;
  int64_t replicas;
} fm_survival_estimate;

/* replicas >= 100; threads = 0 picks the hardware count.  outcomes may be
 * NULL, else it receives replicas entries indexed by run (thread-count
 * independent). */
FM_API fm_status fm_estimate_survival(const fm_survival_law* law,
                                      const fm_initial_law* eta,
                                      const fm_initial_law* eta_origin,
                                      const fm_sim_params* params,
                                      int64_t replicas, int threads,
                                      fm_run_outcome* outcomes,
                                      fm_survival_estimate* out);

/* One-directional coverage run; *reached says whether the lit interval hit
 * reach_target.  Randomness comes from the (seed, run_index) run stream. */
FM_API fm_status fm_firework_run(const fm_initial_law* eta,
                                 const fm_survival_law* law,
                                 int64_t reach_target, uint64_t seed,
                                 uint64_t run_index, int* reached);

typedef struct fm_reach_estimate {
  double fraction;
  double ci_lo;
  double ci_hi;
  int64_t replicas;
} fm_reach_estimate;

FM_API fm_status fm_firework_estimate(const fm_initial_law* eta,
                                      const fm_survival_law* law,
                                      int64_t reach_target, int64_t replicas,
                                      uint64_t master_seed, int threads,
                                      fm_reach_estimate* out);

/* ---- law diagnostics ---- */

typedef struct fm_law_diagnostics {
  int has_density;
  int has_cdf;
  double normalization; /* NaN for sampler-only laws */
  double edge_ratio;    /* density / edge prediction at gap 1e-8 */
  double ks_distance;   /* sampler vs CDF (closed form or numeric) */
  int64_t ks_samples;
} fm_law_diagnostics;

FM_API fm_status fm_law_check(const fm_survival_law* law, uint64_t seed,
                              int64_t ks_samples, fm_law_diagnostics* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FROGMODEL_H */
