// frog: command-line front end over the frogmodel C API.
// Subcommands: tail, integrals, classify, simulate, fireworks, sweep,
// lawcheck. Every command emits CSV (stdout or --out) with an optional
// "# schema=1 ..." meta line carrying the generation timestamp; identical
// arguments and seed reproduce the remaining bytes exactly.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frogmodel/frogmodel.h"

namespace {

// Exit codes: 0 ok, 2 usage/parse, 3 numeric failure, 4 truncation-dominated.
int status_exit(fm_status st) {
  switch (st) {
    case FM_EPARSE:
    case FM_EPARAM:
    case FM_EDOMAIN:
    case FM_EUNSUPPORTED:
      return 2;
    default:
      return 3;
  }
}

int die(fm_status st) {
  std::fprintf(stderr, "error: %s\n", fm_last_error());
  return status_exit(st);
}

#define TRY(call)                                  \
  do {                                             \
    const fm_status try_st_ = (call);              \
    if (try_st_ != FM_OK) return die(try_st_);     \
  } while (0)

struct LawHandle {
  fm_survival_law* h = nullptr;
  ~LawHandle() { fm_survival_law_free(h); }
};

struct EtaHandle {
  fm_initial_law* h = nullptr;
  ~EtaHandle() { fm_initial_law_free(h); }
};

// Shortest round-trip formatting; the same convention everywhere keeps CSV
// output byte-stable.
std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt(std::int64_t x) { return std::to_string(x); }

bool parse_seed(const std::string& text, std::uint64_t* out) {
  if (text == "random") {
    std::random_device rd;
    *out = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    return true;
  }
  const char* b = text.data();
  const char* e = b + text.size();
  const auto res = std::from_chars(b, e, *out);
  return res.ec == std::errc() && res.ptr == e;
}

bool parse_limit(const std::string& text, double* out) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "+inf" || t == "infinity") {
    *out = std::numeric_limits<double>::infinity();
    return true;
  }
  try {
    std::size_t pos = 0;
    *out = std::stod(t, &pos);
    return pos == t.size();
  } catch (...) {
    return false;
  }
}

std::string meta_line(const char* command, std::uint64_t seed) {
  char stamp[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  std::string line = "# schema=1 command=";
  line += command;
  line += " seed=" + std::to_string(seed);
  line += " generated=";
  line += stamp;
  line += "\n";
  return line;
}

// Empty path: stdout. Relative paths land under $FROG_OUT_DIR when set.
int write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return 0;
  }
  std::filesystem::path p = path;
  if (const char* dir = std::getenv("FROG_OUT_DIR"); dir && *dir && p.is_relative())
    p = std::filesystem::path(dir) / p;
  std::ofstream f(p, std::ios::binary);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f.good()) {
    std::fprintf(stderr, "error: cannot write %s\n", p.string().c_str());
    return 3;
  }
  return 0;
}

const char* verdict_token(int code) {
  switch (code) {
    case FM_VERDICT_EXTINCT:
      return "Extinct";
    case FM_VERDICT_SURVIVES_WPP:
      return "SurvivesWPP";
    default:
      return "Inconclusive";
  }
}

const char* run_status_token(int code) {
  switch (code) {
    case FM_RUN_EXTINCT:
      return "extinct";
    case FM_RUN_ALIVE:
      return "alive";
    default:
      return "truncated";
  }
}

// ---- tail ----

struct TailOpts {
  double p = 0.0;
  bool p_given = false;
  std::string law;
  std::int64_t n_max = 20;
  std::int64_t replicas = 100000;
  std::string seed = "1729";
  std::string out;
  bool no_meta = false;
};

int run_tail(const TailOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  if (o.p_given && !(o.p > 0.0 && o.p <= 1.0)) {
    std::fprintf(stderr, "error: --p must lie in (0,1]\n");
    return 2;
  }
  const std::size_t rows = static_cast<std::size_t>(o.n_max) + 1;
  std::vector<double> exact(rows), mc(rows), lo(rows), hi(rows);
  if (o.p_given) {
    for (std::int64_t n = 0; n <= o.n_max; ++n)
      TRY(fm_tail_right(o.p, n, &exact[static_cast<std::size_t>(n)]));
    if (o.p == 1.0) {
      // The walk never dies, so every level is reached surely; Monte Carlo
      // would not terminate.
      std::fill(mc.begin(), mc.end(), 1.0);
      std::fill(lo.begin(), lo.end(), 1.0);
      std::fill(hi.begin(), hi.end(), 1.0);
    } else {
      TRY(fm_walk_tails(o.p, o.n_max, seed, o.replicas, mc.data(), nullptr));
      const double nrep = static_cast<double>(o.replicas);
      for (std::size_t i = 0; i < rows; ++i) {
        const double se = std::sqrt(mc[i] * (1.0 - mc[i]) / nrep);
        lo[i] = std::max(0.0, mc[i] - 1.959963984540054 * se);
        hi[i] = std::min(1.0, mc[i] + 1.959963984540054 * se);
      }
    }
  } else {
    LawHandle law;
    TRY(fm_survival_law_parse(o.law.c_str(), &law.h));
    for (std::int64_t n = 0; n <= o.n_max; ++n) {
      const std::size_t i = static_cast<std::size_t>(n);
      if (n == 0) {
        exact[i] = 1.0;
      } else {
        fm_integral_report rep;
        TRY(fm_integral(law.h, FM_INTEGRAL_EXACT_TAIL, n, &rep));
        exact[i] = rep.value / static_cast<double>(n);
      }
      fm_tail_estimate est;
      TRY(fm_marginal_tail_right(law.h, n, seed, o.replicas, &est));
      mc[i] = est.mean;
      lo[i] = std::max(0.0, est.ci_lo);
      hi[i] = std::min(1.0, est.ci_hi);
    }
  }
  std::string csv;
  if (!o.no_meta) csv += meta_line("tail", seed);
  csv += "n,exact,mc_estimate,ci_lo,ci_hi\n";
  for (std::int64_t n = 0; n <= o.n_max; ++n) {
    const std::size_t i = static_cast<std::size_t>(n);
    csv += fmt(n) + "," + fmt(exact[i]) + "," + fmt(mc[i]) + "," + fmt(lo[i]) +
           "," + fmt(hi[i]) + "\n";
  }
  return write_output(o.out, csv);
}

// ---- integrals ----

struct IntegralsOpts {
  std::string law;
  std::vector<std::int64_t> ns;
  std::string kind = "both";
  std::string seed = "1729";
  std::string out;
  bool no_meta = false;
};

int run_integrals(const IntegralsOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  if (o.ns.empty()) {
    std::fprintf(stderr, "error: --n grid must be nonempty\n");
    return 2;
  }
  LawHandle law;
  TRY(fm_survival_law_parse(o.law.c_str(), &law.h));
  std::string csv;
  if (!o.no_meta) csv += meta_line("integrals", seed);
  csv += "kind,n,value,normalized,abs_err_est\n";
  for (const std::int64_t n : o.ns) {
    for (const char kind : std::string(o.kind == "both" ? "JI" : o.kind)) {
      fm_integral_report rep;
      TRY(fm_integral(law.h, kind == 'J' ? FM_INTEGRAL_J : FM_INTEGRAL_I, n,
                      &rep));
      csv += std::string(1, kind) + "," + fmt(n) + "," + fmt(rep.value) + "," +
             fmt(rep.normalized) + "," + fmt(rep.abs_err_est) + "\n";
    }
  }
  return write_output(o.out, csv);
}

// ---- classify ----

struct ClassifyOpts {
  double beta = 0.0;
  std::string liminf;
  std::string limsup;
  std::string eta;
  std::string seed = "1729";
  std::string out;
  bool no_meta = false;
};

int run_classify(const ClassifyOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  double li = 0.0, ls = 0.0;
  const bool have_li = !o.liminf.empty();
  const bool have_ls = !o.limsup.empty();
  if ((have_li && !parse_limit(o.liminf, &li)) ||
      (have_ls && !parse_limit(o.limsup, &ls))) {
    std::fprintf(stderr, "error: --liminf/--limsup must be a real or 'inf'\n");
    return 2;
  }
  EtaHandle eta;
  TRY(fm_initial_law_parse(o.eta.c_str(), &eta.h));
  fm_verdict v;
  TRY(fm_classify(o.beta, have_li ? &li : nullptr, have_ls ? &ls : nullptr,
                  eta.h, &v));
  fm_initial_law_info info;
  TRY(fm_initial_law_get_info(eta.h, &info));
  std::string csv;
  if (!o.no_meta) csv += meta_line("classify", seed);
  csv += "beta,liminf,limsup,eta_mean,eta_pzero,verdict,rule,margin\n";
  csv += fmt(o.beta) + ",";
  csv += (have_li ? fmt(li) : std::string("unknown")) + ",";
  csv += (have_ls ? fmt(ls) : std::string("unknown")) + ",";
  csv += fmt(info.mean) + "," + fmt(info.p_zero) + ",";
  csv += std::string(verdict_token(v.verdict)) + "," + v.rule + "," +
         fmt(v.margin) + "\n";
  return write_output(o.out, csv);
}

// ---- simulate ----

struct SimulateOpts {
  std::string law;
  std::string eta;
  std::string eta_origin;
  std::int64_t horizon = 1000;
  std::int64_t replicas = 1000;
  std::int64_t max_particles = 1000000;
  int threads = 0;
  std::string seed = "1729";
  std::string out;
  std::string runs_out;
  bool no_meta = false;
};

int run_simulate(const SimulateOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  LawHandle law;
  TRY(fm_survival_law_parse(o.law.c_str(), &law.h));
  EtaHandle eta;
  TRY(fm_initial_law_parse(o.eta.c_str(), &eta.h));
  EtaHandle origin;
  if (!o.eta_origin.empty())
    TRY(fm_initial_law_parse(o.eta_origin.c_str(), &origin.h));
  const fm_sim_params params{o.horizon, o.max_particles, seed};
  const bool want_runs = !o.runs_out.empty();
  std::vector<fm_run_outcome> outcomes(
      want_runs ? static_cast<std::size_t>(o.replicas) : 0);
  fm_survival_estimate est;
  TRY(fm_estimate_survival(law.h, eta.h, origin.h, &params, o.replicas,
                           o.threads, want_runs ? outcomes.data() : nullptr,
                           &est));
  std::string csv;
  if (!o.no_meta) csv += meta_line("simulate", seed);
  csv += "alive_fraction,ci_lo,ci_hi,truncated_fraction,replicas,horizon,seed\n";
  csv += fmt(est.alive_fraction) + "," + fmt(est.ci_lo) + "," +
         fmt(est.ci_hi) + "," + fmt(est.truncated_fraction) + "," +
         fmt(est.replicas) + "," + fmt(o.horizon) + "," +
         std::to_string(seed) + "\n";
  if (const int rc = write_output(o.out, csv); rc != 0) return rc;
  if (want_runs) {
    std::string runs;
    if (!o.no_meta) runs += meta_line("simulate", seed);
    runs += "run,status,extinct_t,total_activated,max_right,max_left\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const fm_run_outcome& r = outcomes[i];
      runs += fmt(static_cast<std::int64_t>(i)) + "," +
              run_status_token(r.status) + "," + fmt(r.extinct_t) + "," +
              fmt(r.total_activated) + "," + fmt(r.max_right) + "," +
              fmt(r.max_left) + "\n";
    }
    if (const int rc = write_output(o.runs_out, runs); rc != 0) return rc;
  }
  return est.truncated_fraction > 0.10 ? 4 : 0;
}

// ---- fireworks ----

struct FireworksOpts {
  std::string eta;
  std::string law;
  std::int64_t target = 1000;
  std::int64_t replicas = 1000;
  int threads = 0;
  std::string seed = "1729";
  std::string out;
  bool no_meta = false;
};

int run_fireworks(const FireworksOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  EtaHandle eta;
  TRY(fm_initial_law_parse(o.eta.c_str(), &eta.h));
  LawHandle law;
  TRY(fm_survival_law_parse(o.law.c_str(), &law.h));
  fm_reach_estimate est;
  TRY(fm_firework_estimate(eta.h, law.h, o.target, o.replicas, seed, o.threads,
                           &est));
  std::string csv;
  if (!o.no_meta) csv += meta_line("fireworks", seed);
  fm_initial_law_info info;
  TRY(fm_initial_law_get_info(eta.h, &info));
  if (info.family == FM_ETA_ZETATAIL) {
    int survives = 0;
    char note[256];
    TRY(fm_fireworks_criterion(eta.h, &survives, note, sizeof note));
    csv += std::string("# note: ") + note + "\n";
  }
  csv += "fraction,ci_lo,ci_hi,replicas,target,seed\n";
  csv += fmt(est.fraction) + "," + fmt(est.ci_lo) + "," + fmt(est.ci_hi) +
         "," + fmt(est.replicas) + "," + fmt(o.target) + "," +
         std::to_string(seed) + "\n";
  return write_output(o.out, csv);
}

// ---- sweep ----

struct SweepOpts {
  std::string beta_grid;
  std::string eta;
  std::int64_t horizon = 1000;
  std::int64_t replicas = 1000;
  std::int64_t max_particles = 1000000;
  int threads = 0;
  std::string seed = "1729";
  std::string out;
  bool no_meta = false;
};

bool parse_beta_grid(const std::string& text, std::vector<double>* out) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) return false;
  double start = 0.0, stop = 0.0, step = 0.0;
  try {
    std::size_t p1 = 0, p2 = 0, p3 = 0;
    const std::string s1 = text.substr(0, c1);
    const std::string s2 = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string s3 = text.substr(c2 + 1);
    start = std::stod(s1, &p1);
    stop = std::stod(s2, &p2);
    step = std::stod(s3, &p3);
    if (p1 != s1.size() || p2 != s2.size() || p3 != s3.size()) return false;
  } catch (...) {
    return false;
  }
  if (!(start > 0.0) || !(step > 0.0) || stop < start) return false;
  for (double b = start; b <= stop + 1e-9; b += step) out->push_back(b);
  return true;
}

int run_sweep(const SweepOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  std::vector<double> betas;
  if (!parse_beta_grid(o.beta_grid, &betas)) {
    std::fprintf(stderr,
                 "error: --beta-grid must be start:stop:step with start, step "
                 "> 0 and stop >= start\n");
    return 2;
  }
  EtaHandle eta;
  TRY(fm_initial_law_parse(o.eta.c_str(), &eta.h));
  std::string csv;
  if (!o.no_meta) csv += meta_line("sweep", seed);
  csv += "beta,alive_fraction,ci_lo,ci_hi,truncated_fraction,replicas,horizon,"
         "seed,verdict\n";
  double truncated_total = 0.0;
  for (const double beta : betas) {
    const std::string spec = "power:beta=" + fmt(beta);
    LawHandle law;
    TRY(fm_survival_law_parse(spec.c_str(), &law.h));
    fm_survival_law_info info;
    TRY(fm_survival_law_get_info(law.h, &info));
    fm_verdict v;
    TRY(fm_classify(info.edge_beta, info.liminf_known ? &info.liminf_nsq : nullptr,
                    info.limsup_known ? &info.limsup_nsq : nullptr, eta.h, &v));
    const fm_sim_params params{o.horizon, o.max_particles, seed};
    fm_survival_estimate est;
    TRY(fm_estimate_survival(law.h, eta.h, nullptr, &params, o.replicas,
                             o.threads, nullptr, &est));
    truncated_total += est.truncated_fraction;
    csv += fmt(beta) + "," + fmt(est.alive_fraction) + "," + fmt(est.ci_lo) +
           "," + fmt(est.ci_hi) + "," + fmt(est.truncated_fraction) + "," +
           fmt(est.replicas) + "," + fmt(o.horizon) + "," +
           std::to_string(seed) + "," + verdict_token(v.verdict) + "\n";
  }
  if (const int rc = write_output(o.out, csv); rc != 0) return rc;
  return truncated_total / static_cast<double>(betas.size()) > 0.10 ? 4 : 0;
}

// ---- lawcheck ----

struct LawcheckOpts {
  std::string law;
  std::int64_t ks_samples = 10000;
  std::string seed = "1729";
  std::string out;
  bool no_meta = false;
};

int run_lawcheck(const LawcheckOpts& o) {
  std::uint64_t seed = 0;
  if (!parse_seed(o.seed, &seed)) {
    std::fprintf(stderr, "error: --seed must be an unsigned integer or 'random'\n");
    return 2;
  }
  LawHandle law;
  TRY(fm_survival_law_parse(o.law.c_str(), &law.h));
  fm_law_diagnostics diag;
  TRY(fm_law_check(law.h, seed, o.ks_samples, &diag));
  char desc[512];
  TRY(fm_survival_law_describe(law.h, desc, sizeof desc));
  std::string csv;
  if (!o.no_meta) csv += meta_line("lawcheck", seed);
  csv += std::string("# law=") + desc + "\n";
  csv += "has_density,has_cdf,normalization,edge_ratio,ks_distance,ks_samples\n";
  csv += std::to_string(diag.has_density) + "," +
         std::to_string(diag.has_cdf) + "," + fmt(diag.normalization) + "," +
         fmt(diag.edge_ratio) + "," + fmt(diag.ks_distance) + "," +
         fmt(diag.ks_samples) + "\n";
  return write_output(o.out, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frog-model toolkit: displacement tails, tail integrals, phase "
               "classification, lattice and firework simulation"};
  app.set_config("--config", "", "read options from an INI file mirroring the flags");
  app.require_subcommand(1);

  TailOpts tail;
  CLI::App* tail_cmd = app.add_subcommand(
      "tail", "exact vs Monte Carlo right-displacement tail");
  tail_cmd->add_option("--p", tail.p,
                       "fixed survival parameter in (0,1] (exclusive with --law)");
  tail_cmd->add_option("--law", tail.law, "survival-parameter law spec");
  tail_cmd->add_option("--n-max", tail.n_max, "largest tail level")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  tail_cmd->add_option("--replicas", tail.replicas, "Monte Carlo sample size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  tail_cmd->add_option("--seed", tail.seed, "RNG seed or 'random'")
      ->capture_default_str();
  tail_cmd->add_option("--out", tail.out, "output file (default stdout)");
  tail_cmd->add_flag("--no-header-meta", tail.no_meta,
                     "suppress the timestamped meta line");

  IntegralsOpts integrals;
  CLI::App* integrals_cmd =
      app.add_subcommand("integrals", "tail integrals with normalized values");
  integrals_cmd->add_option("--law", integrals.law, "survival-parameter law spec")
      ->required();
  integrals_cmd
      ->add_option("--n", integrals.ns, "comma-separated n grid (positive)")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  integrals_cmd->add_option("--kind", integrals.kind, "I, J, or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"I", "J", "both"}));
  integrals_cmd->add_option("--seed", integrals.seed, "RNG seed or 'random'")
      ->capture_default_str();
  integrals_cmd->add_option("--out", integrals.out, "output file (default stdout)");
  integrals_cmd->add_flag("--no-header-meta", integrals.no_meta,
                          "suppress the timestamped meta line");

  ClassifyOpts classify;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "phase verdict for (beta, L limits, eta)");
  classify_cmd->add_option("--beta", classify.beta, "edge exponent")
      ->required();
  classify_cmd->add_option("--liminf", classify.liminf,
                           "liminf of L(n^2); omit if unknown; 'inf' allowed");
  classify_cmd->add_option("--limsup", classify.limsup,
                           "limsup of L(n^2); omit if unknown; 'inf' allowed");
  classify_cmd->add_option("--eta", classify.eta, "initial-law spec")
      ->required();
  classify_cmd->add_option("--seed", classify.seed, "RNG seed or 'random'")
      ->capture_default_str();
  classify_cmd->add_option("--out", classify.out, "output file (default stdout)");
  classify_cmd->add_flag("--no-header-meta", classify.no_meta,
                         "suppress the timestamped meta line");

  SimulateOpts simulate;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "lattice survival Monte Carlo");
  simulate_cmd->add_option("--law", simulate.law, "survival-parameter law spec")
      ->required();
  simulate_cmd->add_option("--eta", simulate.eta, "initial-law spec")
      ->required();
  simulate_cmd->add_option("--eta-origin", simulate.eta_origin,
                           "override initial law at site 0 only");
  simulate_cmd->add_option("--horizon", simulate.horizon, "ticks per replica")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--replicas", simulate.replicas, "replica count (>= 100)")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--max-particles", simulate.max_particles,
                   "particle cap per replica")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--threads", simulate.threads,
                           "worker threads (0 = hardware)")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, "RNG seed or 'random'")
      ->capture_default_str();
  simulate_cmd->add_option("--out", simulate.out,
                           "summary output file (default stdout)");
  simulate_cmd->add_option("--runs-out", simulate.runs_out,
                           "also write one CSV row per run");
  simulate_cmd->add_flag("--no-header-meta", simulate.no_meta,
                         "suppress the timestamped meta line");

  FireworksOpts fireworks;
  CLI::App* fireworks_cmd = app.add_subcommand(
      "fireworks", "one-directional coverage (firework) Monte Carlo");
  fireworks_cmd->add_option("--eta", fireworks.eta, "initial-law spec")
      ->required();
  fireworks_cmd->add_option("--law", fireworks.law, "survival-parameter law spec")
      ->required();
  fireworks_cmd->add_option("--target", fireworks.target, "reach target (>= 1)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fireworks_cmd->add_option("--replicas", fireworks.replicas, "replica count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fireworks_cmd->add_option("--threads", fireworks.threads,
                            "worker threads (0 = hardware)")
      ->capture_default_str();
  fireworks_cmd->add_option("--seed", fireworks.seed, "RNG seed or 'random'")
      ->capture_default_str();
  fireworks_cmd->add_option("--out", fireworks.out, "output file (default stdout)");
  fireworks_cmd->add_flag("--no-header-meta", fireworks.no_meta,
                          "suppress the timestamped meta line");

  SweepOpts sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "survival Monte Carlo across a power-law beta grid");
  sweep_cmd->add_option("--beta-grid", sweep.beta_grid, "start:stop:step")
      ->required();
  sweep_cmd->add_option("--eta", sweep.eta, "initial-law spec")->required();
  sweep_cmd->add_option("--horizon", sweep.horizon, "ticks per replica")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--replicas", sweep.replicas, "replicas per beta (>= 100)")
      ->capture_default_str();
  sweep_cmd
      ->add_option("--max-particles", sweep.max_particles,
                   "particle cap per replica")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "RNG seed or 'random'")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "output file (default stdout)");
  sweep_cmd->add_flag("--no-header-meta", sweep.no_meta,
                      "suppress the timestamped meta line");

  LawcheckOpts lawcheck;
  CLI::App* lawcheck_cmd = app.add_subcommand(
      "lawcheck", "numeric diagnostics for a survival law");
  lawcheck_cmd->add_option("--law", lawcheck.law, "survival-parameter law spec")
      ->required();
  lawcheck_cmd
      ->add_option("--ks-samples", lawcheck.ks_samples,
                   "sampler draws for the KS check (>= 100)")
      ->capture_default_str();
  lawcheck_cmd->add_option("--seed", lawcheck.seed, "RNG seed or 'random'")
      ->capture_default_str();
  lawcheck_cmd->add_option("--out", lawcheck.out, "output file (default stdout)");
  lawcheck_cmd->add_flag("--no-header-meta", lawcheck.no_meta,
                         "suppress the timestamped meta line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  tail.p_given = tail_cmd->count("--p") > 0;
  const bool law_given = tail_cmd->count("--law") > 0;
  if (*tail_cmd && tail.p_given == law_given) {
    std::fprintf(stderr, "error: tail needs exactly one of --p or --law\n");
    return 2;
  }

  if (*tail_cmd) return run_tail(tail);
  if (*integrals_cmd) return run_integrals(integrals);
  if (*classify_cmd) return run_classify(classify);
  if (*simulate_cmd) return run_simulate(simulate);
  if (*fireworks_cmd) return run_fireworks(fireworks);
  if (*sweep_cmd) return run_sweep(sweep);
  if (*lawcheck_cmd) return run_lawcheck(lawcheck);
  return 2;
}
