#include "survival_laws.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace frog {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParamError(std::string(name) + " must be finite and > 0");
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ParamError(std::string(name) + " must be finite");
  }
}

// log(1 + e^x) without overflow; equals log1p(t) for t = e^x.
double softplus(double x) {
  if (x > 36.0) return x;
  return std::log1p(std::exp(x));
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double SurvivalLaw::density(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("density: u must be in (0,1)");
  if (!has_density()) {
    throw NumericError(
        "law '" + description +
        "' carries a sampler and declared tail only; no closed-form density");
  }
  const double ld = log_density_uv(std::log(u), std::log1p(-u));
  return std::exp(ld);
}

double SurvivalLaw::log_density_gap(double log_v) const {
  if (!(log_v < 0.0)) throw DomainError("log_density_gap: need log v < 0");
  if (!has_density()) {
    throw NumericError(
        "law '" + description +
        "' carries a sampler and declared tail only; no closed-form density");
  }
  const double v = std::exp(log_v);
  return log_density_uv(std::log1p(-v), log_v);
}

double SurvivalLaw::density_from_gap(double v) const {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("density_from_gap: v in (0,1)");
  return std::exp(log_density_gap(std::log(v)));
}

double OddsLaw::density(double t) const {
  if (!(t > 0.0)) throw DomainError("density: t must be > 0");
  if (!has_density()) {
    throw NumericError(
        "odds law '" + description +
        "' carries a sampler and declared tail only; no closed-form density");
  }
  return std::exp(log_density(std::log(t)));
}

SurvivalLaw make_power_edge(double beta) {
  require_positive(beta, "beta");
  SurvivalLaw law;
  const double log_beta = std::log(beta);
  law.log_density_uv = [beta, log_beta](double, double log_v) {
    return log_beta + (beta - 1.0) * log_v;
  };
  law.sampler = [beta](RngStream& rng) {
    // Inverse CDF of 1-(1-u)^beta.
    const double u = -std::expm1(std::log(rng.uniform_open01()) / beta);
    return clamp_open01(u);
  };
  law.cdf = [beta](double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return -std::expm1(beta * std::log1p(-u));
  };
  law.edge_beta = beta;
  law.edge_L = SlowVaryingFn::constant(beta);
  law.family = SurvivalFamily::PowerEdge;
  law.description = "power-edge(beta=" + fmt(beta) + ")";
  return law;
}

SurvivalLaw make_gamma_ratio(double alpha, double beta, double lambda1,
                             double lambda2) {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(lambda1, "lambda1");
  require_positive(lambda2, "lambda2");
  SurvivalLaw law;
  const double log_norm = -log_beta_fn(alpha, beta) + alpha * std::log(lambda1) +
                          beta * std::log(lambda2);
  law.log_density_uv = [=](double log_u, double log_v) {
    // Denominator lambda2 + (lambda1-lambda2)u = lambda1*u + lambda2*(1-u):
    // a positive combination, safe at both edges.
    const double denom = lambda1 * std::exp(log_u) + lambda2 * std::exp(log_v);
    return log_norm + (alpha - 1.0) * log_u + (beta - 1.0) * log_v -
           (alpha + beta) * std::log(denom);
  };
  law.sampler = [=](RngStream& rng) {
    const double x = sample_gamma(alpha, lambda1, rng);
    const double y = sample_gamma(beta, lambda2, rng);
    return clamp_open01(x / (x + y));
  };
  law.edge_beta = beta;
  const double edge_const = std::exp(-log_beta_fn(alpha, beta) +
                                     beta * (std::log(lambda2) - std::log(lambda1)));
  law.edge_L = SlowVaryingFn::constant(edge_const);
  law.family = SurvivalFamily::GammaRatio;
  law.description = "gamma-ratio(alpha=" + fmt(alpha) + ",beta=" + fmt(beta) +
                    ",lambda1=" + fmt(lambda1) + ",lambda2=" + fmt(lambda2) + ")";
  return law;
}

SurvivalLaw make_beta(double alpha, double beta) {
  SurvivalLaw law = make_gamma_ratio(alpha, beta, 1.0, 1.0);
  law.family = SurvivalFamily::Beta;
  law.description = "beta(alpha=" + fmt(alpha) + ",beta=" + fmt(beta) + ")";
  return law;
}

SurvivalLaw make_gen_beta1(double a, double b, double c) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(c, "c");
  SurvivalLaw law;
  const double log_norm = std::log(c) - log_beta_fn(a, b);
  law.log_density_uv = [=](double log_u, double log_v) {
    // 1-u^c = -expm1(c*log u) keeps full precision while log u resolves the
    // gap.  Once u is so close to 1 that log u itself has degenerated
    // (gaps v far below machine epsilon arrive only through log_v), expand
    // 1-(1-v)^c = c*v*(1-(c-1)*v/2+O(v^2)) instead.
    double log_one_minus_uc;
    if (log_u > -1e-8) {
      const double v = std::exp(log_v);
      log_one_minus_uc =
          std::log(c) + log_v + std::log1p(-0.5 * (c - 1.0) * v);
    } else {
      log_one_minus_uc = std::log(-std::expm1(c * log_u));
    }
    return log_norm + (a * c - 1.0) * log_u + (b - 1.0) * log_one_minus_uc;
  };
  law.sampler = [=](RngStream& rng) {
    const double v = sample_beta(a, b, rng);
    return clamp_open01(std::pow(v, 1.0 / c));
  };
  law.edge_beta = b;
  law.edge_L =
      SlowVaryingFn::constant(std::exp(b * std::log(c) - log_beta_fn(a, b)));
  law.family = SurvivalFamily::GenBetaI;
  law.description =
      "gen-beta1(a=" + fmt(a) + ",b=" + fmt(b) + ",c=" + fmt(c) + ")";
  return law;
}

SurvivalLaw make_osc_critical() {
  SurvivalLaw law;
  SlowVaryingFn osc = make_oscillating_L();
  // Support [1-v0, 1): keeps the L argument 1/(1-u) above e^2 > e.
  const double v0 = std::exp(-2.0);
  // Mass of the unnormalized density in the gap variable v = 1-u, computed
  // in w = sqrt(v) so the v^{-1/2} factor integrates exactly.
  auto osc_log = osc.log_eval;
  const QuadResult mass = integrate_or_throw(
      [osc_log](double w) { return 2.0 * std::exp(osc_log(-2.0 * std::log(w))); },
      0.0, std::sqrt(v0), {}, "osc-critical normalization");
  const double norm_c = 1.0 / mass.value;
  const double log_c = std::log(norm_c);
  law.log_density_uv = [log_c, osc_log, v0](double, double log_v) {
    if (log_v > std::log(v0)) return kNegInf;  // outside support
    return log_c - 0.5 * log_v + osc_log(-log_v);
  };
  // Rejection sampler in v: envelope density (3/8) v0^{-3/8} v^{-5/8} on
  // (0, v0], valid because L(x) <= log x <= (8/e) x^{1/8} for x >= e.
  const double kLogBound = 8.0 / std::exp(1.0);
  const double accept_scale = 1.0 / kLogBound;  // accept prob = L(1/v) v^{1/8} / (8/e)
  const double envelope_mass = norm_c * (8.0 / 3.0) * std::pow(v0, 3.0 / 8.0) * kLogBound;
  const double acceptance = 1.0 / envelope_mass;
  if (acceptance < 0.1) {
    throw NumericError("osc-critical sampler: envelope acceptance rate " +
                       fmt(acceptance) + " below 0.1");
  }
  law.sampler = [v0, osc_log, accept_scale](RngStream& rng) {
    for (;;) {
      const double v = v0 * std::pow(rng.uniform_open01(), 8.0 / 3.0);
      const double accept =
          std::exp(osc_log(-std::log(v)) + 0.125 * std::log(v)) * accept_scale;
      if (rng.uniform_open01() < accept) return clamp_open01(1.0 - v);
    }
  };
  law.edge_beta = 0.5;
  law.edge_L = osc.scaled(norm_c, "osc-critical edge factor");
  law.family = SurvivalFamily::Custom;
  law.description = "osc-critical";
  law.support_lo = 1.0 - v0;
  return law;
}

OddsLaw make_pareto1(double xm, double alpha) {
  require_positive(xm, "xm");
  require_positive(alpha, "alpha");
  OddsLaw law;
  const double log_xm = std::log(xm);
  const double log_norm = std::log(alpha) + alpha * log_xm;
  law.log_density = [=](double log_t) {
    if (log_t < log_xm) return kNegInf;
    return log_norm - (alpha + 1.0) * log_t;
  };
  law.sampler = [=](RngStream& rng) {
    return xm * std::exp(-std::log(rng.uniform_open01()) / alpha);
  };
  law.cdf = [=](double t) {
    if (t <= xm) return 0.0;
    return -std::expm1(alpha * (log_xm - std::log(t)));
  };
  law.tail_beta = alpha;
  law.tail_L = SlowVaryingFn::constant(alpha * std::pow(xm, alpha));
  law.family = OddsFamily::Pareto1;
  law.description = "pareto1(xm=" + fmt(xm) + ",alpha=" + fmt(alpha) + ")";
  law.support_lo = xm;
  return law;
}

OddsLaw make_lomax(double alpha, double lambda) {
  require_positive(alpha, "alpha");
  require_positive(lambda, "lambda");
  OddsLaw law;
  const double log_l = std::log(lambda);
  law.log_density = [=](double log_t) {
    return std::log(alpha) - log_l - (alpha + 1.0) * softplus(log_t - log_l);
  };
  law.sampler = [=](RngStream& rng) {
    return lambda * std::expm1(-std::log(rng.uniform_open01()) / alpha);
  };
  law.cdf = [=](double t) {
    if (t <= 0.0) return 0.0;
    return -std::expm1(-alpha * std::log1p(t / lambda));
  };
  law.tail_beta = alpha;
  law.tail_L = SlowVaryingFn::constant(alpha * std::pow(lambda, alpha));
  law.family = OddsFamily::Lomax;
  law.description = "lomax(alpha=" + fmt(alpha) + ",lambda=" + fmt(lambda) + ")";
  return law;
}

OddsLaw make_gpd(double xi, double sigma) {
  require_positive(xi, "xi");
  require_positive(sigma, "sigma");
  OddsLaw law;
  const double log_ratio = std::log(xi) - std::log(sigma);
  law.log_density = [=](double log_t) {
    return -std::log(sigma) - (1.0 / xi + 1.0) * softplus(log_t + log_ratio);
  };
  law.sampler = [=](RngStream& rng) {
    return (sigma / xi) * std::expm1(-xi * std::log(rng.uniform_open01()));
  };
  law.cdf = [=](double t) {
    if (t <= 0.0) return 0.0;
    return -std::expm1(-(1.0 / xi) * std::log1p(xi * t / sigma));
  };
  law.tail_beta = 1.0 / xi;
  law.tail_L = SlowVaryingFn::constant(
      std::exp(-(1.0 / xi + 1.0) * std::log(xi) + std::log(sigma) / xi));
  law.family = OddsFamily::Gpd;
  law.description = "gpd(xi=" + fmt(xi) + ",sigma=" + fmt(sigma) + ")";
  return law;
}

OddsLaw make_beta_prime(double a, double b) {
  require_positive(a, "a");
  require_positive(b, "b");
  OddsLaw law;
  const double log_b_ab = log_beta_fn(a, b);
  law.log_density = [=](double log_t) {
    return -log_b_ab + (a - 1.0) * log_t - (a + b) * softplus(log_t);
  };
  law.sampler = [=](RngStream& rng) {
    const double x = sample_gamma(a, 1.0, rng);
    const double y = sample_gamma(b, 1.0, rng);
    return x / y;
  };
  law.tail_beta = b;
  law.tail_L = SlowVaryingFn::constant(std::exp(-log_b_ab));
  law.family = OddsFamily::BetaPrime;
  law.description = "beta-prime(a=" + fmt(a) + ",b=" + fmt(b) + ")";
  return law;
}

OddsLaw make_f_dist(double d1, double d2) {
  require_positive(d1, "d1");
  require_positive(d2, "d2");
  OddsLaw law;
  const double log_b = log_beta_fn(0.5 * d1, 0.5 * d2);
  const double log_ratio = std::log(d1) - std::log(d2);
  law.log_density = [=](double log_t) {
    return -log_b + 0.5 * d1 * log_ratio + (0.5 * d1 - 1.0) * log_t -
           0.5 * (d1 + d2) * softplus(log_t + log_ratio);
  };
  law.sampler = [=](RngStream& rng) {
    const double x = sample_gamma(0.5 * d1, 1.0, rng);
    const double y = sample_gamma(0.5 * d2, 1.0, rng);
    return (d2 / d1) * (x / y);
  };
  law.tail_beta = 0.5 * d2;
  law.tail_L =
      SlowVaryingFn::constant(std::exp(-log_b + 0.5 * d2 * (-log_ratio)));
  law.family = OddsFamily::FDist;
  law.description = "f(d1=" + fmt(d1) + ",d2=" + fmt(d2) + ")";
  return law;
}

OddsLaw make_burr12(double c, double k) {
  require_positive(c, "c");
  require_positive(k, "k");
  OddsLaw law;
  law.log_density = [=](double log_t) {
    return std::log(c * k) + (c - 1.0) * log_t - (k + 1.0) * softplus(c * log_t);
  };
  law.sampler = [=](RngStream& rng) {
    const double w = std::expm1(-std::log(rng.uniform_open01()) / k);
    return std::pow(w, 1.0 / c);
  };
  law.cdf = [=](double t) {
    if (t <= 0.0) return 0.0;
    return -std::expm1(-k * std::log1p(std::pow(t, c)));
  };
  law.tail_beta = c * k;
  law.tail_L = SlowVaryingFn::constant(c * k);
  law.family = OddsFamily::BurrXII;
  law.description = "burr12(c=" + fmt(c) + ",k=" + fmt(k) + ")";
  return law;
}

OddsLaw make_inverse_gamma(double a, double b) {
  require_positive(a, "a");
  require_positive(b, "b");
  OddsLaw law;
  const double log_norm = a * std::log(b) - log_gamma(a);
  law.log_density = [=](double log_t) {
    return log_norm - (a + 1.0) * log_t - b * std::exp(-log_t);
  };
  law.sampler = [=](RngStream& rng) { return 1.0 / sample_gamma(a, b, rng); };
  law.cdf = [=](double t) {
    if (t <= 0.0) return 0.0;
    return 1.0 - gamma_p(a, b / t);
  };
  law.tail_beta = a;
  // Tail factor b^a/Gamma(a) * exp(-b/t): slowly varying with limit b^a/Gamma(a).
  SlowVaryingFn L;
  L.log_eval = [log_norm, b](double log_t) {
    return log_norm - b * std::exp(-log_t);
  };
  const double lim = std::exp(log_norm);
  L.liminf_nsq = lim;
  L.limsup_nsq = lim;
  L.description = "inverse-gamma tail factor";
  law.tail_L = L;
  law.family = OddsFamily::InverseGamma;
  law.description = "inv-gamma(a=" + fmt(a) + ",b=" + fmt(b) + ")";
  return law;
}

OddsLaw make_frechet(double alpha) {
  require_positive(alpha, "alpha");
  OddsLaw law;
  const double log_a = std::log(alpha);
  law.log_density = [=](double log_t) {
    return log_a - (alpha + 1.0) * log_t - std::exp(-alpha * log_t);
  };
  law.sampler = [=](RngStream& rng) {
    return std::exp(-std::log(-std::log(rng.uniform_open01())) / alpha);
  };
  law.cdf = [=](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-std::pow(t, -alpha));
  };
  law.tail_beta = alpha;
  SlowVaryingFn L;
  L.log_eval = [=](double log_t) { return log_a - std::exp(-alpha * log_t); };
  L.liminf_nsq = alpha;
  L.limsup_nsq = alpha;
  L.description = "frechet tail factor";
  law.tail_L = L;
  law.family = OddsFamily::Frechet;
  law.description = "frechet(alpha=" + fmt(alpha) + ")";
  return law;
}

OddsLaw make_log_pareto(double alpha, double rho) {
  require_positive(alpha, "alpha");
  require_finite(rho, "rho");
  OddsLaw law;
  // Normalizer: integral over t >= e is alpha^{-(rho+1)} * Gamma(rho+1, alpha).
  const double upper = upper_gamma(rho + 1.0, alpha);
  if (!(upper > 0.0) || !std::isfinite(upper)) {
    throw NumericError("log-pareto: normalization integral not positive/finite");
  }
  const double log_c = (rho + 1.0) * std::log(alpha) - std::log(upper);
  law.log_density = [=](double log_t) {
    if (log_t < 1.0) return kNegInf;  // support is t >= e
    return log_c - (alpha + 1.0) * log_t + rho * std::log(log_t);
  };
  // W = log X has density ~ w^rho e^{-alpha w} on [1, inf).
  if (rho == 0.0) {
    law.sampler = [=](RngStream& rng) {
      return std::exp(1.0 - std::log(rng.uniform_open01()) / alpha);
    };
  } else if (rho < 0.0) {
    // Shifted-exponential proposal; accept with probability w^rho <= 1.
    const double acceptance =
        std::exp(-rho * std::log(alpha) + alpha) * upper;
    if (acceptance < 0.1) {
      throw NumericError("log-pareto sampler: acceptance rate " +
                         fmt(acceptance) + " below 0.1");
    }
    law.sampler = [=](RngStream& rng) {
      for (;;) {
        const double w = 1.0 - std::log(rng.uniform_open01()) / alpha;
        if (std::log(rng.uniform_open01()) < rho * std::log(w)) {
          return std::exp(w);
        }
      }
    };
  } else {
    // Gamma(rho+1, alpha) proposal truncated to [1, inf).
    const double acceptance = upper / std::exp(log_gamma(rho + 1.0));
    if (acceptance < 0.1) {
      throw NumericError("log-pareto sampler: acceptance rate " +
                         fmt(acceptance) + " below 0.1");
    }
    law.sampler = [=](RngStream& rng) {
      for (;;) {
        const double w = sample_gamma(rho + 1.0, alpha, rng);
        if (w >= 1.0) return std::exp(w);
      }
    };
  }
  law.cdf = [=](double t) {
    if (t <= std::exp(1.0)) return 0.0;
    return 1.0 - upper_gamma(rho + 1.0, alpha * std::log(t)) / upper;
  };
  law.tail_beta = alpha;
  SlowVaryingFn L;
  L.log_eval = [=](double log_t) {
    if (!(log_t > 0.0)) throw DomainError("log-pareto tail factor: need t > 1");
    return log_c + rho * std::log(log_t);
  };
  const double lim = rho == 0.0 ? std::exp(log_c)
                     : rho > 0.0 ? std::numeric_limits<double>::infinity()
                                 : 0.0;
  L.liminf_nsq = lim;
  L.limsup_nsq = lim;
  L.description = "log-pareto tail factor";
  law.tail_L = L;
  law.family = OddsFamily::LogPareto;
  law.description = "log-pareto(alpha=" + fmt(alpha) + ",rho=" + fmt(rho) + ")";
  law.support_lo = std::exp(1.0);
  return law;
}

namespace {

double take(const std::map<std::string, double>& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw ParamError(std::string("missing parameter '") + key + "'");
  }
  return it->second;
}

void expect_keys(const std::map<std::string, double>& params,
                 std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : params) {
    (void)v;
    bool known = false;
    for (const char* key : keys) {
      if (k == key) known = true;
    }
    if (!known) throw ParamError("unknown parameter '" + k + "'");
  }
}

}  // namespace

OddsLaw make_odds_family(OddsFamily tag,
                         const std::map<std::string, double>& params) {
  switch (tag) {
    case OddsFamily::Pareto1:
      expect_keys(params, {"xm", "alpha"});
      return make_pareto1(take(params, "xm"), take(params, "alpha"));
    case OddsFamily::Lomax:
      expect_keys(params, {"alpha", "lambda"});
      return make_lomax(take(params, "alpha"), take(params, "lambda"));
    case OddsFamily::Gpd:
      expect_keys(params, {"xi", "sigma"});
      return make_gpd(take(params, "xi"), take(params, "sigma"));
    case OddsFamily::BetaPrime:
      expect_keys(params, {"a", "b"});
      return make_beta_prime(take(params, "a"), take(params, "b"));
    case OddsFamily::FDist:
      expect_keys(params, {"d1", "d2"});
      return make_f_dist(take(params, "d1"), take(params, "d2"));
    case OddsFamily::BurrXII:
      expect_keys(params, {"c", "k"});
      return make_burr12(take(params, "c"), take(params, "k"));
    case OddsFamily::InverseGamma:
      expect_keys(params, {"a", "b"});
      return make_inverse_gamma(take(params, "a"), take(params, "b"));
    case OddsFamily::Frechet:
      expect_keys(params, {"alpha"});
      return make_frechet(take(params, "alpha"));
    case OddsFamily::LogPareto:
      expect_keys(params, {"alpha", "rho"});
      return make_log_pareto(take(params, "alpha"), take(params, "rho"));
    case OddsFamily::SymmetricStable:
      throw UnsupportedFamilyError(
          "symmetric stable: no closed-form density or tail factor; "
          "family not supported");
    case OddsFamily::Custom:
      break;
  }
  throw ParamError("make_odds_family: unknown family tag");
}

SurvivalLaw odds_to_survival(const OddsLaw& x) {
  SurvivalLaw law;
  if (x.has_density()) {
    auto lx = x.log_density;
    law.log_density_uv = [lx](double log_u, double log_v) {
      // f_u(u) = f_x(u/(1-u)) / (1-u)^2; log t = log u - log(1-u).
      return lx(log_u - log_v) - 2.0 * log_v;
    };
  }
  auto xs = x.sampler;
  law.sampler = [xs](RngStream& rng) {
    const double t = xs(rng);
    return clamp_open01(t / (1.0 + t));
  };
  if (x.cdf) {
    auto xc = *x.cdf;
    law.cdf = [xc](double u) {
      if (u <= 0.0) return 0.0;
      if (u >= 1.0) return 1.0;
      return xc(u / (1.0 - u));
    };
  }
  law.edge_beta = x.tail_beta;
  law.edge_L = x.tail_L;
  law.family = SurvivalFamily::OddsDerived;
  law.description = "odds(" + x.description + ")";
  law.support_lo = x.support_lo / (1.0 + x.support_lo);
  return law;
}

OddsLaw product_transfer(const OddsLaw& x, double y_moment_beta,
                         std::function<double(RngStream&)> y_sampler,
                         const std::string& y_desc) {
  if (!(y_moment_beta > 0.0) || !std::isfinite(y_moment_beta)) {
    throw ParamError("product_transfer: E[Y^beta] must be finite and > 0");
  }
  if (!y_sampler) throw ParamError("product_transfer: missing Y sampler");
  OddsLaw law;
  auto xs = x.sampler;
  law.sampler = [xs, y_sampler](RngStream& rng) {
    return xs(rng) * y_sampler(rng);
  };
  law.tail_beta = x.tail_beta;
  law.tail_L = x.tail_L.scaled(y_moment_beta, "product tail factor");
  law.family = OddsFamily::Custom;
  law.description = "product(" + x.description + " * " +
                    (y_desc.empty() ? "Y" : y_desc) + ")";
  return law;
}

}  // namespace frog
