#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "fmt_util.hpp"
#include "quadrature.hpp"

namespace frog {
namespace {

constexpr double kLogUnderflow = -745.0;  // exp() underflows to 0 below this

double exp_or_zero(double lg) { return lg > kLogUnderflow ? std::exp(lg) : 0.0; }

// log(1 - s^2) without cancellation anywhere on (0,1); ms = 1-s supplied by
// the caller because it is often known more accurately than 1.0 - s.
double log_one_minus_s2(double s, double ms) {
  if (s < 0.5) return std::log1p(-s * s);
  return std::log(ms) + std::log1p(s);
}

double atanh_stable(double s, double ms) {
  if (s < 0.5) return std::atanh(s);
  return 0.5 * (std::log1p(s) - std::log(ms));
}

struct LogIntegrand {
  const SurvivalLaw* law;
  double nd;
};

// log of the J-kind integrand in the stretched variable t = n*s, including
// the final 1/n factor:  t * r(s)^n * (1-s^2)^{-1/2} * f(sqrt(1-s^2)) / n
// with r(s) = (1-s)/sqrt(1-s^2), log r(s) = -atanh(s).
double log_integrand_exact(const LogIntegrand& ctx, double t) {
  const double nd = ctx.nd;
  if (!(t > 0.0) || t >= nd) return -std::numeric_limits<double>::infinity();
  const double s = t / nd;
  const double ms = (nd - t) / nd;
  if (!(ms > 0.0) || s >= 1.0) return -std::numeric_limits<double>::infinity();
  const double lg_mss = log_one_minus_s2(s, ms);        // log(1-s^2)
  const double log_u = 0.5 * lg_mss;                    // u = sqrt(1-s^2)
  // v = 1-u = s^2/(1+sqrt(1-s^2)), carried in log form so gaps far below
  // machine epsilon stay resolved.
  const double log_v = 2.0 * std::log(s) - std::log1p(std::exp(0.5 * lg_mss));
  const double lf = ctx.law->log_density_uv(log_u, log_v);
  if (!std::isfinite(lf) && lf > 0.0) return lf;  // propagate +inf as-is
  return std::log(t) - nd * atanh_stable(s, ms) - 0.5 * lg_mss + lf -
         std::log(nd);
}

// log of the I-kind integrand in t = n*s, s = sqrt(1-x):
// (2t/n) * (1+t/n)^{-n} * f((n-t)(n+t)/n^2).
double log_integrand_upper(const LogIntegrand& ctx, double t) {
  const double nd = ctx.nd;
  if (!(t > 0.0)) return -std::numeric_limits<double>::infinity();
  const double nmt = nd - t;
  if (!(nmt > 0.0)) return -std::numeric_limits<double>::infinity();
  const double s = t / nd;
  const double log_v = 2.0 * (std::log(t) - std::log(nd));
  double log_u;
  if (s < 0.5) {
    log_u = std::log1p(-s * s);
  } else {
    log_u = std::log(nmt) + std::log(nd + t) - 2.0 * std::log(nd);
  }
  const double lf = ctx.law->log_density_uv(log_u, log_v);
  if (!std::isfinite(lf) && lf > 0.0) return lf;
  return std::numbers::ln2_v<double> + std::log(t) - std::log(nd) -
         nd * std::log1p(s) + lf;
}

struct Piece {
  double value = 0.0;
  double abs_err = 0.0;
  std::size_t evals = 0;
};

Piece accumulate(Piece a, const QuadResult& q) {
  a.value += q.value;
  a.abs_err += q.abs_err;
  a.evals += q.evals;
  return a;
}

template <typename LogF>
IntegralReport run_integral(const SurvivalLaw& law, IntegralKind kind,
                            std::int64_t n, double rel_tol, double s_max,
                            LogF&& log_f) {
  if (n < 1) throw ParamError("integral order n must be >= 1");
  if (!law.has_density())
    throw NumericError(
        "law has no closed-form density; quadrature unavailable (Monte Carlo "
        "only)");
  if (!(rel_tol > 0.0) || rel_tol >= 1.0)
    throw ParamError("rel_tol must lie in (0,1)");

  const double nd = static_cast<double>(n);
  const double t_hi = nd * s_max;
  QuadOptions opts;
  opts.rel_tol = rel_tol;

  Piece total;

  // Boundary layer t in (0, min(1, t_hi)]: the integrand behaves like
  // t^{2*beta-1} times slowly varying factors, so w = t^{2*beta} makes it
  // bounded.  dt = t/(2*beta*w) dw.
  const double b2 = 2.0 * law.edge_beta;
  const double t_split = std::min(1.0, t_hi);
  const double w_hi = std::pow(t_split, b2);
  auto layer = [&](double w) {
    if (!(w > 0.0)) return 0.0;
    const double log_w = std::log(w);
    const double log_t = log_w / b2;
    const double t = std::exp(log_t);
    return exp_or_zero(log_f(t) + log_t - std::log(b2) - log_w);
  };
  total = accumulate(total, integrate(layer, 0.0, w_hi, opts));

  // Bulk t in (t_split, t_hi): geometric panels so each spans one scale.
  // The final panel is square-root packed toward t_hi to soften any
  // density singularity as the parameter approaches the lower end of its
  // support (x -> support edge means t -> t_hi).
  double a = t_split;
  while (a < t_hi) {
    double b = std::min(2.0 * a, t_hi);
    if (b >= t_hi) {
      const double width = t_hi - a;
      auto packed = [&](double y) {
        const double omy = 1.0 - y;
        const double t = t_hi - width * omy * omy;
        return exp_or_zero(log_f(t)) * 2.0 * width * omy;
      };
      total = accumulate(total, integrate(packed, 0.0, 1.0, opts));
    } else {
      auto direct = [&](double t) { return exp_or_zero(log_f(t)); };
      total = accumulate(total, integrate(direct, a, b, opts));
    }
    a = b;
  }

  if (!(total.value > 0.0) || total.value < 1e-300)
    throw UnderflowError("tail integral underflowed below 1e-300");
  if (!std::isfinite(total.value))
    throw NumericError("tail integral diverged (non-finite quadrature sum)");
  if (total.abs_err > 1e-8 * std::max(std::abs(total.value), 1e-30))
    throw NumericError("tail integral failed to converge: value=" +
                       std::to_string(total.value) +
                       " abs_err=" + std::to_string(total.abs_err) +
                       " evals=" + std::to_string(total.evals));

  IntegralReport rep;
  rep.kind = kind;
  rep.n = n;
  rep.value = total.value;
  rep.abs_err_est = total.abs_err;
  try {
    const double log_l = law.edge_L.eval_log_arg(2.0 * std::log(nd));
    rep.normalized =
        std::exp(std::log(total.value) +
                 (2.0 * law.edge_beta - 1.0) * std::log(nd) - log_l);
  } catch (const DomainError&) {
    // L undefined at n^2 (families with a restricted domain): the decay
    // prediction does not exist there, so the value has no normalization.
    rep.normalized = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace

IntegralReport integral_exact(const SurvivalLaw& law, std::int64_t n,
                              double rel_tol) {
  const double lo = law.support_lo;
  // x >= lo  <=>  s = sqrt(1-x^2) <= sqrt((1-lo)(1+lo))
  const double s_max = (lo > 0.0) ? std::sqrt((1.0 - lo) * (1.0 + lo)) : 1.0;
  LogIntegrand ctx{&law, static_cast<double>(n)};
  return run_integral(law, IntegralKind::J, n, rel_tol, s_max,
                      [&](double t) { return log_integrand_exact(ctx, t); });
}

IntegralReport integral_upper(const SurvivalLaw& law, std::int64_t n,
                              double rel_tol) {
  const double lo = law.support_lo;
  // x >= lo  <=>  s = sqrt(1-x) <= sqrt(1-lo)
  const double s_max = (lo > 0.0) ? std::sqrt(1.0 - lo) : 1.0;
  LogIntegrand ctx{&law, static_cast<double>(n)};
  return run_integral(law, IntegralKind::I, n, rel_tol, s_max,
                      [&](double t) { return log_integrand_upper(ctx, t); });
}

IntegralReport compute_integral(const SurvivalLaw& law, IntegralKind kind,
                                std::int64_t n, double rel_tol) {
  switch (kind) {
    case IntegralKind::I:
      return integral_upper(law, n, rel_tol);
    case IntegralKind::J:
      return integral_exact(law, n, rel_tol);
    case IntegralKind::ExactTail: {
      IntegralReport rep = integral_exact(law, n, rel_tol);
      rep.kind = IntegralKind::ExactTail;
      return rep;
    }
  }
  throw ParamError("unknown integral kind");
}

std::vector<IntegralReport> tail_sequence(const SurvivalLaw& law,
                                          const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw ParamError("n grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw ParamError("n grid must be strictly increasing");
  std::vector<IntegralReport> out;
  out.reserve(grid.size());
  for (std::int64_t n : grid)
    out.push_back(compute_integral(law, IntegralKind::ExactTail, n));
  return out;
}

SlowVariationReport check_slow_variation(const SlowVaryingFn& L,
                                         const std::vector<double>& lambdas,
                                         const std::vector<double>& x_grid) {
  if (!L.log_eval) throw ParamError("slow-variation check needs log_eval");
  SlowVariationReport rep;
  rep.rows.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x > 0.0)) throw ParamError("slow-variation grid points must be > 0");
    const double base = L.eval_log_arg(std::log(x));
    double worst = 0.0;
    for (double lam : lambdas) {
      if (!(lam > 0.0))
        throw ParamError("slow-variation scaling factors must be > 0");
      const double shifted = L.eval_log_arg(std::log(x) + std::log(lam));
      worst = std::max(worst, std::abs(std::exp(shifted - base) - 1.0));
    }
    rep.rows.push_back({x, worst});
  }
  // Ratio L((1+sqrt(1-s^2))/s^2) / L(1/s^2): the argument shift produced by
  // trading the parameter x for the boundary variable s.  Slow variation
  // makes it -> 1 as s -> 0.
  for (int k = 1; k <= 8; ++k) {
    const double s = std::pow(10.0, -k);
    const double sq = std::sqrt((1.0 - s) * (1.0 + s));
    const double log_arg_num = std::log1p(sq) - 2.0 * std::log(s);
    const double log_arg_den = -2.0 * std::log(s);
    const double ratio =
        std::exp(L.eval_log_arg(log_arg_num) - L.eval_log_arg(log_arg_den));
    rep.substitution_rows.push_back({s, ratio});
  }
  return rep;
}

PotterReport check_potter(const SlowVaryingFn& L, double A, double eps,
                          const std::vector<std::pair<double, double>>& pairs) {
  if (!(A >= 1.0)) throw ParamError("envelope constant A must be >= 1");
  if (!(eps > 0.0)) throw ParamError("envelope exponent eps must be > 0");
  if (!L.log_eval) throw ParamError("envelope check needs log_eval");
  PotterReport rep;
  rep.checked = pairs.size();
  for (auto [x, y] : pairs) {
    if (!(x > 0.0) || !(y > 0.0))
      throw ParamError("envelope check points must be > 0");
    const double lx = std::log(x);
    const double ly = std::log(y);
    const double log_ratio = L.eval_log_arg(ly) - L.eval_log_arg(lx);
    const double bound = std::log(A) + eps * std::abs(ly - lx);
    if (std::abs(log_ratio) > bound + 1e-12)
      rep.violations.push_back({x, y, log_ratio, bound});
  }
  return rep;
}

GnReport compute_gn(const SurvivalLaw& law, std::int64_t n) {
  if (n < 2) throw ParamError("entropy diagnostic needs n >= 2");
  const IntegralReport jr = integral_exact(law, n);
  const double nd = static_cast<double>(n);
  const double tail = jr.value / nd;  // P(D >= n)
  if (!(tail > 0.0))
    throw UnderflowError("tail probability underflowed to zero");
  if (tail >= 1.0)
    throw NumericError("tail probability >= 1; quadrature inconsistent");

  GnReport rep;
  rep.n = n;
  rep.tail = tail;
  // Direct route: G_n = n*P*log(1/P) = J_n*(log n - log J_n).
  rep.gn = jr.value * (std::log(nd) - std::log(jr.value));

  // Decomposed route through the edge scale L(n^2).
  const double log_l = law.edge_L.eval_log_arg(2.0 * std::log(nd));
  const double l_nsq = std::exp(log_l);
  if (!std::isfinite(l_nsq) || !(l_nsq > 0.0))
    throw NumericError("edge scale L(n^2) not finite/positive");
  rep.a_n = std::exp(std::log(jr.value) - log_l);
  rep.h_n = (std::log(nd) - log_l) * l_nsq;
  const double g2 = rep.a_n * rep.h_n - rep.a_n * l_nsq * std::log(rep.a_n);
  rep.identity_residual =
      std::abs(rep.gn - g2) / std::max(std::abs(rep.gn), 1e-30);
  return rep;
}

namespace {

const char* kind_token(IntegralKind k) {
  switch (k) {
    case IntegralKind::I:
      return "I";
    case IntegralKind::J:
      return "J";
    case IntegralKind::ExactTail:
      return "exact_tail";
  }
  return "?";
}

}  // namespace

std::string integral_reports_csv(const std::vector<IntegralReport>& reports) {
  std::string out = "kind,n,value,normalized,abs_err_est\n";
  for (const auto& r : reports) {
    out += kind_token(r.kind);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += fmt_double(r.value);
    out += ',';
    out += fmt_double(r.normalized);
    out += ',';
    out += fmt_double(r.abs_err_est);
    out += '\n';
  }
  return out;
}

}  // namespace frog
