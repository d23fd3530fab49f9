#include "law_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"

namespace frog {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double exp_or_zero(double lg) { return lg > -745.0 ? std::exp(lg) : 0.0; }

// log f at u = 1 - exp(-y): both logs handed to the law stay exact however
// close u is to either end.
double density_from_logy(const SurvivalLaw& law, double y) {
  const double log_v = -y;
  const double log_u = std::log1p(-std::exp(-y));
  return exp_or_zero(law.log_density_uv(log_u, log_v) - y);
}

double density_from_logy_left(const SurvivalLaw& law, double y) {
  const double log_u = -y;
  const double log_v = std::log1p(-std::exp(-y));
  return exp_or_zero(law.log_density_uv(log_u, log_v) - y);
}

// Integral of the density over (a, 1) for a >= 1/2, via u = 1 - exp(-y):
// the exponential substitution turns any integrable edge power into smooth
// exponential decay.  Panels double in width out to the underflow horizon.
double integrate_right_tail(const SurvivalLaw& law, double a,
                            const QuadOptions& opts, double* err_acc) {
  double y_lo = -std::log1p(-a);
  double total = 0.0;
  double width = 1.0;
  while (y_lo < 745.0) {
    const double y_hi = std::min(y_lo + width, 745.0);
    QuadResult q = integrate(
        [&](double y) { return density_from_logy(law, y); }, y_lo, y_hi, opts);
    total += q.value;
    *err_acc += q.abs_err;
    y_lo = y_hi;
    width *= 2.0;
  }
  return total;
}

double integrate_left_part(const SurvivalLaw& law, double lo, double b,
                           const QuadOptions& opts, double* err_acc) {
  if (lo > 0.0) {
    // Support starts inside (0,1): the density is bounded there.
    QuadResult q = integrate([&](double u) { return law.density(u); },
                             std::max(lo, 1e-300), b, opts);
    *err_acc += q.abs_err;
    return q.value;
  }
  // Support reaches 0: mirror substitution u = exp(-y).
  double y_lo = -std::log(b);
  double total = 0.0;
  double width = 1.0;
  while (y_lo < 745.0) {
    const double y_hi = std::min(y_lo + width, 745.0);
    QuadResult q = integrate(
        [&](double y) { return density_from_logy_left(law, y); }, y_lo, y_hi,
        opts);
    total += q.value;
    *err_acc += q.abs_err;
    y_lo = y_hi;
    width *= 2.0;
  }
  return total;
}

double normalization_quadrature(const SurvivalLaw& law) {
  QuadOptions opts;
  opts.rel_tol = 1e-10;
  double err = 0.0;
  const double mid = law.support_lo + 0.5 * (1.0 - law.support_lo);
  const double right = integrate_right_tail(law, mid, opts, &err);
  const double left = integrate_left_part(law, law.support_lo, mid, opts, &err);
  const double total = left + right;
  if (err > 1e-7 * std::max(total, 1e-30))
    throw NumericError("density normalization quadrature did not converge");
  return total;
}

// Numeric CDF on a geometric grid in the gap v = 1-u, finest near the edge
// where the density may blow up; F(1 - v_k) = 1 - tail(v_k) accumulated from
// per-cell quadrature.  Used when no closed-form CDF exists.
struct NumericCdf {
  std::vector<double> u;  // increasing
  std::vector<double> F;  // CDF at u
};

NumericCdf build_numeric_cdf(const SurvivalLaw& law, double normalization) {
  const int cells = 2000;
  const double v_max = 1.0 - law.support_lo;
  const double v_min = 1e-12;
  NumericCdf out;
  QuadOptions opts;
  opts.rel_tol = 1e-9;
  // Stub below v_min: w = v^{beta} flattens the edge power.
  const double b = law.edge_beta;
  const double w_min = std::pow(v_min, b);
  QuadResult stub = integrate(
      [&](double w) {
        if (!(w > 0.0)) return 0.0;
        const double log_w = std::log(w);
        const double log_v = log_w / b;
        return exp_or_zero(law.log_density_gap(log_v) + log_v - std::log(b) -
                           log_w);
      },
      0.0, w_min, opts);
  double tail = stub.value;  // P(U > 1 - v) accumulated upward in v
  const double step = std::log(v_max / v_min) / cells;
  std::vector<double> vs(static_cast<std::size_t>(cells) + 1);
  for (int k = 0; k <= cells; ++k)
    vs[static_cast<std::size_t>(k)] = v_min * std::exp(step * k);
  out.u.reserve(vs.size());
  out.F.reserve(vs.size());
  out.u.push_back(1.0 - vs[0]);
  out.F.push_back(1.0 - tail / normalization);
  for (int k = 1; k <= cells; ++k) {
    const double va = vs[static_cast<std::size_t>(k - 1)];
    const double vb = vs[static_cast<std::size_t>(k)];
    QuadResult q = integrate(
        [&](double v) {
          return v > 0.0 ? exp_or_zero(law.log_density_gap(std::log(v))) : 0.0;
        },
        va, vb, opts);
    tail += q.value;
    out.u.push_back(1.0 - vb);
    out.F.push_back(1.0 - tail / normalization);
  }
  std::reverse(out.u.begin(), out.u.end());
  std::reverse(out.F.begin(), out.F.end());
  return out;
}

double ks_against_cdf(const std::vector<double>& sorted,
                      const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace

LawDiagnostics law_check(const SurvivalLaw& law, std::uint64_t seed,
                         std::int64_t ks_samples) {
  if (!law.sampler) throw ParamError("law has no sampler");
  if (ks_samples < 100) throw ParamError("ks_samples must be >= 100");
  LawDiagnostics diag;
  diag.has_density = law.has_density();
  diag.has_cdf = law.cdf.has_value();
  diag.normalization = kNaN;
  diag.edge_ratio = kNaN;
  diag.ks_distance = kNaN;
  diag.ks_samples = 0;

  if (diag.has_density) {
    diag.normalization = normalization_quadrature(law);
    const double log_v = std::log(1e-8);
    const double predicted = (law.edge_beta - 1.0) * log_v +
                             law.edge_L.eval_log_arg(-log_v);
    diag.edge_ratio = std::exp(law.log_density_gap(log_v) - predicted);
  }

  if (diag.has_density || diag.has_cdf) {
    RngStream rng = substream(seed, kStreamScratch, 0x4B53ull);
    std::vector<double> draws(static_cast<std::size_t>(ks_samples));
    for (auto& d : draws) d = law.sampler(rng);
    std::sort(draws.begin(), draws.end());
    diag.ks_samples = ks_samples;
    if (diag.has_cdf) {
      diag.ks_distance = ks_against_cdf(draws, *law.cdf);
    } else {
      const NumericCdf table = build_numeric_cdf(law, diag.normalization);
      auto interp = [&table](double u) {
        if (u <= table.u.front()) return 0.0;
        if (u >= table.u.back()) return table.F.back();
        const auto it =
            std::upper_bound(table.u.begin(), table.u.end(), u);
        const std::size_t hi =
            static_cast<std::size_t>(it - table.u.begin());
        const std::size_t lo = hi - 1;
        const double t =
            (u - table.u[lo]) / (table.u[hi] - table.u[lo]);
        return table.F[lo] + t * (table.F[hi] - table.F[lo]);
      };
      diag.ks_distance = ks_against_cdf(draws, interp);
    }
  }
  return diag;
}

}  // namespace frog
