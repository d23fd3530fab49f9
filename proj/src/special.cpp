#include "special.hpp"

#include <cmath>

#include "errors.hpp"

namespace frog {

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double log_beta_fn(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace {

// Series for P(s,x), effective when x < s+1.
double gamma_p_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double ap = s;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) {
      return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
    }
  }
  throw NumericError("incomplete gamma series failed to converge");
}

// Continued fraction (modified Lentz) for Q(s,x), effective when x >= s+1.
double gamma_q_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      return h * std::exp(-x + s * std::log(x) - log_gamma(s));
    }
  }
  throw NumericError("incomplete gamma continued fraction failed to converge");
}

}  // namespace

double gamma_p(double s, double x) {
  if (!(s > 0.0) || x < 0.0) throw DomainError("gamma_p: need s > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return gamma_p_series(s, x);
  return 1.0 - gamma_q_cf(s, x);
}

double upper_gamma(double s, double x) {
  if (!(x > 0.0)) throw DomainError("upper_gamma: need x > 0");
  if (s > 0.0) {
    const double q = (x < s + 1.0) ? 1.0 - gamma_p_series(s, x) : gamma_q_cf(s, x);
    return q * std::exp(log_gamma(s));
  }
  // Shift s into (0,1] with Γ(s,x) = (Γ(s+1,x) − x^s e^{−x}) / s.
  int shifts = static_cast<int>(std::ceil(-s)) + 1;
  const double s_top = s + shifts;
  double g = upper_gamma(s_top, x);
  for (int i = shifts - 1; i >= 0; --i) {
    const double si = s + i;
    g = (g - std::exp(si * std::log(x) - x)) / si;
  }
  return g;
}

double clamp_open01(double u) {
  const double lo = 0x1.0p-1074;           // smallest positive double
  const double hi = 1.0 - 0x1.0p-53;       // nextafter(1,0)
  if (u < lo) return lo;
  if (u > hi) return hi;
  return u;
}

double sample_normal(RngStream& rng) {
  const double u1 = rng.uniform_open01();
  const double u2 = rng.uniform_open01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

double sample_gamma(double shape, double rate, RngStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw ParamError("sample_gamma: shape and rate must be positive");
  }
  double boost = 1.0;
  double k = shape;
  if (k < 1.0) {
    boost = std::pow(rng.uniform_open01(), 1.0 / k);
    k += 1.0;
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = sample_normal(rng);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open01();
    if (u < 1.0 - 0.0331 * z * z * z * z) return boost * d * v / rate;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) {
      return boost * d * v / rate;
    }
  }
}

double sample_beta(double a, double b, RngStream& rng) {
  const double x = sample_gamma(a, 1.0, rng);
  const double y = sample_gamma(b, 1.0, rng);
  return clamp_open01(x / (x + y));
}

long long sample_poisson(double mean, RngStream& rng) {
  if (mean < 0.0) throw ParamError("sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean > 30.0) {
    // Poisson(m) = Poisson(m/2) + Poisson(m/2): keeps the inversion loop short.
    return sample_poisson(0.5 * mean, rng) + sample_poisson(0.5 * mean, rng);
  }
  const double limit = std::exp(-mean);
  long long n = 0;
  double prod = rng.uniform_open01();
  while (prod > limit) {
    ++n;
    prod *= rng.uniform_open01();
  }
  return n;
}

}  // namespace frog
