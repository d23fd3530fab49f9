#include "slow_varying.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace frog {

SlowVaryingFn SlowVaryingFn::constant(double c, std::string desc) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ParamError("SlowVaryingFn::constant: need finite c > 0");
  }
  SlowVaryingFn L;
  const double log_c = std::log(c);
  L.log_eval = [log_c](double) { return log_c; };
  L.liminf_nsq = c;
  L.limsup_nsq = c;
  L.description = desc.empty() ? "constant" : std::move(desc);
  return L;
}

SlowVaryingFn SlowVaryingFn::scaled(double factor, const std::string& desc) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ParamError("SlowVaryingFn::scaled: need finite factor > 0");
  }
  SlowVaryingFn out;
  const double log_f = std::log(factor);
  auto base = log_eval;
  out.log_eval = [base, log_f](double lx) { return base(lx) + log_f; };
  auto scale_limit = [factor](const Limit& l) -> Limit {
    if (!l) return std::nullopt;
    if (*l == 0.0 || std::isinf(*l)) return *l;  // 0 and inf absorb scaling
    return *l * factor;
  };
  out.liminf_nsq = scale_limit(liminf_nsq);
  out.limsup_nsq = scale_limit(limsup_nsq);
  out.description = desc.empty() ? description + " (scaled)" : desc;
  return out;
}

SlowVaryingFn make_oscillating_L() {
  SlowVaryingFn L;
  L.log_eval = [](double log_x) {
    // log L = (log log x) * sin(log log x); defined for x > e.
    if (!(log_x > 1.0)) {
      throw DomainError("oscillating L: defined for x > e only");
    }
    const double u = std::log(log_x);
    return u * std::sin(u);
  };
  L.liminf_nsq = 0.0;
  L.limsup_nsq = std::numeric_limits<double>::infinity();
  L.description = "(log x)^sin(log log x)";
  return L;
}

}  // namespace frog
