#pragma once

#include <functional>
#include <optional>
#include <string>

namespace frog {

// Extended-real limit: nullopt means "unknown", infinity() is allowed.
using Limit = std::optional<double>;

// Slowly varying factor of a density edge, kept in log space: log_eval maps
// log(x) to log(L(x)) so huge arguments (x ~ n^2 with n ~ 1e6) never leave
// double range. liminf/limsup describe L(n^2) along integer n.
struct SlowVaryingFn {
  std::function<double(double)> log_eval;
  Limit liminf_nsq;
  Limit limsup_nsq;
  std::string description;

  double eval_log_arg(double log_x) const { return log_eval(log_x); }

  static SlowVaryingFn constant(double c, std::string desc = {});
  // Multiply by a positive constant; limits scale with it (0 and inf stay put).
  SlowVaryingFn scaled(double factor, const std::string& desc = {}) const;
};

// L(x) = (log x)^{sin(log log x)} for x > e. liminf along n^2 is 0 and
// limsup is +inf: along x_k = exp(exp(pi/2 + 2*pi*k)) the value is
// exp(pi/2 + 2*pi*k), along exp(exp(3*pi/2 + 2*pi*k)) it is the reciprocal.
SlowVaryingFn make_oscillating_L();

}  // namespace frog
