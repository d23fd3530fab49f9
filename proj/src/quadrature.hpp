#pragma once

#include <functional>

namespace frog {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;   // conservative estimate of the absolute error
  long long evals = 0;
  bool converged = false;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_floor = 1e-300;  // convergence floor for integrals near zero
  int max_intervals = 20000;
};

// Adaptive Gauss-Kronrod 7-15 on a finite interval. Bisects the interval
// with the largest error estimate until the summed estimate meets
// max(rel_tol*|value|, abs_floor). Integrand must be finite at interior
// nodes; endpoints are never evaluated.
QuadResult integrate(const std::function<double(double)>& f, double lo,
                     double hi, const QuadOptions& opt = {});

// Same, but raises NumericError when the target is not met.
QuadResult integrate_or_throw(const std::function<double(double)>& f,
                              double lo, double hi, const QuadOptions& opt = {},
                              const char* what = "integrand");

}  // namespace frog
