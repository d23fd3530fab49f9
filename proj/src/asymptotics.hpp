#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slow_varying.hpp"
#include "survival_laws.hpp"

namespace frog {

enum class IntegralKind { I, J, ExactTail };

// One evaluated tail integral. "normalized" divides out the predicted decay:
// value * n^{2*beta-1} / L(n^2) with beta/L the law's declared edge data, so
// it converges to a finite constant when the edge prediction is exact.
struct IntegralReport {
  IntegralKind kind = IntegralKind::J;
  std::int64_t n = 0;
  double value = 0.0;
  double normalized = 0.0;
  double abs_err_est = 0.0;
};

// J-kind integral: n * P(D >= n) for the marginal right displacement, i.e.
// the integral of n*((1-sqrt(1-x^2))/x)^n against the parameter density.
// Evaluated after the boundary-layer substitution s = sqrt(1-x^2), t = n*s;
// the edge power is flattened by a further w = t^{2*beta} warp so the
// adaptive pass sees a bounded integrand. rel_tol is the working target;
// reports are rejected (NumericError) if the conservative error estimate
// exceeds 1e-8 relative.
IntegralReport integral_exact(const SurvivalLaw& law, std::int64_t n,
                              double rel_tol = 1e-10);

// I-kind integral: same edge weight but with the pointwise-larger kernel
// ((1-sqrt(1-x))/x)^n = (1+sqrt(1-x))^{-n}, so it dominates the J-kind
// value for every law and n. Substitution s = sqrt(1-x), t = n*s.
IntegralReport integral_upper(const SurvivalLaw& law, std::int64_t n,
                              double rel_tol = 1e-10);

IntegralReport compute_integral(const SurvivalLaw& law, IntegralKind kind,
                                std::int64_t n, double rel_tol = 1e-10);

// J-kind reports for each n in the grid, labelled ExactTail.
std::vector<IntegralReport> tail_sequence(const SurvivalLaw& law,
                                          const std::vector<std::int64_t>& grid);

// Finite-grid slow-variation diagnostic: max over scaling factors of
// |L(lambda*x)/L(x) - 1| per grid point, plus the boundary-substitution
// ratio L((1+sqrt(1-s^2))/s^2) / L(1/s^2) at s = 10^{-k}. A diagnostic,
// not a proof: it samples finitely many points.
struct SlowVariationReport {
  struct Row {
    double x = 0.0;
    double max_abs_dev = 0.0;
  };
  struct SubstitutionRow {
    double s = 0.0;
    double ratio = 0.0;
  };
  std::vector<Row> rows;
  std::vector<SubstitutionRow> substitution_rows;
  std::string note = "finite-grid diagnostic, not a proof";
};
SlowVariationReport check_slow_variation(const SlowVaryingFn& L,
                                         const std::vector<double>& lambdas,
                                         const std::vector<double>& x_grid);

// Two-sided envelope check: flags pairs (x,y) where |log L(y) - log L(x)|
// exceeds log(A) + eps*|log(y/x)|. Only meaningful for pairs beyond the
// (unknown) threshold where the envelope is guaranteed, so this too is a
// diagnostic.
struct PotterReport {
  struct Violation {
    double x = 0.0;
    double y = 0.0;
    double log_ratio = 0.0;  // log L(y) - log L(x)
    double bound = 0.0;      // log(A) + eps*|log(y/x)|
  };
  std::vector<Violation> violations;
  std::size_t checked = 0;
};
PotterReport check_potter(const SlowVaryingFn& L, double A, double eps,
                          const std::vector<std::pair<double, double>>& pairs);

// Entropy-weighted tail diagnostic G_n = n*P(D>=n)*log(1/P(D>=n)) together
// with the exact decomposition through a_n = n*P(D>=n)/L(n^2) and
// H_n = -log(L(n^2)/n)*L(n^2):  G_n = a_n*H_n - a_n*L(n^2)*log(a_n).
struct GnReport {
  std::int64_t n = 0;
  double tail = 0.0;  // P(D >= n)
  double gn = 0.0;
  double a_n = 0.0;
  double h_n = 0.0;
  double identity_residual = 0.0;  // relative gap between the two routes
};
GnReport compute_gn(const SurvivalLaw& law, std::int64_t n);

// CSV body for integral reports: header "kind,n,value,normalized,abs_err_est".
std::string integral_reports_csv(const std::vector<IntegralReport>& reports);

}  // namespace frog
