#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace frog {

namespace {

// QUADPACK dqk15 abscissae/weights on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  double fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    fv[j] = f1;
    fv[14 - j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
  }
  resasc *= h;
  resabs *= h;
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50) {
    err = std::max(err, eps50 * resabs);
  }
  return Panel{lo, hi, resk * h, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo,
                     double hi, const QuadOptions& opt) {
  QuadResult out;
  if (!(hi > lo)) return out;  // empty interval integrates to zero, converged
  std::priority_queue<Panel> heap;
  Panel first = eval_panel(f, lo, hi);
  out.evals = 15;
  double total = first.value;
  double err_sum = first.err;
  heap.push(first);
  int panels = 1;
  while (panels < opt.max_intervals) {
    const double target = std::max(opt.rel_tol * std::fabs(total), opt.abs_floor);
    if (err_sum <= target) break;
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // Interval is at machine resolution: cannot split further.
      heap.push(worst);
      break;
    }
    Panel left = eval_panel(f, worst.lo, mid);
    Panel right = eval_panel(f, mid, worst.hi);
    out.evals += 30;
    total += left.value + right.value - worst.value;
    err_sum += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  out.value = total;
  out.abs_err = err_sum;
  out.converged =
      err_sum <= std::max(opt.rel_tol * std::fabs(total), opt.abs_floor) * 1.0001 ||
      err_sum <= opt.abs_floor;
  return out;
}

QuadResult integrate_or_throw(const std::function<double(double)>& f,
                              double lo, double hi, const QuadOptions& opt,
                              const char* what) {
  QuadResult r = integrate(f, lo, hi, opt);
  // Accept when the conservative estimate is within 1e-8 relative even if
  // the tighter working target was missed.
  const double accept = std::max(1e-8 * std::max(std::fabs(r.value), 1e-30),
                                 opt.abs_floor);
  if (!r.converged && r.abs_err > accept) {
    throw NumericError(std::string("quadrature failed to converge for ") + what +
                       ": value=" + std::to_string(r.value) +
                       " abs_err=" + std::to_string(r.abs_err) +
                       " evals=" + std::to_string(r.evals));
  }
  return r;
}

}  // namespace frog
