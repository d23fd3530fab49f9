#include "initial_law.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"
#include "special.hpp"

namespace frog {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

InitialLaw make_degenerate(std::int64_t k) {
  if (k < 0) throw ParamError("degenerate: k must be >= 0");
  InitialLaw law;
  law.sampler = [k](RngStream&) { return k; };
  law.mean = static_cast<double>(k);
  law.p_zero = k == 0 ? 1.0 : 0.0;
  law.family = InitialFamily::Degenerate;
  law.param = static_cast<double>(k);
  law.description = "degenerate(" + std::to_string(k) + ")";
  return law;
}

InitialLaw make_geometric(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw ParamError("geometric: need q in [0,1)");
  InitialLaw law;
  if (q == 0.0) {
    law.sampler = [](RngStream&) { return std::int64_t{0}; };
  } else {
    const double log_q = std::log(q);
    law.sampler = [log_q](RngStream& rng) {
      // P(eta >= j) = q^j.
      return static_cast<std::int64_t>(
          std::floor(std::log(rng.uniform_open01()) / log_q));
    };
  }
  law.mean = q / (1.0 - q);
  law.p_zero = 1.0 - q;
  law.family = InitialFamily::Geometric;
  law.param = q;
  law.description = "geometric(q=" + fmt(q) + ")";
  return law;
}

InitialLaw make_poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw ParamError("poisson: mean must be finite and >= 0");
  }
  InitialLaw law;
  law.sampler = [mean](RngStream& rng) {
    return static_cast<std::int64_t>(sample_poisson(mean, rng));
  };
  law.mean = mean;
  law.p_zero = std::exp(-mean);
  law.family = InitialFamily::Poisson;
  law.param = mean;
  law.description = "poisson(m=" + fmt(mean) + ")";
  return law;
}

InitialLaw make_zeta_tail(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ParamError("zetatail: need finite c > 0");
  }
  InitialLaw law;
  law.sampler = [c](RngStream& rng) {
    // P(ceil(T) > n) = P(T > n) = c/(n+c) for the continuous T below.
    const double u = rng.uniform_open01();
    const double t = c * (1.0 - u) / u;
    if (t >= 9.0e18) return std::int64_t{9000000000000000000};
    return static_cast<std::int64_t>(std::ceil(t));
  };
  law.mean = std::numeric_limits<double>::infinity();
  law.p_zero = 0.0;
  law.family = InitialFamily::ZetaTail;
  law.param = c;
  law.description = "zetatail(c=" + fmt(c) + ")";
  return law;
}

}  // namespace frog
