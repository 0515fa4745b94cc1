#include "simove/bound.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace simove {

BoundReport finite_time_bound(const BoundInputs& in) {
  if (in.b < 2) throw std::invalid_argument("bound: b must be >= 2");
  if (in.D < 1) throw std::invalid_argument("bound: D must be >= 1");
  if (in.H < 2) throw std::invalid_argument("bound: |H| must be >= 2 (log(2|H|-2) is undefined below)");
  if (!(in.gamma > 0.0 && in.gamma < 1.0)) throw std::invalid_argument("bound: gamma must lie in (0,1)");
  if (!(in.eps > 0.0 && in.eps < 1.0)) throw std::invalid_argument("bound: eps must lie in (0,1)");
  if (!(in.T_A > 0.0)) throw std::invalid_argument("bound: T_A must be positive");

  const double d = in.D;
  BoundReport r;
  r.T0 = std::pow(16.0, d - 1.0) * std::pow(in.eps, -(d - 1.0)) *
         std::pow(static_cast<double>(in.b) / in.gamma, d * (d - 1.0) / 2.0) *
         std::log(2.0 * static_cast<double>(in.H) - 2.0) * in.T_A;
  r.equilibrium_eps = 4.0 * d * (d + 1.0) * in.eps;
  r.failure_factor = 2 * in.H + in.D;
  r.averaged_constant = 2.0 * d * (d + 1.0);
  r.upo_constant = 12.0 * (std::pow(2.0, d) - 1.0) - 8.0 * d;
  r.lower_constant = 2.0 * d;

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "with probability at least 1 - %lld*delta the empirical frequencies form a %.6g-equilibrium "
                "for every t >= T0",
                r.failure_factor, r.equilibrium_eps);
  r.guarantee = buf;
  return r;
}

}  // namespace simove
