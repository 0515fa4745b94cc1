#pragma once

#include <string>

namespace simove {

struct BoundInputs {
  int b = 2;           // max actions per player at any node
  int D = 1;           // depth
  double gamma = 0.1;  // exploration of the selection policy
  double eps = 0.1;    // Hannan-consistency level
  long long H = 2;     // number of inner states |H|
  double T_A = 1.0;    // time for the bandit to reach regret eps w.p. 1 - delta
};

struct BoundReport {
  double T0 = 0.0;
  double equilibrium_eps = 0.0;   // 4 D (D+1) eps
  long long failure_factor = 0;   // probability bound is 1 - failure_factor * delta
  double averaged_constant = 0.0; // eventual exploitability factor 2 D (D+1)
  double upo_constant = 0.0;      // 12 (2^D - 1) - 8 D
  double lower_constant = 0.0;    // 2 D
  std::string guarantee;
};

// T0 = 16^(D-1) eps^-(D-1) (b/gamma)^(D(D-1)/2) ln(2|H|-2) T_A. Throws
// std::invalid_argument when an input is out of range.
BoundReport finite_time_bound(const BoundInputs& in);

}  // namespace simove
