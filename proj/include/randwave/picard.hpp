#pragma once

#include <optional>
#include <vector>

#include "randwave/tower.hpp"

namespace randwave {

struct SolverConfig {
  int depth = 1;                     // k
  double tolerance = 1e-10;          // sup-in-time H^sigma increment
  int max_iterations = 25;
  double sigma = 0.5;                // convergence norm regularity
  std::optional<SpectralField> v0;   // deterministic component, default 0
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> increments;    // per-iteration sup-H^sigma increments
  double final_residual = 0.0;       // last fixed-point increment
  double contraction_ratio = 0.0;    // median of successive increment ratios
  bool converged = false;
};

// Picard iteration for the residual v of the depth-k expansion:
//   v_{n+1}(t) = S(t) v0 - i int_0^t S(t-t') { N(v_n + sum zeta) - forcing }(t') dt'
// Divergence (three consecutive growing increments) is a report state, not an
// error.  The set must be unbalanced-zeta, or full-z with k <= 2.
std::pair<FieldTrajectory, SolveReport> picard_solve(const ExpansionSet& set,
                                                     const SolverConfig& cfg,
                                                     const TimeGrid& tg);

// u = sum_l zeta_{2l-1} + v
FieldTrajectory reconstruct_u(const ExpansionSet& set, const FieldTrajectory& v);

// sup over interior nodes of || i du/dt + Lap u - |u|^2 u ||_{H^{-1}} with
// spectral Laplacian and centered time differencing; carries the dt^2
// discretization floor of the difference quotient.
double nls_residual(const FieldTrajectory& u);

}  // namespace randwave
