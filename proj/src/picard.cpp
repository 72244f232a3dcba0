#include "randwave/picard.hpp"

#include <algorithm>
#include <cmath>

#include "randwave/fft.hpp"
#include "randwave/ops.hpp"

namespace randwave {

std::pair<FieldTrajectory, SolveReport> picard_solve(const ExpansionSet& set,
                                                     const SolverConfig& cfg,
                                                     const TimeGrid& tg) {
  if (cfg.depth < 1 || cfg.depth > set.depth())
    throw std::invalid_argument("picard_solve: depth outside the stored expansion");
  if (set.variant == ExpansionVariant::FullZ && cfg.depth > 2)
    throw std::invalid_argument("picard_solve: full-z expansions solve only k <= 2");
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1)
    throw std::invalid_argument("picard_solve: bad tolerance or iteration budget");
  if (set.time_grid != tg)
    throw std::invalid_argument("picard_solve: time grid mismatch with the expansion");
  const GridSpec& grid = set.grid;
  if (cfg.v0 && cfg.v0->grid != grid)
    throw std::invalid_argument("picard_solve: v0 grid mismatch");

  const int k = cfg.depth;
  const int nt = tg.node_count;
  const std::size_t npts = grid.point_count();
  const double dt = tg.dt();
  const complexd minus_i(0.0, -1.0);

  // Z(t) = sum of expansion terms; cache physical samples per node.
  std::vector<std::vector<complexd>> z_phys(nt);
  for (int m = 0; m < nt; ++m) {
    SpectralField zsum = set.order(1).node(m);
    for (int l = 2; l <= k; ++l) zsum += set.order(2 * l - 1).node(m);
    z_phys[m] = fft::inverse_transform(zsum);
  }

  // forcing, spectral per node
  const FieldTrajectory forcing = forcing_sum(set, k);

  // linear part S(t) v0
  FieldTrajectory v(grid, tg);
  std::vector<SpectralField> linear_part(nt, SpectralField(grid));
  if (cfg.v0) {
    for (int m = 0; m < nt; ++m) {
      linear_part[m] = *cfg.v0;
      evolve_linear_in_place(linear_part[m], tg.node(m));
    }
  }
  for (int m = 0; m < nt; ++m) v.node(m) = linear_part[m];

  SolveReport report;
  FieldTrajectory v_next(grid, tg);
  std::vector<complexd> phys(npts);
  SpectralField g_prev(grid), g_curr(grid), accum(grid);

  auto integrand = [&](const SpectralField& vm, int m, SpectralField& out) {
    phys = fft::inverse_transform(vm);
    for (std::size_t i = 0; i < npts; ++i) {
      const complexd w = phys[i] + z_phys[m][i];
      phys[i] = std::norm(w) * w;
    }
    out = fft::forward_transform(phys, grid);
    apply_dealias_mask(out);
    out -= forcing.node(m);
    evolve_linear_in_place(out, -tg.node(m));
  };

  int grow_streak = 0;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    accum.fill_zero();
    integrand(v.node(0), 0, g_prev);
    v_next.node(0) = linear_part[0];
    for (int m = 1; m < nt; ++m) {
      integrand(v.node(m), m, g_curr);
      for (std::size_t i = 0; i < npts; ++i)
        accum.coeff[i] += 0.5 * dt * (g_prev.coeff[i] + g_curr.coeff[i]);
      std::swap(g_prev, g_curr);
      SpectralField& vm = v_next.node(m);
      vm = accum;
      evolve_linear_in_place(vm, tg.node(m));
      vm *= minus_i;
      vm += linear_part[m];
    }

    double inc = 0.0;
    for (int m = 0; m < nt; ++m)
      inc = std::max(inc, sobolev_norm(v_next.node(m) - v.node(m), cfg.sigma));
    report.increments.push_back(inc);
    report.iterations = it + 1;
    std::swap(v, v_next);

    if (inc <= cfg.tolerance) {
      report.converged = true;
      break;
    }
    const std::size_t n = report.increments.size();
    grow_streak = (n >= 2 && report.increments[n - 1] > report.increments[n - 2])
                      ? grow_streak + 1
                      : 0;
    if (grow_streak >= 3) break;  // divergence is a report state
  }

  report.final_residual = report.increments.empty() ? 0.0 : report.increments.back();
  std::vector<double> ratios;
  for (std::size_t i = 1; i < report.increments.size(); ++i)
    if (report.increments[i - 1] > 0.0)
      ratios.push_back(report.increments[i] / report.increments[i - 1]);
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    report.contraction_ratio = ratios[ratios.size() / 2];
  }
  return {std::move(v), report};
}

FieldTrajectory reconstruct_u(const ExpansionSet& set, const FieldTrajectory& v) {
  if (v.grid != set.grid || !(v.time_grid == set.time_grid))
    throw std::invalid_argument("reconstruct_u: grid mismatch");
  FieldTrajectory u = v;
  for (int l = 1; l <= set.depth(); ++l)
    for (int m = 0; m < v.time_grid.node_count; ++m) u.node(m) += set.order(2 * l - 1).node(m);
  return u;
}

double nls_residual(const FieldTrajectory& u) {
  const TimeGrid& tg = u.time_grid;
  if (tg.node_count < 3)
    throw std::invalid_argument("nls_residual: need at least three nodes");
  const GridSpec& grid = u.grid;
  const std::vector<double>& xi2 = xi_squared_table(grid);
  const double dt = tg.dt();
  const complexd ii(0.0, 1.0);

  double worst = 0.0;
  for (int m = 1; m + 1 < tg.node_count; ++m) {
    SpectralField cubic = pointwise_cubic(u.node(m));
    SpectralField r(grid);
    const auto& prev = u.node(m - 1).coeff;
    const auto& next = u.node(m + 1).coeff;
    const auto& curr = u.node(m).coeff;
    for (std::size_t i = 0; i < r.coeff.size(); ++i) {
      const complexd dudt = (next[i] - prev[i]) / (2.0 * dt);
      r.coeff[i] = ii * dudt - xi2[i] * curr[i] - cubic.coeff[i];
    }
    worst = std::max(worst, sobolev_norm(r, -1.0));
  }
  return worst;
}

}  // namespace randwave
