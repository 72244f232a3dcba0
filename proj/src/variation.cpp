#include <cmath>

#include "randwave/experiments.hpp"
#include "randwave/ops.hpp"

namespace randwave {

double xnorm_proxy(const FieldTrajectory& traj, double sigma, double T) {
  const TimeGrid& tg = traj.time_grid;
  if (T > tg.horizon * (1.0 + 1e-12))
    throw std::invalid_argument("xnorm_proxy: T exceeds the horizon");
  double mx = 0.0;
  for (int m = 0; m < tg.node_count && tg.node(m) <= T * (1.0 + 1e-12); ++m)
    mx = std::max(mx, sobolev_norm(traj.node(m), sigma));
  return mx;
}

double discrete_variation_norm(const FieldTrajectory& traj, double p, bool twisted) {
  if (!(p >= 1.0)) throw std::invalid_argument("discrete_variation_norm: p must be >= 1");
  const int nt = traj.time_grid.node_count;

  std::vector<SpectralField> pts(nt);
  for (int m = 0; m < nt; ++m) {
    pts[m] = traj.node(m);
    if (twisted) evolve_linear_in_place(pts[m], -traj.time_grid.node(m));
  }

  // L^2 distance matrix over the node lattice
  std::vector<std::vector<double>> dist(nt, std::vector<double>(nt, 0.0));
  for (int i = 0; i < nt; ++i)
    for (int j = i + 1; j < nt; ++j) dist[i][j] = sobolev_norm(pts[j] - pts[i], 0.0);

  // best sum of increment^p over chains ending at node j (chains may start
  // anywhere; the sup over partitions is attained on some subset of nodes)
  std::vector<double> best(nt, 0.0);
  double overall = 0.0;
  for (int j = 1; j < nt; ++j) {
    for (int i = 0; i < j; ++i)
      best[j] = std::max(best[j], best[i] + std::pow(dist[i][j], p));
    overall = std::max(overall, best[j]);
  }
  return std::pow(overall, 1.0 / p);
}

}  // namespace randwave
