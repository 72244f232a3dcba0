#include "randwave/evolve.hpp"

#include <cmath>
#include <mutex>

#include "randwave/fft.hpp"
#include "randwave/kernels.hpp"
#include "randwave/ops.hpp"

namespace randwave {

const std::vector<double>& xi_squared_table(const GridSpec& grid) {
  struct Key {
    int m, r;
    bool operator<(const Key& o) const { return m != o.m ? m < o.m : r < o.r; }
  };
  static std::map<Key, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const Key key{grid.points_per_axis, grid.oversampling};
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<double> t(grid.point_count());
    const int m = grid.points_per_axis;
    for (int ix = 0; ix < m; ++ix) {
      const double fx = grid.freq_component(ix);
      for (int iy = 0; iy < m; ++iy) {
        const double fy = grid.freq_component(iy);
        for (int iz = 0; iz < m; ++iz) {
          const double fz = grid.freq_component(iz);
          t[grid.flat_index(ix, iy, iz)] = fx * fx + fy * fy + fz * fz;
        }
      }
    }
    it = cache.emplace(key, std::move(t)).first;
  }
  return it->second;
}

const std::vector<complexd>& PropagatorCache::multiplier(double tau) {
  auto it = table_.find(tau);
  if (it != table_.end()) return it->second;
  const std::vector<double>& xi2 = xi_squared_table(grid_);
  std::vector<complexd> mult(xi2.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(xi2.size()); ++i) {
    const double a = -tau * xi2[i];
    mult[i] = complexd(std::cos(a), std::sin(a));
  }
  return table_.emplace(tau, std::move(mult)).first->second;
}

namespace {

// out[i] = f[i] * e^{-i t xi2[i]}
void apply_phase(const SpectralField& f, double t, SpectralField& out) {
  const std::vector<double>& xi2 = xi_squared_table(f.grid);
  out.grid = f.grid;
  out.coeff.resize(f.coeff.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(xi2.size()); ++i) {
    const double a = -t * xi2[i];
    out.coeff[i] = f.coeff[i] * complexd(std::cos(a), std::sin(a));
  }
}

}  // namespace

SpectralField evolve_linear(const SpectralField& f, double t) {
  SpectralField out(f.grid);
  apply_phase(f, t, out);
  return out;
}

void evolve_linear_in_place(SpectralField& f, double t) { apply_phase(f, t, f); }

std::pair<double, double> phase_function_forms(const Vec3& xi, const Vec3& xi1,
                                               const Vec3& xi2, const Vec3& xi3) {
  Vec3 gap{};
  for (int d = 0; d < 3; ++d) gap[d] = xi[d] - (xi1[d] - xi2[d] + xi3[d]);
  if (std::sqrt(norm2(gap)) > 1e-9)
    throw std::invalid_argument("phase_function: quadruple violates xi = xi1 - xi2 + xi3");
  const double direct = norm2(xi) - norm2(xi1) + norm2(xi2) - norm2(xi3);
  Vec3 d1{}, d3{};
  for (int d = 0; d < 3; ++d) {
    d1[d] = xi[d] - xi1[d];
    d3[d] = xi[d] - xi3[d];
  }
  return {direct, 2.0 * dot(d1, d3)};
}

double phase_function(const Vec3& xi, const Vec3& xi1, const Vec3& xi2, const Vec3& xi3) {
  return phase_function_forms(xi, xi1, xi2, xi3).second;
}

void LinearTrajectory::eval(double t, SpectralField& out) const { apply_phase(phi_, t, out); }

void SampledTrajectory::eval(double t, SpectralField& out) const {
  const TimeGrid& tg = traj_.time_grid;
  const double dt = tg.dt();
  const double eps = 1e-12 * tg.horizon;
  if (t < -eps || t > tg.horizon + eps)
    throw std::invalid_argument("SampledTrajectory: time outside the horizon");
  int m0 = static_cast<int>(std::floor(t / dt));
  m0 = std::max(0, std::min(m0, tg.node_count - 2));
  const double theta = (t - tg.node(m0)) / dt;
  if (theta < 1e-12) {
    out = traj_.node(m0);
    return;
  }
  if (theta > 1.0 - 1e-12) {
    out = traj_.node(m0 + 1);
    return;
  }
  // interpolate S(-t)u linearly between nodes, then push forward to t
  const SpectralField& a = traj_.node(m0);
  const SpectralField& b = traj_.node(m0 + 1);
  const std::vector<double>& xi2 = xi_squared_table(traj_.grid);
  out.grid = traj_.grid;
  out.coeff.resize(a.coeff.size());
  const double t0 = tg.node(m0), t1 = tg.node(m0 + 1);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(xi2.size()); ++i) {
    const double x2 = xi2[i];
    const complexd twist0(std::cos((t0 - t) * x2), -std::sin((t0 - t) * x2));
    const complexd twist1(std::cos((t1 - t) * x2), -std::sin((t1 - t) * x2));
    out.coeff[i] = (1.0 - theta) * a.coeff[i] * std::conj(twist0) +
                   theta * b.coeff[i] * std::conj(twist1);
  }
}

namespace {

// G(t) = S(-t)[u1 conj(u2) u3](t) in spectral representation
void integrand_at(const TrajectoryView& u1, const TrajectoryView& u2,
                  const TrajectoryView& u3, double t, SpectralField& scratch1,
                  SpectralField& scratch2, SpectralField& scratch3, SpectralField& g) {
  u1.eval(t, scratch1);
  u2.eval(t, scratch2);
  u3.eval(t, scratch3);
  g = product_conj2(scratch1, scratch2, scratch3);
  evolve_linear_in_place(g, -t);
}

}  // namespace

FieldTrajectory duhamel_trilinear(const TrajectoryView& u1, const TrajectoryView& u2,
                                  const TrajectoryView& u3, const TimeGrid& tg,
                                  Quadrature quad) {
  const GridSpec& grid = u1.grid();
  if (grid != u2.grid() || grid != u3.grid())
    throw std::invalid_argument("duhamel_trilinear: grid mismatch");

  FieldTrajectory out(grid, tg);
  SpectralField s1(grid), s2(grid), s3(grid);
  SpectralField accum(grid);  // w(t_m) = int_0^{t_m} G
  SpectralField g_prev(grid), g_curr(grid);
  const double dt = tg.dt();
  const complexd minus_i(0.0, -1.0);

  if (quad == Quadrature::Trapezoid)
    integrand_at(u1, u2, u3, 0.0, s1, s2, s3, g_prev);

  out.node(0).fill_zero();
  for (int m = 1; m < tg.node_count; ++m) {
    if (quad == Quadrature::Trapezoid) {
      integrand_at(u1, u2, u3, tg.node(m), s1, s2, s3, g_curr);
      for (std::size_t i = 0; i < accum.coeff.size(); ++i)
        accum.coeff[i] += 0.5 * dt * (g_prev.coeff[i] + g_curr.coeff[i]);
      std::swap(g_prev, g_curr);
    } else {
      const double mid = 0.5 * (tg.node(m - 1) + tg.node(m));
      const double off = 0.5 * dt / std::sqrt(3.0);
      integrand_at(u1, u2, u3, mid - off, s1, s2, s3, g_curr);
      for (std::size_t i = 0; i < accum.coeff.size(); ++i)
        accum.coeff[i] += 0.5 * dt * g_curr.coeff[i];
      integrand_at(u1, u2, u3, mid + off, s1, s2, s3, g_curr);
      for (std::size_t i = 0; i < accum.coeff.size(); ++i)
        accum.coeff[i] += 0.5 * dt * g_curr.coeff[i];
    }
    apply_phase(accum, tg.node(m), out.node(m));
    out.node(m) *= minus_i;
  }
  return out;
}

FieldTrajectory duhamel_trilinear(const FieldTrajectory& u1, const FieldTrajectory& u2,
                                  const FieldTrajectory& u3, const TimeGrid& tg,
                                  Quadrature quad) {
  if (u1.time_grid != tg || u2.time_grid != tg || u3.time_grid != tg)
    throw std::invalid_argument("duhamel_trilinear: trajectory time grids must match");
  SampledTrajectory v1(u1), v2(u2), v3(u3);
  return duhamel_trilinear(v1, v2, v3, tg, quad);
}

double split_step_phase_increment(const SpectralField& u0, const TimeGrid& tg) {
  std::vector<complexd> phys = fft::inverse_transform(u0);
  double mx = 0.0;
  for (const auto& v : phys) mx = std::max(mx, std::norm(v));
  return tg.dt() * mx;
}

FieldTrajectory split_step_reference(const SpectralField& u0, const TimeGrid& tg,
                                     bool include_cubic) {
  const GridSpec& grid = u0.grid;
  FieldTrajectory out(grid, tg);
  out.node(0) = u0;

  // splitting conserves mass exactly, so blow-up shows up in H^1
  const double h1_initial = sobolev_norm(u0, 1.0);
  const double dt = tg.dt();
  PropagatorCache cache(grid);
  const std::vector<complexd>& half = cache.multiplier(0.5 * dt);

  SpectralField u = u0;
  std::vector<complexd> phys(grid.point_count());
  for (int m = 1; m < tg.node_count; ++m) {
    kernels::multiply(u.coeff.data(), half.data(), u.coeff.data(), u.coeff.size());
    if (include_cubic) {
      phys = fft::inverse_transform(u);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
      for (long long i = 0; i < static_cast<long long>(phys.size()); ++i) {
        const double a = -dt * std::norm(phys[i]);
        phys[i] *= complexd(std::cos(a), std::sin(a));
      }
      u = fft::forward_transform(phys, grid);
    }
    kernels::multiply(u.coeff.data(), half.data(), u.coeff.data(), u.coeff.size());
    out.node(m) = u;
    const double h1 = sobolev_norm(u, 1.0);
    if (!std::isfinite(h1) || (h1_initial > 0.0 && h1 > 1e6 * h1_initial))
      throw std::runtime_error("split_step_reference: blow-up detected at t = " +
                               std::to_string(tg.node(m)));
  }
  return out;
}

}  // namespace randwave
