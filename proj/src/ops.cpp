#include "randwave/ops.hpp"

#include <algorithm>
#include <cmath>

#include "randwave/fft.hpp"
#include "randwave/kernels.hpp"

namespace randwave {

double lp_eta(double x) {
  const double a = 1.25, b = 1.6;
  const double ax = std::fabs(x);
  if (ax <= a) return 1.0;
  if (ax >= b) return 0.0;
  const double u = (ax - a) / (b - a);
  const double q = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));  // C^2 smoothstep
  return 1.0 - q;
}

double lp_eta_block(double abs_xi, int n_block) {
  if (n_block == 1) return lp_eta(abs_xi);
  return lp_eta(abs_xi / n_block) - lp_eta(2.0 * abs_xi / n_block);
}

int max_dyadic_block(const GridSpec& grid) {
  const double top = grid.max_freq() * std::sqrt(3.0);
  int n = 1;
  while (1.25 * n < top) n <<= 1;  // eta(|xi|/n) == 1 on the whole lattice
  return n;
}

void apply_dealias_mask(SpectralField& f) {
  const GridSpec& g = f.grid;
  const int band = g.dealias_band();
  const int m = g.points_per_axis;
  for (int ix = 0; ix < m; ++ix) {
    const bool kx = std::abs(g.signed_index(ix)) <= band;
    for (int iy = 0; iy < m; ++iy) {
      const bool ky = kx && std::abs(g.signed_index(iy)) <= band;
      for (int iz = 0; iz < m; ++iz) {
        if (!ky || std::abs(g.signed_index(iz)) > band) f.at(ix, iy, iz) = complexd(0.0);
      }
    }
  }
}

SpectralField pointwise_cubic(const SpectralField& u) {
  std::vector<complexd> phys = fft::inverse_transform(u);
  kernels::cubic(phys.data(), phys.data(), phys.size());
  SpectralField out = fft::forward_transform(phys, u.grid);
  apply_dealias_mask(out);
  return out;
}

SpectralField product_conj2(const SpectralField& a, const SpectralField& b,
                            const SpectralField& c) {
  if (a.grid != b.grid || a.grid != c.grid)
    throw std::invalid_argument("product_conj2: grid mismatch");
  std::vector<complexd> pa = fft::inverse_transform(a);
  std::vector<complexd> pb = fft::inverse_transform(b);
  std::vector<complexd> pc = fft::inverse_transform(c);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(pa.size()); ++i)
    pa[i] = pa[i] * std::conj(pb[i]) * pc[i];
  SpectralField out = fft::forward_transform(pa, a.grid);
  apply_dealias_mask(out);
  return out;
}

SpectralField littlewood_paley(const SpectralField& f, int n_block) {
  if (n_block < 1 || (n_block & (n_block - 1)) != 0)
    throw std::invalid_argument("littlewood_paley: N must be a dyadic integer >= 1");
  const GridSpec& g = f.grid;
  SpectralField out(g);
  const int m = g.points_per_axis;
  for (int ix = 0; ix < m; ++ix) {
    const double fx = g.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      const double fy = g.freq_component(iy);
      const double fxy = fx * fx + fy * fy;
      for (int iz = 0; iz < m; ++iz) {
        const double fz = g.freq_component(iz);
        const double w = lp_eta_block(std::sqrt(fxy + fz * fz), n_block);
        if (w != 0.0) out.at(ix, iy, iz) = w * f.at(ix, iy, iz);
      }
    }
  }
  return out;
}

namespace {

// sum over modes of weight(|xi|^2) * |c|^2, via the deterministic reduction
template <typename WeightFn>
double weighted_mode_sum(const SpectralField& f, WeightFn&& weight) {
  const GridSpec& g = f.grid;
  const int m = g.points_per_axis;
  std::vector<double> terms(g.point_count());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (int ix = 0; ix < m; ++ix) {
    const double fx = g.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      const double fy = g.freq_component(iy);
      const double fxy = fx * fx + fy * fy;
      for (int iz = 0; iz < m; ++iz) {
        const double fz = g.freq_component(iz);
        const std::size_t idx = g.flat_index(ix, iy, iz);
        terms[idx] = weight(fxy + fz * fz) * std::norm(f.coeff[idx]);
      }
    }
  }
  return kernels::deterministic_sum(terms);
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  if (!std::isfinite(s)) throw std::invalid_argument("sobolev_norm: s must be finite");
  const double sum = weighted_mode_sum(
      f, [s](double xi2) { return std::pow(1.0 + xi2, s); });
  return std::sqrt(sum * f.grid.freq_cell_volume());
}

double homogeneous_norm(const SpectralField& f, double s) {
  if (s < 0.0) {
    const complexd mean = f.coeff[f.grid.flat_index(0, 0, 0)];
    if (std::abs(mean) > 0.0)
      throw std::invalid_argument(
          "homogeneous_norm: negative s with nonzero mean is degenerate");
  }
  const double sum = weighted_mode_sum(f, [s](double xi2) {
    if (xi2 == 0.0) return s > 0.0 ? 0.0 : (s == 0.0 ? 1.0 : 0.0);
    return std::pow(xi2, s);  // |xi|^{2s}
  });
  return std::sqrt(sum * f.grid.freq_cell_volume());
}

double lebesgue_norm(const std::vector<complexd>& physical, const GridSpec& grid, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("lebesgue_norm: r must be >= 1");
  if (std::isinf(r)) {
    double mx = 0.0;
    for (const auto& v : physical) mx = std::max(mx, std::abs(v));
    return mx;
  }
  std::vector<double> terms(physical.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(physical.size()); ++i)
    terms[i] = std::pow(std::abs(physical[i]), r);
  return std::pow(kernels::deterministic_sum(terms) * grid.cell_volume(), 1.0 / r);
}

double lebesgue_norm(const SpectralField& f, double r) {
  return lebesgue_norm(fft::inverse_transform(f), f.grid, r);
}

double spacetime_norm(const FieldTrajectory& traj, double q, double r, double T) {
  if (!(q >= 1.0) || !(r >= 1.0))
    throw std::invalid_argument("spacetime_norm: exponents must be >= 1");
  const TimeGrid& tg = traj.time_grid;
  const double eps = 1e-12 * tg.horizon;
  if (T > tg.horizon + eps)
    throw std::invalid_argument("spacetime_norm: T exceeds the trajectory horizon");
  const double dt = tg.dt();
  const int last_full = std::min<int>(tg.node_count - 1, static_cast<int>(std::floor(T / dt + eps)));

  std::vector<double> vals(last_full + 1);
  for (int mnode = 0; mnode <= last_full; ++mnode)
    vals[mnode] = lebesgue_norm(traj.node(mnode), r);

  if (std::isinf(q)) {
    double mx = 0.0;
    for (double v : vals) mx = std::max(mx, v);
    return mx;
  }
  double acc = 0.0;
  for (int mnode = 1; mnode <= last_full; ++mnode)
    acc += 0.5 * dt * (std::pow(vals[mnode - 1], q) + std::pow(vals[mnode], q));
  const double rem = T - last_full * dt;
  if (rem > eps && last_full + 1 < tg.node_count) {
    const double next = lebesgue_norm(traj.node(last_full + 1), r);
    const double theta = rem / dt;
    const double at_T = (1.0 - theta) * vals[last_full] + theta * next;
    acc += 0.5 * rem * (std::pow(vals[last_full], q) + std::pow(at_T, q));
  }
  return std::pow(acc, 1.0 / q);
}

DyadicProfile dyadic_profile(const SpectralField& f, double sigma) {
  DyadicProfile prof;
  const int top = max_dyadic_block(f.grid);
  for (int n = 1; n <= top; n <<= 1) {
    const SpectralField block = littlewood_paley(f, n);
    prof.values[n] = sobolev_norm(block, sigma);
  }
  return prof;
}

SpectralField scaling_transform(const SpectralField& f, int lambda) {
  if (lambda < 1 || (lambda & (lambda - 1)) != 0)
    throw std::invalid_argument("scaling_transform: lambda must be a power of two");
  if (lambda == 1) return f;
  const GridSpec& g = f.grid;
  const int m = g.points_per_axis;
  const int half = m / 2;
  SpectralField out(g);
  const double amp = 1.0 / std::sqrt(static_cast<double>(lambda));
  for (int ix = 0; ix < m; ++ix) {
    const int sx = g.signed_index(ix);
    for (int iy = 0; iy < m; ++iy) {
      const int sy = g.signed_index(iy);
      for (int iz = 0; iz < m; ++iz) {
        const complexd c = f.at(ix, iy, iz);
        if (c == complexd(0.0)) continue;
        const int sz = g.signed_index(iz);
        const int tx = sx * lambda, ty = sy * lambda, tz = sz * lambda;
        if (tx < -half || tx >= half || ty < -half || ty >= half || tz < -half || tz >= half)
          throw std::runtime_error("scaling_transform: dilated support exceeds the lattice");
        out.at((tx + m) % m, (ty + m) % m, (tz + m) % m) = amp * c;
      }
    }
  }
  return out;
}

double energy(const SpectralField& f) {
  const double grad2 = weighted_mode_sum(f, [](double xi2) { return xi2; }) *
                       f.grid.freq_cell_volume();
  std::vector<complexd> phys = fft::inverse_transform(f);
  std::vector<double> quart(phys.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(phys.size()); ++i) {
    const double a2 = std::norm(phys[i]);
    quart[i] = a2 * a2;
  }
  const double l4 = kernels::deterministic_sum(quart) * f.grid.cell_volume();
  return 0.5 * grad2 + 0.25 * l4;
}

}  // namespace randwave
