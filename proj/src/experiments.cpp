#include "randwave/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "randwave/fft.hpp"
#include "randwave/kernels.hpp"
#include "randwave/ops.hpp"

namespace randwave {

SpectralField make_power_profile_data(const GridSpec& grid, double decay, int band_index) {
  if (band_index < 1 || band_index > grid.points_per_axis / 2)
    throw std::invalid_argument("make_power_profile_data: band outside the lattice");
  SpectralField f(grid);
  const int m = grid.points_per_axis;

  // annulus of |xi|: A_N = (N/2, N], A_1 = (0, 1]; zero mode left empty
  auto annulus_of = [](double r) {
    int n = 1;
    while (r > n) n <<= 1;
    return n;
  };

  std::map<int, double> mass;  // annulus -> sum |c|^2 with unit values
  for (int ix = 0; ix < m; ++ix) {
    if (std::abs(grid.signed_index(ix)) > band_index) continue;
    const double fx = grid.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      if (std::abs(grid.signed_index(iy)) > band_index) continue;
      const double fy = grid.freq_component(iy);
      for (int iz = 0; iz < m; ++iz) {
        if (std::abs(grid.signed_index(iz)) > band_index) continue;
        const double fz = grid.freq_component(iz);
        const double r = std::sqrt(fx * fx + fy * fy + fz * fz);
        if (r == 0.0) continue;
        mass[annulus_of(r)] += 1.0;
      }
    }
  }
  std::map<int, double> value;  // annulus -> mode magnitude
  for (const auto& [n, cnt] : mass) {
    const double target = std::pow(static_cast<double>(n), -decay);  // annulus L^2 mass
    value[n] = target / std::sqrt(cnt * grid.freq_cell_volume());
  }
  for (int ix = 0; ix < m; ++ix) {
    if (std::abs(grid.signed_index(ix)) > band_index) continue;
    const double fx = grid.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      if (std::abs(grid.signed_index(iy)) > band_index) continue;
      const double fy = grid.freq_component(iy);
      for (int iz = 0; iz < m; ++iz) {
        if (std::abs(grid.signed_index(iz)) > band_index) continue;
        const double fz = grid.freq_component(iz);
        const double r = std::sqrt(fx * fx + fy * fy + fz * fz);
        if (r == 0.0) continue;
        f.at(ix, iy, iz) = value[annulus_of(r)];
      }
    }
  }
  return f;
}

SpectralField make_gaussian_bump(const GridSpec& grid, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("make_gaussian_bump: width must be positive");
  SpectralField f(grid);
  const int m = grid.points_per_axis;
  const double inv2w2 = 1.0 / (2.0 * width * width);
  for (int ix = 0; ix < m; ++ix) {
    const double fx = grid.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      const double fy = grid.freq_component(iy);
      for (int iz = 0; iz < m; ++iz) {
        const double fz = grid.freq_component(iz);
        f.at(ix, iy, iz) = std::exp(-(fx * fx + fy * fy + fz * fz) * inv2w2);
      }
    }
  }
  return f;
}

// --- smoothing ---------------------------------------------------------------

SmoothingResult smoothing_experiment(const EnsembleSpec& ens, const SmoothingConfig& cfg) {
  const double t_eval = cfg.t_eval > 0.0 ? cfg.t_eval : cfg.time_grid.horizon;
  const SpectralField phi =
      make_power_profile_data(cfg.grid, cfg.s + cfg.delta, cfg.band_index);

  SmoothingResult res;
  const int top_block = max_dyadic_block(cfg.grid);
  for (int n = 1; n <= top_block; n <<= 1) res.blocks.push_back(n);

  std::map<int, std::vector<std::vector<double>>> samples;  // order -> member -> blocks
  for (int i = 0; i < ens.count; ++i) {
    const SpectralField phi_omega =
        wiener_randomize(phi, cfg.window, ens.law, ens.member_seed(i));
    const TowerCapture cap = run_zeta_tower_capture(phi_omega, cfg.time_grid, cfg.k_max,
                                                    t_eval, cfg.quadrature);
    for (std::size_t o = 0; o < cap.orders.size(); ++o) {
      const DyadicProfile prof = dyadic_profile(cap.fields_at_capture[o], 0.0);
      std::vector<double> row;
      for (int n : res.blocks) row.push_back(prof.values.at(n));
      samples[cap.orders[o]].push_back(std::move(row));
    }
  }

  for (auto& [order, rows] : samples) {
    std::vector<double>& med = res.median_profile[order];
    for (std::size_t b = 0; b < res.blocks.size(); ++b) {
      std::vector<double> col;
      col.reserve(rows.size());
      for (const auto& row : rows) col.push_back(row[b]);
      med.push_back(median(std::move(col)));
    }
    std::vector<double> xs, ys;
    for (std::size_t b = 0; b < res.blocks.size(); ++b) {
      const int n = res.blocks[b];
      if (n >= cfg.fit_n_min && n <= cfg.fit_n_max && med[b] > 0.0) {
        xs.push_back(n);
        ys.push_back(med[b]);
      }
    }
    if (xs.size() < 3)
      throw std::runtime_error("smoothing_experiment: fewer than 3 usable dyadic blocks");
    res.fits[order] = fit_loglog(xs, ys);
  }
  return res;
}

FitResult smoothing_fit(const EnsembleSpec& ens, const SmoothingConfig& cfg, int order) {
  SmoothingConfig c = cfg;
  c.k_max = (order + 1) / 2;
  return smoothing_experiment(ens, c).fits.at(order);
}

// --- tails ---------------------------------------------------------------------

namespace {

double linear_spacetime_norm(const SpectralField& phi_omega, const TimeGrid& tg, double q,
                             double r) {
  const int nt = tg.node_count;
  std::vector<double> vals(nt);
  SpectralField u(phi_omega.grid);
  for (int m = 0; m < nt; ++m) {
    u = phi_omega;
    evolve_linear_in_place(u, tg.node(m));
    vals[m] = lebesgue_norm(u, r);
  }
  if (std::isinf(q)) return *std::max_element(vals.begin(), vals.end());
  const double dt = tg.dt();
  double acc = 0.0;
  for (int m = 1; m < nt; ++m)
    acc += 0.5 * dt * (std::pow(vals[m - 1], q) + std::pow(vals[m], q));
  return std::pow(acc, 1.0 / q);
}

std::vector<double> quantile_lambda_grid(std::vector<double> samples, int count) {
  std::sort(samples.begin(), samples.end());
  std::vector<double> grid;
  const double lo = samples[samples.size() / 2];                       // median
  const double hi = samples[samples.size() - 1 - samples.size() / 50];  // ~98th pct
  for (int i = 0; i < count; ++i)
    grid.push_back(lo + (hi - lo) * i / std::max(1, count - 1));
  return grid;
}

}  // namespace

std::pair<TailCurve, FitResult> strichartz_tail(const EnsembleSpec& ens,
                                                const SpectralField& phi,
                                                const TailConfig& cfg) {
  if (!(cfg.q >= 2.0) || std::isinf(cfg.q) || !(cfg.r >= 2.0) || std::isinf(cfg.r))
    throw std::invalid_argument("strichartz_tail: need finite q >= 2 and 2 <= r < inf");
  if (ens.count < 50)
    throw std::invalid_argument("strichartz_tail: ensemble below 50 rejected for fitting");

  std::vector<double> samples(ens.count);
  for (int i = 0; i < ens.count; ++i) {
    const SpectralField phi_omega =
        wiener_randomize(phi, cfg.window, ens.law, ens.member_seed(i));
    samples[i] = linear_spacetime_norm(phi_omega, cfg.time_grid, cfg.q, cfg.r);
  }
  const std::vector<double> lambdas =
      cfg.lambdas.empty() ? quantile_lambda_grid(samples, 12) : cfg.lambdas;
  TailCurve curve = tail_curve(samples, lambdas);
  FitResult fit = tail_gaussian_fit(curve);
  return {std::move(curve), fit};
}

TailCurve hs_tail(const EnsembleSpec& ens, const SpectralField& phi, double s,
                  const std::vector<double>& lambdas, const WindowSpec& window) {
  std::vector<double> samples(ens.count);
  for (int i = 0; i < ens.count; ++i)
    samples[i] =
        sobolev_norm(wiener_randomize(phi, window, ens.law, ens.member_seed(i)), s);
  const std::vector<double> grid =
      lambdas.empty() ? quantile_lambda_grid(samples, 12) : lambdas;
  return tail_curve(samples, grid);
}

bool admissible_check(double q, double r) {
  if (!(q >= 2.0) || !(r >= 2.0)) return false;
  const double lhs = (std::isinf(q) ? 0.0 : 2.0 / q) + (std::isinf(r) ? 0.0 : 3.0 / r);
  return std::fabs(lhs - 1.5) <= 1e-12;
}

// --- dispersive decay -------------------------------------------------------------

DispersiveResult dispersive_decay(const SpectralField& f, const std::vector<double>& ts,
                                  double r) {
  if (!(r >= 2.0)) throw std::invalid_argument("dispersive_decay: r must be >= 2");
  const GridSpec& g = f.grid;

  // radius holding 99.5% of the L^2 mass, for the wrap-around speed bound
  std::vector<std::pair<double, double>> radial;  // (|xi|, |c|^2)
  const int m = g.points_per_axis;
  double total = 0.0;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy)
      for (int iz = 0; iz < m; ++iz) {
        const double w = std::norm(f.at(ix, iy, iz));
        if (w == 0.0) continue;
        const double fx = g.freq_component(ix), fy = g.freq_component(iy),
                     fz = g.freq_component(iz);
        radial.emplace_back(std::sqrt(fx * fx + fy * fy + fz * fz), w);
        total += w;
      }
  std::sort(radial.begin(), radial.end());
  double acc = 0.0, xi_eff = 0.0;
  for (const auto& [rad, w] : radial) {
    acc += w;
    xi_eff = rad;
    if (acc >= 0.995 * total) break;
  }
  xi_eff = std::max(xi_eff, 1e-6);

  DispersiveResult out;
  const double dx = g.box_period() / g.points_per_axis;
  out.window_lo = 2.0 * dx;
  out.window_hi = g.box_period() / (4.0 * 2.0 * xi_eff);

  SpectralField u(g);
  for (double t : ts) {
    if (t < out.window_lo || t > out.window_hi) continue;
    u = f;
    evolve_linear_in_place(u, t);
    out.times.push_back(t);
    out.norms.push_back(lebesgue_norm(u, r));
  }
  if (out.times.size() < 2)
    throw std::invalid_argument("dispersive_decay: no sample times in the valid window");
  out.fit = fit_loglog(out.times, out.norms);
  return out;
}

// --- bilinear ------------------------------------------------------------------------

BilinearPoint bilinearOne(const SpectralField& p1, const SpectralField& p2, int n1, int n2,
                          double T, int nodes) {
  const GridSpec& g = p1.grid;
  const TimeGrid tg(T, nodes);
  std::vector<double> l2prod(nodes);
  SpectralField u1(g), u2(g);
  std::vector<complexd> w1, w2;
  for (int m = 0; m < nodes; ++m) {
    u1 = p1;
    evolve_linear_in_place(u1, tg.node(m));
    u2 = p2;
    evolve_linear_in_place(u2, tg.node(m));
    w1 = fft::inverse_transform(u1);
    w2 = fft::inverse_transform(u2);
    std::vector<double> terms(w1.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(w1.size()); ++i)
      terms[i] = std::norm(w1[i] * w2[i]);
    l2prod[m] = kernels::deterministic_sum(terms) * g.cell_volume();
  }
  double acc = 0.0;
  for (int m = 1; m < nodes; ++m) acc += 0.5 * tg.dt() * (l2prod[m - 1] + l2prod[m]);
  BilinearPoint pt;
  pt.n2 = n2;
  pt.observed = std::sqrt(acc);
  pt.ratio = pt.observed / (n1 * std::pow(static_cast<double>(n2), -0.5));
  return pt;
}

BilinearPoint bilinear_strichartz(const SpectralField& phi1, const SpectralField& phi2,
                                  int n1, int n2, double T, int time_nodes) {
  if (phi1.grid != phi2.grid) throw std::invalid_argument("bilinear: grid mismatch");
  if (n1 > n2) throw std::invalid_argument("bilinear: need N1 <= N2");
  if (n2 > phi1.grid.max_freq() / 2.0)
    throw std::invalid_argument("bilinear: N2 above Nyquist/2");

  SpectralField p1 = littlewood_paley(phi1, n1);
  SpectralField p2 = littlewood_paley(phi2, n2);
  const double l1 = sobolev_norm(p1, 0.0), l2 = sobolev_norm(p2, 0.0);
  if (l1 == 0.0 || l2 == 0.0) {
    BilinearPoint zero;
    zero.n2 = n2;
    return zero;
  }
  p1 *= complexd(1.0 / l1);
  p2 *= complexd(1.0 / l2);
  return bilinearOne(p1, p2, n1, n2, T, time_nodes);
}

FitResult bilinear_sweep_fit(const std::vector<BilinearPoint>& points) {
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.n2);
    ys.push_back(p.observed);
  }
  return fit_loglog(xs, ys);
}

std::pair<SpectralField, SpectralField> make_tube_pair(const GridSpec& grid, int n1, int n2) {
  SpectralField a(grid), b(grid);
  const int m = grid.points_per_axis;
  for (int ix = 0; ix < m; ++ix) {
    const double fx = grid.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      const double fy = grid.freq_component(iy);
      for (int iz = 0; iz < m; ++iz) {
        const double fz = grid.freq_component(iz);
        const double perp = std::sqrt(fy * fy + fz * fz);
        if (perp > 0.45 * n1) continue;
        if (std::fabs(fx) <= n1) a.at(ix, iy, iz) = 1.0;
        if (fx > 0.55 * n2 && fx <= 1.45 * n2) b.at(ix, iy, iz) = 1.0;
      }
    }
  }
  return {std::move(a), std::move(b)};
}

// --- integrability gain -------------------------------------------------------------

GainResult integrability_gain(const EnsembleSpec& ens, const GainConfig& cfg) {
  if (cfg.k < 2 || cfg.k > 5)
    throw std::invalid_argument("integrability_gain: k must lie in {2,...,5}");
  const bool n_mode = cfg.r >= 6.0;
  if (n_mode && cfg.n_sweep.empty())
    throw std::invalid_argument("integrability_gain: r >= 6 needs an N sweep");
  if (!n_mode && cfg.t_sweep.empty())
    throw std::invalid_argument("integrability_gain: r < 6 needs a T sweep");

  const SpectralField phi = make_power_profile_data(cfg.grid, cfg.s, cfg.band_index);
  const TimeGrid& tg = cfg.time_grid;
  const double dt = tg.dt();

  // precompute the block weights for the N sweep
  std::vector<std::vector<double>> weights;
  if (n_mode) {
    const int m = cfg.grid.points_per_axis;
    for (int n : cfg.n_sweep) {
      std::vector<double> w(cfg.grid.point_count());
      for (int ix = 0; ix < m; ++ix) {
        const double fx = cfg.grid.freq_component(ix);
        for (int iy = 0; iy < m; ++iy) {
          const double fy = cfg.grid.freq_component(iy);
          for (int iz = 0; iz < m; ++iz) {
            const double fz = cfg.grid.freq_component(iz);
            w[cfg.grid.flat_index(ix, iy, iz)] =
                lp_eta_block(std::sqrt(fx * fx + fy * fy + fz * fz), n);
          }
        }
      }
      weights.push_back(std::move(w));
    }
  }
  std::vector<int> t_nodes;
  if (!n_mode) {
    for (double T : cfg.t_sweep) {
      const int node = static_cast<int>(std::lround(T / dt));
      if (node < 1 || node >= tg.node_count || std::fabs(tg.node(node) - T) > 0.25 * dt)
        throw std::invalid_argument("integrability_gain: T sweep off the node lattice");
      t_nodes.push_back(node);
    }
  }

  const std::size_t nabs = n_mode ? cfg.n_sweep.size() : cfg.t_sweep.size();
  std::vector<std::vector<double>> per_member(nabs);

  SpectralField proj(cfg.grid);
  for (int i = 0; i < ens.count; ++i) {
    const SpectralField phi_omega =
        wiener_randomize(phi, cfg.window, ens.law, ens.member_seed(i));
    if (n_mode) {
      // accumulate the full-horizon L^q integral of each block norm
      std::vector<double> integral(nabs, 0.0), prev(nabs, 0.0);
      run_tower_stream(
          phi_omega, tg, cfg.k, ExpansionVariant::UnbalancedZeta, Quadrature::Trapezoid,
          [&](int mnode, const std::vector<SpectralField>& fields) {
            const SpectralField& term = fields[cfg.k - 1];
            for (std::size_t j = 0; j < nabs; ++j) {
              proj.grid = term.grid;
              proj.coeff.resize(term.coeff.size());
              for (std::size_t c = 0; c < term.coeff.size(); ++c)
                proj.coeff[c] = weights[j][c] * term.coeff[c];
              const double v = std::pow(lebesgue_norm(proj, cfg.r), cfg.q);
              if (mnode > 0) integral[j] += 0.5 * dt * (prev[j] + v);
              prev[j] = v;
            }
          });
      for (std::size_t j = 0; j < nabs; ++j)
        per_member[j].push_back(std::pow(integral[j], 1.0 / cfg.q));
    } else {
      std::vector<double> integral(1, 0.0);
      double prev = 0.0;
      std::vector<double> at_T(nabs, 0.0);
      run_tower_stream(
          phi_omega, tg, cfg.k, ExpansionVariant::UnbalancedZeta, Quadrature::Trapezoid,
          [&](int mnode, const std::vector<SpectralField>& fields) {
            const double v = std::pow(lebesgue_norm(fields[cfg.k - 1], cfg.r), cfg.q);
            if (mnode > 0) integral[0] += 0.5 * dt * (prev + v);
            prev = v;
            for (std::size_t j = 0; j < nabs; ++j)
              if (t_nodes[j] == mnode) at_T[j] = std::pow(integral[0], 1.0 / cfg.q);
          });
      for (std::size_t j = 0; j < nabs; ++j) per_member[j].push_back(at_T[j]);
    }
  }

  GainResult out;
  out.predicted_slope = n_mode ? 0.5 - 3.0 / cfg.r : 3.0 / cfg.r - 0.5;
  for (std::size_t j = 0; j < nabs; ++j) {
    out.abscissa.push_back(n_mode ? static_cast<double>(cfg.n_sweep[j]) : cfg.t_sweep[j]);
    out.median_norm.push_back(median(per_member[j]));
  }
  out.fit = fit_loglog(out.abscissa, out.median_norm);
  return out;
}

}  // namespace randwave
