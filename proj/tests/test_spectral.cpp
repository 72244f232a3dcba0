#include <cmath>

#include "doctest.h"
#include "randwave/evolve.hpp"
#include "randwave/fft.hpp"
#include "randwave/fitting.hpp"
#include "randwave/kernels.hpp"
#include "randwave/ops.hpp"
#include "test_util.hpp"

using namespace randwave;
using testutil::plane_wave;
using testutil::random_field;

namespace {

// brute-force dealiased triple product oracle in stored coefficient units
SpectralField convolution_cubic_oracle(const SpectralField& u) {
  const GridSpec& g = u.grid;
  const int m = g.points_per_axis;
  const int half = m / 2;
  struct Mode {
    int x, y, z;
    complexd c;
  };
  std::vector<Mode> modes;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy)
      for (int iz = 0; iz < m; ++iz) {
        const complexd c = u.at(ix, iy, iz);
        if (c != complexd(0.0))
          modes.push_back({g.signed_index(ix), g.signed_index(iy), g.signed_index(iz), c});
      }
  const double scale = std::pow(kTwoPi, -3.0) * std::pow(g.freq_cell_volume(), 2.0);
  SpectralField out(g);
  const int band = g.dealias_band();
  for (const Mode& a : modes)
    for (const Mode& b : modes)
      for (const Mode& c : modes) {
        const int x = a.x - b.x + c.x, y = a.y - b.y + c.y, z = a.z - b.z + c.z;
        if (std::abs(x) > band || std::abs(y) > band || std::abs(z) > band) continue;
        if (x < -half || x >= half || y < -half || y >= half || z < -half || z >= half)
          continue;
        out.at((x + m) % m, (y + m) % m, (z + m) % m) +=
            scale * a.c * std::conj(b.c) * c.c;
      }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec(12, 1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 1, 1.5), std::invalid_argument);
  const GridSpec g(16, 2);
  CHECK(g.max_freq() == doctest::Approx(4.0));
  CHECK(g.dealias_band() == 5);
}

TEST_CASE("plane wave transforms to a single coefficient") {
  const GridSpec g(16, 2);
  const SpectralField f = plane_wave(g, complexd(0.7, -0.2), {3, -2, 1});
  int nonzero = 0;
  for (const auto& c : f.coeff)
    if (std::abs(c) > 1e-10) ++nonzero;
  CHECK(nonzero == 1);
  const complexd c = f.at(3, (16 - 2) % 16, 1);
  const complexd expected = std::pow(kTwoPi, -1.5) * g.box_volume() * complexd(0.7, -0.2);
  CHECK(std::abs(c - expected) < 1e-9 * std::abs(expected));
}

TEST_CASE("constant field occupies only the zero mode") {
  const GridSpec g(8, 1);
  std::vector<complexd> phys(g.point_count(), complexd(2.0, 1.0));
  const SpectralField f = fft::forward_transform(phys, g);
  for (int ix = 0; ix < 8; ++ix)
    for (int iy = 0; iy < 8; ++iy)
      for (int iz = 0; iz < 8; ++iz)
        if (ix || iy || iz) CHECK(std::abs(f.at(ix, iy, iz)) < 1e-12);
  CHECK(std::abs(f.at(0, 0, 0)) > 0.0);
}

TEST_CASE("fast transform matches the brute-force DFT at M = 8") {
  const GridSpec g(8, 1);
  std::vector<complexd> phys(g.point_count());
  RandomStream st(7);
  for (auto& v : phys) v = complexd(st.next_unit() - 0.5, st.next_unit() - 0.5);

  const SpectralField fast = fft::forward_transform(phys, g);
  const SpectralField slow = fft::reference_forward(phys, g);
  CHECK(max_coeff_diff(fast, slow) < 1e-12);

  const std::vector<complexd> round = fft::inverse_transform(fast);
  double worst = 0.0;
  for (std::size_t i = 0; i < phys.size(); ++i)
    worst = std::max(worst, std::abs(round[i] - phys[i]));
  CHECK(worst < 1e-12);

  const std::vector<complexd> slow_round = fft::reference_inverse(fast);
  worst = 0.0;
  for (std::size_t i = 0; i < phys.size(); ++i)
    worst = std::max(worst, std::abs(slow_round[i] - round[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("parallel transform and reduction are bit-identical to serial") {
  const GridSpec g(32, 1);
  const SpectralField f = random_field(g, 3);
  std::vector<complexd> a = f.coeff, b = f.coeff;
  fft::transform3_serial(a.data(), 32, false);
  fft::transform3(b.data(), 32, false);
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i] == b[i];
  CHECK(same);

  std::vector<double> mags(f.coeff.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::norm(f.coeff[i]);
  CHECK(kernels::deterministic_sum(mags) ==
        kernels::deterministic_sum_serial(mags.data(), mags.size()));
}

TEST_CASE("cubic nonlinearity: constants and single modes") {
  const GridSpec g(8, 1);
  std::vector<complexd> phys(g.point_count(), complexd(1.5, -0.5));
  const SpectralField u = fft::forward_transform(phys, g);
  const SpectralField cubed = pointwise_cubic(u);
  const complexd c(1.5, -0.5);
  const complexd expect = std::norm(c) * c;
  const std::vector<complexd> back = fft::inverse_transform(cubed);
  for (const auto& v : back) CHECK(std::abs(v - expect) < 1e-12);

  const complexd a(0.8, 0.3);
  const SpectralField mode = plane_wave(g, a, {1, 0, 2});
  const SpectralField mode3 = pointwise_cubic(mode);
  const std::vector<complexd> mphys = fft::inverse_transform(mode3);
  const std::vector<complexd> orig = fft::inverse_transform(mode);
  for (std::size_t i = 0; i < mphys.size(); ++i)
    CHECK(std::abs(mphys[i] - std::norm(a) * orig[i]) < 1e-12);
}

TEST_CASE("cubic equals brute-force convolution inside the safe band, M = 8") {
  const GridSpec g(8, 1);
  CHECK(g.cubic_safe_band() >= 1);
  SpectralField u = random_field(g, 11, g.cubic_safe_band());
  const SpectralField fast = pointwise_cubic(u);
  const SpectralField slow = convolution_cubic_oracle(u);
  double scale = 0.0;
  for (const auto& c : slow.coeff) scale = std::max(scale, std::abs(c));
  CHECK(max_coeff_diff(fast, slow) < 1e-12 * scale);

  // two-mode field, the spec's explicit instance
  SpectralField two(g);
  two.at(1, 0, 0) = complexd(1.0, 0.5);
  two.at(0, 7, 1) = complexd(-0.3, 0.8);
  CHECK(max_coeff_diff(pointwise_cubic(two), convolution_cubic_oracle(two)) < 1e-12);
}

TEST_CASE("littlewood-paley blocks telescope to the identity") {
  const GridSpec g(16, 1);
  const SpectralField f = random_field(g, 5);
  SpectralField sum(g);
  for (int n = 1; n <= max_dyadic_block(g); n <<= 1) sum += littlewood_paley(f, n);
  CHECK(max_coeff_diff(sum, f) < 1e-14);

  // |xi| = 1 is fully inside the N = 1 block
  CHECK(lp_eta(1.0) == 1.0);
  const SpectralField mode = plane_wave(g, complexd(1.0), {1, 0, 0});
  CHECK(max_coeff_diff(littlewood_paley(mode, 1), mode) < 1e-12);
  CHECK(sobolev_norm(littlewood_paley(mode, 2), 0.0) < 1e-12);
}

TEST_CASE("littlewood-paley profile of a <xi>^-2 symbol decays like N^-1/2") {
  const GridSpec g(64, 1);
  SpectralField f(g);
  for (int ix = 0; ix < 64; ++ix)
    for (int iy = 0; iy < 64; ++iy)
      for (int iz = 0; iz < 64; ++iz) {
        const double fx = g.freq_component(ix), fy = g.freq_component(iy),
                     fz = g.freq_component(iz);
        f.at(ix, iy, iz) = 1.0 / (1.0 + fx * fx + fy * fy + fz * fz);
      }
  const DyadicProfile prof = dyadic_profile(f, 0.0);
  std::vector<double> ns, vals;
  for (int n : {4, 8, 16}) {
    ns.push_back(n);
    vals.push_back(prof.values.at(n));
  }
  const FitResult fit = fit_loglog(ns, vals);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.12));
}

TEST_CASE("sobolev norm: parseval, single modes, direct sum oracle") {
  const GridSpec g(8, 2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SpectralField f = random_field(g, seed);
    const std::vector<complexd> phys = fft::inverse_transform(f);
    double quad = 0.0;
    for (const auto& v : phys) quad += std::norm(v);
    quad *= g.cell_volume();
    CHECK(testutil::rel_diff(sobolev_norm(f, 0.0) * sobolev_norm(f, 0.0), quad) < 1e-10);
  }

  const complexd a(0.4, 0.9);
  const SpectralField mode = plane_wave(g, a, {2, -1, 1});
  const double xi2 = (4.0 + 1.0 + 1.0) / 4.0;  // (m/R)^2 with R = 2
  const double expect = std::abs(a) * std::pow(1.0 + xi2, 0.35) * std::sqrt(g.box_volume());
  CHECK(testutil::rel_diff(sobolev_norm(mode, 0.7), expect) < 1e-10);

  // direct weighted sum on M = 8
  const SpectralField f = random_field(g, 77);
  double direct = 0.0;
  for (int ix = 0; ix < 8; ++ix)
    for (int iy = 0; iy < 8; ++iy)
      for (int iz = 0; iz < 8; ++iz) {
        const double fx = g.freq_component(ix), fy = g.freq_component(iy),
                     fz = g.freq_component(iz);
        direct += std::pow(1.0 + fx * fx + fy * fy + fz * fz, 0.31) *
                  std::norm(f.at(ix, iy, iz));
      }
  direct = std::sqrt(direct * g.freq_cell_volume());
  CHECK(testutil::rel_diff(sobolev_norm(f, 0.31), direct) < 1e-12);
}

TEST_CASE("homogeneous norm rejects negative s with nonzero mean") {
  const GridSpec g(8, 1);
  SpectralField f(g);
  f.at(0, 0, 0) = complexd(1.0);
  CHECK_THROWS_AS(homogeneous_norm(f, -0.5), std::invalid_argument);
  f.at(0, 0, 0) = complexd(0.0);
  f.at(1, 0, 0) = complexd(1.0);
  CHECK(homogeneous_norm(f, -0.5) > 0.0);
}

TEST_CASE("space-time norms: constants, conservation, refinement stability") {
  const GridSpec g(8, 1);
  const TimeGrid tg(2.0, 9);
  const complexd c(0.5, -1.0);
  std::vector<complexd> phys(g.point_count(), c);
  const SpectralField cf = fft::forward_transform(phys, g);
  FieldTrajectory traj(g, tg);
  for (int m = 0; m < tg.node_count; ++m) traj.node(m) = cf;
  const double got = spacetime_norm(traj, 4.0, 3.0, 2.0);
  const double expect =
      std::abs(c) * std::pow(2.0, 0.25) * std::pow(g.box_volume(), 1.0 / 3.0);
  CHECK(testutil::rel_diff(got, expect) < 1e-10);

  // q = inf, r = 2 on a linear solution is the conserved L^2 norm
  const SpectralField f = random_field(g, 9);
  FieldTrajectory lin(g, tg);
  for (int m = 0; m < tg.node_count; ++m) {
    lin.node(m) = f;
    evolve_linear_in_place(lin.node(m), tg.node(m));
  }
  const double inf2 = spacetime_norm(lin, std::numeric_limits<double>::infinity(), 2.0, 2.0);
  CHECK(testutil::rel_diff(inf2, sobolev_norm(f, 0.0)) < 1e-10);

  // refinement stability within 1%
  const TimeGrid fine(2.0, 17);
  FieldTrajectory linf(g, fine);
  for (int m = 0; m < fine.node_count; ++m) {
    linf.node(m) = f;
    evolve_linear_in_place(linf.node(m), fine.node(m));
  }
  const double coarse_val = spacetime_norm(lin, 4.0, 4.0, 2.0);
  const double fine_val = spacetime_norm(linf, 4.0, 4.0, 2.0);
  CHECK(testutil::rel_diff(coarse_val, fine_val) < 0.01);

  CHECK_THROWS_AS(spacetime_norm(lin, 4.0, 4.0, 3.0), std::invalid_argument);
}

TEST_CASE("dyadic profile l2-sum brackets the sobolev norm") {
  const GridSpec g(16, 1);
  const SpectralField f = random_field(g, 21);
  for (double sigma : {0.0, 0.6}) {
    const DyadicProfile prof = dyadic_profile(f, sigma);
    double l2 = 0.0;
    for (const auto& [n, v] : prof.values) l2 += v * v;
    l2 = std::sqrt(l2);
    const double norm = sobolev_norm(f, sigma);
    CHECK(l2 <= norm * (1.0 + 1e-10));
    CHECK(l2 >= norm / std::sqrt(2.0) * (1.0 - 1e-10));
  }
  const SpectralField zero(g);
  for (const auto& [n, v] : dyadic_profile(zero, 0.0).values) CHECK(v == 0.0);
}

TEST_CASE("scaling transform: identity, homogeneous invariance, L2 law") {
  const GridSpec g(32, 1);
  const SpectralField f = random_field(g, 31, 4);
  CHECK(max_coeff_diff(scaling_transform(f, 1), f) == 0.0);

  SpectralField nomean = f;
  nomean.at(0, 0, 0) = complexd(0.0);
  const SpectralField f2 = scaling_transform(nomean, 2);
  CHECK(testutil::rel_diff(homogeneous_norm(f2, 0.5), homogeneous_norm(nomean, 0.5)) < 1e-10);
  CHECK(testutil::rel_diff(sobolev_norm(f2, 0.0),
                           sobolev_norm(nomean, 0.0) / std::sqrt(2.0)) < 1e-10);

  const SpectralField wide = random_field(g, 33, 12);
  CHECK_THROWS_AS(scaling_transform(wide, 4), std::runtime_error);
}

TEST_CASE("energy: constants, single modes, direct quadrature at M = 8") {
  const GridSpec g(8, 1);
  const complexd c(1.2, -0.4);
  std::vector<complexd> phys(g.point_count(), c);
  const SpectralField cf = fft::forward_transform(phys, g);
  CHECK(testutil::rel_diff(energy(cf), 0.25 * std::pow(std::abs(c), 4.0) * g.box_volume()) <
        1e-10);

  const complexd a(0.9, 0.1);
  const SpectralField mode = plane_wave(g, a, {2, 1, 0});
  const double xi2 = 5.0;
  const double expect = 0.5 * xi2 * std::norm(a) * g.box_volume() +
                        0.25 * std::pow(std::abs(a), 4.0) * g.box_volume();
  CHECK(testutil::rel_diff(energy(mode), expect) < 1e-10);

  const SpectralField f = random_field(g, 55);
  const std::vector<complexd> fp = fft::inverse_transform(f);
  double grad = 0.0;
  for (int ix = 0; ix < 8; ++ix)
    for (int iy = 0; iy < 8; ++iy)
      for (int iz = 0; iz < 8; ++iz) {
        const double fx = g.freq_component(ix), fy = g.freq_component(iy),
                     fz = g.freq_component(iz);
        grad += (fx * fx + fy * fy + fz * fz) * std::norm(f.at(ix, iy, iz));
      }
  double quart = 0.0;
  for (const auto& v : fp) quart += std::pow(std::norm(v), 2.0);
  const double direct =
      0.5 * grad * g.freq_cell_volume() + 0.25 * quart * g.cell_volume();
  CHECK(testutil::rel_diff(energy(f), direct) < 1e-10);
}

TEST_CASE("snapshot round trip preserves header and payload") {
  const GridSpec g(8, 2);
  const SpectralField f = random_field(g, 101);
  const std::string path = "test_snapshot.rwv";
  save_snapshot(f, path);
  const SpectralField back = load_snapshot(path);
  CHECK(back.grid.points_per_axis == 8);
  CHECK(back.grid.oversampling == 2);
  CHECK(max_coeff_diff(f, back) == 0.0);
  std::remove(path.c_str());
}

TEST_SUITE_END();
