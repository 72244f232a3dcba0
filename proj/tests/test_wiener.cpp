#include <cmath>

#include "doctest.h"
#include "randwave/ops.hpp"
#include "randwave/wiener.hpp"
#include "test_util.hpp"

using namespace randwave;
using testutil::random_field;

TEST_SUITE_BEGIN("wiener");

TEST_CASE("window weights: values and partition of unity") {
  const WindowSpec sharp = WindowSpec::sharp();
  CHECK(window_weight({1.0, -2.0, 3.0}, {1, -2, 3}, sharp) == 1.0);

  const WindowSpec smooth = WindowSpec::smooth(0.25);
  const Vec3 xi{0.3, -0.7, 0.5};
  double sum = 0.0;
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dz = -1; dz <= 1; ++dz)
        sum += window_weight(xi, {0 + dx, -1 + dy, 0 + dz}, smooth);
  CHECK(std::fabs(sum - 1.0) <= 1e-12);

  // cube face midpoint splits evenly by symmetry
  CHECK(window_weight({0.5, 0.0, 0.0}, {0, 0, 0}, smooth) == doctest::Approx(0.5));
  CHECK(window_weight({0.5, 0.0, 0.0}, {1, 0, 0}, smooth) == doctest::Approx(0.5));
}

TEST_CASE("partition of unity holds at every lattice frequency") {
  const GridSpec g(16, 2);
  for (const WindowSpec& spec : {WindowSpec::sharp(), WindowSpec::smooth(0.3)}) {
    for (int ix = 0; ix < 16; ++ix)
      for (int iy = 0; iy < 16; ++iy) {
        const Vec3 xi{g.freq_component(ix), g.freq_component(iy), g.freq_component(3)};
        double sum = 0.0;
        for (int nx = -5; nx <= 5; ++nx)
          for (int ny = -5; ny <= 5; ++ny)
            for (int nz = -5; nz <= 5; ++nz) {
              if (std::fabs(xi[0] - nx) > 1.0 || std::fabs(xi[1] - ny) > 1.0 ||
                  std::fabs(xi[2] - nz) > 1.0)
                continue;
              sum += window_weight(xi, {nx, ny, nz}, spec);
            }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
      }
  }
}

TEST_CASE("sample_unit: moduli and moments") {
  RandomStream st(123);
  for (int i = 0; i < 100; ++i) {
    const complexd g = sample_unit(RandomLaw::uniform_circle(), st);
    CHECK(std::fabs(std::abs(g) - 1.0) <= 1e-15);
  }

  RandomStream gs(456);
  const int n = 100000;
  complexd mean(0.0);
  double second = 0.0;
  for (int i = 0; i < n; ++i) {
    const complexd g = sample_unit(RandomLaw::gaussian(), gs);
    mean += g;
    second += std::norm(g);
  }
  mean /= static_cast<double>(n);
  second /= n;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(second - 1.0) <= 0.05);
}

TEST_CASE("exponential moment bound on a kappa grid") {
  for (const RandomLaw& law : {RandomLaw::gaussian(), RandomLaw::uniform_circle()}) {
    for (double kx : {-2.0, -0.5, 0.5, 2.0})
      for (double ky : {-1.5, 0.0, 1.5}) {
        RandomStream st(789 + static_cast<std::uint64_t>(1000 + 100 * kx + 10 * ky));
        double acc = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
          const complexd g = sample_unit(law, st);
          acc += std::exp(kx * g.real() + ky * g.imag());
        }
        acc /= n;
        const double bound = std::exp(1.0 * (kx * kx + ky * ky));  // c = 1 with margin
        CHECK(acc <= bound);
      }
  }
}

TEST_CASE("constant-one law reproduces the input") {
  const GridSpec g(16, 2);
  const SpectralField phi = random_field(g, 2);
  const SpectralField out =
      wiener_randomize(phi, WindowSpec::sharp(), RandomLaw::constant_one(), 99);
  CHECK(max_coeff_diff(out, phi) == 0.0);
}

TEST_CASE("single-cube data picks up one common factor") {
  const GridSpec g(16, 2);  // lattice spacing 1/2
  SpectralField phi(g);
  phi.at(4, 0, 0) = complexd(1.0, 0.0);   // xi = (2, 0, 0)
  phi.at(5, 0, 0) = complexd(0.5, 0.5);   // xi = (2.5, 0, 0), same cube
  phi.at(4, 1, 0) = complexd(0.0, -1.0);  // xi = (2, 0.5, 0)
  const SpectralField out =
      wiener_randomize(phi, WindowSpec::sharp(), RandomLaw::gaussian(), 7);
  const complexd ratio = out.at(4, 0, 0) / phi.at(4, 0, 0);
  CHECK(std::abs(out.at(5, 0, 0) - ratio * phi.at(5, 0, 0)) < 1e-14);
  CHECK(std::abs(out.at(4, 1, 0) - ratio * phi.at(4, 1, 0)) < 1e-14);
}

TEST_CASE("randomization is reproducible bit for bit") {
  const GridSpec g(16, 2);
  const SpectralField phi = random_field(g, 5);
  const SpectralField a =
      wiener_randomize(phi, WindowSpec::smooth(0.2), RandomLaw::gaussian(), 31415);
  const SpectralField b =
      wiener_randomize(phi, WindowSpec::smooth(0.2), RandomLaw::gaussian(), 31415);
  CHECK(max_coeff_diff(a, b) == 0.0);
  const SpectralField c =
      wiener_randomize(phi, WindowSpec::smooth(0.2), RandomLaw::gaussian(), 31416);
  CHECK(max_coeff_diff(a, c) > 0.0);
}

TEST_CASE("uniform circle with sharp cubes preserves every weighted norm") {
  const GridSpec g(16, 2);
  const SpectralField phi = random_field(g, 8);
  const EnsembleSpec ens(RandomLaw::uniform_circle(), 2024, 5);
  for (int i = 0; i < ens.count; ++i) {
    const SpectralField pw =
        wiener_randomize(phi, WindowSpec::sharp(), ens.law, ens.member_seed(i));
    for (double s : {0.0, 0.3, 0.7})
      CHECK(testutil::rel_diff(sobolev_norm(pw, s), sobolev_norm(phi, s)) < 1e-12);
  }
}

TEST_CASE("gaussian law preserves the L2 norm in expectation") {
  const GridSpec g(8, 2);
  const SpectralField phi = random_field(g, 13);
  const double target = std::pow(sobolev_norm(phi, 0.0), 2.0);
  const EnsembleSpec ens(RandomLaw::gaussian(), 77, 1000);
  std::vector<double> vals(ens.count);
  for (int i = 0; i < ens.count; ++i) {
    const SpectralField pw =
        wiener_randomize(phi, WindowSpec::sharp(), ens.law, ens.member_seed(i));
    vals[i] = std::pow(sobolev_norm(pw, 0.0), 2.0);
  }
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= ens.count;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= (ens.count - 1);
  const double se = std::sqrt(var / ens.count);
  CHECK(std::fabs(mean - target) <= 3.0 * se);
}

TEST_SUITE_END();
