#include "randwave/wiener.hpp"

#include <cmath>

namespace randwave {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t EnsembleSpec::member_seed(int i) const {
  return mix64(master_seed ^ mix64(0x6D656D6265720000ULL + static_cast<std::uint64_t>(i)));
}

std::uint64_t RandomStream::next_u64() {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double RandomStream::next_unit() {
  // 53-bit mantissa into (0, 1]
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

RandomStream cube_stream(std::uint64_t member_seed, const std::array<int, 3>& n) {
  std::uint64_t h = member_seed;
  for (int c : n) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
  return RandomStream(h);
}

namespace {

// 1D window profile: 1 inside, C^2 quintic transition of half-width w around
// |y| = 1/2, with p(1/2 - t) + p(1/2 + t) = 1 so shifted copies telescope.
double bump1(double y, double w) {
  const double ay = std::fabs(y);
  if (ay <= 0.5 - w) return 1.0;
  if (ay >= 0.5 + w) return 0.0;
  const double u = (ay - (0.5 - w)) / (2.0 * w);
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double sharp1(double y) { return (y > -0.5 && y <= 0.5) ? 1.0 : 0.0; }

}  // namespace

double window_weight(const Vec3& xi, const std::array<int, 3>& n, const WindowSpec& spec) {
  double w = 1.0;
  for (int d = 0; d < 3; ++d) {
    const double y = xi[d] - n[d];
    w *= spec.kind == WindowSpec::Kind::SharpCube ? sharp1(y) : bump1(y, spec.transition_width);
    if (w == 0.0) return 0.0;
  }
  return w;
}

complexd sample_unit(const RandomLaw& law, RandomStream& stream) {
  switch (law.kind) {
    case RandomLaw::Kind::ConstantOne:
      return complexd(1.0, 0.0);
    case RandomLaw::Kind::UniformCircle: {
      const double th = kTwoPi * stream.next_unit();
      return complexd(std::cos(th), std::sin(th));
    }
    case RandomLaw::Kind::ComplexGaussian:
    default: {
      const double u1 = stream.next_unit();
      const double u2 = stream.next_unit();
      const double rad = std::sqrt(-std::log(u1));  // E rad^2 = 1
      const double th = kTwoPi * u2;
      return complexd(rad * std::cos(th), rad * std::sin(th));
    }
  }
}

SpectralField wiener_randomize(const SpectralField& phi, const WindowSpec& spec,
                               const RandomLaw& law, std::uint64_t member_seed) {
  const GridSpec& g = phi.grid;
  const int m = g.points_per_axis;
  SpectralField out(g);

  // cube index n for xi component: xi - n in (-1/2, 1/2]
  auto cube_of = [](double x) { return static_cast<int>(std::ceil(x - 0.5)); };

  const bool sharp = spec.kind == WindowSpec::Kind::SharpCube;
  for (int ix = 0; ix < m; ++ix) {
    const double fx = g.freq_component(ix);
    for (int iy = 0; iy < m; ++iy) {
      const double fy = g.freq_component(iy);
      for (int iz = 0; iz < m; ++iz) {
        const complexd c = phi.at(ix, iy, iz);
        if (c == complexd(0.0)) continue;
        const double fz = g.freq_component(iz);
        const Vec3 xi{fx, fy, fz};
        complexd acc(0.0);
        if (sharp) {
          const std::array<int, 3> n{cube_of(fx), cube_of(fy), cube_of(fz)};
          RandomStream st = cube_stream(member_seed, n);
          acc = sample_unit(law, st);
        } else {
          const std::array<int, 3> base{cube_of(fx), cube_of(fy), cube_of(fz)};
          for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
              for (int dz = -1; dz <= 1; ++dz) {
                const std::array<int, 3> n{base[0] + dx, base[1] + dy, base[2] + dz};
                const double w = window_weight(xi, n, spec);
                if (w == 0.0) continue;
                RandomStream st = cube_stream(member_seed, n);
                acc += w * sample_unit(law, st);
              }
        }
        out.at(ix, iy, iz) = acc * c;
      }
    }
  }
  return out;
}

}  // namespace randwave
