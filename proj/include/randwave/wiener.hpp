#pragma once

#include <array>
#include <cstdint>

#include "randwave/field.hpp"
#include "randwave/grid.hpp"

namespace randwave {

// psi of the Wiener decomposition: either the sharp indicator of the unit
// cube n + (-1/2, 1/2]^3 or a tensorized C^2 bump; shifted copies sum to 1 at
// every frequency for both kinds.
struct WindowSpec {
  enum class Kind { SharpCube, SmoothBump };
  Kind kind = Kind::SharpCube;
  double transition_width = 0.25;  // smooth-bump only, in (0, 1/2)

  static WindowSpec sharp() { return {}; }
  static WindowSpec smooth(double w) {
    if (!(w > 0.0) || !(w < 0.5))
      throw std::invalid_argument("WindowSpec: transition width must lie in (0, 1/2)");
    return {Kind::SmoothBump, w};
  }
};

// All laws are mean zero with unit second moment and satisfy the exponential
// moment bound E e^{kappa.x} <= e^{c|kappa|^2}.  ConstantOne replaces the law
// by the constant 1 for diagnostics.
struct RandomLaw {
  enum class Kind { ComplexGaussian, UniformCircle, ConstantOne };
  Kind kind = Kind::ComplexGaussian;

  static RandomLaw gaussian() { return {Kind::ComplexGaussian}; }
  static RandomLaw uniform_circle() { return {Kind::UniformCircle}; }
  static RandomLaw constant_one() { return {Kind::ConstantOne}; }
};

struct EnsembleSpec {
  RandomLaw law;
  std::uint64_t master_seed = 0;
  int count = 1;

  EnsembleSpec() = default;
  EnsembleSpec(RandomLaw l, std::uint64_t seed, int n) : law(l), master_seed(seed), count(n) {
    if (n < 1) throw std::invalid_argument("EnsembleSpec: count must be positive");
  }
  std::uint64_t member_seed(int i) const;
};

// Counter-based stream: the state is a pure function of the seeding keys, so
// any worker can draw any member's variables in any order.
struct RandomStream {
  std::uint64_t state = 0;

  explicit RandomStream(std::uint64_t s) : state(s) {}
  std::uint64_t next_u64();
  double next_unit();  // (0, 1]
};

std::uint64_t mix64(std::uint64_t x);
// Stream seeded by (member seed, integer lattice point n).
RandomStream cube_stream(std::uint64_t member_seed, const std::array<int, 3>& n);

double window_weight(const Vec3& xi, const std::array<int, 3>& n, const WindowSpec& spec);

complexd sample_unit(const RandomLaw& law, RandomStream& stream);

// phi^omega: every coefficient at xi picks up sum_n g_n psi(xi - n) with one
// g_n per occupied unit cube, keyed by the cube's integer coordinates.
SpectralField wiener_randomize(const SpectralField& phi, const WindowSpec& spec,
                               const RandomLaw& law, std::uint64_t member_seed);

}  // namespace randwave
