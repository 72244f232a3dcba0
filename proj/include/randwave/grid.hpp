#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace randwave {

using complexd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Frequencies live on the lattice {m/R : -M/2 <= m < M/2}^3 of spacing 1/R,
// so every unit cube n + (-1/2,1/2]^3 of the Wiener decomposition holds R^3
// lattice points.  The physical box has period 2*pi*R per axis.
struct GridSpec {
  int points_per_axis = 32;   // M, power of two
  int oversampling = 1;       // R
  double dealias_fraction = 2.0 / 3.0;

  GridSpec() = default;
  GridSpec(int m, int r, double dealias = 2.0 / 3.0)
      : points_per_axis(m), oversampling(r), dealias_fraction(dealias) {
    validate();
  }

  void validate() const {
    const int m = points_per_axis;
    if (m < 8 || (m & (m - 1)) != 0)
      throw std::invalid_argument("GridSpec: points_per_axis must be a power of two >= 8");
    if (oversampling < 1)
      throw std::invalid_argument("GridSpec: oversampling must be >= 1");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
      throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0, 1]");
  }

  std::size_t point_count() const {
    const std::size_t m = static_cast<std::size_t>(points_per_axis);
    return m * m * m;
  }

  double box_period() const { return kTwoPi * oversampling; }
  double box_volume() const {
    const double p = box_period();
    return p * p * p;
  }
  double cell_volume() const {  // physical quadrature weight
    const double h = box_period() / points_per_axis;
    return h * h * h;
  }
  double freq_cell_volume() const {  // frequency quadrature weight (1/R)^3
    const double w = 1.0 / oversampling;
    return w * w * w;
  }

  // Signed integer index in [-M/2, M/2) from the storage index in [0, M).
  int signed_index(int i) const {
    return i < points_per_axis / 2 ? i : i - points_per_axis;
  }
  double freq_component(int i) const {
    return static_cast<double>(signed_index(i)) / oversampling;
  }
  double max_freq() const {  // largest representable |xi| per axis
    return (points_per_axis / 2) / static_cast<double>(oversampling);
  }
  // Per-axis integer band kept by the dealiasing mask.
  int dealias_band() const {
    return static_cast<int>(std::floor(dealias_fraction * (points_per_axis / 2)));
  }
  // Inputs supported in |m|_inf <= cubic_safe_band() are convolved exactly by
  // the collocation cubic product after the dealias truncation.
  int cubic_safe_band() const {
    const double b = (1.0 - dealias_fraction / 2.0) * points_per_axis / 3.0;
    return static_cast<int>(std::ceil(b)) - 1;
  }

  std::size_t flat_index(int ix, int iy, int iz) const {
    const std::size_t m = static_cast<std::size_t>(points_per_axis);
    return (static_cast<std::size_t>(ix) * m + iy) * m + iz;
  }

  bool operator==(const GridSpec& o) const {
    return points_per_axis == o.points_per_axis && oversampling == o.oversampling &&
           dealias_fraction == o.dealias_fraction;
  }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& a) { return dot(a, a); }

struct TimeGrid {
  double horizon = 1.0;  // T
  int node_count = 2;    // M_t

  TimeGrid() = default;
  TimeGrid(double T, int nodes) : horizon(T), node_count(nodes) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
    if (nodes < 2) throw std::invalid_argument("TimeGrid: need at least two nodes");
  }

  double dt() const { return horizon / (node_count - 1); }
  double node(int m) const { return m * dt(); }

  bool operator==(const TimeGrid& o) const {
    return horizon == o.horizon && node_count == o.node_count;
  }
};

}  // namespace randwave
