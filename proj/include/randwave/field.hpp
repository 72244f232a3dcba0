#pragma once

#include <string>
#include <vector>

#include "randwave/grid.hpp"

namespace randwave {

// Complex Fourier coefficients of a periodic field, normalized so that a
// coefficient approximates the continuum Fourier transform sample at its
// lattice frequency.  All norms then carry the frequency cell volume (1/R)^3
// and converge as M, R grow.
struct SpectralField {
  GridSpec grid;
  std::vector<complexd> coeff;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeff(g.point_count()) {}

  complexd& at(int ix, int iy, int iz) { return coeff[grid.flat_index(ix, iy, iz)]; }
  const complexd& at(int ix, int iy, int iz) const {
    return coeff[grid.flat_index(ix, iy, iz)];
  }

  void fill_zero() { std::fill(coeff.begin(), coeff.end(), complexd(0.0)); }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(complexd a);

  bool finite() const;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(complexd a, SpectralField f);

// Max coefficient-wise |a - b|.
double max_coeff_diff(const SpectralField& a, const SpectralField& b);

// A SpectralField sampled on a uniform time grid.
struct FieldTrajectory {
  GridSpec grid;
  TimeGrid time_grid;
  std::vector<SpectralField> snapshots;

  FieldTrajectory() = default;
  FieldTrajectory(const GridSpec& g, const TimeGrid& tg) : grid(g), time_grid(tg) {
    snapshots.assign(tg.node_count, SpectralField(g));
  }

  SpectralField& node(int m) { return snapshots.at(m); }
  const SpectralField& node(int m) const { return snapshots.at(m); }
};

// Binary snapshot format: header {magic "RWV1", version u32, M u32, R u32}
// followed by M^3 little-endian (re, im) pairs of 64-bit floats, row-major in
// x, y, z with frequencies in DFT-standard order.
void save_snapshot(const SpectralField& f, const std::string& path);
SpectralField load_snapshot(const std::string& path);

}  // namespace randwave
