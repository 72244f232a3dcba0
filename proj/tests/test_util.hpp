#pragma once

#include <vector>

#include "randwave/field.hpp"
#include "randwave/fft.hpp"
#include "randwave/wiener.hpp"

namespace randwave::testutil {

// random spectral field supported on |m|_inf <= band (band 0: full grid)
inline SpectralField random_field(const GridSpec& grid, std::uint64_t seed, int band = 0) {
  SpectralField f(grid);
  RandomStream st(seed);
  const int m = grid.points_per_axis;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy)
      for (int iz = 0; iz < m; ++iz) {
        if (band > 0 && (std::abs(grid.signed_index(ix)) > band ||
                         std::abs(grid.signed_index(iy)) > band ||
                         std::abs(grid.signed_index(iz)) > band)) {
          st.next_unit();
          st.next_unit();
          continue;
        }
        f.at(ix, iy, iz) = complexd(st.next_unit() - 0.5, st.next_unit() - 0.5);
      }
  return f;
}

// plane wave a e^{i x . xi} with xi given by integer indices
inline SpectralField plane_wave(const GridSpec& grid, complexd amplitude,
                                const std::array<int, 3>& m_index) {
  std::vector<complexd> phys(grid.point_count());
  const int m = grid.points_per_axis;
  const double h = grid.box_period() / m;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy)
      for (int iz = 0; iz < m; ++iz) {
        const double arg = (m_index[0] * ix + m_index[1] * iy + m_index[2] * iz) *
                           h / grid.oversampling;
        phys[grid.flat_index(ix, iy, iz)] =
            amplitude * complexd(std::cos(arg), std::sin(arg));
      }
  return fft::forward_transform(phys, grid);
}

inline double rel_diff(double a, double b) {
  return std::fabs(a - b) / std::max(1e-300, std::fabs(b));
}

}  // namespace randwave::testutil
