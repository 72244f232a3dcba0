#pragma once

#include <vector>

#include "randwave/field.hpp"
#include "randwave/grid.hpp"

namespace randwave::fft {

// Radix-2 tables for one axis length; read-only after construction, so a plan
// can be shared by any number of workers operating on distinct buffers.
struct Plan {
  int n = 0;
  std::vector<int> bitrev;
  std::vector<complexd> twiddle;  // exp(-2*pi*i*k/n), k < n/2

  Plan() = default;
  explicit Plan(int n);
};

const Plan& plan_for(int n);  // process-wide cache, one plan per size

// In-place 1D transform of a contiguous line (no scaling).
void line_transform(complexd* a, const Plan& p, bool inverse);

// Unscaled 3D DFT over every axis of a M^3 row-major array.
void transform3(complexd* data, int m, bool inverse);
void transform3_serial(complexd* data, int m, bool inverse);

// forward: coefficients approximating the continuum Fourier transform,
// c(xi) = (2*pi)^{-3/2} * dV * sum_j f(x_j) e^{-i xi.x_j}.
// inverse: f(x_j) = (2*pi)^{-3/2} * R^{-3} * sum_xi c(xi) e^{+i xi.x_j}.
SpectralField forward_transform(const std::vector<complexd>& physical, const GridSpec& grid);
std::vector<complexd> inverse_transform(const SpectralField& f);

// In-place buffer variants used by the hot loops.
void forward_in_place(std::vector<complexd>& buf, const GridSpec& grid);
void inverse_in_place(std::vector<complexd>& buf, const GridSpec& grid);

// Brute-force O(M^6) DFT pair; the test oracle for the fast path.
SpectralField reference_forward(const std::vector<complexd>& physical, const GridSpec& grid);
std::vector<complexd> reference_inverse(const SpectralField& f);

}  // namespace randwave::fft
