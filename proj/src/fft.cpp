#include "randwave/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace randwave::fft {

Plan::Plan(int size) : n(size) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("fft::Plan: size must be a power of two");
  bitrev.resize(n);
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b)
      if (i & (1 << b)) r |= 1 << (bits - 1 - b);
    bitrev[i] = r;
  }
  twiddle.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double a = -kTwoPi * k / n;
    twiddle[k] = complexd(std::cos(a), std::sin(a));
  }
}

const Plan& plan_for(int n) {
  static std::map<int, Plan> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Plan(n)).first;
  return it->second;
}

void line_transform(complexd* a, const Plan& p, bool inverse) {
  const int n = p.n;
  for (int i = 0; i < n; ++i) {
    const int j = p.bitrev[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int s = 0; s < n; s += len) {
      for (int k = 0; k < half; ++k) {
        complexd w = p.twiddle[k * step];
        if (inverse) w = std::conj(w);
        const complexd u = a[s + k];
        const complexd v = a[s + k + half] * w;
        a[s + k] = u + v;
        a[s + k + half] = u - v;
      }
    }
  }
}

namespace {

// FFT along the leading index of a [n x rowstride] view, restricted to the
// column range [c0, c1).  Inner loops run over contiguous columns, so the
// butterflies vectorize and every thread owns a disjoint column block.
void batched_pass(complexd* data, const Plan& p, std::size_t rowstride, std::size_t c0,
                  std::size_t c1, bool inverse) {
  const int n = p.n;
  for (int i = 0; i < n; ++i) {
    const int j = p.bitrev[i];
    if (i < j) {
      complexd* ri = data + static_cast<std::size_t>(i) * rowstride;
      complexd* rj = data + static_cast<std::size_t>(j) * rowstride;
      for (std::size_t c = c0; c < c1; ++c) std::swap(ri[c], rj[c]);
    }
  }
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int step = n / len;
    for (int s = 0; s < n; s += len) {
      for (int k = 0; k < half; ++k) {
        complexd w = p.twiddle[k * step];
        if (inverse) w = std::conj(w);
        const double wr = w.real(), wi = w.imag();
        complexd* ru = data + static_cast<std::size_t>(s + k) * rowstride;
        complexd* rv = data + static_cast<std::size_t>(s + k + half) * rowstride;
        for (std::size_t c = c0; c < c1; ++c) {
          const double vr = rv[c].real() * wr - rv[c].imag() * wi;
          const double vi = rv[c].real() * wi + rv[c].imag() * wr;
          const double ur = ru[c].real(), ui = ru[c].imag();
          ru[c] = complexd(ur + vr, ui + vi);
          rv[c] = complexd(ur - vr, ui - vi);
        }
      }
    }
  }
}

template <bool Parallel>
void axis_pass(complexd* data, int m, int axis, bool inverse) {
  const Plan& p = plan_for(m);
  const std::size_t mm = static_cast<std::size_t>(m);

  if (axis == 2) {  // contiguous lines
    const long long nlines = static_cast<long long>(m) * m;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (long long line = 0; line < nlines; ++line)
      line_transform(data + static_cast<std::size_t>(line) * mm, p, inverse);
    return;
  }

  if (axis == 0) {  // leading index, rowstride m^2; split the column space
    const std::size_t cols = mm * mm;
#if defined(_OPENMP)
    const int nchunks = Parallel ? 4 * std::max(1, omp_get_max_threads()) : 1;
#else
    const int nchunks = 1;
#endif
    const std::size_t chunk = (cols + nchunks - 1) / nchunks;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (int c = 0; c < nchunks; ++c) {
      const std::size_t lo = c * chunk;
      if (lo < cols) batched_pass(data, p, cols, lo, std::min(cols, lo + chunk), inverse);
    }
    return;
  }

  // axis 1: per x-slab, FFT along y with rowstride m and z as columns
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (Parallel)
#endif
  for (int x = 0; x < m; ++x)
    batched_pass(data + static_cast<std::size_t>(x) * mm * mm, p, mm, 0, mm, inverse);
}

template <bool Parallel>
void transform3_impl(complexd* data, int m, bool inverse) {
  axis_pass<Parallel>(data, m, 2, inverse);
  axis_pass<Parallel>(data, m, 1, inverse);
  axis_pass<Parallel>(data, m, 0, inverse);
}

void scale_all(std::vector<complexd>& buf, double s) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (buf.size() >= 65536)
#endif
  for (long long i = 0; i < static_cast<long long>(buf.size()); ++i) buf[i] *= s;
}

double forward_scale(const GridSpec& g) {
  return std::pow(kTwoPi, -1.5) * g.cell_volume();
}
double inverse_scale(const GridSpec& g) {
  return std::pow(kTwoPi, -1.5) * g.freq_cell_volume();
}

}  // namespace

void transform3(complexd* data, int m, bool inverse) { transform3_impl<true>(data, m, inverse); }
void transform3_serial(complexd* data, int m, bool inverse) {
  transform3_impl<false>(data, m, inverse);
}

SpectralField forward_transform(const std::vector<complexd>& physical, const GridSpec& grid) {
  if (physical.size() != grid.point_count())
    throw std::invalid_argument("forward_transform: sample count != M^3");
  SpectralField f(grid);
  f.coeff = physical;
  forward_in_place(f.coeff, grid);
  return f;
}

std::vector<complexd> inverse_transform(const SpectralField& f) {
  std::vector<complexd> buf = f.coeff;
  inverse_in_place(buf, f.grid);
  return buf;
}

void forward_in_place(std::vector<complexd>& buf, const GridSpec& grid) {
  transform3(buf.data(), grid.points_per_axis, false);
  scale_all(buf, forward_scale(grid));
}

void inverse_in_place(std::vector<complexd>& buf, const GridSpec& grid) {
  transform3(buf.data(), grid.points_per_axis, true);
  scale_all(buf, inverse_scale(grid));
}

SpectralField reference_forward(const std::vector<complexd>& physical, const GridSpec& grid) {
  if (physical.size() != grid.point_count())
    throw std::invalid_argument("reference_forward: sample count != M^3");
  const int m = grid.points_per_axis;
  SpectralField out(grid);
  const double scale = forward_scale(grid);
  for (int kx = 0; kx < m; ++kx)
    for (int ky = 0; ky < m; ++ky)
      for (int kz = 0; kz < m; ++kz) {
        complexd acc(0.0);
        for (int jx = 0; jx < m; ++jx)
          for (int jy = 0; jy < m; ++jy)
            for (int jz = 0; jz < m; ++jz) {
              const double phase =
                  -kTwoPi *
                  (static_cast<double>(kx) * jx + static_cast<double>(ky) * jy +
                   static_cast<double>(kz) * jz) /
                  m;
              acc += physical[grid.flat_index(jx, jy, jz)] *
                     complexd(std::cos(phase), std::sin(phase));
            }
        out.at(kx, ky, kz) = scale * acc;
      }
  return out;
}

std::vector<complexd> reference_inverse(const SpectralField& f) {
  const GridSpec& grid = f.grid;
  const int m = grid.points_per_axis;
  std::vector<complexd> out(grid.point_count());
  const double scale = inverse_scale(grid);
  for (int jx = 0; jx < m; ++jx)
    for (int jy = 0; jy < m; ++jy)
      for (int jz = 0; jz < m; ++jz) {
        complexd acc(0.0);
        for (int kx = 0; kx < m; ++kx)
          for (int ky = 0; ky < m; ++ky)
            for (int kz = 0; kz < m; ++kz) {
              const double phase =
                  kTwoPi *
                  (static_cast<double>(kx) * jx + static_cast<double>(ky) * jy +
                   static_cast<double>(kz) * jz) /
                  m;
              acc += f.at(kx, ky, kz) * complexd(std::cos(phase), std::sin(phase));
            }
        out[grid.flat_index(jx, jy, jz)] = scale * acc;
      }
  return out;
}

}  // namespace randwave::fft
