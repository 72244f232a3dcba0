#include "randwave/kernels.hpp"

#include <cstdlib>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace randwave::kernels {

namespace {
int g_workers = 0;
constexpr std::size_t kBlock = 4096;  // fixed reduction block, never tied to threads
}  // namespace

void set_workers(int n) {
  g_workers = n;
#if defined(_OPENMP)
  if (n > 0) omp_set_num_threads(n);
#endif
}

int workers() {
#if defined(_OPENMP)
  return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
  return 1;
#endif
}

void init_workers_from_env() {
  if (g_workers > 0) return;
  if (const char* env = std::getenv("RANDWAVE_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) set_workers(n);
  }
}

namespace {

inline double block_sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

// Pairwise combine of the per-block partials, in fixed order.
double combine(std::vector<double>& parts) {
  std::size_t n = parts.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i + half < n; ++i) parts[i] += parts[i + half];
    n = half;
  }
  return parts.empty() ? 0.0 : parts[0];
}

}  // namespace

double deterministic_sum_serial(const double* x, std::size_t n) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> parts(nblocks, 0.0);
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * kBlock;
    parts[b] = block_sum(x + lo, std::min(kBlock, n - lo));
  }
  return combine(parts);
}

double deterministic_sum(const double* x, std::size_t n) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks < 4) return deterministic_sum_serial(x, n);
  std::vector<double> parts(nblocks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (n >= (1u << 20))
#endif
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    parts[b] = block_sum(x + lo, std::min(kBlock, n - lo));
  }
  return combine(parts);
}

double deterministic_sum(const std::vector<double>& x) {
  return deterministic_sum(x.data(), x.size());
}

void multiply_serial(const std::complex<double>* a, const std::complex<double>* b,
                     std::complex<double>* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

void multiply(const std::complex<double>* a, const std::complex<double>* b,
              std::complex<double>* y, std::size_t n) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (n >= 65536)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] = a[i] * b[i];
}

void cubic_serial(const std::complex<double>* a, std::complex<double>* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = std::norm(a[i]);
    y[i] = m2 * a[i];
  }
}

void cubic(const std::complex<double>* a, std::complex<double>* y, std::size_t n) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (n >= 65536)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const double m2 = std::norm(a[i]);
    y[i] = m2 * a[i];
  }
}

}  // namespace randwave::kernels
