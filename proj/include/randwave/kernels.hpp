#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace randwave::kernels {

// Worker count used by the OpenMP kernels.  0 means "leave OpenMP alone".
void set_workers(int n);
int workers();

// Resolves the effective worker count from RANDWAVE_WORKERS when set_workers
// has not been called.
void init_workers_from_env();

// Fixed-block pairwise summation.  The block decomposition is independent of
// the worker count, so the result is bit-identical for any parallel schedule.
double deterministic_sum(const double* x, std::size_t n);
double deterministic_sum(const std::vector<double>& x);

// Serial reference for the same reduction tree; used by tests and the bench.
double deterministic_sum_serial(const double* x, std::size_t n);

// y[i] = a[i] * b[i] elementwise for complex arrays.
void multiply_serial(const std::complex<double>* a, const std::complex<double>* b,
                     std::complex<double>* y, std::size_t n);
void multiply(const std::complex<double>* a, const std::complex<double>* b,
              std::complex<double>* y, std::size_t n);

// y[i] = |a[i]|^2 a[i] (the cubic nonlinearity in physical space).
void cubic_serial(const std::complex<double>* a, std::complex<double>* y, std::size_t n);
void cubic(const std::complex<double>* a, std::complex<double>* y, std::size_t n);

}  // namespace randwave::kernels
