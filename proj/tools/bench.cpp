// Timing comparison of the OpenMP kernels against their serial references:
// 3D transform passes, the cubic nonlinearity and the deterministic
// reduction, at the grid sizes the experiments use.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "randwave/fft.hpp"
#include "randwave/kernels.hpp"
#include "randwave/ops.hpp"
#include "randwave/wiener.hpp"

using namespace randwave;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_per_run(const std::function<void()>& body, int reps) {
  body();  // warm up, also builds plans
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) body();
  return std::chrono::duration<double>(clock_type::now() - t0).count() / reps;
}

std::vector<complexd> random_samples(std::size_t n, std::uint64_t seed) {
  RandomStream st(seed);
  std::vector<complexd> v(n);
  for (auto& c : v) c = complexd(st.next_unit() - 0.5, st.next_unit() - 0.5);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  kernels::init_workers_from_env();
  std::printf("workers: %d, reps: %d\n", kernels::workers(), reps);
  std::printf("%-28s %12s %12s %8s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");

  for (int m : {32, 64, 128}) {
    const GridSpec grid(m, 1);
    std::vector<complexd> buf = random_samples(grid.point_count(), 42 + m);
    std::vector<complexd> work = buf;

    const double ts = seconds_per_run(
        [&] { work = buf; fft::transform3_serial(work.data(), m, false); }, reps);
    const double tp = seconds_per_run(
        [&] { work = buf; fft::transform3(work.data(), m, false); }, reps);
    std::printf("%-28s %12.3f %12.3f %8.2f\n",
                ("fft3 M=" + std::to_string(m)).c_str(), 1e3 * ts, 1e3 * tp, ts / tp);

    // identical bits regardless of the schedule
    std::vector<complexd> a = buf, b = buf;
    fft::transform3_serial(a.data(), m, false);
    fft::transform3(b.data(), m, false);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) {
        std::printf("MISMATCH in fft3 at M=%d\n", m);
        return 1;
      }

    std::vector<complexd> out(buf.size());
    const double cs = seconds_per_run(
        [&] { kernels::cubic_serial(buf.data(), out.data(), buf.size()); }, reps);
    const double cp =
        seconds_per_run([&] { kernels::cubic(buf.data(), out.data(), buf.size()); }, reps);
    std::printf("%-28s %12.3f %12.3f %8.2f\n",
                ("cubic M=" + std::to_string(m)).c_str(), 1e3 * cs, 1e3 * cp, cs / cp);

    std::vector<double> mags(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) mags[i] = std::norm(buf[i]);
    const double rs = seconds_per_run(
        [&] { (void)kernels::deterministic_sum_serial(mags.data(), mags.size()); }, reps);
    const double rp = seconds_per_run(
        [&] { (void)kernels::deterministic_sum(mags.data(), mags.size()); }, reps);
    std::printf("%-28s %12.3f %12.3f %8.2f\n",
                ("reduce M=" + std::to_string(m)).c_str(), 1e3 * rs, 1e3 * rp, rs / rp);
    if (kernels::deterministic_sum_serial(mags.data(), mags.size()) !=
        kernels::deterministic_sum(mags.data(), mags.size())) {
      std::printf("MISMATCH in deterministic reduction at M=%d\n", m);
      return 1;
    }
  }
  return 0;
}
