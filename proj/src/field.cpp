#include "randwave/field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace randwave {

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (grid != o.grid) throw std::invalid_argument("field +=: grid mismatch");
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (grid != o.grid) throw std::invalid_argument("field -=: grid mismatch");
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
  return *this;
}

SpectralField& SpectralField::operator*=(complexd a) {
  for (auto& c : coeff) c *= a;
  return *this;
}

bool SpectralField::finite() const {
  for (const auto& c : coeff)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(complexd a, SpectralField f) { return f *= a; }

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  if (a.grid != b.grid) throw std::invalid_argument("max_coeff_diff: grid mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeff.size(); ++i)
    d = std::max(d, std::abs(a.coeff[i] - b.coeff[i]));
  return d;
}

namespace {
constexpr char kMagic[4] = {'R', 'W', 'V', '1'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void save_snapshot(const SpectralField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_snapshot: can not open " + path);
  out.write(kMagic, 4);
  const std::uint32_t version = kVersion;
  const std::uint32_t m = static_cast<std::uint32_t>(f.grid.points_per_axis);
  const std::uint32_t r = static_cast<std::uint32_t>(f.grid.oversampling);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&m), 4);
  out.write(reinterpret_cast<const char*>(&r), 4);
  out.write(reinterpret_cast<const char*>(f.coeff.data()),
            static_cast<std::streamsize>(f.coeff.size() * sizeof(complexd)));
  if (!out) throw std::runtime_error("save_snapshot: write failed for " + path);
}

SpectralField load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_snapshot: can not open " + path);
  char magic[4];
  std::uint32_t version = 0, m = 0, r = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&m), 4);
  in.read(reinterpret_cast<char*>(&r), 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_snapshot: bad magic in " + path);
  if (version != kVersion)
    throw std::runtime_error("load_snapshot: unsupported version in " + path);
  SpectralField f(GridSpec(static_cast<int>(m), static_cast<int>(r)));
  in.read(reinterpret_cast<char*>(f.coeff.data()),
          static_cast<std::streamsize>(f.coeff.size() * sizeof(complexd)));
  if (!in) throw std::runtime_error("load_snapshot: truncated file " + path);
  return f;
}

}  // namespace randwave
