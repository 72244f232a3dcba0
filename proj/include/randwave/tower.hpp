#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "randwave/evolve.hpp"
#include "randwave/field.hpp"

namespace randwave {

// Exact rational on 128-bit integers, always stored reduced with a positive
// denominator.  Covers the alpha sequence comfortably up to k = 64.
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(__int128 n, __int128 d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  double to_double() const;
  std::string str() const;
};

// alpha_1 = 1, alpha_k = (alpha_{k-1} + 3) / 2, exact.
Rational alpha(int k);
// closed form alpha_k = 2 (1 - (1/2)^{k-1}) + 1
Rational alpha_closed_form(int k);
// s-threshold 1/(2 alpha_{k+1}) for step count k
Rational step_threshold(int k);

struct PredictedSigma {
  double value = 0.0;          // alpha_k * s, the supremal predicted regularity
  bool within_hypothesis = true;  // s in (0, 1/alpha_{k-1})
};
PredictedSigma predicted_sigma(int k, double s);

// unique k with 1/(2 alpha_{k+1}) < s <= 1/(2 alpha_k); s <= 1/6 rejected
int step_count_for(double s);

struct RegularityParams {
  double s = 0.3;
  double sigma = 0.5;
  int k = 1;
};

enum class ExpansionVariant { FullZ, UnbalancedZeta };

inline constexpr int kFullZOrderCap = 4;  // orders above 2*4-1 = 7 are not enumerated

struct ExpansionSet {
  ExpansionVariant variant = ExpansionVariant::UnbalancedZeta;
  GridSpec grid;
  TimeGrid time_grid;
  std::vector<FieldTrajectory> terms;  // orders 1, 3, ..., 2k-1
  Quadrature quadrature = Quadrature::Trapezoid;
  std::uint64_t seed = 0;

  int depth() const { return static_cast<int>(terms.size()); }
  const FieldTrajectory& order(int j) const {  // j odd
    return terms.at((j - 1) / 2);
  }
};

// Full tower z_{2l+1} = -i sum_{j1+j2+j3 = 2l+1} I(z_{j1}, z_{j2}, z_{j3});
// capped at k_max <= 4 where the ordered triples are explicit.
ExpansionSet build_z_terms(const FieldTrajectory& z1, int k_max,
                           Quadrature quad = Quadrature::Trapezoid);

// Unbalanced tower: zeta_1 = z1 and each next order keeps only the
// (1, 1, 2k-3) triples, fused as 2|z1|^2 zeta + z1^2 conj(zeta).
ExpansionSet build_zeta_terms(const FieldTrajectory& z1, int k_max,
                              Quadrature quad = Quadrature::Trapezoid);

// Streaming sweep: advances every order in one pass over the time nodes and
// hands the spectral fields of orders 1, 3, ..., 2k-1 at each node to the
// sink.  Memory stays O(fields), independent of the node count.
void run_tower_stream(const SpectralField& phi_omega, const TimeGrid& tg, int k_max,
                      ExpansionVariant variant, Quadrature quad,
                      const std::function<void(int, const std::vector<SpectralField>&)>& sink);

// Capture every order at one node of the sweep.
struct TowerCapture {
  std::vector<int> orders;                       // 1, 3, ..., 2k-1
  std::vector<SpectralField> fields_at_capture;  // one per order
};
TowerCapture run_zeta_tower_capture(const SpectralField& phi_omega, const TimeGrid& tg,
                                    int k_max, double t_capture,
                                    Quadrature quad = Quadrature::Trapezoid);

// Nonlinear forcing removed from the residual equation:
//   sum_{l=2}^{k} [ l = 2 : |z1|^2 z1 ; l >= 3 : 2|z1|^2 zeta_{2l-3} + z1^2 conj(zeta_{2l-3}) ].
// The full-z variant is accepted only for k <= 2, where both towers agree.
FieldTrajectory forcing_sum(const ExpansionSet& set, int k);

}  // namespace randwave
