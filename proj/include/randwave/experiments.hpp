#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "randwave/evolve.hpp"
#include "randwave/fitting.hpp"
#include "randwave/tower.hpp"
#include "randwave/wiener.hpp"

namespace randwave {

// --- deterministic data builders -----------------------------------------

// Radial data with exact dyadic mass law: modes in the sharp annulus
// N/2 < |xi| <= N share one magnitude chosen so the annulus L^2 mass is
// N^{-decay}; occupies every lattice mode with |m|_inf <= band_index.
SpectralField make_power_profile_data(const GridSpec& grid, double decay, int band_index);

// f_hat(xi) = exp(-|xi|^2 / (2 W^2)), a localized bump of unit spatial width 1/W.
SpectralField make_gaussian_bump(const GridSpec& grid, double width);

// --- smoothing-rate fits ---------------------------------------------------

struct SmoothingConfig {
  GridSpec grid;
  TimeGrid time_grid;
  double s = 0.3;
  double delta = 0.01;       // profile decay is s + delta
  int band_index = 12;       // data occupies |m|_inf <= band
  double t_eval = 0.0;       // defaults to the horizon
  int k_max = 4;             // orders 1..2k-1
  int fit_n_min = 2;
  int fit_n_max = 8;
  Quadrature quadrature = Quadrature::Gauss2;
  WindowSpec window;
};

struct SmoothingResult {
  std::vector<int> blocks;                        // dyadic N of the profile
  std::map<int, std::vector<double>> median_profile;  // order -> per-block median
  std::map<int, FitResult> fits;                  // order -> log2-log2 slope fit
};

SmoothingResult smoothing_experiment(const EnsembleSpec& ens, const SmoothingConfig& cfg);
// single-order wrapper: ensemble-median dyadic profile of the order-(2k-1)
// term at t_eval, slope fit over the configured block range
FitResult smoothing_fit(const EnsembleSpec& ens, const SmoothingConfig& cfg, int order);

// --- probabilistic Strichartz tails ----------------------------------------

struct TailConfig {
  GridSpec grid;
  TimeGrid time_grid;   // horizon = T of the space-time norm
  double q = 10.0 / 3.0;
  double r = 10.0 / 3.0;
  std::vector<double> lambdas;  // empty: quantile-derived grid
  WindowSpec window;
};

std::pair<TailCurve, FitResult> strichartz_tail(const EnsembleSpec& ens,
                                                const SpectralField& phi,
                                                const TailConfig& cfg);
TailCurve hs_tail(const EnsembleSpec& ens, const SpectralField& phi, double s,
                  const std::vector<double>& lambdas, const WindowSpec& window);

bool admissible_check(double q, double r);

// --- dispersive decay -------------------------------------------------------

struct DispersiveResult {
  FitResult fit;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<double> times;
  std::vector<double> norms;
};

// Fitted decay exponent of ||S(t) f||_{L^r} against t over the valid window
// [2 dx, period / (4 * max group speed)] intersected with the given times.
DispersiveResult dispersive_decay(const SpectralField& f, const std::vector<double>& ts,
                                  double r);

// --- bilinear Strichartz -----------------------------------------------------

struct BilinearPoint {
  int n2 = 0;
  double observed = 0.0;  // ||P_N1 u1 P_N2 u2||_{L^2_{T,x}}
  double ratio = 0.0;     // observed / (N1 * N2^{-1/2})
};

// phi_j are L^2-normalized after projection; N2 above max_freq/2 is rejected.
BilinearPoint bilinear_strichartz(const SpectralField& phi1, const SpectralField& phi2,
                                  int n1, int n2, double T, int time_nodes);
FitResult bilinear_sweep_fit(const std::vector<BilinearPoint>& points);

// Data pair saturating the N2^{-1/2} scaling: both spectra on a radius-n1
// tube along e1, the second displaced to |xi| ~ n2.
std::pair<SpectralField, SpectralField> make_tube_pair(const GridSpec& grid, int n1, int n2);

// --- gain of space-time integrability ----------------------------------------

struct GainConfig {
  GridSpec grid;
  TimeGrid time_grid;
  int k = 2;              // term zeta_{2k-1}
  double q = 4.0;
  double r = 6.0;
  int band_index = 8;     // data band
  double s = 0.3;         // data profile decay
  std::vector<int> n_sweep;      // r >= 6: fit vs N
  std::vector<double> t_sweep;   // r < 6: fit vs T (on the node lattice)
  WindowSpec window;
};

struct GainResult {
  FitResult fit;
  double predicted_slope = 0.0;  // 1/2 - 3/r (N sweep) or 3/r - 1/2 (T sweep)
  std::vector<double> abscissa;
  std::vector<double> median_norm;
};

GainResult integrability_gain(const EnsembleSpec& ens, const GainConfig& cfg);

// --- time-regularity proxies --------------------------------------------------

// max over grid nodes <= T of the H^sigma norm; a lower-bound proxy for the
// X^sigma norm via its continuous embedding.
double xnorm_proxy(const FieldTrajectory& traj, double sigma, double T);

// p-variation over subsets of the sample nodes (exact on the grid partition
// lattice by dynamic programming; a lower bound of the true V^p norm).
// twisted composes with S(-t) first.
double discrete_variation_norm(const FieldTrajectory& traj, double p, bool twisted);

// --- counterexample constructions ---------------------------------------------

// Frequencies are integer lattice points scaled by 1/R.
struct SparseField {
  int oversampling = 1;
  std::vector<std::array<int, 3>> support;
  std::vector<complexd> values;

  void push(const std::array<int, 3>& m, complexd v) {
    support.push_back(m);
    values.push_back(v);
  }
  std::size_t size() const { return support.size(); }
};

// All integer lattice points of center + lambda * (-1/2, 1/2]^3, unit values.
SparseField sparse_box(const Vec3& center, double lambda, int oversampling);
double sparse_l2(const SparseField& f);
double sparse_sobolev(const SparseField& f, double s);

// max |Phi| over the interaction triples of three sparse supports
double sparse_max_phase(const SparseField& f1, const SparseField& f2, const SparseField& f3);

// Exact-in-time first Duhamel iterate of free evolutions of sparse data:
// z_hat(t, xi) = -i (2 pi)^{-3} R^{-6} sum f1 conj(f2) f3 (e^{i t Phi} - 1)/(i Phi).
SparseField sparse_duhamel_linear(const SparseField& f1, const SparseField& f2,
                                  const SparseField& f3, double t);

struct BoxConvolutionResult {
  double min_on_sum_box = 0.0;  // min of 1 * 1 over a+b+lambda Q (measure units)
  double fitted_c = 0.0;        // min / lambda^3
};
BoxConvolutionResult box_convolution_bound(const Vec3& a, const Vec3& b, double lambda,
                                           int oversampling);

struct CounterexampleSpec {
  double lambda_box = 1.0;
  double offset_factor = 4.0;  // c_off
  double n_center = 8.0;       // N
  double l_center = 0.0;       // L (second construction)
  double s = 0.0;
  double sigma = 0.5;
  int oversampling = 1;
  double max_abs_freq = 1e9;  // lattice capacity; boxes beyond it are rejected

  void validate_single_cube() const;  // the three-box data of one construction
};

struct Z3CounterexampleResult {
  std::vector<double> n_values;
  std::vector<double> hs_norms;      // ||z3(t*)||_{H^sigma} per N
  std::vector<double> min_on_box;    // min |z3_hat| over Q_{N,lambda} per N
  std::vector<double> data_l2;       // ||phi||_{L^2} per N
  double t_star = 0.0;
  FitResult growth_fit;              // slope of log ||z3||_{H^sigma} vs log N
  std::vector<double> lambda_values; // lambda sweep at fixed N
  std::vector<double> lambda_data_l2;
  std::vector<double> fitted_c0;     // min / (t* lambda^6) per lambda
  FitResult data_scaling_fit;        // ||phi||_{L^2} vs lambda, expect 3/2
};

Z3CounterexampleResult z3_nonsmoothing_counterexample(const CounterexampleSpec& spec,
                                                      const std::vector<double>& n_list,
                                                      double sigma);

struct TrilinearCounterexampleResult {
  std::vector<double> n_values;
  std::vector<double> ratios;        // ||I(t*)||_{H^sigma} / prod ||phi_j||_{H^s}
  std::vector<double> denominators;
  std::vector<double> t_stars;
  FitResult ratio_fit;               // expect sigma - 3s + 1
  FitResult denominator_fit;         // expect 9/2 + 3s in the joint scaling
  double predicted_slope = 0.0;
};

// lambda ~ L ~ N: lambda = N * lambda_ratio, L = N.
TrilinearCounterexampleResult trilinear_nonsmoothing(const CounterexampleSpec& spec,
                                                     const std::vector<double>& n_list,
                                                     double lambda_ratio, double s,
                                                     double sigma);

}  // namespace randwave
