#pragma once

#include <map>
#include <vector>

#include "randwave/field.hpp"
#include "randwave/grid.hpp"

namespace randwave {

// value per dyadic block N in {1, 2, 4, ...}: ||P_N f|| with weight <xi>^sigma
struct DyadicProfile {
  std::map<int, double> values;
};

// Smooth radial cutoff: even, 1 on [-5/4, 5/4], supported on [-8/5, 8/5],
// C^2 polynomial transition.
double lp_eta(double x);
// Block symbol eta_N(xi) = eta(|xi|/N) - eta(2|xi|/N) (N >= 2), eta_1 = eta(|xi|).
double lp_eta_block(double abs_xi, int n_block);
// Largest dyadic block the lattice can hold; summing blocks 1..max gives 1
// at every lattice frequency.
int max_dyadic_block(const GridSpec& grid);

// |u|^2 u computed through physical space with the grid's dealias truncation.
SpectralField pointwise_cubic(const SpectralField& u);
// Dealiased trilinear product a * conj(b) * c.
SpectralField product_conj2(const SpectralField& a, const SpectralField& b,
                            const SpectralField& c);
void apply_dealias_mask(SpectralField& f);

SpectralField littlewood_paley(const SpectralField& f, int n_block);

// (sum_xi <xi>^{2s} |c(xi)|^2 / R^3)^{1/2}
double sobolev_norm(const SpectralField& f, double s);
// Homogeneous |xi|^s weight; s < 0 with a nonzero mean is rejected.
double homogeneous_norm(const SpectralField& f, double s);

// Physical L^r norm by grid quadrature (r = inf: grid max).
double lebesgue_norm(const std::vector<complexd>& physical, const GridSpec& grid, double r);
double lebesgue_norm(const SpectralField& f, double r);

// Composite trapezoid in time of the physical r-norms; q or r = inf use max.
double spacetime_norm(const FieldTrajectory& traj, double q, double r, double T);

DyadicProfile dyadic_profile(const SpectralField& f, double sigma);

// Lattice realization of f(x) -> lambda f(lambda x): each mode zeta moves to
// lambda*zeta with amplitude factor lambda^{-1/2}, which keeps the homogeneous
// H^{1/2} norm invariant and scales L^2 by lambda^{-1/2}.
SpectralField scaling_transform(const SpectralField& f, int lambda);

// E(v) = 1/2 int |grad v|^2 + 1/4 int |v|^4
double energy(const SpectralField& f);

}  // namespace randwave
