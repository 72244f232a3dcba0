#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "randwave/field.hpp"
#include "randwave/grid.hpp"

namespace randwave {

// |xi|^2 per mode; shared immutable table per grid.
const std::vector<double>& xi_squared_table(const GridSpec& grid);

// Grid-bound table of e^{-i tau |xi|^2} multipliers.  Entries are unit
// modulus in the stored representation (cos, sin pairs).
class PropagatorCache {
 public:
  explicit PropagatorCache(const GridSpec& grid) : grid_(grid) {}
  const std::vector<complexd>& multiplier(double tau);

 private:
  GridSpec grid_;
  std::map<double, std::vector<complexd>> table_;
};

// S(t) = e^{it Laplacian}: coefficientwise multiplication by e^{-it|xi|^2}.
SpectralField evolve_linear(const SpectralField& f, double t);
void evolve_linear_in_place(SpectralField& f, double t);

// Phi = |xi|^2 - |xi1|^2 + |xi2|^2 - |xi3|^2 = 2 <xi - xi1, xi - xi3> on the
// convolution constraint xi = xi1 - xi2 + xi3.
double phase_function(const Vec3& xi, const Vec3& xi1, const Vec3& xi2, const Vec3& xi3);
std::pair<double, double> phase_function_forms(const Vec3& xi, const Vec3& xi1,
                                               const Vec3& xi2, const Vec3& xi3);

// Time dependence of a field, evaluable at arbitrary t.  Sampled trajectories
// interpolate linearly in the interaction picture, which is exact for free
// evolutions.
class TrajectoryView {
 public:
  virtual ~TrajectoryView() = default;
  virtual const GridSpec& grid() const = 0;
  virtual void eval(double t, SpectralField& out) const = 0;
};

class LinearTrajectory final : public TrajectoryView {
 public:
  explicit LinearTrajectory(SpectralField phi) : phi_(std::move(phi)) {}
  const GridSpec& grid() const override { return phi_.grid; }
  void eval(double t, SpectralField& out) const override;
  const SpectralField& initial() const { return phi_; }

 private:
  SpectralField phi_;
};

class SampledTrajectory final : public TrajectoryView {
 public:
  explicit SampledTrajectory(const FieldTrajectory& traj) : traj_(traj) {}
  const GridSpec& grid() const override { return traj_.grid; }
  void eval(double t, SpectralField& out) const override;

 private:
  const FieldTrajectory& traj_;
};

enum class Quadrature { Trapezoid, Gauss2 };

// I(u1,u2,u3)(t) = -i int_0^t S(t-t') u1 conj(u2) u3 (t') dt', evaluated with
// the cumulative interaction-picture recurrence (cost linear in the node
// count).  Gauss2 replaces the trapezoid increments with two-point
// Gauss-Legendre panels.
FieldTrajectory duhamel_trilinear(const TrajectoryView& u1, const TrajectoryView& u2,
                                  const TrajectoryView& u3, const TimeGrid& tg,
                                  Quadrature quad = Quadrature::Trapezoid);
FieldTrajectory duhamel_trilinear(const FieldTrajectory& u1, const FieldTrajectory& u2,
                                  const FieldTrajectory& u3, const TimeGrid& tg,
                                  Quadrature quad = Quadrature::Trapezoid);

// Strang splitting for i u_t + Lap u = |u|^2 u; second order in dt and mass
// conserving in both substeps.  The documented stability heuristic is
// dt * max|u|^2 << 1; use split_step_phase_increment to check it.
// Detected blow-up (L^2 growth beyond 1e6 of the initial) raises.
FieldTrajectory split_step_reference(const SpectralField& u0, const TimeGrid& tg,
                                     bool include_cubic = true);
double split_step_phase_increment(const SpectralField& u0, const TimeGrid& tg);

}  // namespace randwave
