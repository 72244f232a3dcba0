#include <cmath>

#include "doctest.h"
#include "randwave/evolve.hpp"
#include "randwave/fft.hpp"
#include "randwave/ops.hpp"
#include "test_util.hpp"

using namespace randwave;
using testutil::plane_wave;
using testutil::random_field;

namespace {

// closed-form Duhamel output for plane-wave free evolutions:
// mode xi = xi1 - xi2 + xi3, amplitude -i a1 conj(a2) a3 e^{-it|xi|^2} K(t, Phi)
complexd plane_wave_oracle(complexd a1, complexd a2, complexd a3, double phi, double xi2,
                           double t) {
  complexd kernel;
  if (std::fabs(phi) < 1e-14) {
    kernel = complexd(t, 0.0);
  } else {
    kernel = (std::exp(complexd(0.0, t * phi)) - 1.0) / complexd(0.0, phi);
  }
  return complexd(0.0, -1.0) * a1 * std::conj(a2) * a3 *
         std::exp(complexd(0.0, -t * xi2)) * kernel;
}

FieldTrajectory free_traj(const SpectralField& phi, const TimeGrid& tg) {
  FieldTrajectory t(phi.grid, tg);
  for (int m = 0; m < tg.node_count; ++m) {
    t.node(m) = phi;
    evolve_linear_in_place(t.node(m), tg.node(m));
  }
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("evolve");

TEST_CASE("linear propagator basics") {
  const GridSpec g(16, 1);
  const SpectralField f = random_field(g, 4);
  CHECK(max_coeff_diff(evolve_linear(f, 0.0), f) == 0.0);
  CHECK(testutil::rel_diff(sobolev_norm(evolve_linear(f, 0.9), 0.0),
                           sobolev_norm(f, 0.0)) < 1e-12);

  // single mode at xi0 = (1, 2, 0) gains phase e^{-i t |xi0|^2} at t = 0.37
  const SpectralField mode = plane_wave(g, complexd(1.0, 0.0), {1, 2, 0});
  const SpectralField moved = evolve_linear(mode, 0.37);
  const complexd expect = mode.at(1, 2, 0) * std::exp(complexd(0.0, -0.37 * 5.0));
  CHECK(std::abs(moved.at(1, 2, 0) - expect) < 1e-12 * std::abs(expect));
}

TEST_CASE("propagator cache stores unit-modulus multipliers") {
  const GridSpec g(16, 2);
  PropagatorCache cache(g);
  for (double tau : {0.01, 0.37}) {
    const auto& mult = cache.multiplier(tau);
    for (const auto& w : mult) CHECK(std::fabs(std::abs(w) - 1.0) <= 1e-15);
  }
}

TEST_CASE("phase function forms and constraint") {
  const Vec3 xi{1, 0, 0}, xi1{2, 0, 0}, xi2{1, 0, 0}, xi3{0, 0, 0};
  const auto [direct, factored] = phase_function_forms(xi, xi1, xi2, xi3);
  CHECK(direct == doctest::Approx(-2.0));
  CHECK(factored == doctest::Approx(-2.0));

  // xi1 = xi forces xi2 = xi3 and Phi = 0
  CHECK(phase_function({1, 2, 3}, {1, 2, 3}, {5, -1, 0}, {5, -1, 0}) == 0.0);

  // random admissible quadruples: the two closed forms agree
  RandomStream st(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto rnd = [&] { return std::floor(10.0 * st.next_unit()) - 5.0; };
    const Vec3 a{rnd(), rnd(), rnd()}, b{rnd(), rnd(), rnd()}, c{rnd(), rnd(), rnd()};
    const Vec3 x{a[0] - b[0] + c[0], a[1] - b[1] + c[1], a[2] - b[2] + c[2]};
    const auto [d, f] = phase_function_forms(x, a, b, c);
    CHECK(std::fabs(d - f) <= 1e-12 * std::max(1.0, std::fabs(d)));
  }

  CHECK_THROWS_AS(phase_function({0, 0, 0}, {1, 0, 0}, {0, 0, 0}, {0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("duhamel: zero inputs and t = 0") {
  const GridSpec g(8, 1);
  const TimeGrid tg(0.5, 9);
  const FieldTrajectory zero(g, tg);
  const FieldTrajectory one = free_traj(random_field(g, 3, 1), tg);
  const FieldTrajectory out = duhamel_trilinear(one, zero, one, tg);
  for (int m = 0; m < tg.node_count; ++m) CHECK(sobolev_norm(out.node(m), 0.0) == 0.0);
  const FieldTrajectory full = duhamel_trilinear(one, one, one, tg);
  CHECK(sobolev_norm(full.node(0), 0.0) == 0.0);
}

TEST_CASE("duhamel matches the plane-wave closed form") {
  const GridSpec g(16, 1);
  const TimeGrid tg(1.0, 129);
  const complexd a1(0.8, 0.1), a2(-0.3, 0.6), a3(0.5, -0.5);
  const std::array<int, 3> m1{2, 0, 0}, m2{1, 0, 0}, m3{0, 0, 0};
  // output mode (1, 0, 0), Phi = -2
  const LinearTrajectory u1(plane_wave(g, a1, m1));
  const LinearTrajectory u2(plane_wave(g, a2, m2));
  const LinearTrajectory u3(plane_wave(g, a3, m3));

  for (Quadrature quad : {Quadrature::Gauss2, Quadrature::Trapezoid}) {
    const FieldTrajectory out = duhamel_trilinear(u1, u2, u3, tg, quad);
    const double t = tg.horizon;
    const complexd amp_expected = plane_wave_oracle(a1, a2, a3, -2.0, 1.0, t);
    const complexd stored = out.node(tg.node_count - 1).at(1, 0, 0);
    const complexd amp = stored / (std::pow(kTwoPi, -1.5) * g.box_volume());
    const double tol = quad == Quadrature::Gauss2 ? 1e-8 : 2e-5;
    CHECK(std::abs(amp - amp_expected) <= tol * std::abs(amp_expected));
  }
}

TEST_CASE("duhamel resonant case grows linearly") {
  const GridSpec g(16, 1);
  const TimeGrid tg(1.0, 129);
  const complexd a1(0.5, 0.2), a2(0.1, -0.7), a3(-0.4, 0.3);
  // xi1 = xi3 = (1,0,0), xi2 = (1,0,0): xi = (1,0,0), Phi = 0 identically
  const LinearTrajectory u1(plane_wave(g, a1, {1, 0, 0}));
  const LinearTrajectory u2(plane_wave(g, a2, {1, 0, 0}));
  const LinearTrajectory u3(plane_wave(g, a3, {1, 0, 0}));
  const FieldTrajectory out = duhamel_trilinear(u1, u2, u3, tg, Quadrature::Gauss2);
  for (int m : {32, 64, 128}) {
    const double t = tg.node(m);
    const complexd stored = out.node(m).at(1, 0, 0);
    const double amp = std::abs(stored) / (std::pow(kTwoPi, -1.5) * g.box_volume());
    const double expect = std::abs(a1) * std::abs(a2) * std::abs(a3) * t;
    CHECK(std::fabs(amp - expect) <= 1e-8 * expect);
  }
}

TEST_CASE("duhamel is additive in each slot") {
  const GridSpec g(8, 1);
  const TimeGrid tg(0.4, 9);
  const FieldTrajectory a = free_traj(random_field(g, 10, 2), tg);
  const FieldTrajectory b = free_traj(random_field(g, 11, 2), tg);
  const FieldTrajectory c = free_traj(random_field(g, 12, 2), tg);
  FieldTrajectory ab(g, tg);
  for (int m = 0; m < tg.node_count; ++m) ab.node(m) = a.node(m) + b.node(m);

  for (int slot = 0; slot < 3; ++slot) {
    auto pick = [&](const FieldTrajectory& x) {
      const FieldTrajectory* u[3] = {&c, &c, &c};
      u[slot] = &x;
      return duhamel_trilinear(*u[0], *u[1], *u[2], tg);
    };
    const FieldTrajectory sum = pick(ab);
    const FieldTrajectory pa = pick(a);
    const FieldTrajectory pb = pick(b);
    double worst = 0.0, scale = 0.0;
    for (int m = 0; m < tg.node_count; ++m) {
      worst = std::max(worst, max_coeff_diff(sum.node(m), pa.node(m) + pb.node(m)));
      scale = std::max(scale, sobolev_norm(sum.node(m), 0.0));
    }
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("trapezoid quadrature self-converges at order two or better") {
  const GridSpec g(16, 1);
  const complexd a1(0.8, 0.1), a2(-0.3, 0.6), a3(0.5, -0.5);
  const LinearTrajectory u1(plane_wave(g, a1, {2, 0, 0}));
  const LinearTrajectory u2(plane_wave(g, a2, {1, 0, 0}));
  const LinearTrajectory u3(plane_wave(g, a3, {0, 1, 0}));
  // xi = (1, 1, 0), Phi = |xi|^2 - 4 + 1 - 1 = -2
  auto error_at = [&](int nodes) {
    const TimeGrid tg(1.0, nodes);
    const FieldTrajectory out = duhamel_trilinear(u1, u2, u3, tg, Quadrature::Trapezoid);
    const complexd stored = out.node(nodes - 1).at(1, 1, 0);
    const complexd amp = stored / (std::pow(kTwoPi, -1.5) * g.box_volume());
    return std::abs(amp - plane_wave_oracle(a1, a2, a3, -2.0, 2.0, 1.0));
  };
  const double e1 = error_at(33), e2 = error_at(65);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("split step: zero data, linear limit, mass conservation") {
  const GridSpec g(16, 1);
  const TimeGrid tg(0.5, 101);
  const SpectralField zero(g);
  const FieldTrajectory ztraj = split_step_reference(zero, tg);
  CHECK(sobolev_norm(ztraj.node(100), 0.0) == 0.0);

  SpectralField f = random_field(g, 20, 3);
  f *= complexd(0.05);
  const FieldTrajectory lin = split_step_reference(f, tg, false);
  const SpectralField direct = evolve_linear(f, tg.horizon);
  CHECK(max_coeff_diff(lin.node(100), direct) < 1e-12);

  const FieldTrajectory full = split_step_reference(f, tg, true);
  const double m0 = sobolev_norm(f, 0.0);
  CHECK(std::fabs(sobolev_norm(full.node(100), 0.0) - m0) <= 1e-10 * m0);
}

TEST_CASE("split step self-converges at second order") {
  const GridSpec g(16, 1);
  SpectralField f = random_field(g, 30, 3);
  f *= complexd(1.0 / sobolev_norm(f, 0.0));

  auto final_state = [&](int nodes) {
    const TimeGrid tg(0.5, nodes);
    return split_step_reference(f, tg).node(nodes - 1);
  };
  const SpectralField a = final_state(26);
  const SpectralField b = final_state(51);
  const SpectralField c = final_state(101);
  const double e1 = sobolev_norm(a - c, 0.0);
  const double e2 = sobolev_norm(b - c, 0.0);
  // Richardson: |u_h - u| ~ C h^2, so (a - c)/(b - c) ~ (4 - 1)/(...) use a-b vs b-c
  const double d1 = sobolev_norm(a - b, 0.0);
  const double d2 = sobolev_norm(b - c, 0.0);
  CHECK(d1 / d2 >= 3.0);
  CHECK(d1 / d2 <= 5.5);
  CHECK(e1 > e2);
}

TEST_CASE("split step detects blow-up") {
  const GridSpec g(8, 1);
  SpectralField f = random_field(g, 40);
  f *= complexd(1e9);
  CHECK_THROWS_AS(split_step_reference(f, TimeGrid(1.0, 51)), std::runtime_error);
}

TEST_SUITE_END();
