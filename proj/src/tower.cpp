#include "randwave/tower.hpp"

#include <cmath>
#include <functional>

#include "randwave/fft.hpp"
#include "randwave/ops.hpp"

namespace randwave {

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

Rational::Rational(__int128 n, __int128 d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
  return Rational(num * o.den, den * o.num);
}
bool Rational::operator<(const Rational& o) const { return num * o.den < o.num * den; }

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

std::string Rational::str() const {
  auto print128 = [](__int128 v) {
    if (v == 0) return std::string("0");
    std::string s;
    bool neg = v < 0;
    if (neg) v = -v;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return neg ? "-" + s : s;
  };
  if (den == 1) return print128(num);
  return print128(num) + "/" + print128(den);
}

Rational alpha(int k) {
  if (k < 1) throw std::invalid_argument("alpha: k must be >= 1");
  Rational a(1);
  for (int j = 2; j <= k; ++j) a = (a + Rational(3)) / Rational(2);
  return a;
}

Rational alpha_closed_form(int k) {
  if (k < 1) throw std::invalid_argument("alpha_closed_form: k must be >= 1");
  // 3 - 2^{2-k} = 3 - 4/2^k
  return Rational(3) - Rational(4, static_cast<__int128>(1) << k);
}

Rational step_threshold(int k) { return Rational(1) / (Rational(2) * alpha(k + 1)); }

PredictedSigma predicted_sigma(int k, double s) {
  if (k < 1) throw std::invalid_argument("predicted_sigma: k must be >= 1");
  PredictedSigma out;
  out.value = alpha(k).to_double() * s;
  const double upper = k == 1 ? 1.0 : 1.0 / alpha(k - 1).to_double();
  out.within_hypothesis = s > 0.0 && s < upper;
  return out;
}

int step_count_for(double s) {
  if (!(s > 1.0 / 6.0))
    throw std::invalid_argument("step_count_for: s must exceed 1/6");
  if (!(s < 0.5)) throw std::invalid_argument("step_count_for: s must be below 1/2");
  for (int k = 1;; ++k) {
    if (s > step_threshold(k).to_double()) return k;
  }
}

namespace {

// 2 |a|^2 b + a^2 conj(b), the fused (1, 1, j) triple sum in physical space
void fused_pair(const std::vector<complexd>& a, const std::vector<complexd>& b,
                std::vector<complexd>& out) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i) {
    const complexd ai = a[i];
    out[i] = 2.0 * std::norm(ai) * b[i] + ai * ai * std::conj(b[i]);
  }
}

void cubic_phys(const std::vector<complexd>& a, std::vector<complexd>& out) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(a.size()); ++i)
    out[i] = std::norm(a[i]) * a[i];
}

struct OrderState {
  SpectralField w;       // int_0^t S(-t') F dt', accumulated
  SpectralField w_prev;  // value at the previous node, for interpolation
  SpectralField g_prev;  // integrand at the previous node (trapezoid)
};

// One sweep over the time nodes advancing every order of the tower; sink
// receives the spectral fields of orders 1, 3, ..., 2k-1 at each node.  Each
// order is advanced only from already-final lower orders, so the update is
// well defined at interior quadrature times too.
void sweep_tower(const SpectralField& phi_omega, const TimeGrid& tg, int k_max,
                 ExpansionVariant variant, Quadrature quad,
                 const std::function<void(int, const std::vector<SpectralField>&)>& sink) {
  if (k_max < 1) throw std::invalid_argument("tower: k_max must be >= 1");
  if (variant == ExpansionVariant::FullZ && k_max > kFullZOrderCap)
    throw std::invalid_argument("tower: full-z variant is capped at k_max = 4");

  const GridSpec& grid = phi_omega.grid;
  const std::size_t npts = grid.point_count();
  const double dt = tg.dt();
  const complexd minus_i(0.0, -1.0);

  std::vector<OrderState> states(std::max(0, k_max - 1));
  for (auto& st : states) {
    st.w = SpectralField(grid);
    st.w_prev = SpectralField(grid);
    st.g_prev = SpectralField(grid);
  }

  SpectralField ftmp(grid), g(grid);
  std::vector<complexd> work(npts);

  // spectral value of order index o (o >= 1, order 2o+1... orders are
  // 2o+1 with o starting at 1 counting states) at node time t
  auto order_field = [&](const OrderState& st, double t, SpectralField& out) {
    out = st.w;
    evolve_linear_in_place(out, t);
    out *= minus_i;
  };

  // physical samples of tower member `idx` (0 = z1) at time t inside the
  // current subinterval [t0, t1]; lower orders interpolate S(-t)u linearly
  auto member_phys = [&](int idx, double t, double t0, double t1,
                         std::vector<complexd>& out) {
    if (idx == 0) {
      ftmp = phi_omega;
      evolve_linear_in_place(ftmp, t);
    } else {
      const OrderState& st = states[idx - 1];
      const double theta = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
      ftmp.grid = grid;
      ftmp.coeff.resize(npts);
      for (std::size_t i = 0; i < npts; ++i)
        ftmp.coeff[i] = (1.0 - theta) * st.w_prev.coeff[i] + theta * st.w.coeff[i];
      evolve_linear_in_place(ftmp, t);
      ftmp *= minus_i;
    }
    out = fft::inverse_transform(ftmp);
  };

  // integrand G(t) = S(-t) F_o(t) given physical z1 and the direct input
  // member(s); z3_phys is only consulted by the full-z order 7
  auto integrand = [&](int o, double t, const std::vector<complexd>& z1_phys,
                       const std::vector<complexd>& lower_phys,
                       const std::vector<complexd>* z3_phys, SpectralField& out) {
    if (o == 1) {
      cubic_phys(z1_phys, work);
    } else {
      fused_pair(z1_phys, lower_phys, work);
      if (variant == ExpansionVariant::FullZ && o == 3) {
        std::vector<complexd> extra(npts);
        fused_pair(*z3_phys, z1_phys, extra);
        for (std::size_t i = 0; i < npts; ++i) work[i] += extra[i];
      }
    }
    out = fft::forward_transform(work, grid);
    apply_dealias_mask(out);
    evolve_linear_in_place(out, -t);
  };

  std::vector<SpectralField> at_node(k_max, SpectralField(grid));
  at_node[0] = phi_omega;
  for (int o = 1; o < k_max; ++o) at_node[o].fill_zero();
  sink(0, at_node);

  std::vector<complexd> z1_phys(npts), lower_phys(npts), z3_phys(npts);

  if (quad == Quadrature::Trapezoid) {
    member_phys(0, 0.0, 0.0, dt, z1_phys);
    for (int o = 1; o < k_max; ++o) {
      if (o >= 2) member_phys(o - 1, 0.0, 0.0, dt, lower_phys);
      if (variant == ExpansionVariant::FullZ && o == 3) member_phys(1, 0.0, 0.0, dt, z3_phys);
      integrand(o, 0.0, z1_phys, lower_phys, &z3_phys, states[o - 1].g_prev);
    }
  }

  for (int m = 1; m < tg.node_count; ++m) {
    const double t0 = tg.node(m - 1), t1 = tg.node(m);
    for (auto& st : states) st.w_prev = st.w;

    if (quad == Quadrature::Trapezoid) {
      member_phys(0, t1, t0, t1, z1_phys);
      for (int o = 1; o < k_max; ++o) {
        // order o-1 was already advanced to t1 in this loop, so its node
        // value is exact here
        if (o >= 2) {
          order_field(states[o - 2], t1, ftmp);
          lower_phys = fft::inverse_transform(ftmp);
        }
        if (variant == ExpansionVariant::FullZ && o == 3) {
          order_field(states[0], t1, ftmp);
          z3_phys = fft::inverse_transform(ftmp);
        }
        integrand(o, t1, z1_phys, lower_phys, &z3_phys, g);
        OrderState& st = states[o - 1];
        for (std::size_t i = 0; i < npts; ++i)
          st.w.coeff[i] += 0.5 * dt * (st.g_prev.coeff[i] + g.coeff[i]);
        std::swap(st.g_prev, g);
      }
    } else {
      const double mid = 0.5 * (t0 + t1);
      const double off = 0.5 * dt / std::sqrt(3.0);
      const double tgauss[2] = {mid - off, mid + off};
      std::vector<std::vector<complexd>> z1_gauss(2, std::vector<complexd>(npts));
      member_phys(0, tgauss[0], t0, t1, z1_gauss[0]);
      member_phys(0, tgauss[1], t0, t1, z1_gauss[1]);
      for (int o = 1; o < k_max; ++o) {
        OrderState& st = states[o - 1];
        for (int gp = 0; gp < 2; ++gp) {
          if (o >= 2) member_phys(o - 1, tgauss[gp], t0, t1, lower_phys);
          if (variant == ExpansionVariant::FullZ && o == 3)
            member_phys(1, tgauss[gp], t0, t1, z3_phys);
          integrand(o, tgauss[gp], z1_gauss[gp], lower_phys, &z3_phys, g);
          for (std::size_t i = 0; i < npts; ++i) st.w.coeff[i] += 0.5 * dt * g.coeff[i];
        }
      }
    }

    at_node[0] = phi_omega;
    evolve_linear_in_place(at_node[0], t1);
    for (int o = 1; o < k_max; ++o) order_field(states[o - 1], t1, at_node[o]);
    sink(m, at_node);
  }
}

ExpansionSet build_tower(const FieldTrajectory& z1, int k_max, ExpansionVariant variant,
                         Quadrature quad) {
  ExpansionSet set;
  set.variant = variant;
  set.grid = z1.grid;
  set.time_grid = z1.time_grid;
  set.quadrature = quad;
  set.terms.assign(k_max, FieldTrajectory(z1.grid, z1.time_grid));
  sweep_tower(z1.node(0), z1.time_grid, k_max, variant, quad,
              [&](int m, const std::vector<SpectralField>& fields) {
                for (int o = 0; o < k_max; ++o) set.terms[o].node(m) = fields[o];
              });
  return set;
}

}  // namespace

void run_tower_stream(const SpectralField& phi_omega, const TimeGrid& tg, int k_max,
                      ExpansionVariant variant, Quadrature quad,
                      const std::function<void(int, const std::vector<SpectralField>&)>& sink) {
  sweep_tower(phi_omega, tg, k_max, variant, quad, sink);
}

ExpansionSet build_z_terms(const FieldTrajectory& z1, int k_max, Quadrature quad) {
  if (k_max > kFullZOrderCap)
    throw std::invalid_argument("build_z_terms: k_max exceeds the order cap 4");
  return build_tower(z1, k_max, ExpansionVariant::FullZ, quad);
}

ExpansionSet build_zeta_terms(const FieldTrajectory& z1, int k_max, Quadrature quad) {
  return build_tower(z1, k_max, ExpansionVariant::UnbalancedZeta, quad);
}

TowerCapture run_zeta_tower_capture(const SpectralField& phi_omega, const TimeGrid& tg,
                                    int k_max, double t_capture, Quadrature quad) {
  const double dt = tg.dt();
  const int target = static_cast<int>(std::lround(t_capture / dt));
  if (target < 0 || target >= tg.node_count ||
      std::fabs(tg.node(target) - t_capture) > 0.5 * dt)
    throw std::invalid_argument("run_zeta_tower_capture: capture time off the node lattice");
  TowerCapture cap;
  for (int o = 0; o < k_max; ++o) cap.orders.push_back(2 * o + 1);
  cap.fields_at_capture.assign(k_max, SpectralField(phi_omega.grid));
  run_tower_stream(phi_omega, tg, k_max, ExpansionVariant::UnbalancedZeta, quad,
                   [&](int m, const std::vector<SpectralField>& fields) {
                     if (m == target)
                       for (int o = 0; o < k_max; ++o) cap.fields_at_capture[o] = fields[o];
                   });
  return cap;
}

FieldTrajectory forcing_sum(const ExpansionSet& set, int k) {
  if (k < 1 || k > set.depth())
    throw std::invalid_argument("forcing_sum: k outside the stored depth");
  if (set.variant == ExpansionVariant::FullZ && k > 2)
    throw std::invalid_argument(
        "forcing_sum: full-z residual forcing is only defined for k <= 2");
  const GridSpec& grid = set.grid;
  FieldTrajectory out(grid, set.time_grid);
  if (k == 1) return out;  // empty sum

  const std::size_t npts = grid.point_count();
  std::vector<complexd> acc(npts), tmp(npts);
  for (int m = 0; m < set.time_grid.node_count; ++m) {
    const std::vector<complexd> z1p = fft::inverse_transform(set.order(1).node(m));
    cubic_phys(z1p, acc);
    for (int l = 3; l <= k; ++l) {
      const std::vector<complexd> zp = fft::inverse_transform(set.order(2 * l - 3).node(m));
      fused_pair(z1p, zp, tmp);
      for (std::size_t i = 0; i < npts; ++i) acc[i] += tmp[i];
    }
    out.node(m) = fft::forward_transform(acc, grid);
    apply_dealias_mask(out.node(m));
  }
  return out;
}

}  // namespace randwave
