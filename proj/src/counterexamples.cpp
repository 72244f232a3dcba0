#include <cmath>
#include <unordered_map>

#include "randwave/experiments.hpp"

namespace randwave {

namespace {

std::int64_t pack_key(int x, int y, int z) {
  auto enc = [](int v) { return static_cast<std::int64_t>(v + (1 << 20)); };
  return (enc(x) << 42) | (enc(y) << 21) | enc(z);
}

double phase_of(const std::array<int, 3>& m, const std::array<int, 3>& m1,
                const std::array<int, 3>& m3, double inv_r2) {
  // Phi = 2 <xi - xi1, xi - xi3> with xi = m / R
  double acc = 0.0;
  for (int d = 0; d < 3; ++d)
    acc += static_cast<double>(m[d] - m1[d]) * static_cast<double>(m[d] - m3[d]);
  return 2.0 * acc * inv_r2;
}

complexd time_kernel(double t, double phi) {
  // int_0^t e^{i t' phi} dt' = (e^{i t phi} - 1) / (i phi), -> t as phi -> 0
  if (std::fabs(t * phi) < 1e-8) {
    // two-term series keeps full precision through the resonant limit
    return complexd(t, 0.5 * t * t * phi);
  }
  const complexd num = complexd(std::cos(t * phi) - 1.0, std::sin(t * phi));
  return num / complexd(0.0, phi);
}

}  // namespace

SparseField sparse_box(const Vec3& center, double lambda, int oversampling) {
  SparseField f;
  f.oversampling = oversampling;
  const double half = 0.5 * lambda;
  std::array<std::pair<int, int>, 3> range;
  for (int d = 0; d < 3; ++d) {
    // m/R - c in (-lambda/2, lambda/2]
    const int lo = static_cast<int>(std::floor((center[d] - half) * oversampling)) ;
    const int hi = static_cast<int>(std::ceil((center[d] + half) * oversampling));
    range[d] = {lo, hi};
  }
  for (int x = range[0].first; x <= range[0].second; ++x)
    for (int y = range[1].first; y <= range[1].second; ++y)
      for (int z = range[2].first; z <= range[2].second; ++z) {
        bool inside = true;
        const std::array<int, 3> m{x, y, z};
        for (int d = 0; d < 3; ++d) {
          const double rel = static_cast<double>(m[d]) / oversampling - center[d];
          if (!(rel > -half && rel <= half)) {
            inside = false;
            break;
          }
        }
        if (inside) f.push(m, complexd(1.0));
      }
  return f;
}

double sparse_l2(const SparseField& f) { return sparse_sobolev(f, 0.0); }

double sparse_sobolev(const SparseField& f, double s) {
  const double r3 = 1.0 / (static_cast<double>(f.oversampling) * f.oversampling *
                           f.oversampling);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& m = f.support[i];
    const double xi2 = (static_cast<double>(m[0]) * m[0] + static_cast<double>(m[1]) * m[1] +
                        static_cast<double>(m[2]) * m[2]) /
                       (static_cast<double>(f.oversampling) * f.oversampling);
    acc += std::pow(1.0 + xi2, s) * std::norm(f.values[i]);
  }
  return std::sqrt(acc * r3);
}

double sparse_max_phase(const SparseField& f1, const SparseField& f2,
                        const SparseField& f3) {
  const double inv_r2 = 1.0 / (static_cast<double>(f1.oversampling) * f1.oversampling);
  double mx = 0.0;
  for (const auto& m1 : f1.support)
    for (const auto& m3 : f3.support)
      for (const auto& m2 : f2.support) {
        const std::array<int, 3> m{m1[0] - m2[0] + m3[0], m1[1] - m2[1] + m3[1],
                                   m1[2] - m2[2] + m3[2]};
        mx = std::max(mx, std::fabs(phase_of(m, m1, m3, inv_r2)));
      }
  return mx;
}

SparseField sparse_duhamel_linear(const SparseField& f1, const SparseField& f2,
                                  const SparseField& f3, double t) {
  if (f1.oversampling != f2.oversampling || f1.oversampling != f3.oversampling)
    throw std::invalid_argument("sparse_duhamel_linear: lattice mismatch");
  const int r = f1.oversampling;
  const double inv_r2 = 1.0 / (static_cast<double>(r) * r);
  const double scale =
      std::pow(kTwoPi, -3.0) * std::pow(static_cast<double>(r), -6.0);

  std::unordered_map<std::int64_t, complexd> acc;
  acc.reserve(f1.size() * 4);
  std::unordered_map<std::int64_t, std::array<int, 3>> keys;
  keys.reserve(f1.size() * 4);

  for (std::size_t i1 = 0; i1 < f1.size(); ++i1) {
    const auto& m1 = f1.support[i1];
    const complexd c1 = f1.values[i1];
    for (std::size_t i3 = 0; i3 < f3.size(); ++i3) {
      const auto& m3 = f3.support[i3];
      const complexd c13 = c1 * f3.values[i3];
      for (std::size_t i2 = 0; i2 < f2.size(); ++i2) {
        const auto& m2 = f2.support[i2];
        const std::array<int, 3> m{m1[0] - m2[0] + m3[0], m1[1] - m2[1] + m3[1],
                                   m1[2] - m2[2] + m3[2]};
        const double phi = phase_of(m, m1, m3, inv_r2);
        const complexd contrib = c13 * std::conj(f2.values[i2]) * time_kernel(t, phi);
        const std::int64_t key = pack_key(m[0], m[1], m[2]);
        acc[key] += contrib;
        keys.emplace(key, m);
      }
    }
  }

  SparseField out;
  out.oversampling = r;
  const complexd minus_i(0.0, -1.0);
  for (const auto& [key, value] : acc) out.push(keys.at(key), minus_i * scale * value);
  return out;
}

BoxConvolutionResult box_convolution_bound(const Vec3& a, const Vec3& b, double lambda,
                                           int oversampling) {
  const SparseField fa = sparse_box(a, lambda, oversampling);
  const SparseField fb = sparse_box(b, lambda, oversampling);
  const Vec3 sum{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  const SparseField target = sparse_box(sum, lambda, oversampling);

  std::unordered_map<std::int64_t, double> conv;
  for (const auto& ma : fa.support)
    for (const auto& mb : fb.support)
      conv[pack_key(ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])] += 1.0;

  const double cell = 1.0 / (static_cast<double>(oversampling) * oversampling *
                             oversampling);
  BoxConvolutionResult res;
  res.min_on_sum_box = 1e300;
  for (const auto& m : target.support) {
    const auto it = conv.find(pack_key(m[0], m[1], m[2]));
    const double v = it == conv.end() ? 0.0 : it->second * cell;
    res.min_on_sum_box = std::min(res.min_on_sum_box, v);
  }
  res.fitted_c = res.min_on_sum_box / (lambda * lambda * lambda);
  return res;
}

void CounterexampleSpec::validate_single_cube() const {
  if (lambda_box < 1.0 / oversampling)
    throw std::invalid_argument("CounterexampleSpec: boxes must contain lattice points");
  if (offset_factor * lambda_box <= lambda_box)
    throw std::invalid_argument("CounterexampleSpec: boxes are not disjoint");
  const double reach = n_center + offset_factor * lambda_box + 0.5 * lambda_box;
  if (reach > max_abs_freq)
    throw std::invalid_argument("CounterexampleSpec: boxes exceed the lattice capacity");
}

Z3CounterexampleResult z3_nonsmoothing_counterexample(const CounterexampleSpec& spec,
                                                      const std::vector<double>& n_list,
                                                      double sigma) {
  Z3CounterexampleResult res;
  const int r = spec.oversampling;
  const double lam = spec.lambda_box;
  const double off = spec.offset_factor * lam;

  auto build_data = [&](double n, double lambda) {
    CounterexampleSpec check = spec;
    check.n_center = n;
    check.lambda_box = lambda;
    check.validate_single_cube();
    const double o = spec.offset_factor * lambda;
    SparseField f = sparse_box({n, 0, 0}, lambda, r);
    const SparseField b2 = sparse_box({n + o, 0, 0}, lambda, r);
    const SparseField b3 = sparse_box({n, o, 0}, lambda, r);
    for (std::size_t i = 0; i < b2.size(); ++i) f.push(b2.support[i], b2.values[i]);
    for (std::size_t i = 0; i < b3.size(); ++i) f.push(b3.support[i], b3.values[i]);
    return f;
  };

  // Phi only involves frequency differences, so it does not depend on N;
  // pick t* once from the smallest configuration.
  const SparseField probe = build_data(n_list.front(), lam);
  const double max_phi = sparse_max_phase(probe, probe, probe);
  res.t_star = 0.1 / std::max(max_phi, 1e-12);

  for (double n : n_list) {
    const SparseField data = build_data(n, lam);
    const SparseField z3 = sparse_duhamel_linear(data, data, data, res.t_star);
    res.n_values.push_back(n);
    res.hs_norms.push_back(sparse_sobolev(z3, sigma));
    res.data_l2.push_back(sparse_l2(data));

    // min |z3_hat| over Q_{N,lambda} = N e1 + c_off lambda (e1 + e2) + lambda Q
    const SparseField target = sparse_box({n + off, off, 0}, lam, r);
    std::unordered_map<std::int64_t, double> mag;
    for (std::size_t i = 0; i < z3.size(); ++i)
      mag[pack_key(z3.support[i][0], z3.support[i][1], z3.support[i][2])] =
          std::abs(z3.values[i]);
    double mn = 1e300;
    for (const auto& m : target.support) {
      const auto it = mag.find(pack_key(m[0], m[1], m[2]));
      mn = std::min(mn, it == mag.end() ? 0.0 : it->second);
    }
    res.min_on_box.push_back(mn);
  }
  res.growth_fit = fit_loglog(res.n_values, res.hs_norms);

  // lambda sweep at fixed N for the data-size law and the fitted constant
  const double n_fix = n_list.back();
  for (double lambda : {lam, 2.0 * lam, 4.0 * lam}) {
    const double o = spec.offset_factor * lambda;
    CounterexampleSpec check = spec;
    check.n_center = n_fix;
    check.lambda_box = lambda;
    check.validate_single_cube();
    const SparseField data = build_data(n_fix, lambda);
    const double max_phi_l = sparse_max_phase(data, data, data);
    const double t_l = 0.1 / std::max(max_phi_l, 1e-12);
    const SparseField z3 = sparse_duhamel_linear(data, data, data, t_l);
    const SparseField target = sparse_box({n_fix + o, o, 0}, lambda, r);
    std::unordered_map<std::int64_t, double> mag;
    for (std::size_t i = 0; i < z3.size(); ++i)
      mag[pack_key(z3.support[i][0], z3.support[i][1], z3.support[i][2])] =
          std::abs(z3.values[i]);
    double mn = 1e300;
    for (const auto& m : target.support) {
      const auto it = mag.find(pack_key(m[0], m[1], m[2]));
      mn = std::min(mn, it == mag.end() ? 0.0 : it->second);
    }
    res.lambda_values.push_back(lambda);
    res.lambda_data_l2.push_back(sparse_l2(data));
    res.fitted_c0.push_back(mn / (t_l * std::pow(lambda, 6.0)));
  }
  res.data_scaling_fit = fit_loglog(res.lambda_values, res.lambda_data_l2);
  return res;
}

TrilinearCounterexampleResult trilinear_nonsmoothing(const CounterexampleSpec& spec,
                                                     const std::vector<double>& n_list,
                                                     double lambda_ratio, double s,
                                                     double sigma) {
  TrilinearCounterexampleResult res;
  res.predicted_slope = sigma - 3.0 * s + 1.0;
  const int r = spec.oversampling;

  for (double n : n_list) {
    const double lam = lambda_ratio * n;
    const double l_cen = n;  // L ~ N
    if (lam < 1.0 / r)
      throw std::invalid_argument("trilinear_nonsmoothing: box too small for the lattice");
    if (n + 0.5 * lam > spec.max_abs_freq)
      throw std::invalid_argument("trilinear_nonsmoothing: boxes exceed the lattice");
    const SparseField a1 = sparse_box({l_cen, 0, 0}, lam, r);
    const SparseField a2 = sparse_box({0, 0, 0}, lam, r);
    const SparseField a3 = sparse_box({0, n, 0}, lam, r);

    const double max_phi = sparse_max_phase(a1, a2, a3);
    const double t_star = 0.1 / std::max(max_phi, 1e-12);  // ~ 1/(NL) by construction
    const SparseField z = sparse_duhamel_linear(a1, a2, a3, t_star);

    const double denom = sparse_sobolev(a1, s) * sparse_sobolev(a2, s) * sparse_sobolev(a3, s);
    res.n_values.push_back(n);
    res.t_stars.push_back(t_star);
    res.denominators.push_back(denom);
    res.ratios.push_back(sparse_sobolev(z, sigma) / denom);
  }
  res.ratio_fit = fit_loglog(res.n_values, res.ratios);
  res.denominator_fit = fit_loglog(res.n_values, res.denominators);
  return res;
}

}  // namespace randwave
