#include "randwave/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randwave {

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");

  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_line: degenerate abscissa");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.sample_count = n;
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  fit.abscissa_min = *lo;
  fit.abscissa_max = *hi;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += r * r;
  }
  fit.residual_se = n > 2 ? std::sqrt(ssr / (n - 2)) : 0.0;
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log2(x[i]));
      ly.push_back(std::log2(y[i]));
    }
  }
  return fit_line(lx, ly);
}

TailCurve tail_curve(const std::vector<double>& samples, const std::vector<double>& lambdas) {
  TailCurve curve;
  curve.lambda = lambdas;
  std::sort(curve.lambda.begin(), curve.lambda.end());
  curve.ensemble_size = static_cast<int>(samples.size());
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  curve.exceedance.reserve(curve.lambda.size());
  for (double lam : curve.lambda) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), lam);
    curve.exceedance.push_back(static_cast<double>(sorted.end() - it) / sorted.size());
  }
  return curve;
}

FitResult tail_gaussian_fit(const TailCurve& curve) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < curve.lambda.size(); ++i) {
    const double p = curve.exceedance[i];
    if (p > 0.0 && p < 1.0) {
      x.push_back(curve.lambda[i] * curve.lambda[i]);
      y.push_back(std::log(p));
    }
  }
  return fit_line(x, y);
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace randwave
