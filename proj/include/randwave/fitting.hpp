#pragma once

#include <utility>
#include <vector>

namespace randwave {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_se = 0.0;  // standard error of residuals in log units
  double r_squared = 0.0;
  int sample_count = 0;
  double abscissa_min = 0.0;
  double abscissa_max = 0.0;
};

// Least squares line through the given points (already in log coordinates).
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

// log2-log2 power-law fit of y against x; nonpositive pairs are dropped.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct TailCurve {
  std::vector<double> lambda;
  std::vector<double> exceedance;  // P(value > lambda), nonincreasing
  int ensemble_size = 0;
};

// Empirical exceedance over a fixed sample set at the given thresholds.
TailCurve tail_curve(const std::vector<double>& samples, const std::vector<double>& lambdas);

// Linear fit of log P against lambda^2 over the points with 0 < P < 1.
FitResult tail_gaussian_fit(const TailCurve& curve);

double median(std::vector<double> v);

}  // namespace randwave
