#pragma once

#include <vector>

namespace polylim {

// One finite-size ratio estimate plotted against x = 1/(2 n0).
struct RatioSeriesPoint {
  double x = 0;
  double y = 0;
  double weight = 1;  // 1/stderr^2 when an error bar is available
};

struct FitResult {
  double a = 0;  // intercept: the n0 -> infinity ratio
  double b = 0;  // slope
  double residual_ss = 0;
  double stderr_a = 0;
  double stderr_b = 0;
};

// Weighted least squares of y = a + b x.  Throws DegenerateFitError when
// fewer than two distinct abscissae are given.
FitResult wls_fit(const std::vector<RatioSeriesPoint>& points);

}  // namespace polylim
