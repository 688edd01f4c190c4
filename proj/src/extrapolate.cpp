#include "polylim/extrapolate.hpp"

#include <cmath>

#include "polylim/errors.hpp"

namespace polylim {

FitResult wls_fit(const std::vector<RatioSeriesPoint>& points) {
  if (points.size() < 2) throw DegenerateFitError();
  double W = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (const auto& p : points) {
    W += p.weight;
    Sx += p.weight * p.x;
    Sy += p.weight * p.y;
    Sxx += p.weight * p.x * p.x;
    Sxy += p.weight * p.x * p.y;
  }
  const double denom = W * Sxx - Sx * Sx;
  // denom == 0 exactly when all abscissae coincide.
  if (!(std::fabs(denom) > 1e-300 * (1 + W * Sxx))) throw DegenerateFitError();

  FitResult fit;
  fit.a = (Sxx * Sy - Sx * Sxy) / denom;
  fit.b = (W * Sxy - Sx * Sy) / denom;
  for (const auto& p : points) {
    const double r = p.y - fit.a - fit.b * p.x;
    fit.residual_ss += p.weight * r * r;
  }
  // With weights 1/sigma^2 these are the standard parameter errors.
  fit.stderr_a = std::sqrt(Sxx / denom);
  fit.stderr_b = std::sqrt(W / denom);
  return fit;
}

}  // namespace polylim
