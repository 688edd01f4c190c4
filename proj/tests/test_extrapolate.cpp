#include <doctest.h>

#include <cmath>

#include "polylim/errors.hpp"
#include "polylim/extrapolate.hpp"
#include "polylim/rng.hpp"

using namespace polylim;

TEST_CASE("points exactly on a line are fit exactly") {
  std::vector<RatioSeriesPoint> pts;
  for (int n0 : {32, 64, 128, 256, 512}) {
    const double x = 1.0 / (2.0 * n0);
    pts.push_back({x, 1.06 + 0.5 * x, 1.0});
  }
  const FitResult fit = wls_fit(pts);
  CHECK(fit.a == doctest::Approx(1.06).epsilon(1e-12));
  CHECK(fit.b == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fit.residual_ss == doctest::Approx(0.0));
}

TEST_CASE("degenerate fits are rejected") {
  CHECK_THROWS_AS(wls_fit({{0.5, 1.0, 1.0}}), DegenerateFitError);
  CHECK_THROWS_AS(wls_fit({{0.5, 1.0, 1.0}, {0.5, 1.2, 1.0}}), DegenerateFitError);
}

TEST_CASE("synthetic noisy data recovers 10/(3 pi) within two stderr") {
  const double target = 10.0 / (3.0 * 3.14159265358979323846);
  Xoshiro256 rng(20240601);
  auto gauss = [&]() {
    // sum of 12 uniforms, variance 1
    double s = 0;
    for (int i = 0; i < 12; ++i) s += static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    return s - 6.0;
  };
  std::vector<RatioSeriesPoint> pts;
  for (int two_n0 : {64, 128, 256, 512, 1024}) {
    const double x = 1.0 / two_n0;
    const double sigma = 0.002;
    pts.push_back({x, target + 0.8 * x + sigma * gauss(), 1.0 / (sigma * sigma)});
  }
  const FitResult fit = wls_fit(pts);
  CHECK(std::abs(fit.a - target) <= 2.0 * fit.stderr_a);
}

TEST_CASE("weights steer the fit") {
  // Two clusters; the heavily weighted one dominates the intercept.
  std::vector<RatioSeriesPoint> pts{{0.1, 1.0, 1e6}, {0.2, 1.0, 1e6}, {0.3, 5.0, 1e-6}};
  const FitResult fit = wls_fit(pts);
  CHECK(fit.a == doctest::Approx(1.0).epsilon(1e-3));
}
