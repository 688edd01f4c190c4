#pragma once

#include <cstdint>
#include <vector>

#include "polylim/enumerate.hpp"
#include "polylim/polygon.hpp"

namespace polylim {

// One sampling job at fixed half-perimeter.  The run is split into `chains`
// independent chains (each with its own burn-in and derived seed); the chains
// double as the batches of the batch-means error estimate, so chains >= 20
// keeps the stderr honest.  Results are deterministic in (config), whatever
// the thread count.
struct McConfig {
  int n0 = 32;
  int64_t samples = 100000;  // measurements, split evenly across chains
  int sweep_factor = 10;     // moves between measurements = sweep_factor * n0
  uint64_t seed = 1;
  int kmax = 2;
  LayerFamily family = LayerFamily::Diagonal;
  int64_t burnin_sweeps = 100;
  int chains = 20;
};

struct McEstimate {
  double value = 0;
  double stderr_ = 0;
  int64_t n_samples = 0;
  int n_batches = 0;
  uint64_t seed = 0;
};

struct McMomentRow {
  LayerVariant variant = LayerVariant::A;
  int k = 1;
  int r = 1;
  McEstimate est;
};
struct McRatioRow {  // m(2) / m(1)^2
  LayerVariant variant = LayerVariant::A;
  int k = 1;
  McEstimate est;
};

struct McResult {
  McConfig config;
  int64_t proposals = 0;
  int64_t accepted = 0;
  std::vector<McMomentRow> moments;
  std::vector<McRatioRow> ratios;
};

McResult mc_run(const McConfig& config, Exec exec = Exec::Parallel);

// One Metropolis move on a polygon given as its vertex cycle: pick two
// vertices, invert (point-reflect) or reflect the subwalk between them,
// reject if the result is not self-avoiding.  Exposed for the unit tests;
// returns true when the proposal was accepted.
class PolygonChain {
 public:
  PolygonChain(int n0, uint64_t seed, bool allow_reflections = true);
  ~PolygonChain();
  PolygonChain(const PolygonChain&) = delete;
  PolygonChain& operator=(const PolygonChain&) = delete;

  bool propose();
  void run_moves(int64_t n);
  const std::vector<Point>& vertices() const;
  uint64_t canonical_key() const;
  std::pair<MomentVector, MomentVector> measure(int kmax, LayerFamily family) const;
  void check_state() const;  // throws on a broken invariant
  int64_t proposals() const;
  int64_t accepted() const;

 private:
  struct Impl;
  Impl* impl_;
};

struct ChiSquareReport {
  double chi2 = 0;
  int dof = 0;
  double p_value = 0;
  int64_t measurements = 0;
  int64_t classes = 0;
};

// Bins the chain's visited states by translation class against the exact
// enumeration and reports the chi-square goodness of fit.  Measurements are
// spaced 10 * n0 moves apart.
ChiSquareReport chi_square_uniformity(int n0, int64_t measurements, uint64_t seed,
                                      bool allow_reflections = true);

// Upper tail of the chi-square distribution (regularized incomplete gamma).
double chi2_sf(double x, int dof);

}  // namespace polylim
