#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "polylim/model.hpp"
#include "polylim/numeric.hpp"
#include "polylim/polygon.hpp"

namespace polylim {

enum class Exec { Serial, Parallel };

// Desk-scale guards: every oracle below finishes in well under a minute.
inline constexpr int kMaxStaircaseN0 = 14;
inline constexpr int kMaxSapPerimeter = 16;
inline constexpr int kMaxWalkLength = 22;

// All staircase polygons of half-perimeter n0 (exactly C_{n0-1} of them),
// in lexicographic order of their boundary step strings.
void enumerate_staircase(int n0, const std::function<void(const StaircasePolygon&)>& emit);

// All self-avoiding polygons of the given perimeter up to translation, each
// exactly once, in lexicographic order of their canonical step strings.
void enumerate_sap(int perimeter, const std::function<void(const LatticePolygon&)>& emit);

// All walks of the given model and length, in lexicographic order (d < u).
// Length 0 yields the single empty walk.
void enumerate_walks(Model model, int length,
                     const std::function<void(const std::vector<int8_t>&)>& emit);

Int staircase_count(int n0);  // C_{n0-1}

// Histogram of a counting model: for each grade (half-perimeter, width+height
// or walk length) the exact count per exponent tuple.  Keys match the series
// engine: (n_1..n_M) for diagonal/walk models, (h, m_1..m_M) for the column
// model.
struct MomentHistogram {
  int M = 1;
  std::vector<std::map<std::vector<int64_t>, Int>> by_grade;
};

MomentHistogram staircase_diagonal_histogram(int n0_max, int M, Exec exec = Exec::Serial);
MomentHistogram staircase_column_histogram(int n0_max, int M, Exec exec = Exec::Serial);
MomentHistogram walk_histogram(Model model, int length_max, int M, Exec exec = Exec::Serial);

// Totals of the SAP layer moments at fixed perimeter: polygon count and
// sum over polygons of n_k^(a), n_k^(b) for k = 0..kmax.
struct SapLayerTotals {
  int64_t polygons = 0;
  std::vector<int64_t> sum_a;  // k = 0..kmax
  std::vector<int64_t> sum_b;
  std::vector<int64_t> sum_a_sq;  // sums of n_k^2, for exact second moments
  std::vector<int64_t> sum_b_sq;
};
SapLayerTotals sap_layer_totals(int perimeter, int kmax,
                                LayerFamily family = LayerFamily::Diagonal,
                                Exec exec = Exec::Serial);

}  // namespace polylim
