#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polylim/lattice.hpp"
#include "polylim/model.hpp"

namespace polylim {

// Moment vector (n_0, n_1, ..., n_M).  n_0 is model dependent: number of
// negative diagonals for polygons, walk length for walks, layer/segment
// count for the SAP layer variants.
struct MomentVector {
  int kmax = 0;
  std::vector<int64_t> n;  // size kmax + 1

  int64_t operator[](int k) const { return n[k]; }
};

enum class LayerVariant : uint8_t { A, B, Exact };
enum class LayerFamily : uint8_t { Diagonal, Vertical };

// Closed self-avoiding cycle of unit steps, up to translation.  The stored
// vertex list is translated so the lexicographically smallest visited vertex
// sits at the origin; the step order is kept as given.
struct LatticePolygon {
  std::vector<Dir> steps;
  std::vector<Point> vertices;  // vertices[i] = position before steps[i]

  int perimeter() const { return static_cast<int>(steps.size()); }
  int half_perimeter() const { return perimeter() / 2; }
  int64_t area() const;  // enclosed unit squares, via the shoelace sum
  std::string str() const { return dirs_to_string(steps); }
};

// Validates closure and self-avoidance, anchors the smallest vertex at origin.
LatticePolygon validate_polygon(const std::vector<Dir>& steps);
inline LatticePolygon validate_polygon(std::string_view s) {
  return validate_polygon(dirs_from_string(s));
}

// Translation-invariant identity of the polygon (hash of its anchored,
// sorted edge set).  Equal keys <=> equal polygons up to translation.
uint64_t polygon_canonical_key(std::span<const Point> cycle);

// Two monotone up/right walks from the origin to a common endpoint that
// share no other vertex; the region between them.
struct StaircasePolygon {
  std::string upper;  // over {R, U}
  std::string lower;

  int width() const;
  int height() const;
  int half_perimeter() const { return static_cast<int>(upper.size()); }
  int64_t area() const;

  // Column profile: squares of column x are lo[x] <= y < hi[x].
  void column_profile(std::vector<int>& lo, std::vector<int>& hi) const;

  // Boundary cycle (lower walk, then the reversed upper walk).
  LatticePolygon boundary() const;

  static StaircasePolygon from_paths(std::string upper, std::string lower);
  static StaircasePolygon from_columns(const std::vector<int>& lo,
                                       const std::vector<int>& hi);
};

// n_k = sum over negative diagonals of length^k, k = 0..kmax; a square (i,j)
// lies on diagonal layer i+j, and n_0 counts the diagonals (= half-perimeter - 1).
MomentVector diagonal_moments(const StaircasePolygon& p, int kmax);

struct ColumnMoments {
  int width = 0;
  int height = 0;
  MomentVector m;  // m_0 = width, m_1 = area, m_k = sum of column height^k
};
ColumnMoments column_moments(const StaircasePolygon& p, int kmax);

// Diagonal (or vertical) layer moments of a self-avoiding polygon.  Variant a
// raises each layer's total to the k-th power, variant b each maximal
// connected segment.  Returns (a, b).
std::pair<MomentVector, MomentVector> layer_moments(const LatticePolygon& p, int kmax,
                                                    LayerFamily family = LayerFamily::Diagonal);
// Same, on a raw vertex cycle (hot path for the Monte-Carlo sampler).
std::pair<MomentVector, MomentVector> layer_moments(std::span<const Point> cycle, int kmax,
                                                    LayerFamily family);

// Walk over steps +1/-1 with all prefix sums >= 0 and total 0.
struct DyckPath {
  std::vector<int8_t> steps;

  int semilength() const { return static_cast<int>(steps.size()) / 2; }
  std::string str() const;
  static DyckPath from_string(std::string_view s);  // over {u, d}
  static DyckPath validate(std::vector<int8_t> steps);
};

// Bijection: column heights of the polygon = peak heights of the path,
// column overlaps = valley heights + 1.  Half-perimeter n maps to semilength n-1.
DyckPath staircase_to_dyck(const StaircasePolygon& p);
StaircasePolygon dyck_to_staircase(const DyckPath& d);

// Height moments of a directed walk: n_k = sum over positions s = 0..len of
// |h(s)|^k, with n_0 = walk length.
MomentVector walk_height_moments(std::span<const int8_t> steps, int kmax);

}  // namespace polylim
