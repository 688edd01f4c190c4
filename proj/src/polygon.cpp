#include "polylim/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

namespace polylim {

namespace {

int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

int64_t LatticePolygon::area() const {
  // Shoelace over the vertex cycle; unit steps make the doubled area even.
  int64_t twice = 0;
  const size_t n = vertices.size();
  for (size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    twice += static_cast<int64_t>(a.x) * b.y - static_cast<int64_t>(b.x) * a.y;
  }
  return std::abs(twice) / 2;
}

LatticePolygon validate_polygon(const std::vector<Dir>& steps) {
  if (steps.empty()) throw GuardError("empty step sequence");
  if (steps.size() % 2 != 0) throw OddLengthError();

  std::vector<Point> vertices;
  vertices.reserve(steps.size());
  Point pos{0, 0};
  Point anchor{0, 0};
  for (Dir d : steps) {
    vertices.push_back(pos);
    pos = pos + step_vec(d);
    if (pos < anchor) anchor = pos;
  }
  if (pos != Point{0, 0}) throw NotClosedError();

  std::unordered_set<uint64_t> seen;
  seen.reserve(vertices.size() * 2);
  for (Point v : vertices) {
    const uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(v.x)) << 32) |
                         static_cast<uint32_t>(v.y);
    if (!seen.insert(key).second) throw SelfIntersectingError();
  }

  LatticePolygon p;
  p.steps = steps;
  p.vertices = std::move(vertices);
  for (Point& v : p.vertices) v = v - anchor;
  return p;
}

uint64_t polygon_canonical_key(std::span<const Point> cycle) {
  Point anchor = cycle[0];
  for (Point v : cycle) anchor = std::min(anchor, v);

  // One 64-bit word per edge: anchored lower endpoint plus orientation bit.
  std::vector<uint64_t> edges;
  edges.reserve(cycle.size());
  const size_t n = cycle.size();
  for (size_t i = 0; i < n; ++i) {
    Point a = cycle[i] - anchor;
    Point b = cycle[(i + 1) % n] - anchor;
    const bool vertical = a.x == b.x;
    if (b < a) std::swap(a, b);
    edges.push_back((static_cast<uint64_t>(static_cast<uint16_t>(a.x)) << 48) |
                    (static_cast<uint64_t>(static_cast<uint16_t>(a.y)) << 32) |
                    (vertical ? 1u : 0u));
  }
  std::sort(edges.begin(), edges.end());
  return fnv1a64(edges.data(), edges.size() * sizeof(uint64_t));
}

int StaircasePolygon::width() const {
  return static_cast<int>(std::count(upper.begin(), upper.end(), 'R'));
}

int StaircasePolygon::height() const {
  return static_cast<int>(std::count(upper.begin(), upper.end(), 'U'));
}

void StaircasePolygon::column_profile(std::vector<int>& lo, std::vector<int>& hi) const {
  const int w = width();
  lo.assign(w, 0);
  hi.assign(w, 0);
  int x = 0, y = 0;
  for (char c : lower) {
    if (c == 'R') {
      lo[x] = y;
      ++x;
    } else {
      ++y;
    }
  }
  x = 0;
  y = 0;
  for (char c : upper) {
    if (c == 'R') {
      hi[x] = y;  // height reached before moving right: top of column x
      ++x;
    } else {
      ++y;
    }
  }
  // Final vertical run of the upper walk tops the last column.
  if (w > 0) hi[w - 1] = height();
}

int64_t StaircasePolygon::area() const {
  std::vector<int> lo, hi;
  column_profile(lo, hi);
  int64_t a = 0;
  for (size_t i = 0; i < lo.size(); ++i) a += hi[i] - lo[i];
  return a;
}

LatticePolygon StaircasePolygon::boundary() const {
  std::vector<Dir> steps;
  steps.reserve(2 * upper.size());
  for (char c : lower) steps.push_back(c == 'R' ? Dir::Right : Dir::Up);
  for (auto it = upper.rbegin(); it != upper.rend(); ++it)
    steps.push_back(*it == 'R' ? Dir::Left : Dir::Down);
  return validate_polygon(steps);
}

StaircasePolygon StaircasePolygon::from_paths(std::string upper, std::string lower) {
  if (upper.size() != lower.size() || upper.size() < 2)
    throw GuardError("staircase walks must have equal length >= 2");
  for (char c : upper + lower)
    if (c != 'R' && c != 'U') throw GuardError("staircase walks step only R or U");

  StaircasePolygon p{std::move(upper), std::move(lower)};
  const int w = p.width();
  if (w < 1 || static_cast<int>(std::count(p.lower.begin(), p.lower.end(), 'R')) != w)
    throw GuardError("staircase walks must share their endpoint");
  // Two monotone lattice walks can only cross at a shared vertex, so vertex
  // disjointness away from the endpoints pins upper strictly above lower once
  // the first steps diverge the right way.
  if (p.upper.front() != 'U' || p.lower.front() != 'R')
    throw GuardError("upper walk must leave the origin upward, lower rightward");
  auto vertex_key = [](Point v) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(v.x)) << 32) |
           static_cast<uint32_t>(v.y);
  };
  std::unordered_set<uint64_t> on_upper;
  Point pos{0, 0};
  for (char c : p.upper) {
    pos = c == 'R' ? Point{pos.x + 1, pos.y} : Point{pos.x, pos.y + 1};
    on_upper.insert(vertex_key(pos));
  }
  const Point end = pos;
  pos = {0, 0};
  for (size_t i = 0; i < p.lower.size(); ++i) {
    const char c = p.lower[i];
    pos = c == 'R' ? Point{pos.x + 1, pos.y} : Point{pos.x, pos.y + 1};
    const bool last = i + 1 == p.lower.size();
    if (on_upper.count(vertex_key(pos)) && !last)
      throw GuardError("staircase walks touch away from their endpoints");
    if (last && pos != end) throw GuardError("staircase walks must share their endpoint");
  }
  return p;
}

StaircasePolygon StaircasePolygon::from_columns(const std::vector<int>& lo,
                                                const std::vector<int>& hi) {
  const int w = static_cast<int>(lo.size());
  std::string upper, lower;
  upper.append(hi[0], 'U');
  for (int x = 1; x < w; ++x) {
    upper.push_back('R');
    upper.append(hi[x] - hi[x - 1], 'U');
  }
  upper.push_back('R');
  for (int x = 1; x < w; ++x) {
    lower.push_back('R');
    lower.append(lo[x] - lo[x - 1], 'U');
  }
  lower.push_back('R');
  lower.append(hi[w - 1] - lo[w - 1], 'U');
  return from_paths(std::move(upper), std::move(lower));
}

MomentVector diagonal_moments(const StaircasePolygon& p, int kmax) {
  std::vector<int> lo, hi;
  p.column_profile(lo, hi);
  const int w = static_cast<int>(lo.size());
  const int layers = w + p.height() - 1;
  std::vector<int64_t> len(layers, 0);
  for (int x = 0; x < w; ++x)
    for (int y = lo[x]; y < hi[x]; ++y) ++len[x + y];

  MomentVector mv{kmax, std::vector<int64_t>(kmax + 1, 0)};
  for (int64_t l : len)
    for (int k = 0; k <= kmax; ++k) mv.n[k] += ipow(l, k);
  return mv;
}

ColumnMoments column_moments(const StaircasePolygon& p, int kmax) {
  std::vector<int> lo, hi;
  p.column_profile(lo, hi);
  ColumnMoments cm;
  cm.width = static_cast<int>(lo.size());
  cm.height = p.height();
  cm.m = MomentVector{kmax, std::vector<int64_t>(kmax + 1, 0)};
  for (int x = 0; x < cm.width; ++x) {
    const int64_t h = hi[x] - lo[x];
    for (int k = 0; k <= kmax; ++k) cm.m.n[k] += ipow(h, k);
  }
  return cm;
}

std::pair<MomentVector, MomentVector> layer_moments(std::span<const Point> cycle, int kmax,
                                                    LayerFamily family) {
  // Enclosed unit squares by even-odd rule: a vertical boundary edge at
  // abscissa x spanning [y, y+1] toggles row y at x.  Sorting each row's
  // toggle points and pairing them yields the square runs of that row.
  int32_t min_x = cycle[0].x, max_x = cycle[0].x;
  int32_t min_y = cycle[0].y, max_y = cycle[0].y;
  for (Point v : cycle) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  const int rows = max_y - min_y;
  std::vector<std::vector<int32_t>> toggles(std::max(rows, 1));
  const size_t n = cycle.size();
  for (size_t i = 0; i < n; ++i) {
    const Point a = cycle[i];
    const Point b = cycle[(i + 1) % n];
    if (a.x == b.x) toggles[std::min(a.y, b.y) - min_y].push_back(a.x);
  }

  // Collect squares into layers: anti-diagonal index x+y, or column index x.
  const int layer_count = family == LayerFamily::Diagonal
                              ? (max_x - min_x) + (max_y - min_y) - 1
                              : (max_x - min_x);
  std::vector<std::vector<int32_t>> layer_positions(std::max(layer_count, 1));
  for (int ry = 0; ry < rows; ++ry) {
    auto& t = toggles[ry];
    std::sort(t.begin(), t.end());
    for (size_t i = 0; i + 1 < t.size(); i += 2) {
      for (int32_t x = t[i]; x < t[i + 1]; ++x) {
        // Position of the square along its layer: abscissa for diagonal
        // layers, ordinate for vertical ones.
        if (family == LayerFamily::Diagonal)
          layer_positions[(x - min_x) + ry].push_back(x);
        else
          layer_positions[x - min_x].push_back(ry);
      }
    }
  }

  MomentVector a{kmax, std::vector<int64_t>(kmax + 1, 0)};
  MomentVector b{kmax, std::vector<int64_t>(kmax + 1, 0)};
  for (auto& positions : layer_positions) {
    if (positions.empty()) continue;
    std::sort(positions.begin(), positions.end());
    int64_t layer_total = static_cast<int64_t>(positions.size());
    // Maximal runs of consecutive abscissae are the connected segments.
    size_t run_start = 0;
    for (size_t i = 1; i <= positions.size(); ++i) {
      if (i == positions.size() || positions[i] != positions[i - 1] + 1) {
        const int64_t seg = static_cast<int64_t>(i - run_start);
        for (int k = 0; k <= kmax; ++k) b.n[k] += ipow(seg, k);
        run_start = i;
      }
    }
    for (int k = 0; k <= kmax; ++k) a.n[k] += ipow(layer_total, k);
  }
  return {std::move(a), std::move(b)};
}

std::pair<MomentVector, MomentVector> layer_moments(const LatticePolygon& p, int kmax,
                                                    LayerFamily family) {
  return layer_moments(std::span<const Point>(p.vertices), kmax, family);
}

std::string DyckPath::str() const {
  std::string s;
  s.reserve(steps.size());
  for (int8_t x : steps) s.push_back(x > 0 ? 'u' : 'd');
  return s;
}

DyckPath DyckPath::from_string(std::string_view s) {
  std::vector<int8_t> steps;
  steps.reserve(s.size());
  for (char c : s) {
    if (c == 'u')
      steps.push_back(1);
    else if (c == 'd')
      steps.push_back(-1);
    else
      throw GuardError(std::string("invalid walk character '") + c + "'");
  }
  return validate(std::move(steps));
}

DyckPath DyckPath::validate(std::vector<int8_t> steps) {
  int h = 0;
  for (int8_t s : steps) {
    h += s;
    if (h < 0) throw GuardError("path dips below the axis");
  }
  if (h != 0) throw GuardError("path does not end on the axis");
  return DyckPath{std::move(steps)};
}

DyckPath staircase_to_dyck(const StaircasePolygon& p) {
  std::vector<int> lo, hi;
  p.column_profile(lo, hi);
  const int w = static_cast<int>(lo.size());
  std::vector<int8_t> steps;
  steps.reserve(2 * (p.half_perimeter() - 1));
  int level = 0;
  for (int x = 0; x < w; ++x) {
    const int peak = hi[x] - lo[x];
    const int valley = x + 1 < w ? (hi[x] - lo[x + 1]) - 1 : 0;
    steps.insert(steps.end(), peak - level, 1);
    steps.insert(steps.end(), peak - valley, -1);
    level = valley;
  }
  return DyckPath::validate(std::move(steps));
}

StaircasePolygon dyck_to_staircase(const DyckPath& d) {
  // Peaks become columns: peak height = column height, valley + 1 = overlap.
  std::vector<int> peaks, valleys;
  const auto& s = d.steps;
  int h = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    h += s[i];
    if (s[i] > 0 && i + 1 < s.size() && s[i + 1] < 0) peaks.push_back(h);
    if (s[i] < 0 && i + 1 < s.size() && s[i + 1] > 0) valleys.push_back(h);
  }
  if (peaks.empty()) throw GuardError("empty path has no polygon image");
  std::vector<int> lo(peaks.size()), hi(peaks.size());
  lo[0] = 0;
  hi[0] = peaks[0];
  for (size_t j = 1; j < peaks.size(); ++j) {
    lo[j] = hi[j - 1] - (valleys[j - 1] + 1);
    hi[j] = lo[j] + peaks[j];
  }
  return StaircasePolygon::from_columns(lo, hi);
}

MomentVector walk_height_moments(std::span<const int8_t> steps, int kmax) {
  MomentVector mv{kmax, std::vector<int64_t>(kmax + 1, 0)};
  mv.n[0] = static_cast<int64_t>(steps.size());
  int64_t h = 0;
  for (int8_t s : steps) {
    h += s;
    const int64_t a = std::abs(h);
    int64_t p = a;
    for (int k = 1; k <= kmax; ++k) {
      mv.n[k] += p;
      p *= a;
    }
  }
  return mv;
}

}  // namespace polylim
