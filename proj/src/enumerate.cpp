#include "polylim/enumerate.hpp"

#include <algorithm>
#include <string>

#include "polylim/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polylim {

namespace {

// ---------------------------------------------------------------------------
// Staircase polygons, recursively over column profiles.  Any prefix of a
// valid profile is itself a valid polygon, so the tree is pruned only by the
// half-perimeter budget (n = width + top of last column).
// ---------------------------------------------------------------------------

void staircase_dfs(int n0, std::vector<int>& lo, std::vector<int>& hi,
                   std::vector<StaircasePolygon>& out) {
  const int w = static_cast<int>(lo.size());
  const int n = w + hi.back();
  if (n == n0) {
    out.push_back(StaircasePolygon::from_columns(lo, hi));
    return;
  }
  // Next column: overlap >= 1 forces lo' <= hi-1, monotone profiles force
  // lo' >= lo and hi' >= hi; the budget caps hi' at n0 - (w+1).
  for (int nlo = lo.back(); nlo <= hi.back() - 1; ++nlo) {
    for (int nhi = hi.back(); w + 1 + nhi <= n0; ++nhi) {
      lo.push_back(nlo);
      hi.push_back(nhi);
      staircase_dfs(n0, lo, hi, out);
      lo.pop_back();
      hi.pop_back();
    }
  }
}

std::vector<StaircasePolygon> staircase_all(int n0) {
  if (n0 < 2 || n0 > kMaxStaircaseN0)
    throw SizeLimitError("staircase half-perimeter must be in [2, " +
                         std::to_string(kMaxStaircaseN0) + "]");
  std::vector<StaircasePolygon> out;
  std::vector<int> lo{0}, hi;
  for (int h1 = 1; 1 + h1 <= n0; ++h1) {
    hi.assign(1, h1);
    staircase_dfs(n0, lo, hi, out);
  }
  std::vector<std::pair<std::string, size_t>> order;
  order.reserve(out.size());
  for (size_t i = 0; i < out.size(); ++i) order.emplace_back(out[i].boundary().str(), i);
  std::sort(order.begin(), order.end());
  std::vector<StaircasePolygon> sorted;
  sorted.reserve(out.size());
  for (const auto& [key, i] : order) sorted.push_back(std::move(out[i]));
  return sorted;
}

// ---------------------------------------------------------------------------
// Self-avoiding polygons.  Each translation class is traced by exactly one
// walk: start at the lexicographically smallest vertex (its two incident
// edges necessarily go R and U), take the R edge first, and never visit a
// vertex below the start in lex order.  Directions are tried in character
// order (D < L < R < U), so emission is lexicographic in the step string.
// ---------------------------------------------------------------------------

constexpr Dir kLexDirs[4] = {Dir::Down, Dir::Left, Dir::Right, Dir::Up};

struct SapGrid {
  int half;  // perimeter / 2
  std::vector<uint8_t> visited;

  explicit SapGrid(int perimeter) : half(perimeter / 2) {
    visited.assign(static_cast<size_t>(half + 1) * (2 * half + 1), 0);
  }
  bool in_range(Point p) const {
    if (p.x < 0 || p.x > half) return false;
    if (p.x == 0 && p.y < 0) return false;
    return p.y >= -half && p.y <= half;
  }
  uint8_t& at(Point p) { return visited[static_cast<size_t>(p.x) * (2 * half + 1) + (p.y + half)]; }
};

void sap_dfs(int perimeter, SapGrid& grid, std::vector<Dir>& steps, Point pos,
             const std::function<void(const std::vector<Dir>&)>& emit) {
  const int t = static_cast<int>(steps.size());
  if (t == perimeter) {
    if (pos == Point{0, 0}) emit(steps);
    return;
  }
  for (Dir d : kLexDirs) {
    const Point nxt = pos + step_vec(d);
    const int dist = std::abs(nxt.x) + std::abs(nxt.y);
    const int remaining = perimeter - t - 1;
    if (dist > remaining || (dist % 2) != (remaining % 2)) continue;
    if (nxt == Point{0, 0}) {
      if (remaining == 0) {
        steps.push_back(d);
        sap_dfs(perimeter, grid, steps, nxt, emit);
        steps.pop_back();
      }
      continue;
    }
    if (!grid.in_range(nxt) || grid.at(nxt)) continue;
    grid.at(nxt) = 1;
    steps.push_back(d);
    sap_dfs(perimeter, grid, steps, nxt, emit);
    steps.pop_back();
    grid.at(nxt) = 0;
  }
}

void sap_walks(int perimeter, const std::function<void(const std::vector<Dir>&)>& emit) {
  if (perimeter % 2 != 0) throw OddPerimeterError();
  if (perimeter < 4 || perimeter > kMaxSapPerimeter)
    throw SizeLimitError("SAP perimeter must be even and in [4, " +
                         std::to_string(kMaxSapPerimeter) + "]");
  SapGrid grid(perimeter);
  std::vector<Dir> steps{Dir::Right};
  grid.at({0, 0}) = 1;
  grid.at({1, 0}) = 1;
  sap_dfs(perimeter, grid, steps, {1, 0}, emit);
}

// Partial canonical walks of fixed depth, used to split the search for the
// OpenMP driver.
struct SapPrefix {
  std::vector<Dir> steps;
  Point pos;
};

std::vector<SapPrefix> sap_prefixes(int perimeter, int depth) {
  std::vector<SapPrefix> out;
  SapGrid grid(perimeter);
  std::vector<Dir> steps{Dir::Right};
  grid.at({0, 0}) = 1;
  grid.at({1, 0}) = 1;
  // Reuse the main DFS with a cutoff by temporarily treating depth as the goal.
  std::function<void(Point)> rec = [&](Point pos) {
    if (static_cast<int>(steps.size()) == depth) {
      out.push_back({steps, pos});
      return;
    }
    for (Dir d : kLexDirs) {
      const Point nxt = pos + step_vec(d);
      const int dist = std::abs(nxt.x) + std::abs(nxt.y);
      const int remaining = perimeter - static_cast<int>(steps.size()) - 1;
      if (dist > remaining || (dist % 2) != (remaining % 2)) continue;
      if (nxt == Point{0, 0}) continue;  // cannot close within the prefix
      if (!grid.in_range(nxt) || grid.at(nxt)) continue;
      grid.at(nxt) = 1;
      steps.push_back(d);
      rec(nxt);
      steps.pop_back();
      grid.at(nxt) = 0;
    }
  };
  rec({1, 0});
  return out;
}

// ---------------------------------------------------------------------------
// Directed walks over steps +-1.
// ---------------------------------------------------------------------------

bool walk_can_finish(Model model, int h, int remaining) {
  switch (model) {
    case Model::Dyck:
    case Model::BilateralDyck:
      return std::abs(h) <= remaining && (std::abs(h) % 2) == (remaining % 2);
    default:
      return true;
  }
}

bool walk_step_ok(Model model, int h_after) {
  if (model == Model::Dyck || model == Model::Meander) return h_after >= 0;
  return true;
}

void walk_dfs(Model model, int length, std::vector<int8_t>& steps, int h,
              const std::function<void(const std::vector<int8_t>&)>& emit) {
  if (static_cast<int>(steps.size()) == length) {
    emit(steps);
    return;
  }
  const int remaining = length - static_cast<int>(steps.size()) - 1;
  for (int8_t s : {static_cast<int8_t>(-1), static_cast<int8_t>(1)}) {
    const int nh = h + s;
    if (!walk_step_ok(model, nh) || !walk_can_finish(model, nh, remaining)) continue;
    steps.push_back(s);
    walk_dfs(model, length, steps, nh, emit);
    steps.pop_back();
  }
}

using HistSlice = std::map<std::vector<int64_t>, Int>;

void hist_add(HistSlice& slice, const MomentVector& mv, int M) {
  std::vector<int64_t> key(mv.n.begin() + 1, mv.n.begin() + 1 + M);
  slice[std::move(key)] += 1;
}

void merge_hist(MomentHistogram& into, const MomentHistogram& from) {
  for (size_t g = 0; g < from.by_grade.size(); ++g)
    for (const auto& [key, cnt] : from.by_grade[g]) into.by_grade[g][key] += cnt;
}

}  // namespace

void enumerate_staircase(int n0, const std::function<void(const StaircasePolygon&)>& emit) {
  for (const auto& p : staircase_all(n0)) emit(p);
}

void enumerate_sap(int perimeter, const std::function<void(const LatticePolygon&)>& emit) {
  sap_walks(perimeter, [&](const std::vector<Dir>& steps) { emit(validate_polygon(steps)); });
}

void enumerate_walks(Model model, int length,
                     const std::function<void(const std::vector<int8_t>&)>& emit) {
  if (!is_walk(model)) throw GuardError("enumerate_walks needs a walk model");
  if (length < 0 || length > kMaxWalkLength)
    throw SizeLimitError("walk length must be in [0, " + std::to_string(kMaxWalkLength) + "]");
  std::vector<int8_t> steps;
  steps.reserve(length);
  walk_dfs(model, length, steps, 0, emit);
}

Int staircase_count(int n0) { return catalan(n0 - 1); }

MomentHistogram staircase_diagonal_histogram(int n0_max, int M, Exec exec) {
  MomentHistogram hist{M, std::vector<HistSlice>(n0_max + 1)};
  if (exec == Exec::Serial) {
    for (int n0 = 2; n0 <= n0_max; ++n0)
      enumerate_staircase(n0, [&](const StaircasePolygon& p) {
        hist_add(hist.by_grade[n0], diagonal_moments(p, M), M);
      });
    return hist;
  }
#ifdef _OPENMP
  std::vector<MomentHistogram> parts;
#pragma omp parallel
  {
#pragma omp single
    parts.assign(omp_get_num_threads(), MomentHistogram{M, std::vector<HistSlice>(n0_max + 1)});
    MomentHistogram& local = parts[omp_get_thread_num()];
#pragma omp for schedule(dynamic)
    for (int n0 = 2; n0 <= n0_max; ++n0)
      enumerate_staircase(n0, [&](const StaircasePolygon& p) {
        hist_add(local.by_grade[n0], diagonal_moments(p, M), M);
      });
  }
  for (const auto& part : parts) merge_hist(hist, part);
  return hist;
#else
  return staircase_diagonal_histogram(n0_max, M, Exec::Serial);
#endif
}

MomentHistogram staircase_column_histogram(int n0_max, int M, Exec exec) {
  // Keys carry the height exponent first: (h, m_1..m_M), grade = w + h.
  MomentHistogram hist{M, std::vector<HistSlice>(n0_max + 1)};
  auto add = [&](const StaircasePolygon& p) {
    const ColumnMoments cm = column_moments(p, M);
    std::vector<int64_t> key;
    key.reserve(M + 1);
    key.push_back(cm.height);
    for (int k = 1; k <= M; ++k) key.push_back(cm.m.n[k]);
    hist.by_grade[cm.width + cm.height][std::move(key)] += 1;
  };
  if (exec == Exec::Serial) {
    for (int n0 = 2; n0 <= n0_max; ++n0)
      enumerate_staircase(n0, [&](const StaircasePolygon& p) { add(p); });
    return hist;
  }
#ifdef _OPENMP
  std::vector<MomentHistogram> parts;
#pragma omp parallel
  {
#pragma omp single
    parts.assign(omp_get_num_threads(), MomentHistogram{M, std::vector<HistSlice>(n0_max + 1)});
    MomentHistogram& local = parts[omp_get_thread_num()];
#pragma omp for schedule(dynamic)
    for (int n0 = 2; n0 <= n0_max; ++n0)
      enumerate_staircase(n0, [&](const StaircasePolygon& p) {
        const ColumnMoments cm = column_moments(p, M);
        std::vector<int64_t> key;
        key.reserve(M + 1);
        key.push_back(cm.height);
        for (int k = 1; k <= M; ++k) key.push_back(cm.m.n[k]);
        local.by_grade[cm.width + cm.height][std::move(key)] += 1;
      });
  }
  for (const auto& part : parts) merge_hist(hist, part);
  return hist;
#else
  return staircase_column_histogram(n0_max, M, Exec::Serial);
#endif
}

MomentHistogram walk_histogram(Model model, int length_max, int M, Exec exec) {
  MomentHistogram hist{M, std::vector<HistSlice>(length_max + 1)};
  if (exec == Exec::Serial) {
    for (int len = 0; len <= length_max; ++len)
      enumerate_walks(model, len, [&](const std::vector<int8_t>& steps) {
        hist_add(hist.by_grade[len], walk_height_moments(steps, M), M);
      });
    return hist;
  }
#ifdef _OPENMP
  // Split each length by a sign prefix and give prefixes to threads.
  struct Task {
    int len;
    std::vector<int8_t> prefix;
    int h;
  };
  std::vector<Task> tasks;
  for (int len = 0; len <= length_max; ++len) {
    const int depth = std::min(len, 8);
    std::vector<int8_t> prefix;
    std::function<void(int)> build = [&](int h) {
      if (static_cast<int>(prefix.size()) == depth) {
        tasks.push_back({len, prefix, h});
        return;
      }
      const int remaining = len - static_cast<int>(prefix.size()) - 1;
      for (int8_t s : {static_cast<int8_t>(-1), static_cast<int8_t>(1)}) {
        const int nh = h + s;
        if (!walk_step_ok(model, nh) || !walk_can_finish(model, nh, remaining)) continue;
        prefix.push_back(s);
        build(nh);
        prefix.pop_back();
      }
    };
    build(0);
  }
  std::vector<MomentHistogram> parts;
#pragma omp parallel
  {
#pragma omp single
    parts.assign(omp_get_num_threads(), MomentHistogram{M, std::vector<HistSlice>(length_max + 1)});
    MomentHistogram& local = parts[omp_get_thread_num()];
#pragma omp for schedule(dynamic)
    for (size_t ti = 0; ti < tasks.size(); ++ti) {
      const Task& task = tasks[ti];
      std::vector<int8_t> steps = task.prefix;
      walk_dfs(model, task.len, steps, task.h, [&](const std::vector<int8_t>& w) {
        hist_add(local.by_grade[task.len], walk_height_moments(w, M), M);
      });
    }
  }
  for (const auto& part : parts) merge_hist(hist, part);
  return hist;
#else
  return walk_histogram(model, length_max, M, Exec::Serial);
#endif
}

SapLayerTotals sap_layer_totals(int perimeter, int kmax, LayerFamily family, Exec exec) {
  SapLayerTotals totals;
  totals.sum_a.assign(kmax + 1, 0);
  totals.sum_b.assign(kmax + 1, 0);
  totals.sum_a_sq.assign(kmax + 1, 0);
  totals.sum_b_sq.assign(kmax + 1, 0);

  auto accumulate = [&](SapLayerTotals& acc, const std::vector<Dir>& steps) {
    std::vector<Point> cycle;
    cycle.reserve(steps.size());
    Point pos{0, 0};
    for (Dir d : steps) {
      cycle.push_back(pos);
      pos = pos + step_vec(d);
    }
    const auto [a, b] = layer_moments(std::span<const Point>(cycle), kmax, family);
    ++acc.polygons;
    for (int k = 0; k <= kmax; ++k) {
      acc.sum_a[k] += a.n[k];
      acc.sum_b[k] += b.n[k];
      acc.sum_a_sq[k] += a.n[k] * a.n[k];
      acc.sum_b_sq[k] += b.n[k] * b.n[k];
    }
  };

  if (exec == Exec::Serial) {
    sap_walks(perimeter, [&](const std::vector<Dir>& steps) { accumulate(totals, steps); });
    return totals;
  }
#ifdef _OPENMP
  if (perimeter % 2 != 0) throw OddPerimeterError();
  if (perimeter < 4 || perimeter > kMaxSapPerimeter)
    throw SizeLimitError("SAP perimeter must be even and in [4, " +
                         std::to_string(kMaxSapPerimeter) + "]");
  const int depth = std::min(perimeter - 2, 7);
  const std::vector<SapPrefix> prefixes = sap_prefixes(perimeter, depth);
  std::vector<SapLayerTotals> parts(prefixes.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t pi = 0; pi < prefixes.size(); ++pi) {
    SapLayerTotals local;
    local.sum_a.assign(kmax + 1, 0);
    local.sum_b.assign(kmax + 1, 0);
    local.sum_a_sq.assign(kmax + 1, 0);
    local.sum_b_sq.assign(kmax + 1, 0);
    SapGrid grid(perimeter);
    grid.at({0, 0}) = 1;
    Point pos{0, 0};
    for (Dir d : prefixes[pi].steps) {
      pos = pos + step_vec(d);
      grid.at(pos) = 1;
    }
    std::vector<Dir> steps = prefixes[pi].steps;
    sap_dfs(perimeter, grid, steps, prefixes[pi].pos,
            [&](const std::vector<Dir>& w) { accumulate(local, w); });
    parts[pi] = std::move(local);
  }
  for (const auto& part : parts) {
    totals.polygons += part.polygons;
    for (int k = 0; k <= kmax; ++k) {
      totals.sum_a[k] += part.sum_a[k];
      totals.sum_b[k] += part.sum_b[k];
      totals.sum_a_sq[k] += part.sum_a_sq[k];
      totals.sum_b_sq[k] += part.sum_b_sq[k];
    }
  }
  return totals;
#else
  return sap_layer_totals(perimeter, kmax, family, Exec::Serial);
#endif
}

}  // namespace polylim
