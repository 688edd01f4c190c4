#include "polylim/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "polylim/errors.hpp"
#include "polylim/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polylim {

namespace {

#ifdef NDEBUG
constexpr int64_t kCheckEvery = 10000;
#else
constexpr int64_t kCheckEvery = 1;
#endif

uint64_t chain_seed(uint64_t base, int chain) {
  uint64_t s = base + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(chain + 1);
  return splitmix64(s);
}

// Validates before anything is allocated (the stamp grid is O(n0^2)).
int checked_half_perimeter(int n0) {
  if (n0 < 2) throw GuardError("half-perimeter must be >= 2");
  if (n0 > 1024) throw SizeLimitError("half-perimeter capped at 1024");
  return n0;
}

}  // namespace

struct PolygonChain::Impl {
  int perimeter;
  bool allow_reflections;
  std::vector<Point> verts;
  std::vector<Point> scratch;
  Xoshiro256 rng;
  // Stamp grid, side 3 * perimeter; re-centred whenever a proposal leaves it.
  int side;
  std::vector<int64_t> stamp;
  int64_t epoch = 0;
  int32_t off_x = 0, off_y = 0;
  int64_t n_proposals = 0;
  int64_t n_accepted = 0;

  Impl(int n0, uint64_t seed, bool reflections)
      : perimeter(2 * checked_half_perimeter(n0)),
        allow_reflections(reflections),
        rng(seed),
        side(3 * 2 * n0 + 4),
        stamp(static_cast<size_t>(side) * side, 0) {
    // Initial state: a 1 x (n0-1) rectangle.
    const int w = n0 - 1;
    verts.reserve(perimeter);
    for (int x = 0; x <= w - 1; ++x) verts.push_back({x, 0});
    verts.push_back({w, 0});
    for (int x = w; x >= 1; --x) verts.push_back({x, 1});
    verts.push_back({0, 1});
    scratch.resize(perimeter);
    recenter();
  }

  void recenter() {
    int32_t min_x = verts[0].x, max_x = verts[0].x;
    int32_t min_y = verts[0].y, max_y = verts[0].y;
    for (Point v : verts) {
      min_x = std::min(min_x, v.x);
      max_x = std::max(max_x, v.x);
      min_y = std::min(min_y, v.y);
      max_y = std::max(max_y, v.y);
    }
    const int32_t cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
    for (Point& v : verts) {
      v.x -= cx;
      v.y -= cy;
    }
    off_x = side / 2;
    off_y = side / 2;
  }

  bool in_grid(Point p) const {
    const int32_t gx = p.x + off_x, gy = p.y + off_y;
    return gx >= 0 && gx < side && gy >= 0 && gy < side;
  }
  int64_t& cell(Point p) {
    return stamp[static_cast<size_t>(p.x + off_x) * side + (p.y + off_y)];
  }

  // Reflection across the perpendicular bisector of the chord a-b (which
  // swaps the endpoints); composed with the arc reversal this keeps the arc
  // running a -> b.  Lattice-compatible when the chord is axis-aligned or
  // diagonal.  Inversions alone preserve the step multiset of the arc, so
  // these reflections carry the ergodicity: a diagonal mirror trades
  // horizontal for vertical steps.
  static Point mirror_point(Point q, Point a, Point b, int dx, int dy) {
    if (dy == 0) return {a.x + b.x - q.x, q.y};
    if (dx == 0) return {q.x, a.y + b.y - q.y};
    if (dx == dy) {  // perpendicular bisector is the anti-diagonal x + y = c
      const int32_t c = a.x + a.y + dx;
      return {c - q.y, c - q.x};
    }
    const int32_t c = a.y - a.x - dx;  // diagonal bisector y = x + c
    return {q.y - c, q.x + c};
  }

  bool build_candidate(int i, int j, int len, bool reflect) {
    const int n = perimeter;
    const Point a = verts[i], b = verts[j];
    const int dx = b.x - a.x, dy = b.y - a.y;
    for (int t = 1; t <= len; ++t) {
      const Point q = verts[(j - t + n) % n];
      const Point p = reflect ? mirror_point(q, a, b, dx, dy)
                              : Point{a.x + b.x - q.x, a.y + b.y - q.y};
      scratch[t - 1] = p;
      if (!in_grid(p)) return false;
    }
    return true;
  }

  bool propose() {
    ++n_proposals;
    if (kCheckEvery == 1 || n_proposals % kCheckEvery == 0) check();

    const int n = perimeter;
    const int i = static_cast<int>(rng.bounded(n));
    int j = static_cast<int>(rng.bounded(n - 1));
    if (j >= i) ++j;
    const bool want_reflection = rng.coin();

    const int len = (j - i - 1 + n) % n;  // vertices strictly between i and j
    if (len == 0) return false;           // adjacent endpoints: identity

    const Point a = verts[i], b = verts[j];
    const int dx = b.x - a.x, dy = b.y - a.y;
    const bool reflect = want_reflection && allow_reflections &&
                         (dx == 0 || dy == 0 || std::abs(dx) == std::abs(dy));

    if (!build_candidate(i, j, len, reflect)) {
      // Geometry is translation invariant: re-centre and rebuild the very
      // same proposal in the shifted frame.
      recenter();
      if (!build_candidate(i, j, len, reflect))
        throw std::logic_error("proposal escapes the re-centred grid");
    }
    return commit(i, j, len);
  }

  bool commit(int i, int j, int len) {
    const int n = perimeter;
    ++epoch;
    for (int t = 0; t < n - len; ++t) cell(verts[(j + t) % n]) = epoch;  // kept arc
    for (int t = 0; t < len; ++t) {
      int64_t& c = cell(scratch[t]);
      if (c == epoch) return false;  // hits a kept vertex or an earlier new one
      c = epoch;
    }
    for (int t = 0; t < len; ++t) verts[(i + 1 + t) % n] = scratch[t];
    ++n_accepted;
    return true;
  }

  void check() const {
    if (static_cast<int>(verts.size()) != perimeter)
      throw std::logic_error("chain lost vertices");
    std::unordered_map<uint64_t, int> seen;
    seen.reserve(verts.size() * 2);
    for (int t = 0; t < perimeter; ++t) {
      const Point p = verts[t];
      const Point q = verts[(t + 1) % perimeter];
      if (std::abs(p.x - q.x) + std::abs(p.y - q.y) != 1)
        throw std::logic_error("chain has a non-unit step");
      const uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(p.x)) << 32) |
                           static_cast<uint32_t>(p.y);
      if (!seen.emplace(key, t).second) throw std::logic_error("chain self-intersects");
    }
  }
};

PolygonChain::PolygonChain(int n0, uint64_t seed, bool allow_reflections)
    : impl_(new Impl(n0, seed, allow_reflections)) {}
PolygonChain::~PolygonChain() { delete impl_; }
bool PolygonChain::propose() { return impl_->propose(); }
void PolygonChain::run_moves(int64_t n) {
  for (int64_t i = 0; i < n; ++i) impl_->propose();
}
const std::vector<Point>& PolygonChain::vertices() const { return impl_->verts; }
uint64_t PolygonChain::canonical_key() const {
  return polygon_canonical_key(std::span<const Point>(impl_->verts));
}
std::pair<MomentVector, MomentVector> PolygonChain::measure(int kmax, LayerFamily family) const {
  return layer_moments(std::span<const Point>(impl_->verts), kmax, family);
}
void PolygonChain::check_state() const { impl_->check(); }
int64_t PolygonChain::proposals() const { return impl_->n_proposals; }
int64_t PolygonChain::accepted() const { return impl_->n_accepted; }

namespace {

struct ChainSums {
  int64_t measurements = 0;
  int64_t proposals = 0;
  int64_t accepted = 0;
  // [variant 0=a,1=b][k], sums of x and x^2
  std::vector<double> s1[2], s2[2];
};

ChainSums run_one_chain(const McConfig& cfg, int chain) {
  const int64_t meas = cfg.samples / cfg.chains + (chain < cfg.samples % cfg.chains ? 1 : 0);
  ChainSums out;
  for (int v = 0; v < 2; ++v) {
    out.s1[v].assign(cfg.kmax + 1, 0.0);
    out.s2[v].assign(cfg.kmax + 1, 0.0);
  }
  if (meas == 0) return out;
  PolygonChain chain_state(cfg.n0, chain_seed(cfg.seed, chain));
  const int64_t spacing = static_cast<int64_t>(cfg.sweep_factor) * cfg.n0;
  chain_state.run_moves(cfg.burnin_sweeps * spacing);
  for (int64_t m = 0; m < meas; ++m) {
    chain_state.run_moves(spacing);
    const auto [a, b] = chain_state.measure(cfg.kmax, cfg.family);
    for (int k = 0; k <= cfg.kmax; ++k) {
      const auto xa = static_cast<double>(a.n[k]);
      const auto xb = static_cast<double>(b.n[k]);
      out.s1[0][k] += xa;
      out.s2[0][k] += xa * xa;
      out.s1[1][k] += xb;
      out.s2[1][k] += xb * xb;
    }
  }
  out.measurements = meas;
  out.proposals = chain_state.proposals();
  out.accepted = chain_state.accepted();
  return out;
}

McEstimate combine(const std::vector<double>& chain_values, int64_t n_samples, uint64_t seed,
                   double point_estimate) {
  McEstimate est;
  est.n_batches = static_cast<int>(chain_values.size());
  est.n_samples = n_samples;
  est.seed = seed;
  est.value = point_estimate;
  double mean = 0;
  for (double v : chain_values) mean += v;
  mean /= est.n_batches;
  double var = 0;
  for (double v : chain_values) var += (v - mean) * (v - mean);
  if (est.n_batches > 1) var /= (est.n_batches - 1.0) * est.n_batches;
  est.stderr_ = std::sqrt(var);
  return est;
}

}  // namespace

McResult mc_run(const McConfig& cfg, Exec exec) {
  if (cfg.n0 < 2) throw GuardError("n0 must be >= 2");
  if (cfg.samples < 1) throw GuardError("samples must be >= 1");
  if (cfg.sweep_factor < 1) throw GuardError("sweep_factor must be >= 1");
  if (cfg.kmax < 1) throw GuardError("kmax must be >= 1");
  if (cfg.chains < 1) throw GuardError("chains must be >= 1");

  std::vector<ChainSums> sums(cfg.chains);
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < cfg.chains; ++c) sums[c] = run_one_chain(cfg, c);
  } else
#endif
  {
    (void)exec;
    for (int c = 0; c < cfg.chains; ++c) sums[c] = run_one_chain(cfg, c);
  }

  McResult res;
  res.config = cfg;
  int64_t total = 0;
  for (const auto& s : sums) {
    total += s.measurements;
    res.proposals += s.proposals;
    res.accepted += s.accepted;
  }

  for (int v = 0; v < 2; ++v) {
    const LayerVariant variant = v == 0 ? LayerVariant::A : LayerVariant::B;
    for (int k = 1; k <= cfg.kmax; ++k) {
      double pooled[3] = {0, 0, 0};  // index by r
      std::vector<double> chain_means_r1, chain_means_r2, chain_ratios;
      for (const auto& s : sums) {
        if (s.measurements == 0) continue;
        const double m1 = s.s1[v][k] / s.measurements;
        const double m2 = s.s2[v][k] / s.measurements;
        chain_means_r1.push_back(m1);
        chain_means_r2.push_back(m2);
        chain_ratios.push_back(m2 / (m1 * m1));
        pooled[1] += s.s1[v][k];
        pooled[2] += s.s2[v][k];
      }
      const double m1 = pooled[1] / total;
      const double m2 = pooled[2] / total;
      res.moments.push_back({variant, k, 1, combine(chain_means_r1, total, cfg.seed, m1)});
      res.moments.push_back({variant, k, 2, combine(chain_means_r2, total, cfg.seed, m2)});
      res.ratios.push_back({variant, k, combine(chain_ratios, total, cfg.seed, m2 / (m1 * m1))});
    }
  }
  return res;
}

ChiSquareReport chi_square_uniformity(int n0, int64_t measurements, uint64_t seed,
                                      bool allow_reflections) {
  if (n0 < 2 || n0 > 7) throw GuardError("uniformity check needs 2 <= n0 <= 7");
  std::unordered_map<uint64_t, int64_t> counts;
  enumerate_sap(2 * n0, [&](const LatticePolygon& p) {
    counts.emplace(polygon_canonical_key(std::span<const Point>(p.vertices)), 0);
  });
  const auto n_classes = static_cast<int64_t>(counts.size());

  PolygonChain chain(n0, seed, allow_reflections);
  const int64_t spacing = 10 * n0;
  chain.run_moves(100 * spacing);
  for (int64_t m = 0; m < measurements; ++m) {
    chain.run_moves(spacing);
    const auto it = counts.find(chain.canonical_key());
    if (it == counts.end()) throw std::logic_error("chain reached a state outside the class list");
    ++it->second;
  }

  ChiSquareReport rep;
  rep.measurements = measurements;
  rep.classes = n_classes;
  rep.dof = static_cast<int>(n_classes - 1);
  const double expected = static_cast<double>(measurements) / static_cast<double>(n_classes);
  for (const auto& [key, obs] : counts) {
    const double d = static_cast<double>(obs) - expected;
    rep.chi2 += d * d / expected;
  }
  rep.p_value = rep.dof == 0 ? 1.0 : chi2_sf(rep.chi2, rep.dof);
  return rep;
}

namespace {

// Regularized incomplete gamma Q(a, x), series for x < a+1 and Lentz's
// continued fraction otherwise.
double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) return 0;
  if (x == 0) return 1;
  const double gln = std::lgamma(a);
  if (x < a + 1) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace

double chi2_sf(double x, int dof) { return gamma_q(dof / 2.0, x / 2.0); }

}  // namespace polylim
