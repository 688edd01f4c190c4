#include "polylim/series.hpp"

#include <algorithm>
#include <unordered_map>

#include "polylim/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polylim {

namespace {

constexpr int kMaxComponents = 4;

int64_t small_binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

struct SliceAccum {
  // Dense when a single 21-bit component is in play and the slice is fat,
  // sparse otherwise.  Either way the sum is exact, so accumulation order
  // (and hence the thread schedule) cannot change the result.
  bool dense = false;
  std::vector<Int> vals;
  std::unordered_map<uint64_t, Int> map;

  void init_dense(uint64_t max_key) {
    dense = true;
    vals.assign(max_key + 1, Int(0));
  }
  void add(uint64_t key, Int v) {
    if (dense)
      vals[key] += v;
    else
      map[key] += v;
  }
  std::vector<SeriesTerm> flatten(const KeyCodec& codec) {
    std::vector<SeriesTerm> out;
    if (dense) {
      for (uint64_t k = 0; k < vals.size(); ++k)
        if (vals[k] != 0) out.push_back({k, std::move(vals[k])});
    } else {
      out.reserve(map.size());
      for (auto& [k, v] : map)
        if (v != 0) out.push_back({k, std::move(v)});
      std::sort(out.begin(), out.end(),
                [](const SeriesTerm& a, const SeriesTerm& b) { return a.key < b.key; });
    }
    // Field-overflow guard: every surviving exponent must stay below the
    // carry-safe field limit before the term can enter another product.
    const uint64_t mask = (uint64_t(1) << codec.bits) - 1;
    const auto limit = static_cast<uint64_t>(codec.field_limit());
    for (const SeriesTerm& t : out)
      for (int i = 0; i < codec.nc; ++i)
        if (((t.key >> (i * codec.bits)) & mask) >= limit)
          throw GuardError("series exponent exceeds the packed field range; lower N or M");
    return out;
  }
};

void conv_into(SliceAccum& acc, const std::vector<SeriesTerm>& a,
               const std::vector<SeriesTerm>& b) {
  for (const SeriesTerm& ta : a)
    for (const SeriesTerm& tb : b) acc.add(ta.key + tb.key, ta.c * tb.c);
}

uint64_t max_key(const std::vector<SeriesTerm>& terms) {
  return terms.empty() ? 0 : terms.back().key;
}

size_t conv_work(const SeriesPoly& a, const SeriesPoly& b, int g) {
  size_t w = 0;
  for (int ga = 0; ga <= g; ++ga) w += a.slices[ga].size() * b.slices[g - ga].size();
  return w;
}

SeriesPoly make_zero(Model model, int M, int N, bool has_height) {
  SeriesPoly s;
  s.model = model;
  s.M = M;
  s.N = N;
  s.has_height = has_height;
  s.slices.assign(N + 1, {});
  return s;
}

SeriesPoly make_monomial(Model model, int M, int N, bool has_height, int grade,
                         const std::vector<int64_t>& exps, Int c = Int(1)) {
  SeriesPoly s = make_zero(model, M, N, has_height);
  if (grade <= N) s.slices[grade].push_back({KeyCodec(M + (has_height ? 1 : 0)).pack(exps), std::move(c)});
  return s;
}

void add_into(SeriesPoly& a, const SeriesPoly& b, const Int& scale = Int(1)) {
  for (int g = 0; g <= a.N && g <= b.N; ++g) {
    std::vector<SeriesTerm> merged;
    merged.reserve(a.slices[g].size() + b.slices[g].size());
    auto ia = a.slices[g].begin();
    auto ib = b.slices[g].begin();
    while (ia != a.slices[g].end() || ib != b.slices[g].end()) {
      if (ib == b.slices[g].end() || (ia != a.slices[g].end() && ia->key < ib->key)) {
        merged.push_back(std::move(*ia++));
      } else if (ia == a.slices[g].end() || ib->key < ia->key) {
        merged.push_back({ib->key, ib->c * scale});
        ++ib;
      } else {
        Int v = ia->c + ib->c * scale;
        if (v != 0) merged.push_back({ia->key, std::move(v)});
        ++ia;
        ++ib;
      }
    }
    a.slices[g] = std::move(merged);
  }
}

// a * monomial (grade shift, exponent shift, integer scale)
SeriesPoly shift_mul(const SeriesPoly& a, int grade_shift, const std::vector<int64_t>& exps,
                     const Int& scale = Int(1)) {
  SeriesPoly r = make_zero(a.model, a.M, a.N, a.has_height);
  const KeyCodec codec(a.components());
  const uint64_t shift = codec.pack(exps);
  for (int g = 0; g + grade_shift <= a.N; ++g) {
    r.slices[g + grade_shift].reserve(a.slices[g].size());
    for (const SeriesTerm& t : a.slices[g])
      r.slices[g + grade_shift].push_back({t.key + shift, t.c * scale});
  }
  return r;
}

// Substitution u -> v(u) with v_k = prod_{l>=k} u_l^{binom(l,k)}: a term of
// u0-order w picks up w from v_0 in every u_l, and each n_k feeds binom(l,k)
// into u_l for l >= k.  Heights and grades are unchanged.
SeriesPoly substitute_v(const SeriesPoly& a) {
  SeriesPoly r = make_zero(a.model, a.M, a.N, a.has_height);
  const KeyCodec codec(a.components());
  const int hoff = a.has_height ? 1 : 0;
  std::vector<int64_t> exps, nexps(codec.nc);
  for (int g = 0; g <= a.N; ++g) {
    auto& out = r.slices[g];
    out.reserve(a.slices[g].size());
    for (const SeriesTerm& t : a.slices[g]) {
      exps = codec.unpack(t.key);
      const int64_t u0_exp = a.has_height ? g - exps[0] : g;
      if (hoff) nexps[0] = exps[0];
      for (int l = 1; l <= a.M; ++l) {
        int64_t e = u0_exp;
        for (int k = 1; k <= l; ++k) e += small_binom(l, k) * exps[hoff + k - 1];
        nexps[hoff + l - 1] = e;
      }
      out.push_back({codec.pack(nexps), t.c});
    }
    std::sort(out.begin(), out.end(),
              [](const SeriesTerm& x, const SeriesTerm& y) { return x.key < y.key; });
  }
  return r;
}

std::vector<SeriesTerm> flatten_slice_product(const SeriesPoly& a, const SeriesPoly& b, int g,
                                              const KeyCodec& codec) {
  SliceAccum acc;
  if (codec.nc == 1 && conv_work(a, b, g) > 256) {
    uint64_t mk = 0;
    for (int ga = 0; ga <= g; ++ga)
      if (!a.slices[ga].empty() && !b.slices[g - ga].empty())
        mk = std::max(mk, max_key(a.slices[ga]) + max_key(b.slices[g - ga]));
    acc.init_dense(mk);
  }
  for (int ga = 0; ga <= g; ++ga) conv_into(acc, a.slices[ga], b.slices[g - ga]);
  return acc.flatten(codec);
}

SeriesPoly mul_impl(const SeriesPoly& a, const SeriesPoly& b, Exec exec) {
  SeriesPoly r = make_zero(a.model, a.M, a.N, a.has_height);
  const KeyCodec codec(a.components());
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int g = 0; g <= a.N; ++g) r.slices[g] = flatten_slice_product(a, b, g, codec);
    return r;
  }
#else
  (void)exec;
#endif
  for (int g = 0; g <= a.N; ++g) r.slices[g] = flatten_slice_product(a, b, g, codec);
  return r;
}

// (1 - e)^{-1} for a series e with empty grade-0 slice, by the usual
// quadratic-time recurrence r_g = sum_{j>=1} e_j r_{g-j}, r_0 = 1.
SeriesPoly inv_one_minus(const SeriesPoly& e, Exec exec) {
  if (!e.slices[0].empty()) throw std::logic_error("inv_one_minus needs positive valuation");
  SeriesPoly r = make_zero(e.model, e.M, e.N, e.has_height);
  const KeyCodec codec(e.components());
  r.slices[0].push_back({0, Int(1)});
  for (int g = 1; g <= e.N; ++g) {
    size_t work = 0;
    for (int j = 1; j <= g; ++j) work += e.slices[j].size() * r.slices[g - j].size();
#ifdef _OPENMP
    if (exec == Exec::Parallel && work > 4096) {
      std::vector<std::vector<SeriesTerm>> parts(g + 1);
#pragma omp parallel for schedule(dynamic)
      for (int j = 1; j <= g; ++j) {
        if (e.slices[j].empty() || r.slices[g - j].empty()) continue;
        SliceAccum acc;
        if (codec.nc == 1 && e.slices[j].size() * r.slices[g - j].size() > 256)
          acc.init_dense(max_key(e.slices[j]) + max_key(r.slices[g - j]));
        conv_into(acc, e.slices[j], r.slices[g - j]);
        parts[j] = acc.flatten(codec);
      }
      SliceAccum total;
      if (codec.nc == 1 && work > 256) {
        uint64_t mk = 0;
        for (int j = 1; j <= g; ++j)
          if (!parts[j].empty()) mk = std::max(mk, max_key(parts[j]));
        total.init_dense(mk);
      }
      for (int j = 1; j <= g; ++j)
        for (SeriesTerm& t : parts[j]) total.add(t.key, std::move(t.c));
      r.slices[g] = total.flatten(codec);
      continue;
    }
#else
    (void)exec;
#endif
    SliceAccum acc;
    if (codec.nc == 1 && work > 256) {
      uint64_t mk = 0;
      for (int j = 1; j <= g; ++j)
        if (!e.slices[j].empty() && !r.slices[g - j].empty())
          mk = std::max(mk, max_key(e.slices[j]) + max_key(r.slices[g - j]));
      acc.init_dense(mk);
    }
    for (int j = 1; j <= g; ++j) conv_into(acc, e.slices[j], r.slices[g - j]);
    r.slices[g] = acc.flatten(codec);
  }
  return r;
}

SeriesPoly resized(const SeriesPoly& a, int n) {
  SeriesPoly r = make_zero(a.model, a.M, n, a.has_height);
  for (int g = 0; g <= std::min(n, a.N); ++g) r.slices[g] = a.slices[g];
  return r;
}

std::vector<int64_t> all_ones(int n) { return std::vector<int64_t>(n, 1); }

// One application of the model's equation map at truncation n.
SeriesPoly apply_phi(Model model, const SeriesPoly& s, int n, Exec exec,
                     const SeriesPoly* dyck, const SeriesPoly* meander) {
  const int M = s.M;
  const SeriesPoly cur = resized(s, n);
  switch (model) {
    case Model::StaircaseDiagonal: {
      // G = u0^2 u1..uM / (1 - 2 u0..uM - G(v))
      SeriesPoly e = shift_mul(make_monomial(model, M, n, false, 0, std::vector<int64_t>(M, 0)),
                               1, all_ones(M), Int(2));
      add_into(e, substitute_v(cur));
      SeriesPoly r = inv_one_minus(e, exec);
      return shift_mul(r, 2, all_ones(M));
    }
    case Model::StaircaseColumn: {
      // H = y (H(v) + u0..uM) / (1 - (H(v) + u0..uM)); key = (h, n_1..n_M)
      std::vector<int64_t> w1(M + 1, 1);
      w1[0] = 0;  // width-1 monomial, height 0
      std::vector<int64_t> ymono(M + 1, 0);
      ymono[0] = 1;  // the height variable
      SeriesPoly e = substitute_v(cur);
      add_into(e, make_monomial(model, M, n, true, 1, w1));
      // e/(1-e) = e * (1 + e + e^2 + ...)
      SeriesPoly frac = mul_impl(e, inv_one_minus(e, exec), exec);
      return shift_mul(frac, 1, ymono);
    }
    case Model::Dyck: {
      // G = 1 / (1 - u0^2 u1..uM G(v))
      SeriesPoly e = shift_mul(substitute_v(cur), 2, all_ones(M));
      return inv_one_minus(e, exec);
    }
    case Model::BilateralDyck: {
      SeriesPoly e = shift_mul(substitute_v(resized(*dyck, n)), 2, all_ones(M), Int(2));
      return inv_one_minus(e, exec);
    }
    case Model::Meander: {
      // G = D (1 + u0..uM G(v))
      SeriesPoly inner = shift_mul(substitute_v(cur), 1, all_ones(M));
      add_into(inner, make_monomial(model, M, n, false, 0, std::vector<int64_t>(M, 0)));
      return mul_impl(resized(*dyck, n), inner, exec);
    }
    default: {
      // Bernoulli: G = B (1 + 2 u0..uM G^m(v))
      SeriesPoly inner = shift_mul(substitute_v(resized(*meander, n)), 1, all_ones(M), Int(2));
      add_into(inner, make_monomial(model, M, n, false, 0, std::vector<int64_t>(M, 0)));
      SeriesPoly bilateral = apply_phi(Model::BilateralDyck, cur, n, exec, dyck, meander);
      return mul_impl(bilateral, inner, exec);
    }
  }
}

}  // namespace

uint64_t KeyCodec::pack(const std::vector<int64_t>& exps) const {
  if (static_cast<int>(exps.size()) != nc || nc > kMaxComponents)
    throw std::logic_error("exponent pack arity mismatch");
  uint64_t key = 0;
  for (int i = 0; i < nc; ++i) {
    if (exps[i] < 0 || exps[i] >= field_limit())
      throw GuardError("series exponent exceeds the packed field range; lower N or M");
    key |= static_cast<uint64_t>(exps[i]) << (i * bits);
  }
  return key;
}

std::vector<int64_t> KeyCodec::unpack(uint64_t key) const {
  std::vector<int64_t> exps(nc);
  const uint64_t mask = (uint64_t(1) << bits) - 1;
  for (int i = 0; i < nc; ++i) exps[i] = static_cast<int64_t>((key >> (i * bits)) & mask);
  return exps;
}

Int SeriesPoly::coeff(int grade, const std::vector<int64_t>& exps) const {
  if (grade < 0 || grade > N) return 0;
  const uint64_t key = KeyCodec(components()).pack(exps);
  const auto& slice = slices[grade];
  auto it = std::lower_bound(slice.begin(), slice.end(), key,
                             [](const SeriesTerm& t, uint64_t k) { return t.key < k; });
  return it != slice.end() && it->key == key ? it->c : Int(0);
}

Int SeriesPoly::grade_total(int grade) const {
  Int total = 0;
  for (const SeriesTerm& t : slices[grade]) total += t.c;
  return total;
}

size_t SeriesPoly::term_count() const {
  size_t n = 0;
  for (const auto& slice : slices) n += slice.size();
  return n;
}

bool operator==(const SeriesPoly& a, const SeriesPoly& b) {
  if (a.M != b.M || a.N != b.N || a.has_height != b.has_height) return false;
  for (int g = 0; g <= a.N; ++g) {
    if (a.slices[g].size() != b.slices[g].size()) return false;
    for (size_t i = 0; i < a.slices[g].size(); ++i)
      if (a.slices[g][i].key != b.slices[g][i].key || a.slices[g][i].c != b.slices[g][i].c)
        return false;
  }
  return true;
}

SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b, Exec exec) {
  return mul_impl(a, b, exec);
}

SeriesPoly solve_qfe(Model model, int M, int N, Exec exec) {
  if (M < 1) throw GuardError("M must be >= 1");
  if (N < 2) throw GuardError("N must be >= 2");
  const bool height = model == Model::StaircaseColumn;
  if (M + (height ? 1 : 0) > kMaxComponents)
    throw GuardError("at most 4 packed exponents are supported (column: M <= 3)");

  // Dependencies of the chained walk equations.
  SeriesPoly dyck, meander;
  if (model == Model::BilateralDyck || model == Model::Meander || model == Model::Bernoulli)
    dyck = solve_qfe(Model::Dyck, M, N, exec);
  if (model == Model::Bernoulli) meander = solve_qfe(Model::Meander, M, N, exec);
  if (model == Model::BilateralDyck || model == Model::Bernoulli) {
    // Not a self-referencing equation; one application resolves it.
    SeriesPoly out = apply_phi(model, make_zero(model, M, N, height), N, exec, &dyck, &meander);
    out.model = model;  // chained maps build on the dependency's series
    return out;
  }

  // Each iteration extends the stable grade range by at least one (diagonal
  // and Dyck gain two, the seed monomial there has grade 2), so the working
  // truncation can grow with the iteration count instead of running every
  // pass at full N.
  const int growth = (model == Model::StaircaseDiagonal || model == Model::Dyck) ? 2 : 1;
  SeriesPoly cur = make_zero(model, M, N, height);
  int working = std::min(N, 2 + growth);
  const int max_iter = N + 8;
  for (int iter = 0; iter < max_iter; ++iter) {
    SeriesPoly next = resized(apply_phi(model, cur, working, exec, &dyck, &meander), N);
    next.model = model;
    const bool full = working == N;
    if (full && next == cur) return cur;
    cur = std::move(next);
    working = std::min(N, working + growth);
  }
  throw NonStabilizedError();
}

SeriesPoly verify_feq(const SeriesPoly& s, Exec exec) {
  const int M = s.M;
  const int N = s.N;
  switch (s.model) {
    case Model::StaircaseDiagonal: {
      // G (1 - 2 u0..uM - G(v)) - u0^2 u1..uM
      SeriesPoly d = make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0));
      add_into(d, make_monomial(s.model, M, N, false, 1, all_ones(M)), Int(-2));
      add_into(d, substitute_v(s), Int(-1));
      SeriesPoly r = mul_impl(s, d, exec);
      add_into(r, make_monomial(s.model, M, N, false, 2, all_ones(M)), Int(-1));
      return r;
    }
    case Model::StaircaseColumn: {
      // H (1 - (H(v) + W1)) - y (H(v) + W1)
      std::vector<int64_t> w1(M + 1, 1);
      w1[0] = 0;
      std::vector<int64_t> ymono(M + 1, 0);
      ymono[0] = 1;
      SeriesPoly e = substitute_v(s);
      add_into(e, make_monomial(s.model, M, N, true, 1, w1));
      SeriesPoly d = make_monomial(s.model, M, N, true, 0, std::vector<int64_t>(M + 1, 0));
      add_into(d, e, Int(-1));
      SeriesPoly r = mul_impl(s, d, exec);
      add_into(r, shift_mul(e, 1, ymono), Int(-1));
      return r;
    }
    case Model::Dyck: {
      // G (1 - u0^2 u1..uM G(v)) - 1
      SeriesPoly d = make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0));
      add_into(d, shift_mul(substitute_v(s), 2, all_ones(M)), Int(-1));
      SeriesPoly r = mul_impl(s, d, exec);
      add_into(r, make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0)), Int(-1));
      return r;
    }
    case Model::BilateralDyck: {
      const SeriesPoly dyck = solve_qfe(Model::Dyck, M, N, exec);
      SeriesPoly d = make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0));
      add_into(d, shift_mul(substitute_v(dyck), 2, all_ones(M)), Int(-2));
      SeriesPoly r = mul_impl(s, d, exec);
      add_into(r, make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0)), Int(-1));
      return r;
    }
    case Model::Meander: {
      const SeriesPoly dyck = solve_qfe(Model::Dyck, M, N, exec);
      SeriesPoly inner = shift_mul(substitute_v(s), 1, all_ones(M));
      add_into(inner, make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0)));
      SeriesPoly r = s;
      add_into(r, mul_impl(dyck, inner, exec), Int(-1));
      return r;
    }
    default: {
      const SeriesPoly bilateral = solve_qfe(Model::BilateralDyck, M, N, exec);
      const SeriesPoly meander = solve_qfe(Model::Meander, M, N, exec);
      SeriesPoly inner = shift_mul(substitute_v(meander), 1, all_ones(M), Int(2));
      add_into(inner, make_monomial(s.model, M, N, false, 0, std::vector<int64_t>(M, 0)));
      SeriesPoly r = s;
      add_into(r, mul_impl(bilateral, inner, exec), Int(-1));
      return r;
    }
  }
}

bool series_is_zero(const SeriesPoly& s) {
  for (const auto& slice : s.slices)
    if (!slice.empty()) return false;
  return true;
}

bool verify_H_equals_G(int N, Exec exec) {
  if (N > 14) throw GuardError("H == G check capped at N = 14");
  const SeriesPoly h = solve_qfe(Model::StaircaseColumn, 1, N, exec);
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, N, exec);
  // y <- u0 merges the (h, n1) terms of a grade onto n1 alone.
  const KeyCodec hc(2), gc(1);
  for (int grade = 0; grade <= N; ++grade) {
    std::map<int64_t, Int> collapsed;
    for (const SeriesTerm& t : h.slices[grade]) collapsed[hc.unpack(t.key)[1]] += t.c;
    std::map<int64_t, Int> diag;
    for (const SeriesTerm& t : g.slices[grade]) diag[gc.unpack(t.key)[0]] += t.c;
    if (collapsed != diag) return false;
  }
  return true;
}

RationalSeries factorial_mgf_series(const SeriesPoly& s, const MultiIndex& k) {
  if (k.m != s.M) throw GuardError("multi-index arity must match the series");
  if (k.total() > 6) throw GuardError("factorial moment order capped at |k| = 6");
  RationalSeries out;
  out.var = RationalSeries::Variable::U0;
  out.c.assign(s.N + 1, Rat(0));
  const KeyCodec codec(s.components());
  const int hoff = s.has_height ? 1 : 0;
  for (int g = 0; g <= s.N; ++g) {
    Int total = 0;
    for (const SeriesTerm& t : s.slices[g]) {
      const auto exps = codec.unpack(t.key);
      Int w = t.c;
      for (int i = 0; i < s.M; ++i) {
        if (k.v[i] == 0) continue;
        w *= binomial(static_cast<long>(exps[hoff + i]), k.v[i]);
        if (w == 0) break;
      }
      total += w;
    }
    out.c[g] = Rat(total);
  }
  return out;
}

Rat finite_factorial_moment(const SeriesPoly& s, const MultiIndex& k, int n0) {
  if (n0 < 0 || n0 > s.N) throw GuardError("n0 beyond series truncation");
  const Int count = s.grade_total(n0);
  if (count == 0) throw ZeroCountError("no objects at size " + std::to_string(n0));
  const RationalSeries gk = factorial_mgf_series(s, k);
  Int kfact = 1;
  for (int i = 0; i < k.m; ++i) kfact *= factorial(k.v[i]);
  return Rat(kfact) * gk.c[n0] / Rat(count);
}

Rat finite_ordinary_moment(const SeriesPoly& s, const MultiIndex& k, int n0) {
  // x^k = sum_j S(k,j) (x)_j, independently per component.
  Rat total = 0;
  std::vector<MultiIndex> js = indices_in_box(k);
  for (const MultiIndex& j : js) {
    Int weight = 1;
    for (int i = 0; i < k.m; ++i) weight *= stirling2(k.v[i], j.v[i]);
    if (weight == 0) continue;
    total += Rat(weight) * finite_factorial_moment(s, j, n0);
  }
  return total;
}

ColumnEvaluation column_y_evaluation(const SeriesPoly& s, const Rat& y) {
  if (!s.has_height) throw GuardError("y evaluation applies to the column model");
  if (y <= 0) throw GuardError("y must be positive");
  ColumnEvaluation ev;
  ev.M = s.M;
  ev.by_width.assign(s.N + 1, {});
  const KeyCodec codec(s.components());
  for (int g = 0; g <= s.N; ++g) {
    for (const SeriesTerm& t : s.slices[g]) {
      auto exps = codec.unpack(t.key);
      const int64_t h = exps[0];
      const int64_t w = g - h;
      Rat ypow = 1;
      for (int64_t i = 0; i < h; ++i) ypow *= y;
      std::vector<int64_t> key(exps.begin() + 1, exps.end());
      ev.by_width[w][std::move(key)] += Rat(t.c) * ypow;
    }
  }
  return ev;
}

bool series_matches_histogram(const SeriesPoly& s, const MomentHistogram& hist, int grade_max) {
  const KeyCodec codec(s.components());
  for (int g = 0; g <= grade_max; ++g) {
    std::map<std::vector<int64_t>, Int> from_series;
    for (const SeriesTerm& t : s.slices[g]) from_series[codec.unpack(t.key)] = t.c;
    const auto& ref = g < static_cast<int>(hist.by_grade.size())
                          ? hist.by_grade[g]
                          : std::map<std::vector<int64_t>, Int>{};
    if (from_series != ref) return false;
  }
  return true;
}

bool coefficients_nonnegative(const SeriesPoly& s) {
  for (const auto& slice : s.slices)
    for (const SeriesTerm& t : slice)
      if (t.c < 0) return false;
  return true;
}

bool exponents_within_bound(const SeriesPoly& s) {
  const KeyCodec codec(s.components());
  const int hoff = s.has_height ? 1 : 0;
  for (int g = 0; g <= s.N; ++g)
    for (const SeriesTerm& t : s.slices[g]) {
      const auto exps = codec.unpack(t.key);
      for (int i = 0; i < s.M; ++i) {
        Int bound = 1;
        for (int p = 0; p <= i + 1; ++p) bound *= g;
        if (Int(exps[hoff + i]) > bound) return false;
      }
    }
  return true;
}

}  // namespace polylim
