#include "polylim/balance.hpp"

#include <algorithm>

#include "polylim/errors.hpp"

namespace polylim {

std::vector<MultiIndex> indices_in_box(const MultiIndex& box) {
  std::vector<MultiIndex> out;
  MultiIndex k(box.m);
  while (true) {
    out.push_back(k);
    int i = 0;
    while (i < box.m) {
      if (k.v[i] < box.v[i]) {
        ++k.v[i];
        break;
      }
      k.v[i] = 0;
      ++i;
    }
    if (i == box.m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// The recursions move weight between slots (k - e_{i+1} + e_i), which leaves a
// requested box but never the simplex |k| <= total, so tables are built on the
// simplex closure of the request.
std::vector<MultiIndex> indices_in_simplex(int M, int total) {
  MultiIndex box(M);
  for (int i = 0; i < M; ++i) box.v[i] = total;
  std::vector<MultiIndex> out;
  for (const MultiIndex& k : indices_in_box(box))
    if (k.total() <= total) out.push_back(k);
  return out;
}

}  // namespace

Rat gamma_exponent(Model model, const MultiIndex& k) {
  if (!k.nonnegative()) throw GuardError("multi-index must be componentwise >= 0");
  Rat g(-1, 2);
  for (int i = 1; i <= k.m; ++i) g += Rat(2 + i, 2) * k.v[i - 1];
  switch (model) {
    case Model::BilateralDyck:
    case Model::Meander:
      return g + 1;
    case Model::Bernoulli:
      return g + Rat(3, 2);
    default:
      return g;
  }
}

std::map<MultiIndex, Rat> c_table(int M, const MultiIndex& kmax) {
  if (kmax.m != M) throw GuardError("kmax arity must equal M");
  // componentwise cap 8, relaxed to 20 for the univariate growth tables
  const int cap = M == 1 ? 20 : 8;
  for (int i = 0; i < M; ++i)
    if (kmax.v[i] > cap) throw GuardError("kmax component exceeds the table cap");
  std::map<MultiIndex, Rat> c;
  auto get = [&](const MultiIndex& k) -> Rat {
    if (!k.nonnegative()) return 0;
    auto it = c.find(k);
    return it == c.end() ? Rat(0) : it->second;
  };
  for (const MultiIndex& k : indices_in_simplex(M, kmax.total())) {
    if (k.is_zero()) {
      c[k] = 1;
      continue;
    }
    Rat value = 0;
    const MultiIndex km1 = k.minus_e(1);
    if (km1.nonnegative()) value -= 2 * gamma_exponent(Model::StaircaseDiagonal, km1) * get(km1);
    for (int i = 1; i <= M - 1; ++i) {
      const MultiIndex shifted = k.minus_e(i + 1).plus_e(i);
      if (shifted.nonnegative()) value += Rat(k.v[i - 1] + 1) * get(shifted);
    }
    Rat quad = 0;
    for (const MultiIndex& l : indices_in_box(k)) {
      if (l.is_zero() || l == k) continue;
      quad += get(l) * get(k.minus(l));
    }
    value -= quad / 2;
    c[k] = value;
  }
  return c;
}

ModelConstants model_constants(Model model, int M, const std::optional<Rat>& y) {
  ModelConstants mc;
  mc.source = model;
  mc.f_e.resize(M);
  switch (model) {
    case Model::StaircaseDiagonal:
      mc.u_c = Rat(1, 4);
      mc.f0 = -1;
      for (int k = 1; k <= M; ++k)
        mc.f_e[k - 1] = Rat(factorial(k), Int(1) << (3 * (k + 1)));
      return mc;
    case Model::StaircaseColumn: {
      if (!y) throw GuardError("column model needs the height activity y");
      const Rat r = rat_root4(*y);  // y = r^4
      mc.y = *y;
      mc.u_c = (1 - r * r) * (1 - r * r);
      mc.f0 = -1 / r;
      for (int k = 1; k <= M; ++k) {
        Rat rk = 1;
        for (int i = 0; i < k; ++i) rk *= r;
        mc.f_e[k - 1] = Rat(factorial(k), Int(1) << k) / rk;
      }
      return mc;
    }
    case Model::Dyck:
      mc.u_c = Rat(1, 2);
      mc.f0 = -4;
      return mc;
    case Model::BilateralDyck:
      mc.u_c = Rat(1, 2);
      mc.f0 = Rat(1, 2);
      return mc;
    case Model::Meander:
      mc.u_c = Rat(1, 2);
      mc.f0 = 1;
      return mc;
    default:
      mc.u_c = Rat(1, 2);
      mc.f0 = Rat(1, 2);
      return mc;
  }
}

namespace {

using FMap = std::map<MultiIndex, Rat>;

Rat fmap_get(const FMap& f, const MultiIndex& k) {
  if (!k.nonnegative()) return 0;
  auto it = f.find(k);
  return it == f.end() ? Rat(0) : it->second;
}

// The three self-referencing walk recursions share their shape; only the
// gamma family, the quadratic weight and the partner table differ.
FMap walk_recursion(Model model, int M, const MultiIndex& kmax, const FMap* dyck) {
  FMap f;
  const Rat f0 = model_constants(model, M).f0;
  const Rat quad_weight = model == Model::BilateralDyck ? Rat(-8) : Rat(1);
  for (const MultiIndex& k : indices_in_simplex(M, kmax.total())) {
    if (k.is_zero()) {
      f[k] = f0;
      continue;
    }
    Rat sum = 0;
    const MultiIndex km1 = k.minus_e(1);
    if (km1.nonnegative()) sum += gamma_exponent(model, km1) * fmap_get(f, km1);
    for (int i = 1; i <= M - 1; ++i) {
      const MultiIndex shifted = k.minus_e(i + 1).plus_e(i);
      if (shifted.nonnegative()) sum += 2 * Rat(i + 1) * Rat(k.v[i - 1] + 1) * fmap_get(f, shifted);
    }
    if (model == Model::Meander) {
      // sum_{l < k} f^(m)_l f^(d)_{k-l}; the l = k term carries the unknown.
      Rat quad = 0;
      for (const MultiIndex& l : indices_in_box(k))
        if (l != k) quad += fmap_get(f, l) * fmap_get(*dyck, k.minus(l));
      sum += quad;
      f[k] = -sum / fmap_get(*dyck, MultiIndex::zero(M));
    } else {
      // quad_weight * sum_{0<=l<=k} f_l f_{k-l}; l in {0, k} both carry the unknown.
      Rat quad = 0;
      for (const MultiIndex& l : indices_in_box(k))
        if (!l.is_zero() && l != k) quad += fmap_get(f, l) * fmap_get(f, k.minus(l));
      sum += quad_weight * quad;
      f[k] = -sum / (quad_weight * 2 * f0);
    }
  }
  return f;
}

FMap walk_f_table(Model model, int M, const MultiIndex& kmax) {
  switch (model) {
    case Model::Dyck:
    case Model::BilateralDyck:
      return walk_recursion(model, M, kmax, nullptr);
    case Model::Meander: {
      const FMap d = walk_recursion(Model::Dyck, M, kmax, nullptr);
      return walk_recursion(Model::Meander, M, kmax, &d);
    }
    default: {
      const FMap b = walk_recursion(Model::BilateralDyck, M, kmax, nullptr);
      const FMap d = walk_recursion(Model::Dyck, M, kmax, nullptr);
      const FMap m = walk_recursion(Model::Meander, M, kmax, &d);
      FMap r;
      for (const MultiIndex& k : indices_in_simplex(M, kmax.total())) {
        Rat sum = 0;
        for (const MultiIndex& l : indices_in_box(k)) sum += fmap_get(b, l) * fmap_get(m, k.minus(l));
        r[k] = sum;
      }
      return r;
    }
  }
}

Rat rat_pow(const Rat& x, long e) {
  Rat r = 1;
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= x;
  return e >= 0 ? r : Rat(1) / r;
}

FMap polygon_f_table(Model model, int M, const MultiIndex& kmax, const std::optional<Rat>& y) {
  const ModelConstants mc = model_constants(model, M, y);
  const auto c = c_table(M, kmax);
  FMap f;
  for (const auto& [k, ck] : c) {
    Rat fk = ck * rat_pow(mc.f0, 1 - k.total());
    for (int i = 1; i <= M; ++i) fk *= rat_pow(mc.f_e[i - 1], k.v[i - 1]);
    f[k] = fk;
  }
  return f;
}

FMap f_table(Model model, int M, const MultiIndex& kmax, const std::optional<Rat>& y) {
  if (is_walk(model)) return walk_f_table(model, M, kmax);
  return polygon_f_table(model, M, kmax, y);
}

long twice(const Rat& x) {
  const Rat t = 2 * x;
  if (boost::multiprecision::denominator(t) != 1)
    throw std::logic_error("exponent is not a half-integer");
  return boost::multiprecision::numerator(t).convert_to<long>();
}

}  // namespace

AmplitudeTable amplitude_table(Model model, int M, const MultiIndex& kmax,
                               const std::optional<Rat>& y) {
  const int cap = M == 1 ? 20 : 8;
  for (int i = 0; i < M; ++i)
    if (kmax.v[i] > cap) throw GuardError("kmax component exceeds the table cap");
  AmplitudeTable table;
  table.model = model;
  table.M = M;
  // The c ratios divide by the unit amplitudes, so the working box must
  // contain every e_i even when a kmax component is zero.
  MultiIndex box = kmax;
  for (int i = 0; i < M; ++i) box.v[i] = std::max(box.v[i], 1);
  const FMap f = f_table(model, M, box, y);
  const Rat f0 = fmap_get(f, MultiIndex::zero(M));
  for (const auto& [k, fk] : f) {
    if (!k.leq(kmax)) continue;
    AmplitudeRow row;
    row.gamma = gamma_exponent(model, k);
    row.f = fk;
    Rat c = fk * rat_pow(f0, k.total() - 1);
    for (int i = 1; i <= M; ++i) c /= rat_pow(fmap_get(f, MultiIndex::unit(M, i)), k.v[i - 1]);
    row.c = c;
    table.rows[k] = row;
  }
  return table;
}

Rat amplitude_f(Model model, const MultiIndex& k, const std::optional<Rat>& y) {
  return fmap_get(f_table(model, k.m, k, y), k);
}

std::map<MultiIndex, Rat> staircase_f_via_pde(int M, const MultiIndex& kmax) {
  FMap f;
  for (const MultiIndex& k : indices_in_simplex(M, kmax.total())) {
    if (k.is_zero()) {
      f[k] = -1;
      continue;
    }
    Rat sum = 0;
    const MultiIndex km1 = k.minus_e(1);
    if (km1.nonnegative())
      sum += Rat(1, 16) * gamma_exponent(Model::StaircaseDiagonal, km1) * fmap_get(f, km1);
    for (int i = 1; i <= M - 1; ++i) {
      const MultiIndex shifted = k.minus_e(i + 1).plus_e(i);
      if (shifted.nonnegative())
        sum += Rat(i + 1, 4) * Rat(k.v[i - 1] + 1) * fmap_get(f, shifted);
    }
    Rat quad = 0;
    for (const MultiIndex& l : indices_in_box(k))
      if (!l.is_zero() && l != k) quad += fmap_get(f, l) * fmap_get(f, k.minus(l));
    sum += quad;
    f[k] = sum / 2;  // the l in {0, k} terms contribute 2 f_0 f_k = -2 f_k
  }
  return f;
}

std::vector<Rat> staircase_f_m1_recursion(int kmax) {
  std::vector<Rat> f(kmax + 1);
  f[0] = -1;
  for (int k = 1; k <= kmax; ++k) {
    // gamma_{k-1} = 3(k-1)/2 - 1/2; the l in {0, k} terms give -2 f_k.
    Rat sum = Rat(1, 16) * (Rat(3 * (k - 1), 2) - Rat(1, 2)) * f[k - 1];
    for (int l = 1; l < k; ++l) sum += f[l] * f[k - l];
    f[k] = sum / 2;
  }
  return f;
}

ExactScalar limit_moment(Model model, const MultiIndex& k, const std::optional<Rat>& y) {
  const ModelConstants mc = model_constants(model, k.m, y);
  const Rat fk = amplitude_f(model, k, y);
  const Rat g0 = gamma_exponent(model, MultiIndex::zero(k.m));
  const Rat gk = gamma_exponent(model, k);
  Int kfact = 1;
  for (int i = 0; i < k.m; ++i) kfact *= factorial(k.v[i]);
  const ExactScalar gamma_ratio = gamma_half(twice(g0)) / gamma_half(twice(gk));
  const ExactScalar uc_pow = rat_pow_half(mc.u_c, twice(gk - g0));
  return ExactScalar(Rat(kfact) * fk / mc.f0) / uc_pow * gamma_ratio;
}

ExactScalar limit_moment_ratio(int M, const MultiIndex& k) {
  MultiIndex box = k;
  const Rat ck = c_table(M, box).at(k);
  Int kfact = 1;
  for (int i = 0; i < k.m; ++i) kfact *= factorial(k.v[i]);
  const Model m = Model::StaircaseDiagonal;
  ExactScalar r = ExactScalar(Rat(kfact) * ck);
  r = r * gamma_half(twice(gamma_exponent(m, MultiIndex::zero(M)))).pow_int(1 - k.total());
  for (int i = 1; i <= M; ++i)
    r = r * gamma_half(twice(gamma_exponent(m, MultiIndex::unit(M, i)))).pow_int(k.v[i - 1]);
  return r / gamma_half(twice(gamma_exponent(m, k)));
}

Alpha alpha(Model model, int k, const std::optional<Rat>& y) {
  if (is_walk(model)) throw GuardError("alpha applies to the polygon models");
  if (k < 1 || k > MultiIndex::kMaxM) throw GuardError("alpha needs 1 <= k <= M");
  const ModelConstants mc = model_constants(model, k, y);
  // alpha_k = -(f_{e_k}/f_0) 2^(3-3k/2) / k!
  const ExactScalar two_pow = rat_pow_half(Rat(2), 2 * 3 - 3 * k);
  Alpha a;
  a.value = ExactScalar(-mc.f_e[k - 1] / mc.f0 / Rat(factorial(k))) * two_pow;
  a.squared = a.value * a.value;
  a.approx = a.value.to_double();
  return a;
}

F0Poly scaling_series_F0(Model model, int M, int order, const std::optional<Rat>& y) {
  if (order > 8) throw GuardError("scaling series capped at total degree 8");
  MultiIndex box(M);
  for (int i = 0; i < M; ++i) box.v[i] = order;
  F0Poly F;
  F.M = M;
  F.order = order;
  for (const auto& [k, fk] : f_table(model, M, box, y)) {
    if (k.total() > order) continue;
    F.coeff[k] = (k.total() % 2 == 0) ? fk : -fk;
  }
  return F;
}

namespace {

F0Poly f0_zero(int M, int order) { return F0Poly{M, order, {}}; }

void f0_add(F0Poly& a, const F0Poly& b, const Rat& scale = Rat(1)) {
  for (const auto& [k, v] : b.coeff) {
    Rat& slot = a.coeff[k];
    slot += scale * v;
    if (slot == 0) a.coeff.erase(k);
  }
}

F0Poly f0_mul(const F0Poly& a, const F0Poly& b, int order) {
  F0Poly r = f0_zero(a.M, order);
  for (const auto& [ka, va] : a.coeff)
    for (const auto& [kb, vb] : b.coeff) {
      MultiIndex k = ka;
      for (int i = 0; i < k.m; ++i) k.v[i] += kb.v[i];
      if (k.total() > order) continue;
      Rat& slot = r.coeff[k];
      slot += va * vb;
      if (slot == 0) r.coeff.erase(k);
    }
  return r;
}

// eps_j * dF/deps_i, truncated.
F0Poly f0_eps_deriv(const F0Poly& f, int j, int i, int order) {
  F0Poly r = f0_zero(f.M, order);
  for (const auto& [k, v] : f.coeff) {
    if (k.v[i - 1] == 0) continue;
    MultiIndex t = k.minus_e(i).plus_e(j);
    if (t.total() > order) continue;
    r.coeff[t] += Rat(k.v[i - 1]) * v;
  }
  return r;
}

F0Poly f0_shift_e1_scaled(const F0Poly& f, int order, const Rat& scale) {
  F0Poly r = f0_zero(f.M, order);
  for (const auto& [k, v] : f.coeff) {
    MultiIndex t = k.plus_e(1);
    if (t.total() > order) continue;
    r.coeff[t] = scale * v;
  }
  return r;
}

// eps_1 (F/2 + sign * sum_i (1+i/2) eps_i dF/deps_i), the transport part of
// the scaling-function equations.
F0Poly f0_transport(const F0Poly& f, int order, int sign) {
  F0Poly inner = f0_zero(f.M, order);
  f0_add(inner, f, Rat(1, 2));
  for (int i = 1; i <= f.M; ++i)
    f0_add(inner, f0_eps_deriv(f, i, i, order), Rat(sign) * Rat(2 + i, 2));
  return f0_shift_e1_scaled(inner, order, Rat(1));
}

F0Poly f0_cross_terms(const F0Poly& f, int order, const Rat& weight) {
  F0Poly r = f0_zero(f.M, order);
  for (int i = 1; i <= f.M - 1; ++i) f0_add(r, f0_eps_deriv(f, i + 1, i, order), weight * (i + 1));
  return r;
}

}  // namespace

F0Poly pde_residual(PdeRelation relation, int M, int order) {
  const auto constant = [&](const Rat& v) {
    F0Poly c = f0_zero(M, order);
    c.coeff[MultiIndex::zero(M)] = v;
    return c;
  };
  switch (relation) {
    case PdeRelation::StaircaseF0: {
      const F0Poly F = scaling_series_F0(Model::StaircaseDiagonal, M, order);
      F0Poly r = f0_zero(M, order);
      f0_add(r, f0_transport(F, order, -1), Rat(1, 16));
      f0_add(r, f0_cross_terms(F, order, Rat(1, 4)));
      f0_add(r, f0_mul(F, F, order));
      f0_add(r, constant(1), Rat(-1));
      return r;
    }
    case PdeRelation::DyckF0: {
      const F0Poly F = scaling_series_F0(Model::Dyck, M, order);
      F0Poly r = f0_transport(F, order, -1);
      f0_add(r, f0_cross_terms(F, order, Rat(2)));
      f0_add(r, f0_mul(F, F, order));
      f0_add(r, constant(16), Rat(-1));
      return r;
    }
    case PdeRelation::BilateralTimesDyck: {
      const F0Poly Fb = scaling_series_F0(Model::BilateralDyck, M, order);
      const F0Poly Fd = scaling_series_F0(Model::Dyck, M, order);
      F0Poly r = f0_mul(Fb, Fd, order);
      f0_add(r, constant(-2), Rat(-1));
      return r;
    }
    case PdeRelation::MeanderF0: {
      // Sign convention consistent with the meander amplitude recursion:
      // e1 (F/2 + sum (1+i/2) e_i dF/de_i) - 2 sum (i+1) e_{i+1} dF/de_i - F Fd = 4.
      const F0Poly Fm = scaling_series_F0(Model::Meander, M, order);
      const F0Poly Fd = scaling_series_F0(Model::Dyck, M, order);
      F0Poly r = f0_transport(Fm, order, +1);
      f0_add(r, f0_cross_terms(Fm, order, Rat(-2)));
      f0_add(r, f0_mul(Fm, Fd, order), Rat(-1));
      f0_add(r, constant(4), Rat(-1));
      return r;
    }
    default: {
      const F0Poly Fr = scaling_series_F0(Model::Bernoulli, M, order);
      const F0Poly Fb = scaling_series_F0(Model::BilateralDyck, M, order);
      const F0Poly Fm = scaling_series_F0(Model::Meander, M, order);
      F0Poly r = Fr;
      f0_add(r, f0_mul(Fb, Fm, order), Rat(-1));
      return r;
    }
  }
}

std::vector<MomentGrowthRow> moment_growth_report(int kmax) {
  if (kmax > 20) throw GuardError("growth report caps at k = 20");
  std::vector<MomentGrowthRow> rows;
  double carleman = 0;
  for (int k = 0; k <= kmax; ++k) {
    MultiIndex ki(1, {k});
    MomentGrowthRow row;
    row.k = k;
    row.moment = limit_moment(Model::StaircaseDiagonal, ki).to_double();
    if (k >= 1) {
      row.root_over_k = std::pow(row.moment, 1.0 / k) / k;
      carleman += std::pow(row.moment, -1.0 / (2.0 * k));
    }
    row.carleman_sum = carleman;
    const double kfact = factorial(k).convert_to<double>();
    row.term_half = row.moment * std::pow(0.5, k) / kfact;
    row.term_one = row.moment / kfact;
    row.term_two = row.moment * std::pow(2.0, k) / kfact;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace polylim
