#include <doctest.h>

#include "polylim/balance.hpp"
#include "polylim/enumerate.hpp"
#include "polylim/errors.hpp"
#include "polylim/series.hpp"

using namespace polylim;

TEST_CASE("gamma exponents") {
  CHECK(gamma_exponent(Model::StaircaseDiagonal, MultiIndex(1, {0})) == Rat(-1, 2));
  CHECK(gamma_exponent(Model::StaircaseDiagonal, MultiIndex(1, {1})) == Rat(1));
  CHECK(gamma_exponent(Model::StaircaseDiagonal, MultiIndex(1, {2})) == Rat(5, 2));
  for (int k = 0; k <= 6; ++k)
    CHECK(gamma_exponent(Model::Dyck, MultiIndex(1, {k})) == Rat(3 * k, 2) - Rat(1, 2));
  CHECK(gamma_exponent(Model::StaircaseDiagonal, MultiIndex(2, {0, 1})) == Rat(3, 2));
  CHECK(gamma_exponent(Model::Meander, MultiIndex(1, {0})) == Rat(1, 2));
  CHECK(gamma_exponent(Model::BilateralDyck, MultiIndex(1, {0})) == Rat(1, 2));
  CHECK(gamma_exponent(Model::Bernoulli, MultiIndex(1, {0})) == Rat(1));
}

TEST_CASE("c table values") {
  const auto c1 = c_table(1, MultiIndex(1, {3}));
  CHECK(c1.at(MultiIndex(1, {0})) == Rat(1));
  CHECK(c1.at(MultiIndex(1, {1})) == Rat(1));
  CHECK(c1.at(MultiIndex(1, {2})) == Rat(-5, 2));
  CHECK(c1.at(MultiIndex(1, {3})) == Rat(15));

  const auto c2 = c_table(2, MultiIndex(2, {2, 2}));
  CHECK(c2.at(MultiIndex(2, {1, 0})) == Rat(1));
  CHECK(c2.at(MultiIndex(2, {0, 1})) == Rat(1));
  CHECK(c2.at(MultiIndex(2, {1, 1})) == Rat(-9));
  CHECK(c2.at(MultiIndex(2, {0, 2})) == Rat(-19, 2));
  CHECK(c2.at(MultiIndex(2, {2, 0})) == Rat(-5, 2));
}

TEST_CASE("sign of c_k alternates opposite to |k| (f positivity with f0 = -1)") {
  const auto c = c_table(2, MultiIndex(2, {3, 3}));
  for (const auto& [k, v] : c) {
    if (k.is_zero()) continue;
    CHECK(v != 0);
    CHECK((v > 0) == (k.total() % 2 == 1));
  }
}

TEST_CASE("model constants") {
  const ModelConstants diag = model_constants(Model::StaircaseDiagonal, 3);
  CHECK(diag.u_c == Rat(1, 4));
  CHECK(diag.f0 == Rat(-1));
  for (int k = 1; k <= 3; ++k)
    CHECK(diag.f_e[k - 1] == Rat(factorial(k), Int(1) << (3 * (k + 1))));

  const ModelConstants col = model_constants(Model::StaircaseColumn, 2, Rat(1, 16));
  CHECK(col.u_c == Rat(9, 16));  // (1 - sqrt(1/16))^2 = (3/4)^2
  CHECK(col.f0 == Rat(-2));      // -y^(-1/4)
  CHECK(col.f_e[0] == Rat(1));   // 1! 2^-1 y^(-1/4) = 1
  CHECK_THROWS_AS(model_constants(Model::StaircaseColumn, 1, Rat(1, 3)),
                  IrrationalConstantError);
}

TEST_CASE("staircase amplitudes via three independent routes") {
  // route 1: composition through the c recursion
  const auto table = amplitude_table(Model::StaircaseDiagonal, 1, MultiIndex(1, {6}));
  // route 2: the PDE-induced recursion on f directly
  const auto pde = staircase_f_via_pde(1, MultiIndex(1, {6}));
  // route 3: the M=1 recursion (1/16) gamma_{k-1} f_{k-1} + sum f_l f_{k-l} = 0
  const auto m1 = staircase_f_m1_recursion(6);
  for (int k = 0; k <= 6; ++k) {
    const MultiIndex ki(1, {k});
    CHECK(table.rows.at(ki).f == pde.at(ki));
    CHECK(table.rows.at(ki).f == m1[k]);
  }
  CHECK(table.rows.at(MultiIndex(1, {1})).f == Rat(1, 64));
  CHECK(table.rows.at(MultiIndex(1, {2})).f == Rat(5, 8192));
  CHECK(table.rows.at(MultiIndex(1, {3})).f == Rat(15, 262144));

  const auto pde2 = staircase_f_via_pde(2, MultiIndex(2, {3, 3}));
  const auto table2 = amplitude_table(Model::StaircaseDiagonal, 2, MultiIndex(2, {3, 3}));
  for (const auto& [k, row] : table2.rows) CHECK(row.f == pde2.at(k));
}

TEST_CASE("f_{e_k} = k! 2^{-3(k+1)} emerges from the PDE recursion alone") {
  const auto pde = staircase_f_via_pde(4, MultiIndex(4, {1, 1, 1, 1}));
  for (int k = 1; k <= 4; ++k)
    CHECK(pde.at(MultiIndex::unit(4, k)) == Rat(factorial(k), Int(1) << (3 * (k + 1))));
}

TEST_CASE("amplitudes are strictly positive for k != 0") {
  for (Model m : {Model::StaircaseDiagonal, Model::Dyck, Model::BilateralDyck,
                  Model::Meander, Model::Bernoulli}) {
    const auto table = amplitude_table(m, 2, MultiIndex(2, {3, 3}));
    for (const auto& [k, row] : table.rows)
      if (!k.is_zero()) CHECK(row.f > 0);
  }
  const auto col = amplitude_table(Model::StaircaseColumn, 2, MultiIndex(2, {3, 3}), Rat(1, 16));
  for (const auto& [k, row] : col.rows)
    if (!k.is_zero()) CHECK(row.f > 0);
}

TEST_CASE("amplitude ratios c_k are model independent (diagonal vs column)") {
  const auto diag = amplitude_table(Model::StaircaseDiagonal, 2, MultiIndex(2, {3, 3}));
  const auto col = amplitude_table(Model::StaircaseColumn, 2, MultiIndex(2, {3, 3}), Rat(1, 16));
  const auto col2 = amplitude_table(Model::StaircaseColumn, 2, MultiIndex(2, {3, 3}), Rat(81, 16));
  const auto cref = c_table(2, MultiIndex(2, {3, 3}));
  for (const auto& [k, row] : diag.rows) {
    CHECK(row.c == cref.at(k));
    CHECK(col.rows.at(k).c == cref.at(k));
    CHECK(col2.rows.at(k).c == cref.at(k));
  }
}

TEST_CASE("walk boundary amplitudes and low-order values") {
  CHECK(amplitude_f(Model::Dyck, MultiIndex(1, {0})) == Rat(-4));
  CHECK(amplitude_f(Model::BilateralDyck, MultiIndex(1, {0})) == Rat(1, 2));
  CHECK(amplitude_f(Model::Meander, MultiIndex(1, {0})) == Rat(1));
  CHECK(amplitude_f(Model::Bernoulli, MultiIndex(1, {0})) == Rat(1, 2));

  CHECK(amplitude_f(Model::Dyck, MultiIndex(1, {1})) == Rat(1, 4));
  CHECK(amplitude_f(Model::Dyck, MultiIndex(1, {2})) == Rat(5, 128));
  CHECK(amplitude_f(Model::BilateralDyck, MultiIndex(1, {1})) == Rat(1, 32));
  CHECK(amplitude_f(Model::BilateralDyck, MultiIndex(1, {2})) == Rat(7, 1024));
  CHECK(amplitude_f(Model::Meander, MultiIndex(1, {1})) == Rat(3, 16));
  CHECK(amplitude_f(Model::Meander, MultiIndex(1, {2})) == Rat(59, 512));
}

TEST_CASE("bernoulli amplitudes are the Cauchy product of bilateral and meander") {
  const int M = 2;
  const MultiIndex box(2, {2, 2});
  const auto b = amplitude_table(Model::BilateralDyck, M, box);
  const auto m = amplitude_table(Model::Meander, M, box);
  const auto r = amplitude_table(Model::Bernoulli, M, box);
  for (const auto& [k, row] : r.rows) {
    Rat sum = 0;
    for (const auto& [l, lrow] : b.rows) {
      if (!l.leq(k)) continue;
      sum += lrow.f * m.rows.at(k.minus(l)).f;
    }
    CHECK(row.f == sum);
  }
  CHECK(r.rows.at(MultiIndex::zero(2)).f ==
        b.rows.at(MultiIndex::zero(2)).f * m.rows.at(MultiIndex::zero(2)).f);
}

TEST_CASE("limit moments") {
  CHECK(limit_moment(Model::StaircaseDiagonal, MultiIndex(1, {0})) == ExactScalar::one());
  // mean of the limit area law: sqrt(pi)/4
  CHECK(limit_moment(Model::StaircaseDiagonal, MultiIndex(1, {1})) ==
        ExactScalar(Rat(1, 4), 1));
  // second moment 5/24, so the ratio is 10/(3 pi)
  CHECK(limit_moment(Model::StaircaseDiagonal, MultiIndex(1, {2})) == ExactScalar(Rat(5, 24)));
  // dyck mean total height: sqrt(pi/8), the Brownian excursion area mean
  const ExactScalar dyck_mean = limit_moment(Model::Dyck, MultiIndex(1, {1}));
  CHECK(dyck_mean == ExactScalar(Rat(1, 4), 1, 1));  // sqrt(2) sqrt(pi) / 4 = sqrt(pi/8)
  CHECK(dyck_mean.to_double() == doctest::Approx(0.626657).epsilon(1e-5));
  // meander mean integral: 3 sqrt(2 pi) / 8
  CHECK(limit_moment(Model::Meander, MultiIndex(1, {1})) == ExactScalar(Rat(3, 8), 1, 1));
  // bernoulli mean integral of |B|: 2 sqrt(2) / (3 sqrt(pi))
  const ExactScalar bern = limit_moment(Model::Bernoulli, MultiIndex(1, {1}));
  CHECK(bern.to_double() == doctest::Approx(0.531923).epsilon(1e-5));
}

TEST_CASE("limit moment ratios are exact model-independent scalars") {
  const ExactScalar r2 = limit_moment_ratio(1, MultiIndex(1, {2}));
  CHECK(r2 == ExactScalar(Rat(10, 3), -2));  // 10/(3 pi)
  CHECK(r2.str() == "10/(3*pi)");
  CHECK(r2.to_double() == doctest::Approx(1.06103).epsilon(1e-5));

  CHECK(limit_moment_ratio(2, MultiIndex(2, {0, 2})) == ExactScalar(Rat(19, 15)));

  CHECK(limit_moment_ratio(1, MultiIndex(1, {1})) == ExactScalar::one());
  CHECK(limit_moment_ratio(2, MultiIndex(2, {0, 1})) == ExactScalar::one());
  CHECK(limit_moment_ratio(3, MultiIndex(3, {0, 0, 1})) == ExactScalar::one());
}

TEST_CASE("ratio of limit moments is model independent (diagonal vs column)") {
  for (const MultiIndex k : {MultiIndex(2, {2, 0}), MultiIndex(2, {0, 2}), MultiIndex(2, {1, 1})}) {
    const ExactScalar ratio = limit_moment_ratio(2, k);
    for (const auto& y : {std::optional<Rat>{}, std::optional<Rat>{Rat(1, 16)},
                          std::optional<Rat>{Rat(81, 625)}}) {
      const Model m = y ? Model::StaircaseColumn : Model::StaircaseDiagonal;
      ExactScalar direct = limit_moment(m, k, y);
      direct = direct / limit_moment(m, MultiIndex::unit(2, 1), y).pow_int(k.v[0]);
      direct = direct / limit_moment(m, MultiIndex::unit(2, 2), y).pow_int(k.v[1]);
      CHECK(direct == ratio);
    }
  }
}

TEST_CASE("alpha for the diagonal model is 2^(-9k/2)") {
  CHECK(alpha(Model::StaircaseDiagonal, 2).value == ExactScalar(Rat(1, 512)));
  CHECK(alpha(Model::StaircaseDiagonal, 1).squared == ExactScalar(Rat(1, 512)));
  for (int k = 1; k <= 4; ++k) {
    const Alpha a = alpha(Model::StaircaseDiagonal, k);
    // compare against 2^(-9k/2) as an exact scalar
    CHECK(a.value == rat_pow_half(Rat(2), -9 * k));
    CHECK(a.squared == ExactScalar(Rat(1, Int(1) << (9 * k))));
  }
}

TEST_CASE("alpha for the column model follows the composition formula") {
  // with f_{e_k} = k! 2^-k y^(-k/4) and f_0 = -y^(-1/4) the composition gives
  // alpha_k = y^((1-k)/4) 2^(3-5k/2); at k = 1 this is sqrt(2), independent of y.
  const Rat y(1, 16);  // y^(1/4) = 1/2
  CHECK(alpha(Model::StaircaseColumn, 1, y).value == ExactScalar(Rat(1), 0, 1));    // sqrt(2)
  CHECK(alpha(Model::StaircaseColumn, 2, y).value == ExactScalar(Rat(1, 2)));       // 2 * 2^-2
  CHECK(alpha(Model::StaircaseColumn, 3, y).value == ExactScalar(Rat(1, 8), 0, 1));  // 2^(-5/2)
}

TEST_CASE("scaling function coefficients reproduce the printed series") {
  const F0Poly F = scaling_series_F0(Model::StaircaseDiagonal, 1, 3);
  CHECK(F.coeff.at(MultiIndex(1, {0})) == Rat(-1));
  CHECK(F.coeff.at(MultiIndex(1, {1})) == Rat(-1, 64));
  CHECK(F.coeff.at(MultiIndex(1, {2})) == Rat(5, 8192));
  CHECK(F.coeff.at(MultiIndex(1, {3})) == Rat(-15, 262144));
}

TEST_CASE("sign of the F0 coefficients is (-1)^|k| away from k = 0") {
  const F0Poly F = scaling_series_F0(Model::StaircaseDiagonal, 2, 4);
  for (const auto& [k, v] : F.coeff) {
    if (k.is_zero()) continue;  // the constant is f_0 = -1
    CHECK((v > 0) == (k.total() % 2 == 0));
  }
}

TEST_CASE("walk scaling functions") {
  const int order = 5;
  for (int M : {1, 2}) {
    const F0Poly Fb = scaling_series_F0(Model::BilateralDyck, M, order);
    const F0Poly Fd = scaling_series_F0(Model::Dyck, M, order);
    const F0Poly Fm = scaling_series_F0(Model::Meander, M, order);
    const F0Poly Fr = scaling_series_F0(Model::Bernoulli, M, order);
    // F0^(b) F0^(d) = -2 and F0^(r) = F0^(b) F0^(m), coefficientwise
    CHECK(pde_residual(PdeRelation::BilateralTimesDyck, M, order).coeff.empty());
    CHECK(pde_residual(PdeRelation::BernoulliProduct, M, order).coeff.empty());
    CHECK(Fb.coeff.at(MultiIndex::zero(M)) * Fd.coeff.at(MultiIndex::zero(M)) == Rat(-2));
    CHECK(Fr.coeff.at(MultiIndex::zero(M)) ==
          Fb.coeff.at(MultiIndex::zero(M)) * Fm.coeff.at(MultiIndex::zero(M)));
  }
}

TEST_CASE("PDE residuals vanish to the tested order") {
  CHECK(pde_residual(PdeRelation::StaircaseF0, 1, 7).coeff.empty());  // Riccati
  CHECK(pde_residual(PdeRelation::StaircaseF0, 2, 5).coeff.empty());
  CHECK(pde_residual(PdeRelation::DyckF0, 1, 7).coeff.empty());
  CHECK(pde_residual(PdeRelation::DyckF0, 2, 5).coeff.empty());
  CHECK(pde_residual(PdeRelation::MeanderF0, 1, 7).coeff.empty());
  CHECK(pde_residual(PdeRelation::MeanderF0, 2, 5).coeff.empty());
}

TEST_CASE("finite-size moment ratio approaches 10/(3 pi) from the series side") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 32);
  const double target = limit_moment_ratio(1, MultiIndex(1, {2})).to_double();
  auto ratio_at = [&](int n0) {
    const Rat m2 = finite_ordinary_moment(g, MultiIndex(1, {2}), n0);
    const Rat m1 = finite_ordinary_moment(g, MultiIndex(1, {1}), n0);
    return to_double(m2) / (to_double(m1) * to_double(m1));
  };
  CHECK(std::abs(ratio_at(32) - target) < std::abs(ratio_at(8) - target));
}

TEST_CASE("walk amplitudes predict finite-size height moments for all four models") {
  // E[n1] / n^{3/2} approaches the limit mean; the deviation shrinks from
  // length 10 to length 18 (O(n^-1/2) trend).  Even lengths keep the series
  // nonzero for the bridge-like models.
  for (Model m : {Model::Dyck, Model::BilateralDyck, Model::Meander, Model::Bernoulli}) {
    const SeriesPoly s = solve_qfe(m, 1, 18);
    const double target = limit_moment(m, MultiIndex(1, {1})).to_double();
    auto scaled_mean = [&](int len) {
      const Rat m1 = finite_ordinary_moment(s, MultiIndex(1, {1}), len);
      return to_double(m1) / std::pow(len, 1.5);
    };
    CHECK(std::abs(scaled_mean(18) - target) < std::abs(scaled_mean(10) - target));
  }
}

TEST_CASE("moment growth report: bounded roots, diverging Carleman sums") {
  const auto rows = moment_growth_report(20);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0].moment == doctest::Approx(1.0));
  for (const auto& row : rows)
    if (row.k >= 1) CHECK(row.root_over_k < 1.0);  // m_k^(1/k)/k stays bounded
  for (size_t i = 2; i < rows.size(); ++i)
    CHECK(rows[i].carleman_sum > rows[i - 1].carleman_sum);
  // m_k t^k / k! decays with k at fixed t
  CHECK(rows[20].term_one < rows[10].term_one);
  CHECK(rows[20].term_two < rows[10].term_two);
}

TEST_CASE("gamma pole and guard paths") {
  CHECK_THROWS_AS(amplitude_table(Model::StaircaseColumn, 1, MultiIndex(1, {2}), Rat(1, 3)),
                  IrrationalConstantError);
  CHECK_THROWS_AS(alpha(Model::Dyck, 1), GuardError);
}
