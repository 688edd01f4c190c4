#include <doctest.h>

#include "polylim/balance.hpp"
#include "polylim/enumerate.hpp"
#include "polylim/errors.hpp"
#include "polylim/series.hpp"

using namespace polylim;

TEST_CASE("staircase perimeter series is the Catalan series") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 12);
  CHECK(g.grade_total(0) == 0);
  CHECK(g.grade_total(1) == 0);
  for (int n = 2; n <= 12; ++n) CHECK(g.grade_total(n) == catalan(n - 1));
}

TEST_CASE("dyck series counts Catalan in u0^2") {
  const SeriesPoly d = solve_qfe(Model::Dyck, 1, 8);
  CHECK(d.grade_total(0) == 1);
  CHECK(d.grade_total(1) == 0);
  CHECK(d.grade_total(2) == 1);
  CHECK(d.grade_total(4) == 2);
  CHECK(d.grade_total(6) == 5);
  CHECK(d.grade_total(8) == 14);
}

TEST_CASE("series coefficients match brute force exactly (oracle equivalence)") {
  for (int M : {1, 2}) {
    const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, M, 10);
    CHECK(series_matches_histogram(g, staircase_diagonal_histogram(10, M), 10));
  }
  {
    const SeriesPoly h = solve_qfe(Model::StaircaseColumn, 1, 10);
    CHECK(series_matches_histogram(h, staircase_column_histogram(10, 1), 10));
    const SeriesPoly h2 = solve_qfe(Model::StaircaseColumn, 2, 9);
    CHECK(series_matches_histogram(h2, staircase_column_histogram(9, 2), 9));
  }
  for (Model m : {Model::Dyck, Model::BilateralDyck, Model::Meander, Model::Bernoulli}) {
    const SeriesPoly s = solve_qfe(m, 2, 12);
    CHECK(series_matches_histogram(s, walk_histogram(m, 12, 2), 12));
  }
}

TEST_CASE("oracle equivalence at the full guard sizes (n0 <= 12, length <= 18)") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 12);
  CHECK(series_matches_histogram(g, staircase_diagonal_histogram(12, 1, Exec::Parallel), 12));
  for (Model m : {Model::Dyck, Model::Bernoulli}) {
    const SeriesPoly s = solve_qfe(m, 1, 18);
    CHECK(series_matches_histogram(s, walk_histogram(m, 18, 1, Exec::Parallel), 18));
  }
}

TEST_CASE("histogram comparison is sensitive to a single perturbed coefficient") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 6);
  MomentHistogram h = staircase_diagonal_histogram(6, 1);
  CHECK(series_matches_histogram(g, h, 6));
  h.by_grade[5].begin()->second += 1;
  CHECK_FALSE(series_matches_histogram(g, h, 6));
}

TEST_CASE("functional-equation residuals vanish") {
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::StaircaseDiagonal, 1, 12))));
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::StaircaseDiagonal, 2, 8))));
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::StaircaseColumn, 1, 10))));
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::Dyck, 2, 10))));
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::BilateralDyck, 2, 10))));
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::Meander, 2, 10))));
  CHECK(series_is_zero(verify_feq(solve_qfe(Model::Bernoulli, 2, 10))));
}

TEST_CASE("H(u0,u1,u0) equals G(u0,u1)") {
  CHECK(verify_H_equals_G(2));
  CHECK(verify_H_equals_G(8));
}

TEST_CASE("series equality is sensitive (perturbation control)") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 6);
  SeriesPoly g2 = g;
  g2.slices[4][0].c += 1;
  CHECK_FALSE(g == g2);
  CHECK(g == solve_qfe(Model::StaircaseDiagonal, 1, 6));
}

TEST_CASE("factorial moment generating functions") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 12);

  SUBCASE("k = 0 reproduces the counting series") {
    const RationalSeries g0 = factorial_mgf_series(g, MultiIndex(1, {0}));
    for (int n = 2; n <= 12; ++n) CHECK(g0.c[n] == Rat(catalan(n - 1)));
  }
  SUBCASE("k = 1: coefficient of u0^n is 4^(n-2)") {
    const RationalSeries g1 = factorial_mgf_series(g, MultiIndex(1, {1}));
    for (int n = 2; n <= 12; ++n) CHECK(g1.c[n] == Rat(Int(1) << (2 * (n - 2))));
  }
  SUBCASE("k = 2 at n = 5 equals the oracle sum of binom(area, 2)") {
    Int expect = 0;
    enumerate_staircase(5, [&](const StaircasePolygon& p) {
      expect += binomial(p.area(), 2);
    });
    const RationalSeries g2 = factorial_mgf_series(g, MultiIndex(1, {2}));
    CHECK(g2.c[5] == Rat(expect));
  }
}

TEST_CASE("finite moments") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 12);

  SUBCASE("mean area is 4^(n0-2) / C_{n0-1}") {
    for (int n0 = 2; n0 <= 12; ++n0) {
      const Rat mean = finite_factorial_moment(g, MultiIndex(1, {1}), n0);
      CHECK(mean == Rat(Int(1) << (2 * (n0 - 2)), catalan(n0 - 1)));
      CHECK(mean == finite_ordinary_moment(g, MultiIndex(1, {1}), n0));
    }
  }
  SUBCASE("n0 = 2: all moments are 1 (only the unit square)") {
    for (int k = 0; k <= 4; ++k)
      CHECK(finite_ordinary_moment(g, MultiIndex(1, {k}), 2) == Rat(1));
  }
  SUBCASE("sizes with no objects raise ZeroCount") {
    CHECK_THROWS_AS(finite_factorial_moment(g, MultiIndex(1, {1}), 1), ZeroCountError);
  }
}

TEST_CASE("ordinary moments via Stirling conversion equal the direct oracle averages") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 9);
  for (int n0 : {5, 7, 9}) {
    for (int k = 1; k <= 3; ++k) {
      Rat oracle = 0;
      enumerate_staircase(n0, [&](const StaircasePolygon& p) {
        Rat term = 1;
        for (int i = 0; i < k; ++i) term *= p.area();
        oracle += term;
      });
      oracle /= Rat(staircase_count(n0));
      CHECK(finite_ordinary_moment(g, MultiIndex(1, {k}), n0) == oracle);
    }
  }
}

TEST_CASE("mixed ordinary moments match the enumeration oracle (M = 2)") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 2, 8);
  Rat oracle = 0;
  int64_t count = 0;
  enumerate_staircase(8, [&](const StaircasePolygon& p) {
    const MomentVector mv = diagonal_moments(p, 2);
    oracle += Rat(mv.n[2]) * mv.n[2];
    ++count;
  });
  oracle /= count;
  CHECK(finite_ordinary_moment(g, MultiIndex(2, {0, 2}), 8) == oracle);
}

TEST_CASE("counting series at u=1 satisfies G^2 - (1-2t)G + t^2 = 0") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 14);
  std::vector<Rat> G(15, Rat(0));
  for (int n = 0; n <= 14; ++n) G[n] = Rat(g.grade_total(n));
  for (int n = 0; n <= 14; ++n) {
    Rat v = 0;
    for (int a = 0; a <= n; ++a) v += G[a] * G[n - a];  // G^2
    v -= G[n];
    if (n >= 1) v += 2 * G[n - 1];  // -(1-2t) G
    if (n == 2) v += 1;             // + t^2
    CHECK(v == Rat(0));
  }
}

TEST_CASE("structural properties of counting series") {
  for (Model m : {Model::StaircaseDiagonal, Model::Dyck, Model::Bernoulli}) {
    const SeriesPoly s = solve_qfe(m, 2, 10);
    CHECK(coefficients_nonnegative(s));
    CHECK(exponents_within_bound(s));
  }
  const SeriesPoly h = solve_qfe(Model::StaircaseColumn, 1, 9);
  CHECK(coefficients_nonnegative(h));
  const ColumnEvaluation ev = column_y_evaluation(h, Rat(1, 4));
  for (const auto& slice : ev.by_width)
    for (const auto& [key, coeff] : slice) CHECK(coeff >= 0);
}

TEST_CASE("parallel series multiplication matches the serial reference") {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, 20);
  const SeriesPoly a = series_mul(g, g, Exec::Serial);
  const SeriesPoly b = series_mul(g, g, Exec::Parallel);
  CHECK(a == b);
  const SeriesPoly g2 = solve_qfe(Model::StaircaseDiagonal, 2, 9);
  CHECK(series_mul(g2, g2, Exec::Serial) == series_mul(g2, g2, Exec::Parallel));
}

TEST_CASE("solver guards") {
  CHECK_THROWS_AS(solve_qfe(Model::StaircaseDiagonal, 0, 10), GuardError);
  CHECK_THROWS_AS(solve_qfe(Model::StaircaseDiagonal, 1, 1), GuardError);
  CHECK_THROWS_AS(solve_qfe(Model::StaircaseColumn, 4, 6), GuardError);
}
