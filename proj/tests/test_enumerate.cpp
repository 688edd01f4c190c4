#include <doctest.h>

#include <set>

#include "polylim/enumerate.hpp"
#include "polylim/errors.hpp"

using namespace polylim;

namespace {

int64_t count_staircase(int n0) {
  int64_t n = 0;
  enumerate_staircase(n0, [&](const StaircasePolygon&) { ++n; });
  return n;
}

int64_t count_sap(int perimeter) {
  int64_t n = 0;
  enumerate_sap(perimeter, [&](const LatticePolygon&) { ++n; });
  return n;
}

int64_t count_walks(Model m, int len) {
  int64_t n = 0;
  enumerate_walks(m, len, [&](const std::vector<int8_t>&) { ++n; });
  return n;
}

}  // namespace

TEST_CASE("staircase counts are Catalan numbers") {
  CHECK(count_staircase(2) == 1);
  CHECK(count_staircase(4) == 5);
  CHECK(count_staircase(5) == 14);
  CHECK(count_staircase(10) == staircase_count(10).convert_to<int64_t>());
  CHECK_THROWS_AS(count_staircase(1), SizeLimitError);
  CHECK_THROWS_AS(count_staircase(15), SizeLimitError);
}

TEST_CASE("staircase stream has no duplicates and is sorted") {
  std::set<std::string> seen;
  std::string prev;
  enumerate_staircase(7, [&](const StaircasePolygon& p) {
    const std::string s = p.boundary().str();
    CHECK(seen.insert(s).second);
    CHECK(prev < s);
    prev = s;
  });
}

TEST_CASE("SAP counts up to translation") {
  CHECK(count_sap(4) == 1);
  CHECK(count_sap(6) == 2);
  CHECK(count_sap(8) == 7);
  CHECK(count_sap(10) == 28);
  CHECK(count_sap(12) == 124);
  CHECK(count_sap(14) == 588);
  CHECK_THROWS_AS(count_sap(7), OddPerimeterError);
  CHECK_THROWS_AS(count_sap(18), SizeLimitError);
}

TEST_CASE("SAP stream: distinct classes, lexicographic order") {
  std::set<uint64_t> keys;
  std::string prev;
  enumerate_sap(10, [&](const LatticePolygon& p) {
    CHECK(keys.insert(polygon_canonical_key(std::span<const Point>(p.vertices))).second);
    const std::string s = p.str();
    CHECK(prev < s);
    prev = s;
  });
  CHECK(keys.size() == 28);
}

TEST_CASE("walk counts per model") {
  // dyck semilength m -> C_m
  CHECK(count_walks(Model::Dyck, 0) == 1);
  CHECK(count_walks(Model::Dyck, 4) == 2);
  CHECK(count_walks(Model::Dyck, 6) == 5);
  CHECK(count_walks(Model::Dyck, 12) == 132);
  CHECK(count_walks(Model::Dyck, 5) == 0);
  // bilateral 2m -> binom(2m, m)
  CHECK(count_walks(Model::BilateralDyck, 6) == 20);
  CHECK(count_walks(Model::BilateralDyck, 10) == 252);
  // bernoulli n -> 2^n
  CHECK(count_walks(Model::Bernoulli, 1) == 2);
  CHECK(count_walks(Model::Bernoulli, 12) == 4096);
  // meanders n -> binom(n, floor(n/2))
  CHECK(count_walks(Model::Meander, 5) == 10);
  CHECK(count_walks(Model::Meander, 6) == 20);
  CHECK_THROWS_AS(count_walks(Model::Dyck, 23), SizeLimitError);
}

TEST_CASE("dyck length 4: height moments 2 and 4") {
  std::multiset<int64_t> n1;
  enumerate_walks(Model::Dyck, 4, [&](const std::vector<int8_t>& w) {
    n1.insert(walk_height_moments(std::span<const int8_t>(w), 1).n[1]);
  });
  CHECK(n1 == std::multiset<int64_t>{2, 4});
}

TEST_CASE("bernoulli length 1: n1 = 1 for both walks") {
  enumerate_walks(Model::Bernoulli, 1, [&](const std::vector<int8_t>& w) {
    CHECK(walk_height_moments(std::span<const int8_t>(w), 1).n[1] == 1);
  });
}

TEST_CASE("parallel histogram kernels match the serial reference") {
  for (int M : {1, 2}) {
    const MomentHistogram a = staircase_diagonal_histogram(9, M, Exec::Serial);
    const MomentHistogram b = staircase_diagonal_histogram(9, M, Exec::Parallel);
    CHECK(a.by_grade == b.by_grade);
  }
  {
    const MomentHistogram a = staircase_column_histogram(8, 2, Exec::Serial);
    const MomentHistogram b = staircase_column_histogram(8, 2, Exec::Parallel);
    CHECK(a.by_grade == b.by_grade);
  }
  for (Model m : {Model::Dyck, Model::BilateralDyck, Model::Meander, Model::Bernoulli}) {
    const MomentHistogram a = walk_histogram(m, 12, 2, Exec::Serial);
    const MomentHistogram b = walk_histogram(m, 12, 2, Exec::Parallel);
    CHECK(a.by_grade == b.by_grade);
  }
}

TEST_CASE("parallel SAP layer totals match the serial reference") {
  for (int perimeter : {8, 12, 14}) {
    const SapLayerTotals a = sap_layer_totals(perimeter, 2, LayerFamily::Diagonal, Exec::Serial);
    const SapLayerTotals b = sap_layer_totals(perimeter, 2, LayerFamily::Diagonal, Exec::Parallel);
    CHECK(a.polygons == b.polygons);
    CHECK(a.sum_a == b.sum_a);
    CHECK(a.sum_b == b.sum_b);
    CHECK(a.sum_a_sq == b.sum_a_sq);
    CHECK(a.sum_b_sq == b.sum_b_sq);
  }
}

TEST_CASE("histogram totals per grade equal the model counts") {
  const MomentHistogram h = staircase_diagonal_histogram(9, 2);
  for (int n0 = 2; n0 <= 9; ++n0) {
    Int total = 0;
    for (const auto& [key, c] : h.by_grade[n0]) total += c;
    CHECK(total == staircase_count(n0));
  }
  const MomentHistogram w = walk_histogram(Model::Bernoulli, 10, 1);
  for (int len = 0; len <= 10; ++len) {
    Int total = 0;
    for (const auto& [key, c] : w.by_grade[len]) total += c;
    CHECK(total == Int(1) << len);
  }
}
