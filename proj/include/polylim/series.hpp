#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "polylim/enumerate.hpp"
#include "polylim/model.hpp"
#include "polylim/multi_index.hpp"
#include "polylim/numeric.hpp"

namespace polylim {

// Truncated power series of a counting model.  The series is graded by the
// u0 order (walk length, half-perimeter), except for the column model where
// the height variable y is kept formal and the grade is width + height, i.e.
// again the half-perimeter.  Each grade holds a sparse integer polynomial in
// the counting variables, keys packed a few exponents to a word.
struct SeriesTerm {
  uint64_t key = 0;
  Int c;
};

struct SeriesPoly {
  Model model = Model::StaircaseDiagonal;
  int M = 1;
  int N = 0;
  bool has_height = false;  // true only for the column model (formal y)
  std::vector<std::vector<SeriesTerm>> slices;  // index = grade, terms sorted by key

  int components() const { return M + (has_height ? 1 : 0); }

  // exps lists the exponents in key order: (h, n_1..n_M) with height, else (n_1..n_M).
  Int coeff(int grade, const std::vector<int64_t>& exps) const;
  Int grade_total(int grade) const;  // value at u_1 = ... = u_M = 1 (and y = 1)
  size_t term_count() const;

  friend bool operator==(const SeriesPoly& a, const SeriesPoly& b);
};

// Exponent packing shared by series terms and histogram comparisons.
struct KeyCodec {
  int nc = 1;
  int bits = 21;

  explicit KeyCodec(int components) : nc(components), bits(components <= 3 ? 21 : 16) {}
  int64_t field_limit() const { return int64_t(1) << (bits - 1); }
  uint64_t pack(const std::vector<int64_t>& exps) const;
  std::vector<int64_t> unpack(uint64_t key) const;
};

// Solves the model's functional equation by fixed-point iteration from 0,
// stopping when all slices up to grade N are stable across two iterations.
SeriesPoly solve_qfe(Model model, int M, int N, Exec exec = Exec::Parallel);

// Substitutes the series into its defining equation, cross-multiplied to
// clear denominators; the contract is an identically zero result.
SeriesPoly verify_feq(const SeriesPoly& series, Exec exec = Exec::Parallel);

bool series_is_zero(const SeriesPoly& s);

// H(u0, u1, u0) == G(u0, u1): substitutes y <- u0 in the M=1 column series
// and compares with the M=1 diagonal series coefficientwise.
bool verify_H_equals_G(int N, Exec exec = Exec::Parallel);

struct RationalSeries {
  enum class Variable { U0, UcMinusU0 };
  Variable var = Variable::U0;
  std::vector<Rat> c;  // c[n] multiplies var^n
};

// g_k(u0) = (1/k!) d^k G / du^k at u_1 = ... = u_M = 1, term by term via
// binomial (falling factorial / k!) sums.  For the column model the grade
// variable is the half-perimeter, i.e. the series of H(u0,...,u0).
RationalSeries factorial_mgf_series(const SeriesPoly& s, const MultiIndex& k);

// E[(X_1)_{k_1} ... (X_M)_{k_M}] at fixed size n0: k! [u0^n0] g_k / [u0^n0] g_0.
Rat finite_factorial_moment(const SeriesPoly& s, const MultiIndex& k, int n0);

// Ordinary mixed moment, recovered from factorial moments with Stirling
// numbers of the second kind, one variable at a time.
Rat finite_ordinary_moment(const SeriesPoly& s, const MultiIndex& k, int n0);

// Column series evaluated at a rational height activity y > 0; slice g of the
// formal series contributes y^h to the width-w polynomial with w = g - h.
// Truncation is by w + h <= N, so width-w coefficients are exact sums over
// heights h <= N - w.
struct ColumnEvaluation {
  int M = 1;
  std::vector<std::map<std::vector<int64_t>, Rat>> by_width;
};
ColumnEvaluation column_y_evaluation(const SeriesPoly& s, const Rat& y);

// Exact comparison against a brute-force histogram up to the given grade.
bool series_matches_histogram(const SeriesPoly& s, const MomentHistogram& hist, int grade_max);

bool coefficients_nonnegative(const SeriesPoly& s);
// Crude published bound: exponent of u_k at grade n is at most n^{k+1}.
bool exponents_within_bound(const SeriesPoly& s);

// Serial reference kernels, kept alongside the OpenMP path for testing and
// benchmarking; both produce bit-identical series.
SeriesPoly series_mul(const SeriesPoly& a, const SeriesPoly& b, Exec exec);

}  // namespace polylim
