#pragma once

#include <map>
#include <optional>
#include <vector>

#include "polylim/exact_scalar.hpp"
#include "polylim/model.hpp"
#include "polylim/multi_index.hpp"
#include "polylim/numeric.hpp"

namespace polylim {

// Singular exponent gamma_k = -1/2 + sum_i (1 + i/2) k_i, shifted by +1 for
// bilateral Dyck paths and meanders, by +3/2 for Bernoulli walks.
Rat gamma_exponent(Model model, const MultiIndex& k);

// Model-independent amplitude ratios c_k, from the recursion
//   c_k = -2 gamma_{k-e1} c_{k-e1} + sum_i (k_i+1) c_{k-e_{i+1}+e_i}
//         - 1/2 sum_{0<l<k} c_l c_{k-l},   c_0 = 1.
std::map<MultiIndex, Rat> c_table(int M, const MultiIndex& kmax);

// Critical point and boundary amplitudes of a model.  The column model keeps
// its height activity y = r^4 (r rational) so that y^(1/4) stays exact.
struct ModelConstants {
  Model source = Model::StaircaseDiagonal;
  Rat u_c;
  Rat f0;
  std::vector<Rat> f_e;  // f_{e_1} .. f_{e_M}
  std::optional<Rat> y;
};
ModelConstants model_constants(Model model, int M, const std::optional<Rat>& y = std::nullopt);

struct AmplitudeRow {
  Rat gamma;
  Rat c;  // f_k f0^(|k|-1) / prod f_{e_i}^{k_i}; matches c_table for the polygon models
  Rat f;
};
struct AmplitudeTable {
  Model model = Model::StaircaseDiagonal;
  int M = 1;
  std::map<MultiIndex, AmplitudeRow> rows;
};

// Polygon models compose f_k = c_k f0^(1-|k|) prod f_{e_i}^{k_i}; walk models
// run the four coupled recursions (meander consumes the Dyck table, Bernoulli
// is the Cauchy product of bilateral and meander).
AmplitudeTable amplitude_table(Model model, int M, const MultiIndex& kmax,
                               const std::optional<Rat>& y = std::nullopt);

Rat amplitude_f(Model model, const MultiIndex& k, const std::optional<Rat>& y = std::nullopt);

// Independent route to the staircase amplitudes: the recursion induced by the
// scaling-function PDE, 1/16 gamma_{k-e1} f_{k-e1}
//   + sum_i (i+1)/4 (k_i+1) f_{k-e_{i+1}+e_i} + sum_{0<=l<=k} f_l f_{k-l} = 0.
std::map<MultiIndex, Rat> staircase_f_via_pde(int M, const MultiIndex& kmax);

// Second independent route for M = 1: 1/16 gamma_{j-1} f_{j-1} + sum f_l f_{j-l} = 0.
std::vector<Rat> staircase_f_m1_recursion(int kmax);

// Limit of the normalised mixed moment E[X_1^{k_1} ... X_M^{k_M}]:
//   k! / (f_0 u_c^(gamma_k - gamma_0)) * Gamma(gamma_0)/Gamma(gamma_k) * f_k.
ExactScalar limit_moment(Model model, const MultiIndex& k,
                         const std::optional<Rat>& y = std::nullopt);

// Model-independent moment ratio
//   k! c_k Gamma(gamma_0)^(1-|k|) prod Gamma(gamma_{e_i})^{k_i} / Gamma(gamma_k).
ExactScalar limit_moment_ratio(int M, const MultiIndex& k);

// alpha_k = -(f_{e_k}/f_0) 2^(3-3k/2) / k!; 2^(-9k/2) for the diagonal model.
struct Alpha {
  ExactScalar value;    // exact, with a sqrt(2) part at odd k
  ExactScalar squared;  // always rational
  double approx = 0;
};
Alpha alpha(Model model, int k, const std::optional<Rat>& y = std::nullopt);

// Scaling-function series F_0(eps) = sum_k (-1)^|k| f_k eps^k up to total degree.
struct F0Poly {
  int M = 1;
  int order = 0;
  std::map<MultiIndex, Rat> coeff;
};
F0Poly scaling_series_F0(Model model, int M, int order,
                         const std::optional<Rat>& y = std::nullopt);

// The differential/algebraic relations the scaling functions satisfy.
enum class PdeRelation {
  StaircaseF0,        // 1/16 e1 (F/2 - sum (1+i/2) e_i dF/de_i) + F^2 = 1   (Riccati at M=1)
  DyckF0,             // e1 (F/2 - sum (1+i/2) e_i dF/de_i) + 2 sum (i+1) e_{i+1} dF/de_i + F^2 = 16
  BilateralTimesDyck, // F^(b) F^(d) = -2
  MeanderF0,          // e1 (F/2 + sum (1+i/2) e_i dF/de_i) - 2 sum (i+1) e_{i+1} dF/de_i - F^(m) F^(d) = 4
  BernoulliProduct,   // F^(r) = F^(b) F^(m)
};
// Residual of the relation on the truncated series; zero through total
// degree <= order on the contract.
F0Poly pde_residual(PdeRelation relation, int M, int order);

struct MomentGrowthRow {
  int k = 0;
  double moment = 0;        // m_k for the diagonal M=1 model
  double root_over_k = 0;   // m_k^(1/k) / k
  double carleman_sum = 0;  // partial sum of m_k^(-1/(2k))
  double term_half = 0;     // m_k t^k / k! at t = 1/2
  double term_one = 0;      //                 t = 1
  double term_two = 0;      //                 t = 2
};
// Observational growth report for the diagonal M=1 limit moments, k <= 20.
std::vector<MomentGrowthRow> moment_growth_report(int kmax);

}  // namespace polylim
