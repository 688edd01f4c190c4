#pragma once

#include <string>
#include <string_view>

#include "polylim/errors.hpp"

namespace polylim {

// The six counting models whose generating functions satisfy a q-functional
// equation: two staircase-polygon models and four directed-walk models.
enum class Model {
  StaircaseDiagonal,  // half-perimeter + diagonal length moments
  StaircaseColumn,    // width + height + column height moments
  Dyck,
  BilateralDyck,
  Meander,
  Bernoulli,
};

inline bool is_walk(Model m) {
  return m == Model::Dyck || m == Model::BilateralDyck || m == Model::Meander ||
         m == Model::Bernoulli;
}

inline std::string model_name(Model m) {
  switch (m) {
    case Model::StaircaseDiagonal: return "staircase-diagonal";
    case Model::StaircaseColumn: return "staircase-column";
    case Model::Dyck: return "dyck";
    case Model::BilateralDyck: return "bilateral-dyck";
    case Model::Meander: return "meander";
    default: return "bernoulli";
  }
}

inline Model model_from_name(std::string_view s) {
  if (s == "staircase-diagonal" || s == "staircase") return Model::StaircaseDiagonal;
  if (s == "staircase-column" || s == "column") return Model::StaircaseColumn;
  if (s == "dyck") return Model::Dyck;
  if (s == "bilateral-dyck" || s == "bilateral") return Model::BilateralDyck;
  if (s == "meander") return Model::Meander;
  if (s == "bernoulli") return Model::Bernoulli;
  throw GuardError("unknown model: " + std::string(s));
}

}  // namespace polylim
