#pragma once

#include <string>

#include "crncex/parser.hpp"

namespace crncex::testing {

inline const std::string kSolver = CRNCEX_TEST_SOLVER;

inline std::string model_path(const std::string& name) {
  return std::string(CRNCEX_MODELS_DIR) + "/" + name;
}

inline Crn single_species() { return load_crn(model_path("single_species.crn")); }
inline Crn futile_cycle() { return load_crn(model_path("futile_cycle.crn")); }
inline Crn yeast() { return load_crn(model_path("yeast.crn")); }
inline Crn motility() { return load_crn(model_path("motility.crn")); }

}  // namespace crncex::testing
