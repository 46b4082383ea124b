#pragma once

#include <string>
#include <vector>

#include "cnotread/schemes.hpp"

namespace cnotread {

/// Total probability mass (concluded plus still-evolving) after each step of
/// a scheme run. Used to audit trace preservation.
struct SchemeTrace {
  struct Step {
    std::string label;
    double total_mass;
  };
  std::vector<Step> steps;
};

/// run_scheme, optionally recording a SchemeTrace.
ConclusionDistribution run_scheme_traced(const SchemeSpec& spec, const ErrorParams& params,
                                         SchemeTrace* trace);

}  // namespace cnotread
