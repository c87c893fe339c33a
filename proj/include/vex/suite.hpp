#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vex/grid.hpp"

namespace vex {

/// One closed-form test function with compact support, so it can be resampled
/// exactly at off-grid points (compositions, refinement studies).
struct SuiteCase {
  std::string id;
  std::function<double(const Point&)> fn;
};

/// The fixed deterministic test family, supported in [-scale, scale]^dim:
/// four dyadic characteristic functions, four smooth bumps, one oscillatory
/// sample and one signed bump. All breakpoints are dyadic so characteristic
/// supports align with dyadic grids.
std::vector<SuiteCase> standard_suite(int dim, double scale = 1.0);

/// The smooth subset (bumps, oscillatory, signed) of the standard suite.
std::vector<SuiteCase> smooth_suite(int dim, double scale = 1.0);

/// Lookup by id: "standard", "smooth", "chi".
std::vector<SuiteCase> suite_by_id(const std::string& id, int dim,
                                   double scale = 1.0);

SampledFunction sample_case(const GridSpec& grid, const SuiteCase& c);

}  // namespace vex
