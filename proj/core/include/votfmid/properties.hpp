#pragma once

#include <string>
#include <vector>

#include "votfmid/fractional_time.hpp"

namespace votfmid {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Non-throwing coefficient checks, usable as negative controls on corrupted
/// rows (l1plus_row itself refuses to build an invalid row).
bool row_a_monotone(const L1PlusRow& row);  // a_2 > a_3 > ... > a_n > 0
bool row_b_monotone(const L1PlusRow& row);  // b_1 > b_2 > ... > b_n > 0

/// Runs every property suite whose name contains `filter` (all when empty).
/// Each suite asserts one documented invariant of the library at fixed seeds
/// and deterministic sizes.
std::vector<PropertyResult> run_property_suites(const std::string& filter = "");

}  // namespace votfmid
