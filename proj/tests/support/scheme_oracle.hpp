#pragma once

#include <optional>
#include <span>

#include "votfmid/schemes.hpp"

namespace votfmid::testing {

/// Per-step reference for the directionally split schemes: solves the
/// equivalent unsplit single equation with the assembled 2D operator and the
/// same known levels, so the sweep-based step can be compared one level at a
/// time. Fast kinds replay the exponential-sum recurrence on the reference
/// trajectory's increments.
class AssembledOracle {
public:
  explicit AssembledOracle(const SchemeConfig& cfg);

  /// Oracle solution at level n given trajectory[0..n-1] (trajectory may
  /// also hold further levels; only 0..n-1 are read). Must be called with
  /// n = 1, 2, ... in order for fast kinds.
  Grid2d step(std::span<const Grid2d> trajectory, int n);

private:
  SchemeConfig cfg_;
  std::vector<double> amid_;
  std::optional<EsaQuadrature> esa_;
  std::optional<EsaHistoryState> state_;
  std::vector<double> esa_b_;
  int next_push_level_ = 3;
};

}  // namespace votfmid::testing
