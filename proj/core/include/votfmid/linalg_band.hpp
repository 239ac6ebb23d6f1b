#pragma once

#include <memory>
#include <span>
#include <vector>

#include "votfmid/space_grid.hpp"

namespace votfmid {

/// Tridiagonal system solved by the Thomas algorithm without pivoting.
/// The sweep operators this backs are strictly diagonally dominant on
/// interior rows and weakly dominant at the two endpoint rows, so
/// elimination cannot break down; a vanishing pivot is reported as a
/// singularity.
struct TridiagonalSystem {
  std::vector<double> lower;  // n-1
  std::vector<double> diag;   // n
  std::vector<double> upper;  // n-1

  int size() const { return static_cast<int>(diag.size()); }

  /// In-place LU: diag becomes the pivots, lower the multipliers.
  void factor();
  /// Forward/back substitution after factor(); rhs is replaced by the solution.
  void solve(std::span<double> rhs) const;

  bool factored = false;
};

/// Convenience one-shot solve.
std::vector<double> tridiag_solve(TridiagonalSystem sys, std::vector<double> rhs);

/// General banded matrix with equal lower/upper bandwidth p (p <= 4 in this
/// project), factored by LU with partial pivoting inside band storage
/// (fill-in widens the upper band to 2p).
class BandedSystem {
public:
  BandedSystem(int n, int bandwidth);

  int size() const { return n_; }
  int bandwidth() const { return p_; }

  /// Entry access for |i - j| <= p; other positions are structurally zero.
  double& at(int i, int j);
  double get(int i, int j) const;

  void factor();
  void solve(std::span<double> rhs) const;

private:
  int n_, p_;
  int stride_;                 // 3p+1 storage diagonals
  std::vector<double> store_;  // row-major band storage with fill space
  std::vector<int> pivot_;
  bool factored_ = false;

  // diag_offset = j - i in [-p, 2p] maps to storage column offset + p.
  double& raw(int i, int diag_offset) { return store_[static_cast<std::size_t>(i) * stride_ + diag_offset + p_]; }
  double raw(int i, int diag_offset) const { return store_[static_cast<std::size_t>(i) * stride_ + diag_offset + p_]; }
};

std::vector<double> banded_lu_solve(BandedSystem sys, std::vector<double> rhs);

/// Coefficients of a 2D collocation operator built from tensor products of
/// the 1D stencil matrices:
///   value_value * (Vx (x) Vy) + second_value * (Sx (x) Vy)
/// + value_second * (Vx (x) Sy) + second_second * (Sx (x) Sy),
/// where Sx = second_x (+ fourth_x when perturb_x) and likewise in y.
/// With dirichlet_rows set, rows at boundary collocation indices are replaced
/// by the corresponding (Vx (x) Vy) rows, which pins the spline trace.
struct Operator2dSpec {
  double value_value = 0.0;
  double second_value = 0.0;
  double value_second = 0.0;
  double second_second = 0.0;
  bool perturb_x = false;
  bool perturb_y = false;
  bool dirichlet_rows = false;
};

/// Sparse matrix over the (Mx+2)(My+2) DOF vector in row-major (i, j) order.
/// Direct sparse LU sits behind solve(); this path is the correctness oracle
/// and the engine of the non-ADI scheme at small sizes, not a tuned solver.
class SparseOperator2D {
public:
  SparseOperator2D(int nx, int ny);
  ~SparseOperator2D();
  SparseOperator2D(SparseOperator2D&&) noexcept;
  SparseOperator2D& operator=(SparseOperator2D&&) noexcept;

  int rows() const;
  std::size_t nonzeros() const;

  void add(int row, int col, double value);
  void compress();  // build internal CSC form; add() is invalid afterwards

  Grid2d apply(const Grid2d& x) const;
  Grid2d solve(const Grid2d& rhs) const;  // factorizes on first use

  /// Dense copy for small oracle comparisons.
  std::vector<double> dense() const;

  struct Impl;
  Impl& impl() { return *impl_; }
  const Impl& impl() const { return *impl_; }

private:
  std::unique_ptr<Impl> impl_;
};

SparseOperator2D assemble_2d(const SpaceGrid& g, const Operator2dSpec& spec);

Grid2d sparse_solve(const SparseOperator2D& op, const Grid2d& rhs);

/// Reusable direct solver for a sequence of matrices sharing one sparsity
/// pattern (the non-ADI scheme refactorizes every level but analyzes once).
class Sparse2dSolver {
public:
  Sparse2dSolver();
  ~Sparse2dSolver();

  void factor(const SparseOperator2D& op);
  Grid2d solve(const Grid2d& rhs) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace votfmid
