#include "votfmid/linalg_band.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

#include "votfmid/qsc_operators.hpp"

namespace votfmid {

void TridiagonalSystem::factor() {
  const int n = size();
  require(n >= 2, ErrorKind::Usage, "TridiagonalSystem: need n >= 2");
  require(static_cast<int>(lower.size()) == n - 1 && static_cast<int>(upper.size()) == n - 1,
          ErrorKind::Usage, "TridiagonalSystem: inconsistent diagonal lengths");
  for (int i = 1; i < n; ++i) {
    const double pivot = diag[static_cast<std::size_t>(i) - 1];
    require(std::abs(pivot) > 1e-300, ErrorKind::Singular,
            "TridiagonalSystem: zero pivot at row " + std::to_string(i - 1));
    const double m = lower[static_cast<std::size_t>(i) - 1] / pivot;
    lower[static_cast<std::size_t>(i) - 1] = m;
    diag[static_cast<std::size_t>(i)] -= m * upper[static_cast<std::size_t>(i) - 1];
  }
  require(std::abs(diag.back()) > 1e-300, ErrorKind::Singular,
          "TridiagonalSystem: zero pivot at last row");
  factored = true;
}

void TridiagonalSystem::solve(std::span<double> rhs) const {
  require(factored, ErrorKind::Usage, "TridiagonalSystem: solve before factor");
  const int n = size();
  require(static_cast<int>(rhs.size()) == n, ErrorKind::Usage,
          "TridiagonalSystem: rhs length mismatch");
  for (int i = 1; i < n; ++i)
    rhs[static_cast<std::size_t>(i)] -=
        lower[static_cast<std::size_t>(i) - 1] * rhs[static_cast<std::size_t>(i) - 1];
  rhs[static_cast<std::size_t>(n) - 1] /= diag[static_cast<std::size_t>(n) - 1];
  for (int i = n - 2; i >= 0; --i)
    rhs[static_cast<std::size_t>(i)] =
        (rhs[static_cast<std::size_t>(i)] -
         upper[static_cast<std::size_t>(i)] * rhs[static_cast<std::size_t>(i) + 1]) /
        diag[static_cast<std::size_t>(i)];
}

std::vector<double> tridiag_solve(TridiagonalSystem sys, std::vector<double> rhs) {
  if (!sys.factored) sys.factor();
  sys.solve(rhs);
  return rhs;
}

BandedSystem::BandedSystem(int n, int bandwidth) : n_(n), p_(bandwidth) {
  require(n >= 2, ErrorKind::Usage, "BandedSystem: need n >= 2");
  require(bandwidth >= 1 && bandwidth <= 4, ErrorKind::Usage,
          "BandedSystem: bandwidth must lie in 1..4");
  stride_ = 3 * p_ + 1;  // p subdiagonals + diagonal + 2p superdiagonals (fill)
  store_.assign(static_cast<std::size_t>(n_) * stride_, 0.0);
  pivot_.assign(static_cast<std::size_t>(n_), 0);
}

double& BandedSystem::at(int i, int j) {
  require(!factored_, ErrorKind::Usage, "BandedSystem: matrix already factored");
  require(i >= 0 && i < n_ && j >= 0 && j < n_ && std::abs(i - j) <= p_, ErrorKind::Usage,
          "BandedSystem: entry outside the band");
  return raw(i, j - i);
}

double BandedSystem::get(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || j - i > 2 * p_ || i - j > p_) return 0.0;
  return raw(i, j - i);
}

void BandedSystem::factor() {
  require(!factored_, ErrorKind::Usage, "BandedSystem: already factored");
  // Row-wise LU with partial pivoting; row swaps stay within the band because
  // at step k only rows k..k+p can pivot.
  for (int k = 0; k < n_; ++k) {
    int piv = k;
    double best = std::abs(raw(k, 0));
    for (int i = k + 1; i < std::min(n_, k + p_ + 1); ++i) {
      const double cand = std::abs(raw(i, k - i));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    require(best > 1e-300, ErrorKind::Singular,
            "BandedSystem: numerically singular at column " + std::to_string(k));
    pivot_[static_cast<std::size_t>(k)] = piv;
    if (piv != k) {
      for (int j = k; j < std::min(n_, k + 2 * p_ + 1); ++j)
        std::swap(raw(k, j - k), raw(piv, j - piv));
    }
    const double pivot_value = raw(k, 0);
    for (int i = k + 1; i < std::min(n_, k + p_ + 1); ++i) {
      const double m = raw(i, k - i) / pivot_value;
      raw(i, k - i) = m;
      for (int j = k + 1; j < std::min(n_, k + 2 * p_ + 1); ++j)
        raw(i, j - i) -= m * raw(k, j - k);
    }
  }
  factored_ = true;
}

void BandedSystem::solve(std::span<double> rhs) const {
  require(factored_, ErrorKind::Usage, "BandedSystem: solve before factor");
  require(static_cast<int>(rhs.size()) == n_, ErrorKind::Usage,
          "BandedSystem: rhs length mismatch");
  for (int k = 0; k < n_; ++k) {
    const int piv = pivot_[static_cast<std::size_t>(k)];
    if (piv != k) std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
    for (int i = k + 1; i < std::min(n_, k + p_ + 1); ++i)
      rhs[static_cast<std::size_t>(i)] -= raw(i, k - i) * rhs[static_cast<std::size_t>(k)];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double acc = rhs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < std::min(n_, i + 2 * p_ + 1); ++j)
      acc -= raw(i, j - i) * rhs[static_cast<std::size_t>(j)];
    rhs[static_cast<std::size_t>(i)] = acc / raw(i, 0);
  }
}

std::vector<double> banded_lu_solve(BandedSystem sys, std::vector<double> rhs) {
  sys.factor();
  sys.solve(rhs);
  return rhs;
}

struct SparseOperator2D::Impl {
  int nx = 0, ny = 0;
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::SparseMatrix<double> mat;
  bool compressed = false;
  mutable std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu;
};

SparseOperator2D::SparseOperator2D(int nx, int ny) : impl_(std::make_unique<Impl>()) {
  impl_->nx = nx;
  impl_->ny = ny;
}
SparseOperator2D::~SparseOperator2D() = default;
SparseOperator2D::SparseOperator2D(SparseOperator2D&&) noexcept = default;
SparseOperator2D& SparseOperator2D::operator=(SparseOperator2D&&) noexcept = default;

int SparseOperator2D::rows() const { return impl_->nx * impl_->ny; }

std::size_t SparseOperator2D::nonzeros() const {
  return impl_->compressed ? static_cast<std::size_t>(impl_->mat.nonZeros())
                           : impl_->triplets.size();
}

void SparseOperator2D::add(int row, int col, double value) {
  require(!impl_->compressed, ErrorKind::Usage, "SparseOperator2D: add after compress");
  impl_->triplets.emplace_back(row, col, value);
}

void SparseOperator2D::compress() {
  require(!impl_->compressed, ErrorKind::Usage, "SparseOperator2D: already compressed");
  const int n = rows();
  impl_->mat.resize(n, n);
  impl_->mat.setFromTriplets(impl_->triplets.begin(), impl_->triplets.end());
  impl_->mat.makeCompressed();
  impl_->triplets.clear();
  impl_->triplets.shrink_to_fit();
  impl_->compressed = true;
}

Grid2d SparseOperator2D::apply(const Grid2d& x) const {
  require(impl_->compressed, ErrorKind::Usage, "SparseOperator2D: apply before compress");
  require(x.nx == impl_->nx && x.ny == impl_->ny, ErrorKind::Usage,
          "SparseOperator2D: operand shape mismatch");
  Eigen::Map<const Eigen::VectorXd> xv(x.v.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXd yv = impl_->mat * xv;
  Grid2d y(x.nx, x.ny);
  Eigen::Map<Eigen::VectorXd>(y.v.data(), yv.size()) = yv;
  return y;
}

Grid2d SparseOperator2D::solve(const Grid2d& rhs) const {
  require(impl_->compressed, ErrorKind::Usage, "SparseOperator2D: solve before compress");
  require(rhs.nx == impl_->nx && rhs.ny == impl_->ny, ErrorKind::Usage,
          "SparseOperator2D: rhs shape mismatch");
  if (!impl_->lu) {
    impl_->lu = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>>>();
    impl_->lu->compute(impl_->mat);
    require(impl_->lu->info() == Eigen::Success, ErrorKind::Singular,
            "SparseOperator2D: factorization failed (singular operator)");
  }
  Eigen::Map<const Eigen::VectorXd> bv(rhs.v.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd xv = impl_->lu->solve(bv);
  require(impl_->lu->info() == Eigen::Success, ErrorKind::Singular,
          "SparseOperator2D: solve failed");
  Grid2d x(rhs.nx, rhs.ny);
  Eigen::Map<Eigen::VectorXd>(x.v.data(), xv.size()) = xv;
  return x;
}

std::vector<double> SparseOperator2D::dense() const {
  require(impl_->compressed, ErrorKind::Usage, "SparseOperator2D: dense before compress");
  const int n = rows();
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < impl_->mat.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(impl_->mat, k); it; ++it)
      out[static_cast<std::size_t>(it.row()) * n + it.col()] = it.value();
  return out;
}

SparseOperator2D assemble_2d(const SpaceGrid& g, const Operator2dSpec& spec) {
  const int nx = g.nx(), ny = g.ny();
  std::vector<double> vx = value_matrix_1d(g.mx);
  std::vector<double> vy = value_matrix_1d(g.my);
  std::vector<double> sx = second_matrix_1d(g.mx, g.dx);
  std::vector<double> sy = second_matrix_1d(g.my, g.dy);
  if (spec.perturb_x) {
    const std::vector<double> px = fourth_matrix_1d(g.mx, g.dx);
    for (std::size_t k = 0; k < sx.size(); ++k) sx[k] += px[k];
  }
  if (spec.perturb_y) {
    const std::vector<double> py = fourth_matrix_1d(g.my, g.dy);
    for (std::size_t k = 0; k < sy.size(); ++k) sy[k] += py[k];
  }
  auto mx_at = [nx](const std::vector<double>& m, int r, int c) {
    return m[static_cast<std::size_t>(r) * nx + c];
  };
  auto my_at = [ny](const std::vector<double>& m, int r, int c) {
    return m[static_cast<std::size_t>(r) * ny + c];
  };

  SparseOperator2D op(nx, ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const int row = i * ny + j;
      const bool dirichlet = spec.dirichlet_rows && g.on_boundary(i, j);
      for (int ic = std::max(0, i - 4); ic <= std::min(nx - 1, i + 4); ++ic) {
        const double vxe = mx_at(vx, i, ic);
        const double sxe = mx_at(sx, i, ic);
        if (vxe == 0.0 && sxe == 0.0) continue;
        for (int jc = std::max(0, j - 4); jc <= std::min(ny - 1, j + 4); ++jc) {
          const double vye = my_at(vy, j, jc);
          const double sye = my_at(sy, j, jc);
          if (vye == 0.0 && sye == 0.0) continue;
          double entry;
          if (dirichlet) {
            entry = vxe * vye;
          } else {
            entry = spec.value_value * vxe * vye + spec.second_value * sxe * vye +
                    spec.value_second * vxe * sye + spec.second_second * sxe * sye;
          }
          // Structural insert: keep the sparsity pattern independent of the
          // coefficient values so a solver can reuse its symbolic analysis
          // across levels.
          op.add(row, ic * ny + jc, entry);
        }
      }
    }
  }
  op.compress();
  return op;
}

Grid2d sparse_solve(const SparseOperator2D& op, const Grid2d& rhs) { return op.solve(rhs); }

struct Sparse2dSolver::Impl {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool analyzed = false;
};

Sparse2dSolver::Sparse2dSolver() : impl_(std::make_unique<Impl>()) {}
Sparse2dSolver::~Sparse2dSolver() = default;

void Sparse2dSolver::factor(const SparseOperator2D& op) {
  const auto& mat = op.impl().mat;
  require(op.impl().compressed, ErrorKind::Usage, "Sparse2dSolver: operator not compressed");
  if (!impl_->analyzed) {
    impl_->lu.analyzePattern(mat);
    impl_->analyzed = true;
  }
  impl_->lu.factorize(mat);
  require(impl_->lu.info() == Eigen::Success, ErrorKind::Singular,
          "Sparse2dSolver: factorization failed");
}

Grid2d Sparse2dSolver::solve(const Grid2d& rhs) const {
  require(impl_->analyzed, ErrorKind::Usage, "Sparse2dSolver: solve before factor");
  Eigen::Map<const Eigen::VectorXd> bv(rhs.v.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd xv = impl_->lu.solve(bv);
  require(impl_->lu.info() == Eigen::Success, ErrorKind::Singular, "Sparse2dSolver: solve failed");
  Grid2d x(rhs.nx, rhs.ny);
  Eigen::Map<Eigen::VectorXd>(x.v.data(), xv.size()) = xv;
  return x;
}

}  // namespace votfmid
