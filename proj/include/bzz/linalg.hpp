#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bzz/rational.hpp"

namespace bzz {

/*
 * Exact linear algebra kernel.
 *
 * Two layers:
 *  - RationalMatrix: dense, with fraction-free (Bareiss) elimination for
 *    solving, kernels and determinants.  Rows are cleared of denominators
 *    first, so the elimination itself runs over the integers.
 *  - SparseVec / Echelon: a sparse incremental row-echelon structure used
 *    by the module machinery, where systems are large but very sparse.
 *    The pivot of a row is either its first nonzero coordinate ("leading",
 *    the usual RREF convention) or its last ("trailing", used to carve
 *    quotient bases out of ordered ground bases: with trailing pivots the
 *    non-pivot columns are exactly the lexicographically earliest
 *    independent residue classes).
 */

class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  RationalMatrix operator*(const RationalMatrix& o) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  bool operator==(const RationalMatrix& o) const;

  Rational determinant() const;
  std::optional<RationalMatrix> inverse() const;

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

// Solves A x = b exactly; nullopt when the system is inconsistent.  For
// underdetermined consistent systems an arbitrary particular solution is
// returned (free variables set to zero).
std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& A,
                                                  const std::vector<Rational>& b);

// Basis of the right null space of A.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& A);

int rank_of(const RationalMatrix& A);

// ---------------------------------------------------------------------------
// Sparse layer.

// Sorted by index, no zero entries, no duplicates.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_unit(int idx, const Rational& c = Rational(1));
// r += c * s
void sparse_axpy(SparseVec& r, const Rational& c, const SparseVec& s);
void sparse_scale(SparseVec& r, const Rational& c);
Rational sparse_get(const SparseVec& v, int idx);
SparseVec sparse_from_dense(const std::vector<Rational>& v);

class Echelon {
 public:
  enum class Pivot { Leading, Trailing };

  explicit Echelon(Pivot p = Pivot::Leading) : pivot_(p) {}

  // Reduces v against the stored rows and, if a nonzero remainder is left,
  // normalises and stores it.  Returns true when the rank grew.
  bool insert(SparseVec v);

  // Fully reduces v against the stored rows (does not insert).
  SparseVec reduce(SparseVec v) const;

  bool contains(SparseVec v) const { return reduce(std::move(v)).empty(); }

  // Back-substitutes so every stored row is zero on all other pivots.
  // Required before reduce() gives fully reduced output in one pass.
  void finalize();

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }
  bool is_pivot(int col) const { return rows_.count(col) != 0; }

  // Kernel of the row system "for each inserted row r: sum r_i x_i = 0",
  // i.e. of the matrix whose rows were inserted.  Valid for Leading pivots
  // after finalize(); `ncols` is the number of unknowns.
  std::vector<SparseVec> kernel(int ncols) const;

 private:
  int pivot_index(const SparseVec& v) const;
  Pivot pivot_;
  std::map<int, SparseVec> rows_;  // keyed by pivot column; pivot coeff == 1
  bool finalized_ = false;
};

}  // namespace bzz
