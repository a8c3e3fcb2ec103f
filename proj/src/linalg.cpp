#include "bzz/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace bzz {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rational& b = o.at(k, j);
        if (b != 0) r.at(i, j) += a * b;
      }
    }
  return r;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("matrix apply: dimension mismatch");
  std::vector<Rational> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return data_ == o.data_;
}

namespace {

// Clears denominators row by row; row scaling changes neither the row
// space, the kernel, nor solvability of [A|b].
std::vector<std::vector<Integer>> integerize_rows(const RationalMatrix& A,
                                                  const std::vector<Rational>* b) {
  const int n = A.rows(), m = A.cols() + (b ? 1 : 0);
  std::vector<std::vector<Integer>> M(n, std::vector<Integer>(m));
  for (int i = 0; i < n; ++i) {
    Integer l = 1;
    for (int j = 0; j < A.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A.at(i, j).get_den_mpz_t());
    if (b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*b)[i].get_den_mpz_t());
    for (int j = 0; j < A.cols(); ++j) {
      Rational v = A.at(i, j) * l;
      M[i][j] = v.get_num();
    }
    if (b) {
      Rational v = (*b)[i] * l;
      M[i][A.cols()] = v.get_num();
    }
  }
  return M;
}

struct BareissResult {
  std::vector<std::vector<Integer>> M;  // row echelon, fraction-free
  std::vector<int> pivot_col;           // per eliminated row
  int rank = 0;
};

// Fraction-free Gaussian elimination (Bareiss).  All divisions are exact.
BareissResult bareiss_echelon(std::vector<std::vector<Integer>> M) {
  BareissResult res;
  const int n = static_cast<int>(M.size());
  const int m = n ? static_cast<int>(M[0].size()) : 0;
  Integer prev = 1;
  int row = 0;
  for (int col = 0; col < m && row < n; ++col) {
    int pr = -1;
    for (int i = row; i < n; ++i)
      if (M[i][col] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(M[row], M[pr]);
    const Integer pivot = M[row][col];
    for (int i = row + 1; i < n; ++i) {
      for (int j = col + 1; j < m; ++j) {
        Integer t = M[i][j] * pivot - M[i][col] * M[row][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M[i][j] = t;
      }
      M[i][col] = 0;
    }
    prev = pivot;
    res.pivot_col.push_back(col);
    ++row;
  }
  res.rank = row;
  res.M = std::move(M);
  return res;
}

}  // namespace

Rational RationalMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
  if (rows_ == 0) return Rational(1);
  // Track the denominator scaling so the rational determinant is exact.
  Rational scale = 1;
  auto M = std::vector<std::vector<Integer>>(rows_, std::vector<Integer>(cols_));
  for (int i = 0; i < rows_; ++i) {
    Integer l = 1;
    for (int j = 0; j < cols_; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), at(i, j).get_den_mpz_t());
    scale *= Rational(l);
    for (int j = 0; j < cols_; ++j) {
      Rational v = at(i, j) * l;
      M[i][j] = v.get_num();
    }
  }
  // Bareiss with sign tracking; the last pivot is det of the integerized matrix.
  int sign = 1;
  Integer prev = 1;
  for (int col = 0; col < cols_; ++col) {
    int pr = -1;
    for (int i = col; i < rows_; ++i)
      if (M[i][col] != 0) { pr = i; break; }
    if (pr < 0) return Rational(0);
    if (pr != col) { std::swap(M[col], M[pr]); sign = -sign; }
    const Integer pivot = M[col][col];
    for (int i = col + 1; i < rows_; ++i) {
      for (int j = col + 1; j < cols_; ++j) {
        Integer t = M[i][j] * pivot - M[i][col] * M[col][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M[i][j] = t;
      }
      M[i][col] = 0;
    }
    prev = pivot;
  }
  Rational det(M[rows_ - 1][cols_ - 1]);
  det *= sign;
  return det / scale;
}

std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& A,
                                                  const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != A.rows())
    throw std::invalid_argument("solve_linear: dimension mismatch");
  auto res = bareiss_echelon(integerize_rows(A, &b));
  const int n = A.rows(), m = A.cols();
  // Inconsistent if some echelon row has its pivot in the b column.
  for (int i = 0; i < res.rank; ++i)
    if (res.pivot_col[i] == m) return std::nullopt;
  for (int i = res.rank; i < n; ++i)
    if (res.M[i][m] != 0) return std::nullopt;
  std::vector<Rational> x(m, Rational(0));
  for (int i = res.rank - 1; i >= 0; --i) {
    const int pc = res.pivot_col[i];
    Rational acc(res.M[i][m]);
    for (int j = pc + 1; j < m; ++j)
      if (res.M[i][j] != 0 && x[j] != 0) acc -= Rational(res.M[i][j]) * x[j];
    x[pc] = acc / Rational(res.M[i][pc]);
  }
  return x;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& A) {
  auto res = bareiss_echelon(integerize_rows(A, nullptr));
  const int m = A.cols();
  std::vector<bool> is_pivot(m, false);
  for (int c : res.pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (int f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m, Rational(0));
    x[f] = 1;
    for (int i = res.rank - 1; i >= 0; --i) {
      const int pc = res.pivot_col[i];
      Rational acc(0);
      for (int j = pc + 1; j < m; ++j)
        if (res.M[i][j] != 0 && x[j] != 0) acc -= Rational(res.M[i][j]) * x[j];
      x[pc] = acc / Rational(res.M[i][pc]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

int rank_of(const RationalMatrix& A) {
  return bareiss_echelon(integerize_rows(A, nullptr)).rank;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  RationalMatrix inv(rows_, cols_);
  for (int c = 0; c < cols_; ++c) {
    std::vector<Rational> e(rows_, Rational(0));
    e[c] = 1;
    auto x = solve_linear(*this, e);
    if (!x) return std::nullopt;
    for (int r = 0; r < rows_; ++r) inv.at(r, c) = (*x)[r];
  }
  // solve_linear returns some solution; for singular matrices consistency can
  // hold per column, so confirm.
  if (!(*this * inv == identity(rows_))) return std::nullopt;
  return inv;
}

// ---------------------------------------------------------------------------

SparseVec sparse_unit(int idx, const Rational& c) {
  if (c == 0) return {};
  return {{idx, c}};
}

void sparse_axpy(SparseVec& r, const Rational& c, const SparseVec& s) {
  if (c == 0 || s.empty()) return;
  SparseVec out;
  out.reserve(r.size() + s.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || s[j].first < r[i].first) {
      out.emplace_back(s[j].first, c * s[j].second);
      ++j;
    } else {
      Rational v = r[i].second + c * s[j].second;
      if (v != 0) out.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  r = std::move(out);
}

void sparse_scale(SparseVec& r, const Rational& c) {
  if (c == 0) { r.clear(); return; }
  for (auto& e : r) e.second *= c;
}

Rational sparse_get(const SparseVec& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const auto& e, int i) { return e.first < i; });
  if (it != v.end() && it->first == idx) return it->second;
  return Rational(0);
}

SparseVec sparse_from_dense(const std::vector<Rational>& v) {
  SparseVec r;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] != 0) r.emplace_back(i, v[i]);
  return r;
}

int Echelon::pivot_index(const SparseVec& v) const {
  return pivot_ == Pivot::Leading ? v.front().first : v.back().first;
}

bool Echelon::insert(SparseVec v) {
  while (!v.empty()) {
    const int p = pivot_index(v);
    auto it = rows_.find(p);
    if (it == rows_.end()) {
      Rational inv = 1 / sparse_get(v, p);
      sparse_scale(v, inv);
      rows_.emplace(p, std::move(v));
      finalized_ = false;
      return true;
    }
    Rational c = -sparse_get(v, p);
    sparse_axpy(v, c, it->second);
  }
  return false;
}

SparseVec Echelon::reduce(SparseVec v) const {
  bool again = true;
  while (again && !v.empty()) {
    again = false;
    for (const auto& e : v) {
      auto row = rows_.find(e.first);
      if (row != rows_.end()) {
        const Rational c = -e.second;
        sparse_axpy(v, c, row->second);
        again = true;
        break;
      }
    }
  }
  return v;
}

void Echelon::finalize() {
  // Order so each row only refers to already-clean pivots.
  if (pivot_ == Pivot::Trailing) {
    for (auto it = rows_.begin(); it != rows_.end(); ++it) {
      SparseVec& r = it->second;
      bool again = true;
      while (again) {
        again = false;
        for (const auto& e : r) {
          if (e.first == it->first) continue;
          auto other = rows_.find(e.first);
          if (other != rows_.end()) {
            Rational c = -e.second;
            sparse_axpy(r, c, other->second);
            again = true;
            break;
          }
        }
      }
    }
  } else {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      SparseVec& r = it->second;
      bool again = true;
      while (again) {
        again = false;
        for (const auto& e : r) {
          if (e.first == it->first) continue;
          auto other = rows_.find(e.first);
          if (other != rows_.end()) {
            Rational c = -e.second;
            sparse_axpy(r, c, other->second);
            again = true;
            break;
          }
        }
      }
    }
  }
  finalized_ = true;
}

std::vector<SparseVec> Echelon::kernel(int ncols) const {
  std::vector<SparseVec> out;
  for (int f = 0; f < ncols; ++f) {
    if (rows_.count(f)) continue;
    SparseVec x = sparse_unit(f);
    for (const auto& [p, row] : rows_) {
      Rational v = sparse_get(row, f);
      if (v != 0) sparse_axpy(x, Rational(0) - v, sparse_unit(p));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace bzz
