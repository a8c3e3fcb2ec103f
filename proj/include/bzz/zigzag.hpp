#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bzz/rational.hpp"

namespace bzz {

/*
 * The type-B zigzag algebra B_n.
 *
 * Underlying quiver: vertices 1..n in a line, arrows (j|j+1) and (j+1|j)
 * for each edge, plus a grading-0 loop ie_j at every vertex j >= 2 with
 * ie_j^2 = -e_j.  Products compose paths left to right: ab reads "path a,
 * then path b", so ab != 0 requires target(a) == source(b).
 *
 * The canonical basis (8n-6 elements):
 *   E(j)  = e_j            constant paths           degree 0
 *   IE(j) = ie_j           loops, j >= 2            degree 0
 *   A(j,k)                 arrows, |j-k| = 1        degree 1
 *   IA(j,k)                decorated arrows         degree 1
 *   X(j)  = (j|k)(k|j)     degree-2 loops
 *   IX(j) = ie_j X(j)      decorated loops, j >= 2
 *
 * Decorated arrows are pinned to one normal form: IA(j,k) = ie_j (j|k)
 * = (j|k) ie_k whenever both decorations exist; on the 1-2 edge only one
 * side exists, IA(1,2) = (1|2) ie_2 and IA(2,1) = ie_2 (2|1).  IX(1) does
 * not exist: (1|2) ie_2 (2|1) = 0.
 *
 * Every product of two basis elements is 0 or +-1 times a basis element,
 * and all paths of length >= 3 vanish.  The full table is built by case
 * analysis below and certified by the exhaustive associativity test plus
 * each defining relation checked as a table lookup.
 */

enum class PathTag : uint8_t { E, IE, A, IA, X, IX };

struct BasisPath {
  PathTag tag;
  int j = 0;  // vertex, or source for A/IA
  int k = 0;  // target for A/IA, unused otherwise
  bool operator==(const BasisPath& o) const = default;
};

std::string path_name(const BasisPath& p);

class Algebra {
 public:
  using Ptr = std::shared_ptr<const Algebra>;
  static Ptr build(int n);

  int rank() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisPath>& basis() const { return basis_; }
  const BasisPath& path(int idx) const { return basis_[idx]; }

  int index_of(const BasisPath& p) const;
  int index_by_name(const std::string& name) const;

  int source(int idx) const { return src_[idx]; }
  int target(int idx) const { return tgt_[idx]; }
  int degree(int idx) const { return deg_[idx]; }

  // Product of basis elements: coefficient in {-1,0,+1} and index.
  struct Prod { int coeff; int idx; };
  Prod mul(int a, int b) const { return table_[a * dim() + b]; }

  // Convenience indices.
  int e(int j) const;
  int ie(int j) const;
  int arrow(int j, int k) const;
  int iarrow(int j, int k) const;
  int x(int j) const;
  int ix(int j) const;

 private:
  int n_ = 0;
  std::vector<BasisPath> basis_;
  std::vector<int> src_, tgt_, deg_;
  std::vector<Prod> table_;
  std::map<std::string, int> by_name_;
};

// Rational linear combination of basis paths.
class AlgebraElement {
 public:
  explicit AlgebraElement(Algebra::Ptr alg) : alg_(std::move(alg)) {}
  static AlgebraElement basis_element(Algebra::Ptr alg, int idx,
                                      const Rational& c = Rational(1));
  static AlgebraElement unit(Algebra::Ptr alg);

  const Algebra::Ptr& algebra() const { return alg_; }
  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  void add(int idx, const Rational& c);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const Rational& c) const;
  bool operator==(const AlgebraElement& o) const;

 private:
  Algebra::Ptr alg_;
  std::map<int, Rational> coeffs_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

// JSON round trip: {"e1": "1", "x2": "-3/2", ...}
std::string element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(Algebra::Ptr alg, const std::string& json);

// One-sided projective module P_j = B e_j (left) or jP = e_j B (right).
// The scalar field K_j (R for j = 1, C otherwise) acts through ie_j; the
// action is recorded as the table of multiplication by ie_j on the basis.
enum class Side { Left, Right };

struct OneSidedModule {
  Side side;
  int j;
  Algebra::Ptr algebra;
  std::vector<int> basis;  // algebra basis indices with endpoint j
  bool complex_scalars;    // K_j == C, i.e. j >= 2
  // Multiplication by ie_j on the K_j-side (right for P_j, left for jP):
  // basis position -> (coeff, basis position); identity when j == 1.
  std::vector<std::pair<int, int>> ie_action;
  std::map<int, int> graded_dim() const;
};

OneSidedModule projective(Algebra::Ptr alg, int j, Side side);

}  // namespace bzz
