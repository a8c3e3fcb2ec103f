#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bzz/linalg.hpp"
#include "bzz/zigzag.hpp"

namespace bzz {

/*
 * Graded (B_n, B_n)-bimodules with finite rational bases.
 *
 * A module stores, for every algebra basis path, the sparse matrix of its
 * left and right action.  One-sided modules are the same structure with one
 * side switched off (equivalently, modules over the enveloping algebra with
 * one tensor factor trivial), so a single hom-solver / minimization engine
 * serves bimodule complexes and complexes of one-sided modules alike.
 *
 * Tensor products are computed as quotients of the ground-field tensor
 * product by the bilinearity relators m*g (x) n - m (x) g*n over a
 * generating set of the algebra.  The section of the quotient is the
 * lexicographically earliest independent subset of residue classes of pure
 * pairs, which a trailing-pivot echelon of the relator span produces
 * directly.
 */

struct TensorInfo;

struct Bimodule {
  using Ptr = std::shared_ptr<const Bimodule>;

  Algebra::Ptr alg;
  bool has_left = true, has_right = true;
  std::vector<int> deg;
  std::vector<int> lv, rv;  // vertex of each basis element; 0 on inactive side
  // act_l[p][a] = image of basis a under left action of algebra path p.
  std::vector<std::vector<SparseVec>> act_l, act_r;
  std::shared_ptr<const TensorInfo> tensor;

  int dim() const { return static_cast<int>(deg.size()); }
  SparseVec act(bool left, int path, const SparseVec& v) const;
  std::map<int, int> graded_dim() const;
  // Per-(degree, lvertex, rvertex) dimension counts; an invariant of the
  // isomorphism class finer than the graded dimension.
  std::map<std::tuple<int, int, int>, int> fine_dim() const;
};

struct TensorInfo {
  // Ground basis: matched pairs (a, b), lexicographic.
  Bimodule::Ptr left, right;  // null for the scalar tensor of one-sided modules
  int left_dim = 0, right_dim = 0;
  std::vector<std::pair<int, int>> pairs;
  std::unordered_map<int64_t, int> pair_index;  // a * right_dim + b -> ground idx
  Echelon relators{Echelon::Pivot::Trailing};
  std::vector<int> kept;             // ground index per quotient basis position
  std::vector<int> ground_to_basis;  // -1 for eliminated ground coordinates

  int ground_of(int a, int b) const;
  // Quotient coordinates of a ground vector.
  SparseVec reduce(SparseVec ground) const;
  // Residue of the pure tensor of two coordinate vectors.
  SparseVec pure(const SparseVec& a, const SparseVec& b) const;
};

std::string graded_dim_str(const std::map<int, int>& gd);

// --- constructors ---------------------------------------------------------

Bimodule::Ptr regular_bimodule(Algebra::Ptr alg);
Bimodule::Ptr zero_module(Algebra::Ptr alg, bool has_left = true, bool has_right = true);
// One-sided projective as a module with one active side.
Bimodule::Ptr onesided_module(const OneSidedModule& m);
// P_j (x)_{K_j} jP; for j >= 2 the quotient identifies p ie (x) q with
// p (x) ie q.  Unshifted: this is the term of the Rouquier complexes.
Bimodule::Ptr t_module(Algebra::Ptr alg, int j);
// U_j = t_module(j) shifted down by 1: the Temperley-Lieb generator.
Bimodule::Ptr u_module(Algebra::Ptr alg, int j);
Bimodule::Ptr shift_module(Bimodule::Ptr m, int by);  // (by): degrees drop by `by`

struct DirectSum {
  Bimodule::Ptr mod;
  std::vector<int> offsets;  // basis offset of each summand
};
DirectSum direct_sum(Algebra::Ptr alg, const std::vector<Bimodule::Ptr>& parts);

// M (x)_{B_n} N; requires M right-active and N left-active.
Bimodule::Ptr tensor_over_algebra(Bimodule::Ptr M, Bimodule::Ptr N);

// Throws unless actions are unital, degree-respecting, mutually commuting
// and compatible with the multiplication table.
void validate_bimodule(const Bimodule& m);

// --- maps -----------------------------------------------------------------

struct BimoduleMap {
  Bimodule::Ptr src, tgt;
  int degree = 0;
  std::vector<SparseVec> col;  // col[a] = image of source basis a

  SparseVec apply(const SparseVec& v) const;
  bool is_zero() const;
  bool operator==(const BimoduleMap& o) const;
};

BimoduleMap zero_map(Bimodule::Ptr src, Bimodule::Ptr tgt, int degree = 0);
BimoduleMap identity_map(Bimodule::Ptr m);
BimoduleMap compose(const BimoduleMap& f, const BimoduleMap& g);  // f after g
BimoduleMap map_add(const BimoduleMap& f, const BimoduleMap& g);
BimoduleMap map_scale(const BimoduleMap& f, const Rational& c);
// Same columns, new endpoints (for grading shifts; bases must align).
BimoduleMap retarget(const BimoduleMap& f, Bimodule::Ptr src, Bimodule::Ptr tgt);
RationalMatrix map_to_dense(const BimoduleMap& f);
Rational map_trace(const BimoduleMap& f);
// Checks f commutes with both actions and is homogeneous of f.degree.
bool is_bimodule_map(const BimoduleMap& f);

// f (x) g on tensor modules built by tensor_over_algebra.
BimoduleMap tensor_map(const BimoduleMap& f, const BimoduleMap& g,
                       Bimodule::Ptr srcTensor, Bimodule::Ptr tgtTensor);

// Basis of the space of degree-d bimodule maps M -> N.
std::vector<BimoduleMap> hom_space(Bimodule::Ptr M, Bimodule::Ptr N, int d);

// Jacobson radical of the degree-0 endomorphism algebra, as flattened
// vectors (index a * dim(M) + b ... see flatten_map).
SparseVec flatten_map(const BimoduleMap& f);
std::vector<BimoduleMap> end_radical(Bimodule::Ptr M,
                                     const std::vector<BimoduleMap>& end0);

struct IsoResult {
  enum class Verdict { Found, NoCertified, NoProbabilistic };
  Verdict verdict;
  std::optional<BimoduleMap> iso, inverse;
  // For the probabilistic verdict: upper bound on the failure probability.
  double miss_probability = 0.0;
};
IsoResult find_isomorphism(Bimodule::Ptr M, Bimodule::Ptr N, uint64_t seed);

// --- the five morphism families -------------------------------------------

// All named maps are stated on the shifted generators U_j (and the regular
// bimodule), with the degrees of the morphism list: beta, gamma have degree
// 1; the split and merge have degree -1; epsilon has degree 2.  The split
// carries the sign (-1)^{j+1}; beta and gamma are the plain structure maps.
class ModuleContext;
BimoduleMap named_beta(ModuleContext& ctx, int j);
BimoduleMap named_gamma(ModuleContext& ctx, int j);
BimoduleMap named_alpha_split(ModuleContext& ctx, int j);
BimoduleMap named_delta_merge(ModuleContext& ctx, int j);
BimoduleMap named_epsilon(ModuleContext& ctx, int j);

// Central multiplication by sum c_k X_k on the regular bimodule.
BimoduleMap central_mult(Bimodule::Ptr reg, const std::vector<Rational>& xcoeff);

// Shared cache of canonical word modules: M(empty) is the regular bimodule,
// M(w . j) = M(w) (x) U_j, plus the coherence isomorphisms between
// M(w1) (x) M(w2) and M(w1 w2) needed to tensor morphisms.
class ModuleContext {
 public:
  explicit ModuleContext(Algebra::Ptr alg);
  const Algebra::Ptr& algebra() const { return alg_; }

  Bimodule::Ptr regular();
  Bimodule::Ptr u(int j);
  Bimodule::Ptr t(int j);  // the unshifted P_j (x)_{K_j} jP
  Bimodule::Ptr word_module(const std::vector<int>& word);
  // The pair tensor M(w1) (x) M(w2) (with tensor info).
  Bimodule::Ptr pair_module(const std::vector<int>& w1, const std::vector<int>& w2);
  // M(w1) (x) M(w2) -> M(w1 w2), an isomorphism.
  const BimoduleMap& concat_iso(const std::vector<int>& w1, const std::vector<int>& w2);
  BimoduleMap concat_iso_inverse(const std::vector<int>& w1, const std::vector<int>& w2);

  // Horizontal tensor of morphisms along canonical modules.
  BimoduleMap tensor_on_words(const BimoduleMap& f, const std::vector<int>& fdom,
                              const std::vector<int>& fcod, const BimoduleMap& g,
                              const std::vector<int>& gdom, const std::vector<int>& gcod);

  BimoduleMap inverse_of(const BimoduleMap& f);

 private:
  Algebra::Ptr alg_;
  Bimodule::Ptr regular_;
  std::map<int, Bimodule::Ptr> ts_;
  std::map<std::vector<int>, Bimodule::Ptr> words_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Bimodule::Ptr> pairs_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, BimoduleMap> concat_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, BimoduleMap> concat_inv_;
};

// JSON serialization.
std::string module_to_json(const Bimodule& m);
std::string map_to_json(const BimoduleMap& f);

}  // namespace bzz
