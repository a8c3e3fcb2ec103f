#pragma once

#include <map>
#include <optional>
#include <string>

#include "bzz/bimod.hpp"

namespace bzz {

/*
 * Bounded cochain complexes of graded bimodules (or one-sided modules),
 * with differentials of internal degree 0 squaring to zero.
 *
 * minimize() is Gaussian elimination on complexes: as long as some
 * differential d^i lies outside the radical of Hom(C^i, C^{i+1}) there is a
 * direct-summand pair on which d is invertible; it is split off with the
 * standard two-sided correction and the homotopy-equivalence witnesses are
 * accumulated.  Detection works entirely by exact linear algebra:
 *   - d^i is radical iff g . d^i lies in J(End C^i) for every degree-0
 *     g : C^{i+1} -> C^i (the span of such g.d is a left ideal, so it is
 *     radical iff it consists of nilpotents);
 *   - J(End) is the kernel of the trace form, valid in characteristic 0;
 *   - a non-nilpotent u = g.d yields the summand via its Fitting
 *     decomposition C^i = ker(u^k) + im(u^k).
 * A complex where every differential is radical is minimal, and minimal
 * complexes are unique up to isomorphism (graded Krull-Schmidt), which is
 * what homotopy_equivalent() relies on.
 */

struct Complex {
  Algebra::Ptr alg;
  std::map<int, Bimodule::Ptr> terms;   // nonzero terms only
  std::map<int, BimoduleMap> diffs;     // d^i when terms i and i+1 both exist

  int total_dim() const;
  std::map<int, std::map<int, int>> graded_dims() const;
  bool has_term(int i) const { return terms.count(i) != 0; }
};

// Chain maps are stored componentwise; a missing component is zero.
struct ChainMap {
  std::map<int, BimoduleMap> comp;
};

void validate_complex(const Complex& c);

Complex unit_complex(ModuleContext& ctx);
Complex complex_from_module(Algebra::Ptr alg, Bimodule::Ptr m, int at = 0);
// R_j (sign +) or R'_j (sign -).
Complex rouquier_complex(ModuleContext& ctx, int j, bool positive);
// [k]: C[k]^i = C^{i+k}, differentials scaled by (-1)^k.
Complex shift_cohomological(const Complex& c, int k);
// (m): internal shift of every term.
Complex shift_internal(const Complex& c, int m);

// Total complex of the double complex C (x) D, Koszul sign on the second
// differential.
Complex complex_tensor(const Complex& C, const Complex& D);

// Componentwise - (x)_B P_k.
Complex apply_to_module(ModuleContext& ctx, const Complex& C, int k);

struct MinimizeResult {
  Complex min;
  // Witnesses: to_min . from_min = id exactly; from_min . to_min is
  // homotopic to the identity.
  ChainMap to_min, from_min;
};
MinimizeResult minimize(const Complex& C, uint64_t seed, bool witnesses = true);

bool is_chain_map(const Complex& src, const Complex& tgt, const ChainMap& f);
ChainMap compose_chain(const ChainMap& f, const ChainMap& g);
// Solves u - v = dh + hd within C; nullopt when no homotopy exists.
std::optional<ChainMap> homotopy_between(const Complex& C, const ChainMap& u,
                                         const ChainMap& v);
ChainMap identity_chain(const Complex& C);

struct ChainIso {
  bool found = false;
  ChainMap iso, inverse;
};
// Degree-0 chain isomorphism between complexes (seeded random search in the
// chain-map space; exact verification).
ChainIso find_chain_isomorphism(const Complex& C, const Complex& D, uint64_t seed);

struct EquivResult {
  enum class Verdict { Yes, NoCertified, NoProbabilistic };
  Verdict verdict;
  // For Yes: chain maps C -> D and D -> C between the original complexes.
  std::optional<ChainMap> fwd, bwd;
  double miss_probability = 0.0;
};
EquivResult homotopy_equivalent(const Complex& C, const Complex& D, uint64_t seed);

std::string complex_to_json(const Complex& c);
// Graded dimensions per cohomological degree, e.g. "-1: v + v^3; 0: 1".
std::string complex_dims_str(const Complex& c);

}  // namespace bzz
