#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bzz/komplex.hpp"

namespace bzz {

/*
 * Braid-word front-end: words of signed generators acting by Rouquier-type
 * complexes, relation verification, and the decategorified Laurent matrices
 * (the action on split Grothendieck classes of the projectives, a Burau-like
 * matrix in v).
 *
 * Conventions, fixed once: words act with the left factor outermost; a
 * grading shift (m) contributes v^{-m}, i.e. a summand generated in internal
 * degree d contributes v^d; cohomological degree i carries the sign (-1)^i.
 */

struct BraidWord {
  // Signed generator indices: +j for sigma_j, -j for its inverse.
  std::vector<int> letters;
};

// "s1 s2 S1": lowercase positive, uppercase inverse.
BraidWord parse_braid_word(const std::string& text, int rank);
std::string braid_word_str(const BraidWord& w);

// Left-to-right tensor of the R_j / R'_j factors; minimizes between factors
// when reduce is set (the result is the same up to homotopy equivalence).
Complex word_to_complex(ModuleContext& ctx, const BraidWord& w, uint64_t seed,
                        bool reduce = true);

// Laurent polynomials in v with integer coefficients.
struct LaurentPoly {
  std::map<int, long long> coeff;  // exponent -> coefficient, no zeros
  void add(int exp, long long c);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const = default;
  bool is_zero() const { return coeff.empty(); }
  std::string str() const;
};
LaurentPoly laurent_unit(long long c = 1, int exp = 0);

struct LaurentMatrix {
  int n = 0;
  std::vector<LaurentPoly> entry;  // row-major
  LaurentPoly& at(int r, int c) { return entry[r * n + c]; }
  const LaurentPoly& at(int r, int c) const { return entry[r * n + c]; }
  static LaurentMatrix identity(int n);
  LaurentMatrix operator*(const LaurentMatrix& o) const;
  bool operator==(const LaurentMatrix& o) const = default;
  std::string to_json() const;
};

// Graded dimension of a module as a Laurent polynomial.
LaurentPoly graded_dim_poly(const Bimodule& m);

// Multiplicities of P_l(-d) in a graded-projective left module, computed
// from the top M / rad M; entry (l, d) counts copies contributing v^d.
std::map<std::pair<int, int>, int> projective_multiplicities(const Bimodule& m);

// Column k: class of the minimized action of w on P_k in the basis [P_l].
LaurentMatrix decat_matrix(ModuleContext& ctx, const BraidWord& w, uint64_t seed);

struct BraidCheck {
  std::string name;
  bool passed;
  bool skipped = false;
  std::string detail;
};

// Relations (2.1)-(2.3), at the bimodule level and through every P_k.
std::vector<BraidCheck> verify_braid_relations(ModuleContext& ctx, uint64_t seed);

// Temperley-Lieb checks: Prop 2.8 isomorphism witnesses plus the graded
// dimension identities of the quotient relations.
std::vector<BraidCheck> tl_check(ModuleContext& ctx, uint64_t seed);

}  // namespace bzz
