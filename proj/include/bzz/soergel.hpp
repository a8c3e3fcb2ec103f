#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bzz/komplex.hpp"
#include "bzz/polynomial.hpp"

namespace bzz {

/*
 * The type-B Soergel diagrammatic calculus as a term language, and its
 * evaluation into the bimodule category.
 *
 * Terms live in the free monoidal category on the generators
 *   id(j), dot_start(j): [] -> [j], dot_end(j): [j] -> [], split(j),
 *   merge(j), crossing(s,t) (the 2m_st-valent vertex), polybox(f)
 * under vertical composition comp(,) and horizontal juxtaposition tens(,),
 * plus formal rational combinations lin(c1: t1, ...).  Isotopy invariance
 * is not built into the representation; it is recovered because the
 * evaluation target satisfies the one-colour relation catalogue.
 *
 * Evaluation sends a word to the ordered tensor product of the shifted
 * generators U_j, dots to the (signed) unit/counit, trivalents to the
 * (co)multiplication, every 2m-valent vertex to zero, and polynomial boxes
 * to multiplication by the central image of the polynomial.
 */

using Word = std::vector<int>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Id, DotStart, DotEnd, Split, Merge, Crossing, PolyBox, Comp, Tens, Lin };
  Kind kind;
  int j = 0, k = 0;                             // colours
  std::optional<Polynomial> poly;               // PolyBox decoration
  TermPtr a, b;                                 // Comp / Tens children
  std::vector<std::pair<Rational, TermPtr>> parts;  // Lin combination
  Word dom, cod;
  int degree = 0;
};

// m_{st}: 4 on the 1-2 edge, 3 on other adjacencies, 2 for distant pairs.
int braid_exponent(int s, int t);

// Typed builders; all throw std::invalid_argument on a colour or typing
// error.  `rank` bounds the colours.
TermPtr t_id(int rank, const Word& w);
TermPtr t_dot_start(int rank, int j);
TermPtr t_dot_end(int rank, int j);
TermPtr t_split(int rank, int j);
TermPtr t_merge(int rank, int j);
TermPtr t_crossing(int rank, int s, int t);
TermPtr t_polybox(int rank, const Polynomial& f);
TermPtr t_comp(const TermPtr& f, const TermPtr& g);  // f after g
TermPtr t_tens(const TermPtr& f, const TermPtr& g);
TermPtr t_lin(const std::vector<std::pair<Rational, TermPtr>>& parts);
// Macros.
TermPtr t_cap(int rank, int j);      // [j,j] -> []
TermPtr t_cup(int rank, int j);      // [] -> [j,j]
TermPtr t_barbell(int rank, int j);  // [] -> []
TermPtr t_needle(int rank, int j);   // [j] -> []

struct ParseError : std::invalid_argument {
  ParseError(size_t pos_, const std::string& msg)
      : std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + msg),
        pos(pos_) {}
  size_t pos;
};

// Text grammar:
//   term ::= name '(' args ')' | 'comp(' term ',' term ')'
//          | 'tens(' term ',' term ')' | 'lin(' coeff ':' term (',' ...)* ')'
// An optional leading header line `object: j1 j2 ...` asserts the domain.
TermPtr parse_diagram(const std::string& text, int rank);

class Evaluator {
 public:
  explicit Evaluator(ModuleContext& ctx);
  BimoduleMap evaluate(const TermPtr& t);
  ModuleContext& context() { return ctx_; }
  // Central image of a polynomial under alpha_j |-> (-1)^{j+1}
  // (2X_j + X_{j-1} + X_{j+1}) (boundary-adjusted); kills degree >= 4.
  BimoduleMap polynomial_image(const Polynomial& f);

 private:
  BimoduleMap generator_map(Term::Kind kind, int j);
  ModuleContext& ctx_;
  Realisation rel_;
  std::map<std::pair<int, int>, BimoduleMap> gen_cache_;
};

struct RelationInstance {
  std::string id;        // "3.1" ... "3.24", plus "3.2span" and "3.3n"
  std::vector<int> colours;
  std::optional<Polynomial> f;  // for polynomial forcing
  std::string name() const;
};

// All admissible instances of the relation catalogue at this rank.
std::vector<RelationInstance> relation_catalogue(int rank);

struct RelationCheck {
  bool ok;
  std::string detail;
};
RelationCheck check_relation(Evaluator& ev, const RelationInstance& inst);
RelationCheck check_relation(Evaluator& ev, const std::string& id,
                             const std::vector<int>& colours);

// The coefficient equations of the functor's well-definedness, evaluated at
// the stored solution a_j = b_j = (-1)^{j+1}, c_j = d_j = 1 and the central
// coefficients f_k^j.
struct LedgerLine {
  std::string name;
  Rational residual;
  bool ok() const { return residual == 0; }
};
std::vector<LedgerLine> verify_coefficient_ledger(int rank);

// Image of the elementary Rouquier complex F_{s_j} (positive) or E_{s_j}
// under the evaluation functor.
Complex soergel_rouquier(Evaluator& ev, int j, bool positive);

}  // namespace bzz
