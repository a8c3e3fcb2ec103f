#pragma once

#include <map>
#include <string>
#include <vector>

#include "bzz/rational.hpp"

namespace bzz {

/*
 * The polynomial ring R of the type-B realisation, with the Coxeter group
 * acting through the Cartan pairing and the Demazure operators d_s(f) =
 * (f - s(f)) / alpha_s.
 *
 * Variables a1..an are the simple roots; each carries grading 2, so all
 * gradings are even.  The realisation is balanced but non-symmetric:
 * <alpha_1^v, alpha_2> = -1 while <alpha_2^v, alpha_1> = -2.
 */

struct Realisation {
  explicit Realisation(int rank);
  int rank;
  // Cartan pairing <alpha_i^v, alpha_j>, 1-based indices.
  int cartan(int i, int j) const;
};

class Polynomial {
 public:
  using Exponents = std::vector<int>;  // length == rank

  explicit Polynomial(int rank) : rank_(rank) {}
  static Polynomial constant(int rank, const Rational& c);
  static Polynomial variable(int rank, int i);  // alpha_i, 1-based

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  Rational coefficient(const Exponents& e) const;

  // Grading: each variable has degree 2.  -1 for the zero polynomial.
  int degree() const;
  bool operator==(const Polynomial& o) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;

  void add_term(const Exponents& e, const Rational& c);

 private:
  int rank_;
  std::map<Exponents, Rational> terms_;  // no zero coefficients stored
};

// Action of the simple reflection s_i: ring homomorphism with
// s_i(alpha_j) = alpha_j - cartan(i,j) * alpha_i.  Involutive.
Polynomial reflection_act(const Realisation& rel, int i, const Polynomial& f);

// Action of an arbitrary word s_{w1} s_{w2} ... (applied right to left).
Polynomial word_act(const Realisation& rel, const std::vector<int>& word,
                    const Polynomial& f);

// Demazure operator; drops the grading by 2.  The difference f - s_i(f) is
// always divisible by alpha_i; a nonzero remainder means the action itself
// is broken and raises logic_error.
Polynomial demazure(const Realisation& rel, int i, const Polynomial& f);

// Text form `coeff ('*' var)*` with var `a<INDEX>('^' INT)?`,
// e.g. "2*a1 - 1*a2^2".
std::string poly_str(const Polynomial& f);
Polynomial parse_polynomial(const std::string& text, int rank);

}  // namespace bzz
