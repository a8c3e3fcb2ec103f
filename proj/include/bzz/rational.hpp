#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bzz {

// Exact rational scalars.  mpq_class keeps values in canonical form
// (reduced, denominator > 0), which is the invariant everything else
// relies on.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational_of(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("rational: cannot parse '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rational: zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline int sign_of(const Rational& q) { return sgn(q); }

}  // namespace bzz
