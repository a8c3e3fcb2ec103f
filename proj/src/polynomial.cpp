#include "bzz/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace bzz {

Realisation::Realisation(int rank_) : rank(rank_) {
  if (rank < 2) throw std::invalid_argument("realisation: rank must be >= 2");
}

int Realisation::cartan(int i, int j) const {
  if (i < 1 || i > rank || j < 1 || j > rank)
    throw std::out_of_range("cartan: index out of range");
  if (i == j) return 2;
  if (i == 1 && j == 2) return -1;
  if (i == 2 && j == 1) return -2;
  if (i >= 2 && j >= 2 && std::abs(i - j) == 1) return -1;
  return 0;
}

Polynomial Polynomial::constant(int rank, const Rational& c) {
  Polynomial f(rank);
  f.add_term(Exponents(rank, 0), c);
  return f;
}

Polynomial Polynomial::variable(int rank, int i) {
  if (i < 1 || i > rank) throw std::out_of_range("variable: index out of range");
  Polynomial f(rank);
  Exponents e(rank, 0);
  e[i - 1] = 1;
  f.add_term(e, Rational(1));
  return f;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = 2 * std::accumulate(e.begin(), e.end(), 0);
    if (t > d) d = t;
  }
  return d;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return rank_ == o.rank_ && terms_ == o.terms_;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(rank_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(rank_);
      for (int i = 0; i < rank_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(rank_);
  for (const auto& [e, c0] : terms_) r.add_term(e, c0 * c);
  return r;
}

Polynomial reflection_act(const Realisation& rel, int i, const Polynomial& f) {
  if (i < 1 || i > rel.rank) throw std::out_of_range("reflection_act: index out of range");
  // Images of the variables under s_i.
  std::vector<Polynomial> img;
  img.reserve(rel.rank);
  for (int j = 1; j <= rel.rank; ++j) {
    Polynomial v = Polynomial::variable(rel.rank, j);
    int a = rel.cartan(i, j);
    if (a != 0) v = v - Polynomial::variable(rel.rank, i) * Rational(a);
    img.push_back(v);
  }
  Polynomial out(rel.rank);
  for (const auto& [e, c] : f.terms()) {
    Polynomial m = Polynomial::constant(rel.rank, c);
    for (int j = 0; j < rel.rank; ++j)
      for (int k = 0; k < e[j]; ++k) m = m * img[j];
    out = out + m;
  }
  return out;
}

Polynomial word_act(const Realisation& rel, const std::vector<int>& word,
                    const Polynomial& f) {
  Polynomial out = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    out = reflection_act(rel, *it, out);
  return out;
}

Polynomial demazure(const Realisation& rel, int i, const Polynomial& f) {
  Polynomial num = f - reflection_act(rel, i, f);
  Polynomial out(rel.rank);
  for (const auto& [e, c] : num.terms()) {
    if (e[i - 1] < 1)
      throw std::logic_error("demazure: f - s(f) not divisible by alpha_i");
    Polynomial::Exponents q = e;
    q[i - 1] -= 1;
    out.add_term(q, c);
  }
  return out;
}

std::string poly_str(const Polynomial& f) {
  if (f.is_zero()) return "0";
  // Print low degree first; within a degree, earlier variables first.
  std::vector<std::pair<Polynomial::Exponents, Rational>> terms(f.terms().begin(),
                                                                f.terms().end());
  auto total = [](const Polynomial::Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
  };
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    int da = total(a.first), db = total(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational a = c;
    if (first) {
      if (sgn(a) < 0) { out += "-"; a = -a; }
    } else {
      out += sgn(a) < 0 ? " - " : " + ";
      if (sgn(a) < 0) a = -a;
    }
    out += a.get_str();
    for (size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      out += "*a" + std::to_string(j + 1);
      if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    first = false;
  }
  return out;
}

namespace {

struct PolyParser {
  const std::string& s;
  int rank;
  size_t pos = 0;

  void skip_ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("polynomial parse error at position " +
                                std::to_string(pos) + ": " + msg);
  }

  long parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  Rational parse_coeff(bool neg) {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    if (pos == start) fail("expected coefficient");
    Rational c = parse_rational(s.substr(start, pos - start));
    return neg ? Rational(-c) : c;
  }

  Polynomial parse() {
    Polynomial out(rank);
    bool first = true;
    for (;;) {
      skip_ws();
      if (pos >= s.size()) {
        if (first) fail("empty polynomial");
        break;
      }
      bool neg = false;
      if (!first) {
        if (s[pos] == '+') { ++pos; }
        else if (s[pos] == '-') { neg = true; ++pos; }
        else fail("expected '+' or '-'");
      }
      Rational c = parse_coeff(neg);
      Polynomial::Exponents e(rank, 0);
      for (;;) {
        skip_ws();
        if (pos >= s.size() || s[pos] != '*') break;
        ++pos;
        skip_ws();
        if (pos >= s.size() || s[pos] != 'a') fail("expected variable");
        ++pos;
        long idx = parse_uint();
        if (idx < 1 || idx > rank) fail("variable index out of range");
        long exp = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          exp = parse_uint();
          if (exp < 0) fail("negative exponent");
        }
        e[idx - 1] += static_cast<int>(exp);
      }
      out.add_term(e, c);
      first = false;
    }
    return out;
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, int rank) {
  PolyParser p{text, rank};
  return p.parse();
}

}  // namespace bzz
