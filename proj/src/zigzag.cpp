#include "bzz/zigzag.hpp"

#include <json.hpp>

#include <cstdlib>
#include <stdexcept>

namespace bzz {

std::string path_name(const BasisPath& p) {
  switch (p.tag) {
    case PathTag::E: return "e" + std::to_string(p.j);
    case PathTag::IE: return "ie" + std::to_string(p.j);
    case PathTag::A: return "a" + std::to_string(p.j) + "_" + std::to_string(p.k);
    case PathTag::IA: return "ia" + std::to_string(p.j) + "_" + std::to_string(p.k);
    case PathTag::X: return "x" + std::to_string(p.j);
    case PathTag::IX: return "ix" + std::to_string(p.j);
  }
  return "?";
}

namespace {

int path_source(const BasisPath& p) {
  return p.j;
}
int path_target(const BasisPath& p) {
  return (p.tag == PathTag::A || p.tag == PathTag::IA) ? p.k : p.j;
}
int path_degree(const BasisPath& p) {
  switch (p.tag) {
    case PathTag::E:
    case PathTag::IE: return 0;
    case PathTag::A:
    case PathTag::IA: return 1;
    case PathTag::X:
    case PathTag::IX: return 2;
  }
  return 0;
}

}  // namespace

Algebra::Ptr Algebra::build(int n) {
  if (n < 2) throw std::invalid_argument("zigzag algebra needs n >= 2");
  auto alg = std::make_shared<Algebra>();
  alg->n_ = n;
  auto& basis = alg->basis_;
  for (int j = 1; j <= n; ++j) basis.push_back({PathTag::E, j});
  for (int j = 2; j <= n; ++j) basis.push_back({PathTag::IE, j});
  for (int j = 1; j < n; ++j) basis.push_back({PathTag::A, j, j + 1});
  for (int j = 1; j < n; ++j) basis.push_back({PathTag::A, j + 1, j});
  for (int j = 1; j < n; ++j) basis.push_back({PathTag::IA, j, j + 1});
  for (int j = 1; j < n; ++j) basis.push_back({PathTag::IA, j + 1, j});
  for (int j = 1; j <= n; ++j) basis.push_back({PathTag::X, j});
  for (int j = 2; j <= n; ++j) basis.push_back({PathTag::IX, j});

  const int d = alg->dim();
  for (int i = 0; i < d; ++i) {
    alg->src_.push_back(path_source(basis[i]));
    alg->tgt_.push_back(path_target(basis[i]));
    alg->deg_.push_back(path_degree(basis[i]));
    alg->by_name_[path_name(basis[i])] = i;
  }

  // Multiplication by case analysis on tags.  Zero unless target(a) ==
  // source(b); any product of path length >= 3 is zero.
  auto product = [&](const BasisPath& a, const BasisPath& b) -> Prod {
    if (path_target(a) != path_source(b)) return {0, 0};
    if (path_degree(a) + path_degree(b) > 2) return {0, 0};
    auto idx = [&](BasisPath p) { return alg->index_of(p); };
    switch (a.tag) {
      case PathTag::E:
        return {1, idx(b)};
      case PathTag::IE:
        switch (b.tag) {
          case PathTag::E: return {1, idx(a)};
          case PathTag::IE: return {-1, idx({PathTag::E, a.j})};
          case PathTag::A: return {1, idx({PathTag::IA, b.j, b.k})};
          case PathTag::IA: return {-1, idx({PathTag::A, b.j, b.k})};
          case PathTag::X: return {1, idx({PathTag::IX, a.j})};
          case PathTag::IX: return {-1, idx({PathTag::X, a.j})};
        }
        break;
      case PathTag::A:
        switch (b.tag) {
          case PathTag::E: return {1, idx(a)};
          case PathTag::IE: return {1, idx({PathTag::IA, a.j, a.k})};
          case PathTag::A:
            if (b.k != a.j) return {0, 0};  // straight through: (2.5)
            return {1, idx({PathTag::X, a.j})};
          case PathTag::IA:
            if (b.k != a.j) return {0, 0};
            if (a.j == 1) return {0, 0};  // (1|2) ie_2 (2|1) = 0: (2.9)
            return {1, idx({PathTag::IX, a.j})};
          default: break;  // degree 3
        }
        break;
      case PathTag::IA:
        switch (b.tag) {
          case PathTag::E: return {1, idx(a)};
          case PathTag::IE: return {-1, idx({PathTag::A, a.j, a.k})};
          case PathTag::A:
            if (b.k != a.j) return {0, 0};
            if (a.j == 1) return {0, 0};  // (2.9) again
            return {1, idx({PathTag::IX, a.j})};
          case PathTag::IA:
            if (b.k != a.j) return {0, 0};
            return {-1, idx({PathTag::X, a.j})};
          default: break;
        }
        break;
      case PathTag::X:
        switch (b.tag) {
          case PathTag::E: return {1, idx(a)};
          case PathTag::IE: return {1, idx({PathTag::IX, a.j})};
          default: break;
        }
        break;
      case PathTag::IX:
        switch (b.tag) {
          case PathTag::E: return {1, idx(a)};
          case PathTag::IE: return {-1, idx({PathTag::X, a.j})};
          default: break;
        }
        break;
    }
    return {0, 0};
  };

  alg->table_.resize(static_cast<size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) alg->table_[a * d + b] = product(basis[a], basis[b]);
  return alg;
}

int Algebra::index_of(const BasisPath& p) const {
  auto it = by_name_.find(path_name(p));
  if (it == by_name_.end())
    throw std::out_of_range("algebra: no basis path " + path_name(p));
  return it->second;
}

int Algebra::index_by_name(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end())
    throw std::out_of_range("algebra: unknown basis name '" + name + "'");
  return it->second;
}

int Algebra::e(int j) const { return index_of({PathTag::E, j}); }
int Algebra::ie(int j) const { return index_of({PathTag::IE, j}); }
int Algebra::arrow(int j, int k) const { return index_of({PathTag::A, j, k}); }
int Algebra::iarrow(int j, int k) const { return index_of({PathTag::IA, j, k}); }
int Algebra::x(int j) const { return index_of({PathTag::X, j}); }
int Algebra::ix(int j) const { return index_of({PathTag::IX, j}); }

AlgebraElement AlgebraElement::basis_element(Algebra::Ptr alg, int idx, const Rational& c) {
  AlgebraElement a(std::move(alg));
  a.add(idx, c);
  return a;
}

AlgebraElement AlgebraElement::unit(Algebra::Ptr alg) {
  AlgebraElement a(alg);
  for (int j = 1; j <= alg->rank(); ++j) a.add(alg->e(j), Rational(1));
  return a;
}

void AlgebraElement::add(int idx, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (const auto& [i, c] : o.coeffs_) r.add(i, c);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (const auto& [i, c] : o.coeffs_) r.add(i, -c);
  return r;
}

AlgebraElement AlgebraElement::operator*(const Rational& c) const {
  AlgebraElement r(alg_);
  for (const auto& [i, c0] : coeffs_) r.add(i, c0 * c);
  return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return coeffs_ == o.coeffs_;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.algebra() != b.algebra())
    throw std::invalid_argument("multiply: mixed-algebra operands");
  const Algebra& alg = *a.algebra();
  AlgebraElement r(a.algebra());
  for (const auto& [i, ci] : a.coeffs())
    for (const auto& [j, cj] : b.coeffs()) {
      auto p = alg.mul(i, j);
      if (p.coeff != 0) r.add(p.idx, ci * cj * p.coeff);
    }
  return r;
}

std::string element_to_json(const AlgebraElement& a) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [i, c] : a.coeffs())
    j[path_name(a.algebra()->path(i))] = rational_str(c);
  return j.dump();
}

AlgebraElement element_from_json(Algebra::Ptr alg, const std::string& json) {
  auto j = nlohmann::json::parse(json);
  AlgebraElement a(alg);
  for (auto it = j.begin(); it != j.end(); ++it)
    a.add(alg->index_by_name(it.key()), parse_rational(it.value().get<std::string>()));
  return a;
}

std::map<int, int> OneSidedModule::graded_dim() const {
  std::map<int, int> d;
  for (int idx : basis) ++d[algebra->degree(idx)];
  return d;
}

OneSidedModule projective(Algebra::Ptr alg, int j, Side side) {
  if (j < 1 || j > alg->rank()) throw std::out_of_range("projective: index out of range");
  OneSidedModule m;
  m.side = side;
  m.j = j;
  m.algebra = alg;
  m.complex_scalars = j >= 2;
  for (int i = 0; i < alg->dim(); ++i) {
    int endpoint = side == Side::Left ? alg->target(i) : alg->source(i);
    if (endpoint == j) m.basis.push_back(i);
  }
  // Position lookup.
  std::map<int, int> pos;
  for (size_t p = 0; p < m.basis.size(); ++p) pos[m.basis[p]] = static_cast<int>(p);
  for (int i : m.basis) {
    if (j == 1) {
      m.ie_action.emplace_back(1, pos[i]);
      continue;
    }
    // P_j: right multiplication by ie_j; jP: left multiplication.
    auto p = side == Side::Left ? alg->mul(i, alg->ie(j)) : alg->mul(alg->ie(j), i);
    if (p.coeff == 0) throw std::logic_error("projective: ie action not invertible");
    m.ie_action.emplace_back(p.coeff, pos.at(p.idx));
  }
  return m;
}

}  // namespace bzz
