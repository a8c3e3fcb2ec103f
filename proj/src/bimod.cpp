#include "bzz/bimod.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace bzz {

SparseVec Bimodule::act(bool left, int path, const SparseVec& v) const {
  const auto& table = left ? act_l : act_r;
  SparseVec out;
  for (const auto& [i, c] : v) sparse_axpy(out, c, table[path][i]);
  return out;
}

std::map<int, int> Bimodule::graded_dim() const {
  std::map<int, int> gd;
  for (int d : deg) ++gd[d];
  return gd;
}

std::map<std::tuple<int, int, int>, int> Bimodule::fine_dim() const {
  std::map<std::tuple<int, int, int>, int> fd;
  for (int i = 0; i < dim(); ++i) ++fd[{deg[i], lv[i], rv[i]}];
  return fd;
}

std::string graded_dim_str(const std::map<int, int>& gd) {
  if (gd.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, c] : gd) {
    if (!first) out += " + ";
    if (d == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += "v";
      if (d != 1) out += "^" + std::to_string(d);
    }
    first = false;
  }
  return out;
}

int TensorInfo::ground_of(int a, int b) const {
  auto it = pair_index.find(static_cast<int64_t>(a) * right_dim + b);
  return it == pair_index.end() ? -1 : it->second;
}

SparseVec TensorInfo::reduce(SparseVec ground) const {
  ground = relators.reduce(std::move(ground));
  SparseVec out;
  out.reserve(ground.size());
  for (const auto& [gi, c] : ground) {
    int b = ground_to_basis[gi];
    if (b < 0) throw std::logic_error("tensor reduce: residue not in section");
    out.emplace_back(b, c);
  }
  return out;
}

SparseVec TensorInfo::pure(const SparseVec& a, const SparseVec& b) const {
  std::map<int, Rational> acc;
  for (const auto& [i, c1] : a)
    for (const auto& [j, c2] : b) {
      int gi = ground_of(i, j);
      if (gi < 0) continue;  // unmatched pairs vanish in the quotient
      auto [it, fresh] = acc.emplace(gi, c1 * c2);
      if (!fresh) {
        it->second += c1 * c2;
        if (it->second == 0) acc.erase(it);
      }
    }
  SparseVec ground(acc.begin(), acc.end());
  return reduce(std::move(ground));
}

namespace {

std::vector<int> algebra_generators(const Algebra& alg) {
  std::vector<int> gens;
  for (int j = 2; j <= alg.rank(); ++j) gens.push_back(alg.ie(j));
  for (int j = 1; j < alg.rank(); ++j) {
    gens.push_back(alg.arrow(j, j + 1));
    gens.push_back(alg.arrow(j + 1, j));
  }
  return gens;
}

void allocate_actions(Bimodule& m) {
  const int ad = m.alg->dim();
  m.act_l.assign(ad, std::vector<SparseVec>(m.dim()));
  m.act_r.assign(ad, std::vector<SparseVec>(m.dim()));
}

}  // namespace

Bimodule::Ptr regular_bimodule(Algebra::Ptr alg) {
  auto m = std::make_shared<Bimodule>();
  m->alg = alg;
  const int d = alg->dim();
  m->deg.resize(d);
  m->lv.resize(d);
  m->rv.resize(d);
  for (int i = 0; i < d; ++i) {
    m->deg[i] = alg->degree(i);
    m->lv[i] = alg->source(i);
    m->rv[i] = alg->target(i);
  }
  allocate_actions(*m);
  for (int p = 0; p < d; ++p)
    for (int a = 0; a < d; ++a) {
      auto pa = alg->mul(p, a);
      if (pa.coeff != 0) m->act_l[p][a] = sparse_unit(pa.idx, Rational(pa.coeff));
      auto ap = alg->mul(a, p);
      if (ap.coeff != 0) m->act_r[p][a] = sparse_unit(ap.idx, Rational(ap.coeff));
    }
  return m;
}

Bimodule::Ptr zero_module(Algebra::Ptr alg, bool has_left, bool has_right) {
  auto m = std::make_shared<Bimodule>();
  m->alg = alg;
  m->has_left = has_left;
  m->has_right = has_right;
  allocate_actions(*m);
  return m;
}

Bimodule::Ptr onesided_module(const OneSidedModule& os) {
  auto m = std::make_shared<Bimodule>();
  m->alg = os.algebra;
  m->has_left = os.side == Side::Left;
  m->has_right = os.side == Side::Right;
  const auto& alg = *os.algebra;
  const int d = static_cast<int>(os.basis.size());
  std::map<int, int> pos;
  for (int i = 0; i < d; ++i) pos[os.basis[i]] = i;
  m->deg.resize(d);
  m->lv.assign(d, 0);
  m->rv.assign(d, 0);
  for (int i = 0; i < d; ++i) {
    m->deg[i] = alg.degree(os.basis[i]);
    if (m->has_left) m->lv[i] = alg.source(os.basis[i]);
    if (m->has_right) m->rv[i] = alg.target(os.basis[i]);
  }
  allocate_actions(*m);
  for (int p = 0; p < alg.dim(); ++p)
    for (int i = 0; i < d; ++i) {
      if (m->has_left) {
        auto pr = alg.mul(p, os.basis[i]);
        if (pr.coeff != 0) {
          auto it = pos.find(pr.idx);
          if (it != pos.end()) m->act_l[p][i] = sparse_unit(it->second, Rational(pr.coeff));
        }
      }
      if (m->has_right) {
        auto pr = alg.mul(os.basis[i], p);
        if (pr.coeff != 0) {
          auto it = pos.find(pr.idx);
          if (it != pos.end()) m->act_r[p][i] = sparse_unit(it->second, Rational(pr.coeff));
        }
      }
    }
  return m;
}

namespace {

// Shared finishing step of both tensor constructions: inserts the relators,
// carves out the section (lex-earliest independent residues, via trailing
// pivots) and assembles the quotient module with its induced actions.
Bimodule::Ptr build_quotient(Algebra::Ptr alg, bool has_left, bool has_right,
                             std::shared_ptr<TensorInfo> info,
                             const std::vector<SparseVec>& relator_list,
                             const std::vector<int>& ground_deg,
                             const std::vector<int>& ground_lv,
                             const std::vector<int>& ground_rv,
                             const std::function<SparseVec(bool, int, int)>& ground_act) {
  for (const auto& r : relator_list) info->relators.insert(r);
  info->relators.finalize();
  const int G = static_cast<int>(info->pairs.size());
  info->ground_to_basis.assign(G, -1);
  for (int g = 0; g < G; ++g)
    if (!info->relators.is_pivot(g)) {
      info->ground_to_basis[g] = static_cast<int>(info->kept.size());
      info->kept.push_back(g);
    }

  auto m = std::make_shared<Bimodule>();
  m->alg = alg;
  m->has_left = has_left;
  m->has_right = has_right;
  const int d = static_cast<int>(info->kept.size());
  m->deg.resize(d);
  m->lv.assign(d, 0);
  m->rv.assign(d, 0);
  for (int i = 0; i < d; ++i) {
    m->deg[i] = ground_deg[info->kept[i]];
    m->lv[i] = ground_lv[info->kept[i]];
    m->rv[i] = ground_rv[info->kept[i]];
  }
  allocate_actions(*m);
  for (int p = 0; p < alg->dim(); ++p)
    for (int i = 0; i < d; ++i) {
      if (has_left) m->act_l[p][i] = info->reduce(ground_act(true, p, info->kept[i]));
      if (has_right) m->act_r[p][i] = info->reduce(ground_act(false, p, info->kept[i]));
    }
  m->tensor = info;
  return m;
}

}  // namespace

Bimodule::Ptr t_module(Algebra::Ptr alg, int j) {
  if (j < 1 || j > alg->rank()) throw std::out_of_range("t_module: index out of range");
  auto P = projective(alg, j, Side::Left);
  auto Q = projective(alg, j, Side::Right);
  const int pd = static_cast<int>(P.basis.size());
  const int qd = static_cast<int>(Q.basis.size());

  auto info = std::make_shared<TensorInfo>();
  info->left_dim = pd;
  info->right_dim = qd;
  std::vector<int> gdeg, glv, grv;
  for (int a = 0; a < pd; ++a)
    for (int b = 0; b < qd; ++b) {
      info->pair_index[static_cast<int64_t>(a) * qd + b] =
          static_cast<int>(info->pairs.size());
      info->pairs.emplace_back(a, b);
      gdeg.push_back(alg->degree(P.basis[a]) + alg->degree(Q.basis[b]));
      glv.push_back(alg->source(P.basis[a]));
      grv.push_back(alg->target(Q.basis[b]));
    }

  std::vector<SparseVec> relators;
  if (j >= 2) {
    for (int a = 0; a < pd; ++a)
      for (int b = 0; b < qd; ++b) {
        auto [ca, a2] = P.ie_action[a];
        auto [cb, b2] = Q.ie_action[b];
        SparseVec r;
        sparse_axpy(r, Rational(ca), sparse_unit(info->ground_of(a2, b)));
        sparse_axpy(r, Rational(-cb), sparse_unit(info->ground_of(a, b2)));
        if (!r.empty()) relators.push_back(std::move(r));
      }
  }

  std::map<int, int> ppos, qpos;
  for (int a = 0; a < pd; ++a) ppos[P.basis[a]] = a;
  for (int b = 0; b < qd; ++b) qpos[Q.basis[b]] = b;

  auto ground_act = [alg, P, Q, ppos, qpos, info](bool left, int p, int gi) -> SparseVec {
    auto [a, b] = info->pairs[gi];
    SparseVec out;
    if (left) {
      auto pr = alg->mul(p, P.basis[a]);
      if (pr.coeff != 0) {
        auto it = ppos.find(pr.idx);
        if (it != ppos.end())
          out = sparse_unit(info->ground_of(it->second, b), Rational(pr.coeff));
      }
    } else {
      auto pr = alg->mul(Q.basis[b], p);
      if (pr.coeff != 0) {
        auto it = qpos.find(pr.idx);
        if (it != qpos.end())
          out = sparse_unit(info->ground_of(a, it->second), Rational(pr.coeff));
      }
    }
    return out;
  };

  return build_quotient(alg, true, true, info, relators, gdeg, glv, grv, ground_act);
}

Bimodule::Ptr u_module(Algebra::Ptr alg, int j) { return shift_module(t_module(alg, j), 1); }

Bimodule::Ptr shift_module(Bimodule::Ptr m, int by) {
  if (by == 0) return m;
  auto s = std::make_shared<Bimodule>(*m);
  for (auto& d : s->deg) d -= by;
  return s;
}

DirectSum direct_sum(Algebra::Ptr alg, const std::vector<Bimodule::Ptr>& parts) {
  DirectSum out;
  auto m = std::make_shared<Bimodule>();
  m->alg = alg;
  if (!parts.empty()) {
    m->has_left = parts[0]->has_left;
    m->has_right = parts[0]->has_right;
  }
  int off = 0;
  for (const auto& p : parts) {
    out.offsets.push_back(off);
    m->deg.insert(m->deg.end(), p->deg.begin(), p->deg.end());
    m->lv.insert(m->lv.end(), p->lv.begin(), p->lv.end());
    m->rv.insert(m->rv.end(), p->rv.begin(), p->rv.end());
    off += p->dim();
  }
  allocate_actions(*m);
  for (int pi = 0; pi < alg->dim(); ++pi) {
    int base = 0;
    for (const auto& p : parts) {
      for (int i = 0; i < p->dim(); ++i) {
        SparseVec l = p->act_l[pi][i], r = p->act_r[pi][i];
        for (auto& e : l) e.first += base;
        for (auto& e : r) e.first += base;
        m->act_l[pi][base + i] = std::move(l);
        m->act_r[pi][base + i] = std::move(r);
      }
      base += p->dim();
    }
  }
  out.mod = m;
  return out;
}

Bimodule::Ptr tensor_over_algebra(Bimodule::Ptr M, Bimodule::Ptr N) {
  if (M->alg != N->alg) throw std::invalid_argument("tensor: algebra mismatch");
  if (!M->has_right || !N->has_left)
    throw std::invalid_argument("tensor: operands lack the joined actions");
  auto alg = M->alg;

  auto info = std::make_shared<TensorInfo>();
  info->left = M;
  info->right = N;
  info->left_dim = M->dim();
  info->right_dim = N->dim();
  std::vector<int> gdeg, glv, grv;
  for (int a = 0; a < M->dim(); ++a)
    for (int b = 0; b < N->dim(); ++b) {
      if (M->rv[a] != N->lv[b]) continue;
      info->pair_index[static_cast<int64_t>(a) * N->dim() + b] =
          static_cast<int>(info->pairs.size());
      info->pairs.emplace_back(a, b);
      gdeg.push_back(M->deg[a] + N->deg[b]);
      glv.push_back(M->has_left ? M->lv[a] : 0);
      grv.push_back(N->has_right ? N->rv[b] : 0);
    }

  // Relators over a generating set; idempotent relators are absorbed by
  // keeping only ground pairs with matching middle vertex.  Note the relator
  // of (a, g, b) is anchored at rv(a) = source(g), lv(b) = target(g) -- an
  // unmatched pair when g is an arrow -- while its two terms are matched.
  std::vector<std::vector<int>> m_by_rv(alg->rank() + 1), n_by_lv(alg->rank() + 1);
  for (int a = 0; a < M->dim(); ++a) m_by_rv[M->rv[a]].push_back(a);
  for (int b = 0; b < N->dim(); ++b) n_by_lv[N->lv[b]].push_back(b);
  std::vector<SparseVec> relators;
  for (int g : algebra_generators(*alg)) {
    const int sg = alg->source(g), tg = alg->target(g);
    for (int a : m_by_rv[sg])
      for (int b : n_by_lv[tg]) {
        SparseVec r;
        for (const auto& [a2, c] : M->act_r[g][a]) {
          int gj = info->ground_of(a2, b);
          if (gj >= 0) sparse_axpy(r, c, sparse_unit(gj));
        }
        for (const auto& [b2, c] : N->act_l[g][b]) {
          int gj = info->ground_of(a, b2);
          if (gj >= 0) sparse_axpy(r, -c, sparse_unit(gj));
        }
        if (!r.empty()) relators.push_back(std::move(r));
      }
  }

  auto ground_act = [M, N, info](bool left, int p, int gi) -> SparseVec {
    auto [a, b] = info->pairs[gi];
    SparseVec out;
    if (left) {
      for (const auto& [a2, c] : M->act_l[p][a]) {
        int gj = info->ground_of(a2, b);
        if (gj >= 0) sparse_axpy(out, c, sparse_unit(gj));
      }
    } else {
      for (const auto& [b2, c] : N->act_r[p][b]) {
        int gj = info->ground_of(a, b2);
        if (gj >= 0) sparse_axpy(out, c, sparse_unit(gj));
      }
    }
    return out;
  };

  return build_quotient(alg, M->has_left, N->has_right, info, relators, gdeg, glv, grv,
                        ground_act);
}

void validate_bimodule(const Bimodule& m) {
  const auto& alg = *m.alg;
  const int d = m.dim();
  for (int i = 0; i < d; ++i) {
    for (int l = 1; l <= alg.rank(); ++l) {
      if (m.has_left) {
        SparseVec v = m.act_l[alg.e(l)][i];
        SparseVec want = (m.lv[i] == l) ? sparse_unit(i) : SparseVec{};
        if (v != want) throw std::logic_error("module: idempotent action not diagonal");
      }
      if (m.has_right) {
        SparseVec v = m.act_r[alg.e(l)][i];
        SparseVec want = (m.rv[i] == l) ? sparse_unit(i) : SparseVec{};
        if (v != want) throw std::logic_error("module: idempotent action not diagonal");
      }
    }
  }
  for (int p = 0; p < alg.dim(); ++p)
    for (int i = 0; i < d; ++i) {
      if (m.has_left)
        for (const auto& [j, c] : m.act_l[p][i])
          if (m.deg[j] != m.deg[i] + alg.degree(p))
            throw std::logic_error("module: left action violates grading");
      if (m.has_right)
        for (const auto& [j, c] : m.act_r[p][i])
          if (m.deg[j] != m.deg[i] + alg.degree(p))
            throw std::logic_error("module: right action violates grading");
    }
  for (int p = 0; p < alg.dim(); ++p)
    for (int q = 0; q < alg.dim(); ++q) {
      auto pq = alg.mul(p, q);
      for (int i = 0; i < d; ++i) {
        if (m.has_left) {
          SparseVec lhs = m.act(true, p, m.act_l[q][i]);
          SparseVec rhs;
          if (pq.coeff != 0) {
            rhs = m.act_l[pq.idx][i];
            sparse_scale(rhs, Rational(pq.coeff));
          }
          if (lhs != rhs) throw std::logic_error("module: left action not associative");
        }
        if (m.has_right) {
          SparseVec lhs = m.act(false, q, m.act_r[p][i]);
          SparseVec rhs;
          if (pq.coeff != 0) {
            rhs = m.act_r[pq.idx][i];
            sparse_scale(rhs, Rational(pq.coeff));
          }
          if (lhs != rhs) throw std::logic_error("module: right action not associative");
        }
        if (m.has_left && m.has_right) {
          SparseVec lhs = m.act(true, p, m.act_r[q][i]);
          SparseVec rhs = m.act(false, q, m.act_l[p][i]);
          if (lhs != rhs) throw std::logic_error("module: actions do not commute");
        }
      }
    }
}

// --- maps --------------------------------------------------------------------

SparseVec BimoduleMap::apply(const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, c] : v) sparse_axpy(out, c, col[i]);
  return out;
}

bool BimoduleMap::is_zero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

bool BimoduleMap::operator==(const BimoduleMap& o) const {
  return src == o.src && tgt == o.tgt && col == o.col;
}

BimoduleMap zero_map(Bimodule::Ptr src, Bimodule::Ptr tgt, int degree) {
  BimoduleMap f;
  f.src = std::move(src);
  f.tgt = std::move(tgt);
  f.degree = degree;
  f.col.assign(f.src->dim(), {});
  return f;
}

BimoduleMap identity_map(Bimodule::Ptr m) {
  BimoduleMap f;
  f.src = m;
  f.tgt = std::move(m);
  f.degree = 0;
  for (int i = 0; i < f.src->dim(); ++i) f.col.push_back(sparse_unit(i));
  return f;
}

BimoduleMap compose(const BimoduleMap& f, const BimoduleMap& g) {
  if (f.src != g.tgt) throw std::invalid_argument("compose: endpoint mismatch");
  BimoduleMap h;
  h.src = g.src;
  h.tgt = f.tgt;
  h.degree = f.degree + g.degree;
  h.col.reserve(g.col.size());
  for (const auto& c : g.col) h.col.push_back(f.apply(c));
  return h;
}

BimoduleMap map_add(const BimoduleMap& f, const BimoduleMap& g) {
  if (f.src != g.src || f.tgt != g.tgt)
    throw std::invalid_argument("map_add: endpoint mismatch");
  BimoduleMap h = f;
  for (size_t i = 0; i < h.col.size(); ++i) sparse_axpy(h.col[i], Rational(1), g.col[i]);
  return h;
}

BimoduleMap map_scale(const BimoduleMap& f, const Rational& c) {
  BimoduleMap h = f;
  for (auto& v : h.col) sparse_scale(v, c);
  return h;
}

BimoduleMap retarget(const BimoduleMap& f, Bimodule::Ptr src, Bimodule::Ptr tgt) {
  if (src->dim() != f.src->dim() || tgt->dim() != f.tgt->dim())
    throw std::invalid_argument("retarget: dimension mismatch");
  BimoduleMap h = f;
  h.src = std::move(src);
  h.tgt = std::move(tgt);
  h.degree = 0;
  for (int a = 0; a < h.src->dim(); ++a)
    if (!h.col[a].empty()) {
      h.degree = h.tgt->deg[h.col[a].front().first] - h.src->deg[a];
      break;
    }
  return h;
}

RationalMatrix map_to_dense(const BimoduleMap& f) {
  RationalMatrix m(f.tgt->dim(), f.src->dim());
  for (int a = 0; a < f.src->dim(); ++a)
    for (const auto& [b, c] : f.col[a]) m.at(b, a) = c;
  return m;
}

Rational map_trace(const BimoduleMap& f) {
  Rational t(0);
  for (int a = 0; a < f.src->dim(); ++a) t += sparse_get(f.col[a], a);
  return t;
}

bool is_bimodule_map(const BimoduleMap& f) {
  const auto& M = *f.src;
  const auto& N = *f.tgt;
  if (M.has_left != N.has_left || M.has_right != N.has_right) return false;
  for (int a = 0; a < M.dim(); ++a)
    for (const auto& [b, c] : f.col[a]) {
      (void)c;
      if (N.deg[b] != M.deg[a] + f.degree) return false;
    }
  std::vector<int> paths = algebra_generators(*M.alg);
  for (int l = 1; l <= M.alg->rank(); ++l) paths.push_back(M.alg->e(l));
  for (int g : paths) {
    for (int a = 0; a < M.dim(); ++a) {
      if (M.has_left && f.apply(M.act_l[g][a]) != N.act(true, g, f.col[a])) return false;
      if (M.has_right && f.apply(M.act_r[g][a]) != N.act(false, g, f.col[a])) return false;
    }
  }
  return true;
}

BimoduleMap tensor_map(const BimoduleMap& f, const BimoduleMap& g,
                       Bimodule::Ptr srcTensor, Bimodule::Ptr tgtTensor) {
  const auto& si = srcTensor->tensor;
  const auto& ti = tgtTensor->tensor;
  if (!si || !ti) throw std::invalid_argument("tensor_map: operands lack tensor info");
  if (si->left != f.src || si->right != g.src || ti->left != f.tgt || ti->right != g.tgt)
    throw std::invalid_argument("tensor_map: factor mismatch");
  BimoduleMap h;
  h.src = srcTensor;
  h.tgt = tgtTensor;
  h.degree = f.degree + g.degree;
  h.col.resize(srcTensor->dim());
  for (int i = 0; i < srcTensor->dim(); ++i) {
    auto [a, b] = si->pairs[si->kept[i]];
    h.col[i] = ti->pure(f.col[a], g.col[b]);
  }
  return h;
}

std::vector<BimoduleMap> hom_space(Bimodule::Ptr M, Bimodule::Ptr N, int d) {
  if (M->alg != N->alg) throw std::invalid_argument("hom_space: algebra mismatch");
  if (M->has_left != N->has_left || M->has_right != N->has_right)
    throw std::invalid_argument("hom_space: side mismatch");
  const int md = M->dim(), nd = N->dim();

  std::vector<std::pair<int, int>> unknowns;
  std::vector<std::vector<std::pair<int, int>>> by_src(md);  // (b, unknown idx)
  for (int a = 0; a < md; ++a)
    for (int b = 0; b < nd; ++b) {
      if (N->deg[b] != M->deg[a] + d) continue;
      if (M->has_left && M->lv[a] != N->lv[b]) continue;
      if (M->has_right && M->rv[a] != N->rv[b]) continue;
      by_src[a].emplace_back(b, static_cast<int>(unknowns.size()));
      unknowns.emplace_back(a, b);
    }
  if (unknowns.empty()) return {};

  Echelon eqs(Echelon::Pivot::Leading);
  auto add_constraints = [&](bool left) {
    for (int g : algebra_generators(*M->alg)) {
      for (int a = 0; a < md; ++a) {
        const SparseVec& ga = left ? M->act_l[g][a] : M->act_r[g][a];
        if (ga.empty() && by_src[a].empty()) continue;
        std::map<int, std::map<int, Rational>> rows;  // target coord -> unknown -> coeff
        for (const auto& [a2, c2] : ga)
          for (const auto& [b2, u] : by_src[a2]) rows[b2][u] += c2;
        for (const auto& [b, u] : by_src[a]) {
          const SparseVec& gb = left ? N->act_l[g][b] : N->act_r[g][b];
          for (const auto& [b2, c] : gb) rows[b2][u] -= c;
        }
        for (auto& [b2, row] : rows) {
          SparseVec r;
          for (const auto& [u, c] : row)
            if (c != 0) r.emplace_back(u, c);
          if (!r.empty()) eqs.insert(std::move(r));
        }
      }
    }
  };
  if (M->has_left) add_constraints(true);
  if (M->has_right) add_constraints(false);

  eqs.finalize();
  auto kernel = eqs.kernel(static_cast<int>(unknowns.size()));
  std::vector<BimoduleMap> out;
  out.reserve(kernel.size());
  for (const auto& k : kernel) {
    BimoduleMap f = zero_map(M, N, d);
    for (const auto& [u, c] : k) {
      auto [a, b] = unknowns[u];
      sparse_axpy(f.col[a], c, sparse_unit(b));
    }
    out.push_back(std::move(f));
  }
  return out;
}

SparseVec flatten_map(const BimoduleMap& f) {
  SparseVec out;
  const int nd = f.tgt->dim();
  for (int a = 0; a < f.src->dim(); ++a)
    for (const auto& [b, c] : f.col[a]) out.emplace_back(a * nd + b, c);
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::vector<BimoduleMap> end_radical(Bimodule::Ptr M,
                                     const std::vector<BimoduleMap>& end0) {
  const int r = static_cast<int>(end0.size());
  RationalMatrix gram(r, r);
  for (int s = 0; s < r; ++s)
    for (int t = s; t < r; ++t) {
      Rational tr = map_trace(compose(end0[s], end0[t]));
      gram.at(s, t) = tr;
      gram.at(t, s) = tr;
    }
  auto K = kernel_basis(gram);
  std::vector<BimoduleMap> out;
  for (const auto& k : K) {
    BimoduleMap f = zero_map(M, M, 0);
    for (int s = 0; s < r; ++s)
      if (k[s] != 0) f = map_add(f, map_scale(end0[s], k[s]));
    out.push_back(std::move(f));
  }
  return out;
}

IsoResult find_isomorphism(Bimodule::Ptr M, Bimodule::Ptr N, uint64_t seed) {
  IsoResult res;
  if (M == N) {
    res.verdict = IsoResult::Verdict::Found;
    res.iso = identity_map(M);
    res.inverse = identity_map(M);
    return res;
  }
  if (M->fine_dim() != N->fine_dim()) {
    res.verdict = IsoResult::Verdict::NoCertified;
    return res;
  }
  if (M->dim() == 0) {
    res.verdict = IsoResult::Verdict::Found;
    res.iso = zero_map(M, N);
    res.inverse = zero_map(N, M);
    return res;
  }
  auto H = hom_space(M, N, 0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-500000, 499999);
  const int trials = 20;
  for (int t = 0; t < trials && !H.empty(); ++t) {
    BimoduleMap f = zero_map(M, N, 0);
    for (const auto& h : H) f = map_add(f, map_scale(h, Rational(pick(rng))));
    auto dense = map_to_dense(f);
    auto inv = dense.inverse();
    if (!inv) continue;
    BimoduleMap g = zero_map(N, M, 0);
    for (int a = 0; a < N->dim(); ++a)
      for (int b = 0; b < M->dim(); ++b)
        if (inv->at(b, a) != 0) g.col[a].emplace_back(b, inv->at(b, a));
    res.verdict = IsoResult::Verdict::Found;
    res.iso = f;
    res.inverse = g;
    return res;
  }
  res.verdict = IsoResult::Verdict::NoProbabilistic;
  double per_trial = std::min(1.0, static_cast<double>(M->dim()) / 1e6);
  res.miss_probability = std::pow(per_trial, trials);
  return res;
}

// --- named maps ---------------------------------------------------------------

namespace {

// Residue of x (x) y in T_j / U_j from algebra basis indices.
SparseVec pure_in_u(const Bimodule& U, int j, int xidx, int yidx) {
  auto P = projective(U.alg, j, Side::Left);
  auto Q = projective(U.alg, j, Side::Right);
  int a = -1, b = -1;
  for (int i = 0; i < static_cast<int>(P.basis.size()); ++i)
    if (P.basis[i] == xidx) a = i;
  for (int i = 0; i < static_cast<int>(Q.basis.size()); ++i)
    if (Q.basis[i] == yidx) b = i;
  if (a < 0 || b < 0) throw std::logic_error("pure_in_u: element not in projective");
  return U.tensor->reduce(sparse_unit(U.tensor->ground_of(a, b)));
}

// Unique element of span(H) taking the prescribed values.
BimoduleMap pin_map(const std::vector<BimoduleMap>& H,
                    const std::vector<std::pair<SparseVec, SparseVec>>& pins) {
  if (H.empty()) throw std::logic_error("pin_map: empty hom space");
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& [arg, want] : pins) {
    std::map<int, std::vector<Rational>> coords;
    for (size_t s = 0; s < H.size(); ++s) {
      SparseVec img = H[s].apply(arg);
      for (const auto& [i, c] : img) {
        auto& row = coords[i];
        row.resize(H.size());
        row[s] = c;
      }
    }
    std::map<int, Rational> wanted;
    for (const auto& [i, c] : want) wanted[i] = c;
    std::set<int> support;
    for (const auto& [i, row] : coords) support.insert(i);
    for (const auto& [i, c] : wanted) support.insert(i);
    for (int i : support) {
      std::vector<Rational> row(H.size());
      auto it = coords.find(i);
      if (it != coords.end()) {
        row = it->second;
        row.resize(H.size());
      }
      rows.push_back(row);
      auto w = wanted.find(i);
      rhs.push_back(w == wanted.end() ? Rational(0) : w->second);
    }
  }
  RationalMatrix A(static_cast<int>(rows.size()), static_cast<int>(H.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < H.size(); ++c)
      A.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  if (rank_of(A) != static_cast<int>(H.size()))
    throw std::logic_error("pin_map: pins do not determine the map uniquely");
  auto x = solve_linear(A, rhs);
  if (!x) throw std::logic_error("pin_map: pinned values not attainable");
  BimoduleMap f = map_scale(H[0], (*x)[0]);
  for (size_t s = 1; s < H.size(); ++s) f = map_add(f, map_scale(H[s], (*x)[s]));
  return f;
}

int sign_exp(int j) { return (j % 2 == 1) ? 1 : -1; }  // (-1)^(j+1)

}  // namespace

BimoduleMap central_mult(Bimodule::Ptr reg, const std::vector<Rational>& xcoeff) {
  const auto& alg = *reg->alg;
  BimoduleMap f = zero_map(reg, reg, 2);
  for (int k = 1; k <= alg.rank(); ++k) {
    const Rational& c = xcoeff[k - 1];
    if (c == 0) continue;
    for (int a = 0; a < reg->dim(); ++a)
      sparse_axpy(f.col[a], c, reg->act_l[alg.x(k)][a]);
  }
  return f;
}

BimoduleMap named_beta(ModuleContext& ctx, int j) {
  auto U = ctx.u(j);
  auto reg = ctx.regular();
  const auto& alg = *ctx.algebra();
  auto P = projective(ctx.algebra(), j, Side::Left);
  auto Q = projective(ctx.algebra(), j, Side::Right);
  BimoduleMap f = zero_map(U, reg, 1);
  for (int i = 0; i < U->dim(); ++i) {
    auto [a, b] = U->tensor->pairs[U->tensor->kept[i]];
    auto pr = alg.mul(P.basis[a], Q.basis[b]);
    if (pr.coeff != 0) f.col[i] = sparse_unit(pr.idx, Rational(pr.coeff));
  }
  return f;
}

BimoduleMap named_gamma(ModuleContext& ctx, int j) {
  auto U = ctx.u(j);
  auto reg = ctx.regular();
  const auto& alg = *ctx.algebra();
  const int n = alg.rank();
  // gamma(1) = X_j (x) e_j + e_j (x) X_j + sum over neighbours k of
  // (k|j) (x) (j|k); over R (j = 1) the decorated pair contributes its own
  // term -ia(2,1) (x) ia(1,2).
  SparseVec gammaOne;
  sparse_axpy(gammaOne, Rational(1), pure_in_u(*U, j, alg.x(j), alg.e(j)));
  sparse_axpy(gammaOne, Rational(1), pure_in_u(*U, j, alg.e(j), alg.x(j)));
  if (j > 1)
    sparse_axpy(gammaOne, Rational(1),
                pure_in_u(*U, j, alg.arrow(j - 1, j), alg.arrow(j, j - 1)));
  if (j < n)
    sparse_axpy(gammaOne, Rational(1),
                pure_in_u(*U, j, alg.arrow(j + 1, j), alg.arrow(j, j + 1)));
  if (j == 1)
    sparse_axpy(gammaOne, Rational(-1),
                pure_in_u(*U, j, alg.iarrow(2, 1), alg.iarrow(1, 2)));

  BimoduleMap f = zero_map(reg, U, 1);
  for (int a = 0; a < reg->dim(); ++a) f.col[a] = U->act(true, a, gammaOne);
  return f;
}

BimoduleMap named_alpha_split(ModuleContext& ctx, int j) {
  auto U = ctx.u(j);
  auto UU = ctx.word_module({j, j});
  const auto& alg = *ctx.algebra();
  SparseVec ee = pure_in_u(*U, j, alg.e(j), alg.e(j));
  SparseVec eeee = UU->tensor->pure(ee, ee);
  auto H = hom_space(U, UU, -1);
  auto f = pin_map(H, {{ee, eeee}});
  return map_scale(f, Rational(sign_exp(j)));
}

BimoduleMap named_delta_merge(ModuleContext& ctx, int j) {
  auto U = ctx.u(j);
  auto UU = ctx.word_module({j, j});
  const auto& alg = *ctx.algebra();
  SparseVec ee = pure_in_u(*U, j, alg.e(j), alg.e(j));
  SparseVec eX = pure_in_u(*U, j, alg.e(j), alg.x(j));
  SparseVec eXee = UU->tensor->pure(eX, ee);
  SparseVec eeee = UU->tensor->pure(ee, ee);
  auto H = hom_space(UU, U, -1);
  return pin_map(H, {{eXee, ee}, {eeee, {}}});
}

BimoduleMap named_epsilon(ModuleContext& ctx, int j) {
  const auto& alg = *ctx.algebra();
  const int n = alg.rank();
  std::vector<Rational> c(n, Rational(0));
  const int s = sign_exp(j);
  c[j - 1] = Rational(2 * s);
  if (j == 1) {
    c[1] = Rational(2 * s);
  } else {
    c[j - 2] = Rational(s);
    if (j < n) c[j] = Rational(s);
  }
  return central_mult(ctx.regular(), c);
}

// --- context -------------------------------------------------------------------

ModuleContext::ModuleContext(Algebra::Ptr alg) : alg_(std::move(alg)) {}

Bimodule::Ptr ModuleContext::regular() {
  if (!regular_) regular_ = regular_bimodule(alg_);
  return regular_;
}

Bimodule::Ptr ModuleContext::u(int j) { return word_module({j}); }

Bimodule::Ptr ModuleContext::t(int j) {
  auto it = ts_.find(j);
  if (it != ts_.end()) return it->second;
  auto m = t_module(alg_, j);
  ts_[j] = m;
  return m;
}

Bimodule::Ptr ModuleContext::word_module(const std::vector<int>& word) {
  auto it = words_.find(word);
  if (it != words_.end()) return it->second;
  Bimodule::Ptr m;
  if (word.empty()) {
    m = regular();
  } else if (word.size() == 1) {
    m = u_module(alg_, word[0]);
  } else {
    std::vector<int> prefix(word.begin(), word.end() - 1);
    m = pair_module(prefix, {word.back()});
  }
  words_[word] = m;
  return m;
}

Bimodule::Ptr ModuleContext::pair_module(const std::vector<int>& w1,
                                         const std::vector<int>& w2) {
  auto key = std::make_pair(w1, w2);
  auto it = pairs_.find(key);
  if (it != pairs_.end()) return it->second;
  auto m = tensor_over_algebra(word_module(w1), word_module(w2));
  pairs_[key] = m;
  return m;
}

const BimoduleMap& ModuleContext::concat_iso(const std::vector<int>& w1,
                                             const std::vector<int>& w2) {
  auto key = std::make_pair(w1, w2);
  auto it = concat_.find(key);
  if (it != concat_.end()) return it->second;

  auto P = pair_module(w1, w2);
  std::vector<int> full = w1;
  full.insert(full.end(), w2.begin(), w2.end());
  auto T = word_module(full);

  BimoduleMap f;
  if (w1.empty()) {
    // b (x) m |-> b.m
    f = zero_map(P, T, 0);
    auto N = word_module(w2);
    for (int i = 0; i < P->dim(); ++i) {
      auto [a, b] = P->tensor->pairs[P->tensor->kept[i]];
      f.col[i] = N->act(true, a, sparse_unit(b));
    }
  } else if (w2.empty()) {
    f = zero_map(P, T, 0);
    auto M = word_module(w1);
    for (int i = 0; i < P->dim(); ++i) {
      auto [a, b] = P->tensor->pairs[P->tensor->kept[i]];
      f.col[i] = M->act(false, b, sparse_unit(a));
    }
  } else if (w2.size() == 1) {
    // By construction M(w1 . j) *is* the pair module M(w1) (x) U_j.
    f = identity_map(P);
    f.tgt = T;
  } else {
    std::vector<int> w2head(w2.begin(), w2.end() - 1);
    std::vector<int> w2tail{w2.back()};
    std::vector<int> w1w2head = w1;
    w1w2head.insert(w1w2head.end(), w2head.begin(), w2head.end());

    auto AB = pair_module(w1, w2head);
    auto outerT = pair_module(w1w2head, w2tail);  // same object as T
    const BimoduleMap phiInner = concat_iso(w1, w2head);

    f = zero_map(P, T, 0);
    auto Q = word_module(w2);
    for (int i = 0; i < P->dim(); ++i) {
      auto [a, r] = P->tensor->pairs[P->tensor->kept[i]];
      auto [b, cidx] = Q->tensor->pairs[Q->tensor->kept[r]];
      SparseVec vab = AB->tensor->pure(sparse_unit(a), sparse_unit(b));
      SparseVec w = phiInner.apply(vab);
      f.col[i] = outerT->tensor->pure(w, sparse_unit(cidx));
    }
  }
  auto [ins, ok] = concat_.emplace(key, std::move(f));
  (void)ok;
  return ins->second;
}

BimoduleMap ModuleContext::concat_iso_inverse(const std::vector<int>& w1,
                                              const std::vector<int>& w2) {
  auto key = std::make_pair(w1, w2);
  auto it = concat_inv_.find(key);
  if (it != concat_inv_.end()) return it->second;
  auto inv = inverse_of(concat_iso(w1, w2));
  concat_inv_.emplace(key, inv);
  return inv;
}

BimoduleMap ModuleContext::inverse_of(const BimoduleMap& f) {
  if (f.src->dim() != f.tgt->dim())
    throw std::invalid_argument("inverse_of: not square");
  auto dense = map_to_dense(f);
  auto inv = dense.inverse();
  if (!inv) throw std::invalid_argument("inverse_of: map not invertible");
  BimoduleMap g = zero_map(f.tgt, f.src, -f.degree);
  for (int a = 0; a < f.tgt->dim(); ++a)
    for (int b = 0; b < f.src->dim(); ++b)
      if (inv->at(b, a) != 0) g.col[a].emplace_back(b, inv->at(b, a));
  return g;
}

BimoduleMap ModuleContext::tensor_on_words(const BimoduleMap& f, const std::vector<int>& fdom,
                                           const std::vector<int>& fcod, const BimoduleMap& g,
                                           const std::vector<int>& gdom,
                                           const std::vector<int>& gcod) {
  auto Pdom = pair_module(fdom, gdom);
  auto Pcod = pair_module(fcod, gcod);
  auto big = tensor_map(f, g, Pdom, Pcod);
  return compose(concat_iso(fcod, gcod), compose(big, concat_iso_inverse(fdom, gdom)));
}

// --- JSON ----------------------------------------------------------------------

std::string module_to_json(const Bimodule& m) {
  nlohmann::json j;
  j["degrees"] = m.deg;
  j["left_vertex"] = m.lv;
  j["right_vertex"] = m.rv;
  auto actions = [&](const std::vector<std::vector<SparseVec>>& table) {
    nlohmann::json out = nlohmann::json::object();
    for (int p = 0; p < m.alg->dim(); ++p) {
      nlohmann::json triplets = nlohmann::json::array();
      for (int a = 0; a < m.dim(); ++a)
        for (const auto& [b, c] : table[p][a])
          triplets.push_back({a, b, rational_str(c)});
      if (!triplets.empty()) out[path_name(m.alg->path(p))] = triplets;
    }
    return out;
  };
  if (m.has_left) j["left_action"] = actions(m.act_l);
  if (m.has_right) j["right_action"] = actions(m.act_r);
  return j.dump();
}

std::string map_to_json(const BimoduleMap& f) {
  nlohmann::json j;
  j["degree"] = f.degree;
  j["src_dim"] = f.src->dim();
  j["tgt_dim"] = f.tgt->dim();
  nlohmann::json entries = nlohmann::json::array();
  for (int a = 0; a < f.src->dim(); ++a)
    for (const auto& [b, c] : f.col[a]) entries.push_back({a, b, rational_str(c)});
  j["entries"] = entries;
  return j.dump();
}

}  // namespace bzz
