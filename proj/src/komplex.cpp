#include "bzz/komplex.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bzz {

int Complex::total_dim() const {
  int d = 0;
  for (const auto& [i, t] : terms) d += t->dim();
  return d;
}

std::map<int, std::map<int, int>> Complex::graded_dims() const {
  std::map<int, std::map<int, int>> out;
  for (const auto& [i, t] : terms) out[i] = t->graded_dim();
  return out;
}

void validate_complex(const Complex& c) {
  for (const auto& [i, d] : c.diffs) {
    if (!c.has_term(i) || !c.has_term(i + 1))
      throw std::logic_error("complex: differential without terms");
    if (d.src != c.terms.at(i) || d.tgt != c.terms.at(i + 1))
      throw std::logic_error("complex: differential endpoints disagree");
    for (int a = 0; a < d.src->dim(); ++a)
      for (const auto& [b, coeff] : d.col[a]) {
        (void)coeff;
        if (d.tgt->deg[b] != d.src->deg[a])
          throw std::logic_error("complex: differential not of internal degree 0");
      }
    auto next = c.diffs.find(i + 1);
    if (next != c.diffs.end())
      if (!compose(next->second, d).is_zero())
        throw std::logic_error("complex: d^2 != 0");
  }
}

Complex unit_complex(ModuleContext& ctx) {
  Complex c;
  c.alg = ctx.algebra();
  c.terms[0] = ctx.regular();
  return c;
}

Complex complex_from_module(Algebra::Ptr alg, Bimodule::Ptr m, int at) {
  Complex c;
  c.alg = alg;
  if (m->dim() > 0) c.terms[at] = std::move(m);
  return c;
}

Complex rouquier_complex(ModuleContext& ctx, int j, bool positive) {
  Complex c;
  c.alg = ctx.algebra();
  if (positive) {
    c.terms[-1] = ctx.t(j);
    c.terms[0] = ctx.regular();
    c.diffs.emplace(-1, retarget(named_beta(ctx, j), ctx.t(j), ctx.regular()));
  } else {
    auto t2 = shift_module(ctx.t(j), 2);
    c.terms[0] = ctx.regular();
    c.terms[1] = t2;
    c.diffs.emplace(0, retarget(named_gamma(ctx, j), ctx.regular(), t2));
  }
  return c;
}

Complex shift_cohomological(const Complex& c, int k) {
  Complex out;
  out.alg = c.alg;
  for (const auto& [i, t] : c.terms) out.terms[i - k] = t;
  const Rational sign((k % 2 == 0) ? 1 : -1);
  for (const auto& [i, d] : c.diffs) out.diffs.emplace(i - k, map_scale(d, sign));
  return out;
}

Complex shift_internal(const Complex& c, int m) {
  Complex out;
  out.alg = c.alg;
  for (const auto& [i, t] : c.terms) out.terms[i] = shift_module(t, m);
  for (const auto& [i, d] : c.diffs)
    out.diffs.emplace(i, retarget(d, out.terms.at(i), out.terms.at(i + 1)));
  return out;
}

Complex complex_tensor(const Complex& C, const Complex& D) {
  Complex out;
  out.alg = C.alg;
  if (C.terms.empty() || D.terms.empty()) return out;

  std::map<std::pair<int, int>, Bimodule::Ptr> block;
  for (const auto& [i, ci] : C.terms)
    for (const auto& [j, dj] : D.terms) block[{i, j}] = tensor_over_algebra(ci, dj);

  std::map<int, std::vector<std::pair<int, int>>> layout;
  for (const auto& [ij, m] : block) layout[ij.first + ij.second].push_back(ij);
  std::map<std::pair<int, int>, int> offset;
  for (auto& [k, parts] : layout) {
    std::sort(parts.begin(), parts.end());
    std::vector<Bimodule::Ptr> mods;
    for (const auto& ij : parts) mods.push_back(block[ij]);
    auto ds = direct_sum(C.alg, mods);
    for (size_t s = 0; s < parts.size(); ++s) offset[parts[s]] = ds.offsets[s];
    if (ds.mod->dim() > 0) out.terms[k] = ds.mod;
  }

  // d_C (x) id + (-1)^i id (x) d_D (Koszul sign on the second factor).
  for (const auto& [k, parts] : layout) {
    if (!out.has_term(k) || !out.has_term(k + 1)) continue;
    BimoduleMap d = zero_map(out.terms.at(k), out.terms.at(k + 1), 0);
    for (const auto& ij : parts) {
      auto [i, j] = ij;
      auto src = block[ij];
      if (src->dim() == 0) continue;
      const int src_off = offset[ij];
      auto add_block = [&](const BimoduleMap& f, std::pair<int, int> tgt_ij) {
        const int tgt_off = offset.at(tgt_ij);
        for (int a = 0; a < src->dim(); ++a)
          for (const auto& [b, c] : f.col[a])
            sparse_axpy(d.col[src_off + a], c, sparse_unit(tgt_off + b));
      };
      auto dc = C.diffs.find(i);
      if (dc != C.diffs.end()) {
        auto tgt = block.at({i + 1, j});
        if (tgt->dim() > 0)
          add_block(tensor_map(dc->second, identity_map(D.terms.at(j)), src, tgt),
                    {i + 1, j});
      }
      auto dd = D.diffs.find(j);
      if (dd != D.diffs.end()) {
        auto tgt = block.at({i, j + 1});
        if (tgt->dim() > 0) {
          auto f = tensor_map(identity_map(C.terms.at(i)), dd->second, src, tgt);
          if (i % 2 != 0) f = map_scale(f, Rational(-1));
          add_block(f, {i, j + 1});
        }
      }
    }
    out.diffs.emplace(k, std::move(d));
  }
  return out;
}

Complex apply_to_module(ModuleContext& ctx, const Complex& C, int k) {
  auto pk = onesided_module(projective(ctx.algebra(), k, Side::Left));
  return complex_tensor(C, complex_from_module(ctx.algebra(), pk));
}

// --- chain maps ---------------------------------------------------------------

ChainMap identity_chain(const Complex& C) {
  ChainMap f;
  for (const auto& [i, t] : C.terms) f.comp.emplace(i, identity_map(t));
  return f;
}

ChainMap compose_chain(const ChainMap& f, const ChainMap& g) {
  ChainMap h;
  for (const auto& [i, gi] : g.comp) {
    auto fi = f.comp.find(i);
    if (fi == f.comp.end()) continue;
    h.comp.emplace(i, compose(fi->second, gi));
  }
  return h;
}

bool is_chain_map(const Complex& src, const Complex& tgt, const ChainMap& f) {
  for (const auto& [i, d] : src.diffs) {
    std::optional<BimoduleMap> lhs, rhs;
    auto f1 = f.comp.find(i + 1);
    if (f1 != f.comp.end()) lhs = compose(f1->second, d);
    auto f0 = f.comp.find(i);
    auto dt = tgt.diffs.find(i);
    if (f0 != f.comp.end() && dt != tgt.diffs.end())
      rhs = compose(dt->second, f0->second);
    if (lhs && rhs) {
      if (!(lhs->col == rhs->col)) return false;
    } else if (lhs && !lhs->is_zero()) {
      return false;
    } else if (rhs && !rhs->is_zero()) {
      return false;
    }
  }
  return true;
}

// --- minimization --------------------------------------------------------------

namespace {

// Coordinates with respect to an independent family of vectors, via an
// echelon over the ambient coordinates augmented with tag columns.
class CoordSolver {
 public:
  explicit CoordSolver(int ambient) : ambient_(ambient) {}
  void add(const SparseVec& v) {
    SparseVec r = v;
    r.emplace_back(ambient_ + count_, Rational(1));
    if (!ech_.insert(std::move(r))) throw std::logic_error("coords: dependent vector");
    ++count_;
  }
  int size() const { return count_; }
  std::optional<SparseVec> coords(const SparseVec& w) const {
    SparseVec r = ech_.reduce(w);
    SparseVec c;
    for (const auto& [i, x] : r) {
      if (i < ambient_) return std::nullopt;
      c.emplace_back(i - ambient_, -x);
    }
    return c;
  }

 private:
  int ambient_;
  int count_ = 0;
  Echelon ech_{Echelon::Pivot::Leading};
};

int map_rank(const BimoduleMap& f) {
  Echelon e(Echelon::Pivot::Leading);
  for (const auto& c : f.col) e.insert(c);
  return e.rank();
}

std::vector<SparseVec> map_kernel_vectors(const BimoduleMap& f) {
  std::map<int, SparseVec> rows;  // target coordinate -> equation
  for (int a = 0; a < f.src->dim(); ++a)
    for (const auto& [b, c] : f.col[a]) rows[b].emplace_back(a, c);
  Echelon e(Echelon::Pivot::Leading);
  for (auto& [b, r] : rows) {
    std::sort(r.begin(), r.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    e.insert(r);
  }
  e.finalize();
  return e.kernel(f.src->dim());
}

std::vector<SparseVec> map_image_vectors(const BimoduleMap& f) {
  Echelon e(Echelon::Pivot::Leading);
  std::vector<SparseVec> img;
  for (const auto& c : f.col)
    if (e.insert(c)) img.push_back(c);
  return img;
}

// Submodule spanned by homogeneous vectors, with actions in the sub-basis.
Bimodule::Ptr submodule(Bimodule::Ptr parent, const std::vector<SparseVec>& vectors) {
  auto m = std::make_shared<Bimodule>();
  m->alg = parent->alg;
  m->has_left = parent->has_left;
  m->has_right = parent->has_right;
  const int d = static_cast<int>(vectors.size());
  CoordSolver coords(parent->dim());
  for (const auto& v : vectors) coords.add(v);
  m->deg.resize(d);
  m->lv.assign(d, 0);
  m->rv.assign(d, 0);
  for (int s = 0; s < d; ++s) {
    if (vectors[s].empty()) throw std::logic_error("submodule: zero basis vector");
    const int i0 = vectors[s].front().first;
    m->deg[s] = parent->deg[i0];
    m->lv[s] = parent->lv[i0];
    m->rv[s] = parent->rv[i0];
    for (const auto& [i, c] : vectors[s]) {
      (void)c;
      if (parent->deg[i] != m->deg[s] || parent->lv[i] != m->lv[s] ||
          parent->rv[i] != m->rv[s])
        throw std::logic_error("submodule: basis vector not homogeneous");
    }
  }
  m->act_l.assign(parent->alg->dim(), std::vector<SparseVec>(d));
  m->act_r.assign(parent->alg->dim(), std::vector<SparseVec>(d));
  for (int p = 0; p < parent->alg->dim(); ++p)
    for (int s = 0; s < d; ++s) {
      if (m->has_left) {
        auto c = coords.coords(parent->act(true, p, vectors[s]));
        if (!c) throw std::logic_error("submodule: not closed under left action");
        m->act_l[p][s] = *c;
      }
      if (m->has_right) {
        auto c = coords.coords(parent->act(false, p, vectors[s]));
        if (!c) throw std::logic_error("submodule: not closed under right action");
        m->act_r[p][s] = *c;
      }
    }
  return m;
}

struct CancelStep {
  Complex next;
  ChainMap f, g;  // one Gaussian elimination; f.g = id on next
};

// One Gaussian elimination at position i, or nullopt when d^i is radical.
std::optional<CancelStep> try_cancel_at(const Complex& C, int i, std::mt19937_64& rng) {
  auto dit = C.diffs.find(i);
  if (dit == C.diffs.end()) return std::nullopt;
  const BimoduleMap& d = dit->second;
  Bimodule::Ptr M = C.terms.at(i), N = C.terms.at(i + 1);

  auto H = hom_space(N, M, 0);
  if (H.empty()) return std::nullopt;
  auto end0 = hom_space(M, M, 0);
  auto rad = end_radical(M, end0);
  Echelon radspan(Echelon::Pivot::Leading);
  for (const auto& r : rad) radspan.insert(flatten_map(r));

  // Hom(N, M) . d is a left ideal of End(M); d is radical iff it lies in
  // J(End M), and otherwise it contains a non-nilpotent element.
  std::optional<BimoduleMap> G, u, w;
  auto consider = [&](const BimoduleMap& cand) -> bool {
    BimoduleMap ucand = compose(cand, d);
    if (radspan.contains(flatten_map(ucand))) return false;
    BimoduleMap wk = ucand;
    int r = map_rank(wk);
    while (r > 0) {
      BimoduleMap wk1 = compose(ucand, wk);
      int r1 = map_rank(wk1);
      if (r1 == r) break;
      wk = std::move(wk1);
      r = r1;
    }
    if (r == 0) return false;
    G = cand;
    u = std::move(ucand);
    w = std::move(wk);
    return true;
  };
  bool all_radical = true;
  for (const auto& g : H) {
    if (all_radical && !radspan.contains(flatten_map(compose(g, d)))) all_radical = false;
    if (consider(g)) break;
  }
  if (!u && all_radical) return std::nullopt;
  if (!u) {
    std::uniform_int_distribution<long> pick(-64, 64);
    for (int trial = 0; trial < 64 && !u; ++trial) {
      BimoduleMap cand = zero_map(N, M, 0);
      for (const auto& g : H) cand = map_add(cand, map_scale(g, Rational(pick(rng))));
      consider(cand);
    }
    if (!u) throw std::logic_error("minimize: failed to realize a non-nilpotent unit");
  }

  // Fitting splitting M = ker(w) + im(w) along the stabilized power w.
  std::vector<SparseVec> Ivec = map_image_vectors(*w);
  std::vector<SparseVec> Kvec = map_kernel_vectors(*w);
  const int kdim = static_cast<int>(Kvec.size());
  const int idim = static_cast<int>(Ivec.size());
  if (kdim + idim != M->dim()) throw std::logic_error("minimize: Fitting split failed");

  CoordSolver msplit(M->dim());
  for (const auto& v : Kvec) msplit.add(v);
  for (const auto& v : Ivec) msplit.add(v);
  auto split_m = [&](const SparseVec& v) -> std::pair<SparseVec, SparseVec> {
    auto c = msplit.coords(v);
    if (!c) throw std::logic_error("minimize: vector outside K+I");
    SparseVec kc, ic;
    for (const auto& [s, x] : *c) {
      if (s < kdim)
        kc.emplace_back(s, x);
      else
        ic.emplace_back(s - kdim, x);
    }
    return {kc, ic};
  };

  RationalMatrix uI(idim, idim);
  for (int s = 0; s < idim; ++s) {
    auto [kc, ic] = split_m(u->apply(Ivec[s]));
    if (!kc.empty()) throw std::logic_error("minimize: u does not preserve I");
    for (const auto& [t2, c] : ic) uI.at(t2, s) = c;
  }
  auto uIinv = uI.inverse();
  if (!uIinv) throw std::logic_error("minimize: u|I not invertible");

  // t = (u|I)^-1 . p_I . G : N -> I; then t . (d|I) = id, so B := d(I) is a
  // summand of N complemented by ker t, and the I -> ker t block of d is 0.
  std::vector<SparseVec> tcols(N->dim());
  for (int nidx = 0; nidx < N->dim(); ++nidx) {
    auto [kc, ic] = split_m(G->col[nidx]);
    (void)kc;
    std::vector<Rational> dense(idim, Rational(0));
    for (const auto& [s, c] : ic) dense[s] = c;
    std::vector<Rational> mapped(idim, Rational(0));
    for (int r = 0; r < idim; ++r)
      for (int s2 = 0; s2 < idim; ++s2)
        if (uIinv->at(r, s2) != 0 && dense[s2] != 0)
          mapped[r] += uIinv->at(r, s2) * dense[s2];
    tcols[nidx] = sparse_from_dense(mapped);
  }
  std::map<int, SparseVec> trows;
  for (int nidx = 0; nidx < N->dim(); ++nidx)
    for (const auto& [r, c] : tcols[nidx]) trows[r].emplace_back(nidx, c);
  Echelon te(Echelon::Pivot::Leading);
  for (auto& [r, row] : trows) {
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    te.insert(row);
  }
  if (te.rank() != idim) throw std::logic_error("minimize: section not surjective");
  te.finalize();
  std::vector<SparseVec> KTvec = te.kernel(N->dim());
  const int ktdim = static_cast<int>(KTvec.size());

  std::vector<SparseVec> Bvec;
  Bvec.reserve(idim);
  for (const auto& v : Ivec) Bvec.push_back(d.apply(v));
  CoordSolver nsplit(N->dim());
  for (const auto& v : Bvec) nsplit.add(v);
  for (const auto& v : KTvec) nsplit.add(v);
  auto split_n = [&](const SparseVec& v) -> std::pair<SparseVec, SparseVec> {
    auto c = nsplit.coords(v);
    if (!c) throw std::logic_error("minimize: vector outside B+ker t");
    SparseVec bc, kc;
    for (const auto& [s, x] : *c) {
      if (s < idim)
        bc.emplace_back(s, x);
      else
        kc.emplace_back(s - idim, x);
    }
    return {bc, kc};
  };

  Bimodule::Ptr K =
      kdim > 0 ? submodule(M, Kvec) : zero_module(C.alg, M->has_left, M->has_right);
  Bimodule::Ptr KT =
      ktdim > 0 ? submodule(N, KTvec) : zero_module(C.alg, N->has_left, N->has_right);

  CancelStep step;
  step.next.alg = C.alg;
  for (const auto& [k2, t2] : C.terms)
    if (k2 != i && k2 != i + 1) step.next.terms[k2] = t2;
  for (const auto& [k2, d2] : C.diffs)
    if (k2 < i - 1 || k2 > i + 1) step.next.diffs.emplace(k2, d2);
  if (K->dim() > 0) step.next.terms[i] = K;
  if (KT->dim() > 0) step.next.terms[i + 1] = KT;

  std::vector<SparseVec> dK_B(kdim), dK_KT(kdim);
  for (int s = 0; s < kdim; ++s) {
    auto [bc, kc] = split_n(d.apply(Kvec[s]));
    dK_B[s] = bc;
    dK_KT[s] = kc;
  }
  // The I -> ker t block of d vanishes, so the corrected middle differential
  // is just the ker t component of d on K.
  if (K->dim() > 0 && KT->dim() > 0) {
    BimoduleMap mid = zero_map(K, KT, 0);
    for (int s = 0; s < kdim; ++s) mid.col[s] = dK_KT[s];
    step.next.diffs.emplace(i, std::move(mid));
  }
  auto din = C.diffs.find(i - 1);
  if (din != C.diffs.end() && K->dim() > 0) {
    BimoduleMap nd = zero_map(C.terms.at(i - 1), K, 0);
    for (int a = 0; a < nd.src->dim(); ++a) nd.col[a] = split_m(din->second.col[a]).first;
    step.next.diffs.emplace(i - 1, std::move(nd));
  }
  auto dout = C.diffs.find(i + 1);
  if (dout != C.diffs.end() && KT->dim() > 0) {
    BimoduleMap nd = zero_map(KT, C.terms.at(i + 2), 0);
    for (int s = 0; s < ktdim; ++s) nd.col[s] = dout->second.apply(KTvec[s]);
    step.next.diffs.emplace(i + 1, std::move(nd));
  }

  for (const auto& [k2, t2] : step.next.terms) {
    if (k2 == i || k2 == i + 1) continue;
    step.f.comp.emplace(k2, identity_map(t2));
    step.g.comp.emplace(k2, identity_map(t2));
  }
  if (K->dim() > 0) {
    BimoduleMap fi = zero_map(M, K, 0);
    for (int a = 0; a < M->dim(); ++a) fi.col[a] = split_m(sparse_unit(a)).first;
    step.f.comp.emplace(i, std::move(fi));
    BimoduleMap gi = zero_map(K, M, 0);
    for (int s = 0; s < kdim; ++s) {
      SparseVec v = Kvec[s];
      for (const auto& [bidx, c] : dK_B[s]) sparse_axpy(v, -c, Ivec[bidx]);
      gi.col[s] = std::move(v);
    }
    step.g.comp.emplace(i, std::move(gi));
  }
  if (KT->dim() > 0) {
    BimoduleMap fi = zero_map(N, KT, 0);
    for (int b = 0; b < N->dim(); ++b) fi.col[b] = split_n(sparse_unit(b)).second;
    step.f.comp.emplace(i + 1, std::move(fi));
    BimoduleMap gi = zero_map(KT, N, 0);
    for (int s = 0; s < ktdim; ++s) gi.col[s] = KTvec[s];
    step.g.comp.emplace(i + 1, std::move(gi));
  }
  return step;
}

}  // namespace

MinimizeResult minimize(const Complex& C, uint64_t seed, bool witnesses) {
  std::mt19937_64 rng(seed);
  MinimizeResult res;
  res.min = C;
  res.to_min = identity_chain(C);
  res.from_min = identity_chain(C);
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<int> degs;
    for (const auto& [i, dmap] : res.min.diffs) degs.push_back(i);
    for (int i : degs) {
      auto step = try_cancel_at(res.min, i, rng);
      if (!step) continue;
      if (witnesses) {
        res.to_min = compose_chain(step->f, res.to_min);
        res.from_min = compose_chain(res.from_min, step->g);
      }
      res.min = std::move(step->next);
      progress = true;
      break;
    }
  }
  if (!witnesses) {
    res.to_min.comp.clear();
    res.from_min.comp.clear();
  }
  return res;
}

std::optional<ChainMap> homotopy_between(const Complex& C, const ChainMap& u,
                                         const ChainMap& v) {
  std::map<int, std::vector<BimoduleMap>> hbasis;
  std::map<int, int> hoffset;
  int nunk = 0;
  for (const auto& [i, t] : C.terms) {
    if (!C.has_term(i - 1)) continue;
    auto H = hom_space(t, C.terms.at(i - 1), 0);
    if (H.empty()) continue;
    hoffset[i] = nunk;
    nunk += static_cast<int>(H.size());
    hbasis[i] = std::move(H);
  }

  const int rhs_col = nunk;
  std::map<int, int> flat_off;
  int flat_total = 0;
  for (const auto& [i, t] : C.terms) {
    flat_off[i] = flat_total;
    flat_total += t->dim() * t->dim();
  }

  std::map<int, std::map<int, Rational>> rows;  // flat coord -> unknown -> coeff
  auto add_flat = [&](int i, const BimoduleMap& f, int unk, const Rational& scale) {
    const int base = flat_off.at(i);
    for (const auto& [fc, c] : flatten_map(f)) rows[base + fc][unk] += scale * c;
  };
  for (const auto& [i, t] : C.terms) {
    auto din = C.diffs.find(i - 1);
    if (din != C.diffs.end()) {
      auto hb = hbasis.find(i);
      if (hb != hbasis.end())
        for (size_t s = 0; s < hb->second.size(); ++s)
          add_flat(i, compose(din->second, hb->second[s]),
                   hoffset[i] + static_cast<int>(s), Rational(1));
    }
    auto dout = C.diffs.find(i);
    if (dout != C.diffs.end()) {
      auto hb = hbasis.find(i + 1);
      if (hb != hbasis.end())
        for (size_t s = 0; s < hb->second.size(); ++s)
          add_flat(i, compose(hb->second[s], dout->second),
                   hoffset[i + 1] + static_cast<int>(s), Rational(1));
    }
    BimoduleMap diff = zero_map(t, t, 0);
    auto ui = u.comp.find(i);
    if (ui != u.comp.end()) diff = map_add(diff, ui->second);
    auto vi = v.comp.find(i);
    if (vi != v.comp.end()) diff = map_add(diff, map_scale(vi->second, Rational(-1)));
    add_flat(i, diff, rhs_col, Rational(-1));
  }
  Echelon sys(Echelon::Pivot::Leading);
  for (const auto& [coord, row] : rows) {
    SparseVec r;
    for (const auto& [uidx, c] : row)
      if (c != 0) r.emplace_back(uidx, c);
    if (!r.empty()) sys.insert(std::move(r));
  }
  sys.finalize();
  if (sys.is_pivot(rhs_col)) return std::nullopt;
  auto K = sys.kernel(nunk + 1);
  for (const auto& k : K) {
    if (sparse_get(k, rhs_col) != 1) continue;
    ChainMap h;
    for (const auto& [i, H] : hbasis) {
      BimoduleMap hi = zero_map(C.terms.at(i), C.terms.at(i - 1), 0);
      bool nonzero = false;
      for (size_t s = 0; s < H.size(); ++s) {
        Rational c = sparse_get(k, hoffset[i] + static_cast<int>(s));
        if (c != 0) {
          hi = map_add(hi, map_scale(H[s], c));
          nonzero = true;
        }
      }
      if (nonzero) h.comp.emplace(i, std::move(hi));
    }
    return h;
  }
  return std::nullopt;
}

ChainIso find_chain_isomorphism(const Complex& C, const Complex& D, uint64_t seed) {
  ChainIso out;
  if (C.terms.empty() && D.terms.empty()) {
    out.found = true;
    return out;
  }
  for (const auto& [i, t] : C.terms)
    if (!D.has_term(i) || D.terms.at(i)->fine_dim() != t->fine_dim()) return out;
  for (const auto& [i, t] : D.terms)
    if (!C.has_term(i)) return out;

  std::map<int, std::vector<BimoduleMap>> hbasis;
  std::map<int, int> hoffset;
  int nunk = 0;
  for (const auto& [i, t] : C.terms) {
    auto H = hom_space(t, D.terms.at(i), 0);
    if (H.empty()) return out;
    hoffset[i] = nunk;
    nunk += static_cast<int>(H.size());
    hbasis[i] = std::move(H);
  }

  std::map<std::pair<int, int>, std::map<int, Rational>> rows;
  for (const auto& [i, dC] : C.diffs) {
    auto dD = D.diffs.find(i);
    if (hbasis.count(i) && dD != D.diffs.end()) {
      for (size_t s = 0; s < hbasis[i].size(); ++s)
        for (const auto& [fc, c] : flatten_map(compose(dD->second, hbasis[i][s])))
          rows[{i, fc}][hoffset[i] + static_cast<int>(s)] += c;
    }
    if (hbasis.count(i + 1)) {
      for (size_t s = 0; s < hbasis[i + 1].size(); ++s)
        for (const auto& [fc, c] : flatten_map(compose(hbasis[i + 1][s], dC)))
          rows[{i, fc}][hoffset[i + 1] + static_cast<int>(s)] -= c;
    }
  }
  Echelon sys(Echelon::Pivot::Leading);
  for (const auto& [coord, row] : rows) {
    SparseVec r;
    for (const auto& [uidx, c] : row)
      if (c != 0) r.emplace_back(uidx, c);
    if (!r.empty()) sys.insert(std::move(r));
  }
  sys.finalize();
  auto K = sys.kernel(nunk);
  if (K.empty()) return out;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-500000, 499999);
  for (int trial = 0; trial < 20; ++trial) {
    SparseVec combo;
    for (const auto& k : K) sparse_axpy(combo, Rational(pick(rng)), k);
    ChainMap f, g;
    bool ok = true;
    for (const auto& [i, H] : hbasis) {
      BimoduleMap fi = zero_map(C.terms.at(i), D.terms.at(i), 0);
      for (size_t s = 0; s < H.size(); ++s) {
        Rational c = sparse_get(combo, hoffset[i] + static_cast<int>(s));
        if (c != 0) fi = map_add(fi, map_scale(H[s], c));
      }
      auto inv = map_to_dense(fi).inverse();
      if (!inv) {
        ok = false;
        break;
      }
      BimoduleMap gi = zero_map(D.terms.at(i), C.terms.at(i), 0);
      for (int a = 0; a < D.terms.at(i)->dim(); ++a)
        for (int b = 0; b < C.terms.at(i)->dim(); ++b)
          if (inv->at(b, a) != 0) gi.col[a].emplace_back(b, inv->at(b, a));
      f.comp.emplace(i, std::move(fi));
      g.comp.emplace(i, std::move(gi));
    }
    if (!ok) continue;
    if (!is_chain_map(C, D, f) || !is_chain_map(D, C, g))
      throw std::logic_error("chain iso: verification failed");
    out.found = true;
    out.iso = std::move(f);
    out.inverse = std::move(g);
    return out;
  }
  return out;
}

EquivResult homotopy_equivalent(const Complex& C, const Complex& D, uint64_t seed) {
  EquivResult res;
  auto mc = minimize(C, seed);
  auto md = minimize(D, seed + 1);

  // Krull-Schmidt: minimal representatives are unique up to isomorphism, so
  // differing per-degree dimensions certify inequivalence.
  std::map<int, std::map<std::tuple<int, int, int>, int>> fc, fd;
  for (const auto& [i, t] : mc.min.terms) fc[i] = t->fine_dim();
  for (const auto& [i, t] : md.min.terms) fd[i] = t->fine_dim();
  if (fc != fd) {
    res.verdict = EquivResult::Verdict::NoCertified;
    return res;
  }
  auto iso = find_chain_isomorphism(mc.min, md.min, seed + 2);
  if (iso.found) {
    res.verdict = EquivResult::Verdict::Yes;
    res.fwd = compose_chain(md.from_min, compose_chain(iso.iso, mc.to_min));
    res.bwd = compose_chain(mc.from_min, compose_chain(iso.inverse, md.to_min));
    return res;
  }
  res.verdict = EquivResult::Verdict::NoProbabilistic;
  int dim = std::max(mc.min.total_dim(), 1);
  res.miss_probability = std::pow(std::min(1.0, dim / 1e6), 20);
  return res;
}

std::string complex_to_json(const Complex& c) {
  nlohmann::json j;
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [i, t] : c.terms) {
    nlohmann::json tj;
    tj["dim"] = t->dim();
    nlohmann::json gd = nlohmann::json::object();
    for (const auto& [d, n] : t->graded_dim()) gd[std::to_string(d)] = n;
    tj["graded_dim"] = gd;
    terms[std::to_string(i)] = tj;
  }
  j["terms"] = terms;
  nlohmann::json diffs = nlohmann::json::object();
  for (const auto& [i, d] : c.diffs) {
    nlohmann::json entries = nlohmann::json::array();
    for (int a = 0; a < d.src->dim(); ++a)
      for (const auto& [b, coeff] : d.col[a])
        entries.push_back({a, b, rational_str(coeff)});
    diffs[std::to_string(i)] = entries;
  }
  j["differentials"] = diffs;
  return j.dump();
}

std::string complex_dims_str(const Complex& c) {
  if (c.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [i, t] : c.terms) {
    if (!first) out += "; ";
    out += std::to_string(i) + ": " + graded_dim_str(t->graded_dim());
    first = false;
  }
  return out;
}

}  // namespace bzz
