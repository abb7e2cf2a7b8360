#include "quotient.hpp"

#include <algorithm>
#include <map>

namespace modp {

Induced FullInduction::reduce(const Induced& f) const {
  if (CInd::radius(f) > max_) throw PrecisionError("element leaves the truncation ball");
  return f;
}

std::vector<uint64_t> FullInduction::free_coords(unsigned n) const {
  std::vector<uint64_t> out;
  for (const auto& v : V_->ball(n))
    for (unsigned j = 0; j < V_->dim(); ++j) out.push_back(CInd::key(v, j));
  std::sort(out.begin(), out.end());
  return out;
}

Induced special_relation(const Hecke& H) {
  Induced r = H.id_v0();
  sv_axpy(H.F(), r, 1, H.pi_v0());
  return r;
}

Quotient::Quotient(const Hecke& H, Poly P, std::vector<Induced> extra, unsigned N, unsigned slack)
    : H_(&H), P_(std::move(P)), extra_(std::move(extra)), N_(N), slack_(slack), extras_(H.F()) {
  d_ = P_.is_zero() ? 0 : P_.degree();
  if (N_ > 32) throw ConfigError("truncation radius must be at most 32");
  if (P_.is_zero() && extra_.empty()) throw ConfigError("quotient needs a nonzero polynomial or a relation");
  if (!extra_.empty()) build_extras();
}

std::shared_ptr<const Quotient::Block> Quotient::block(const Vertex& x) const {
  uint64_t vk = CInd::vertex_key(x);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = blocks_.find(vk);
    if (it != blocks_.end()) return it->second;
  }
  const CInd& V = space();
  const GF& F = V.F();
  unsigned dim = V.dim();
  unsigned top = x.radius() + d_;
  std::vector<Induced> cols(dim);
  std::vector<uint64_t> keys;
  for (unsigned j = 0; j < dim; ++j) {
    cols[j] = H_->apply(P_, V.basis(x, j));
    for (const auto& e : cols[j])
      if (CInd::radius_of(e.first) == top) keys.push_back(e.first);
  }
  std::sort(keys.begin(), keys.end(), std::greater<>());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  unsigned K = static_cast<unsigned>(keys.size());
  Mat A(dim, K + dim);
  for (unsigned j = 0; j < dim; ++j) {
    for (unsigned c = 0; c < K; ++c) A(j, c) = sv_get(cols[j], keys[c]);
    A(j, K + j) = 1;
  }
  Rref r = rref(F, std::move(A));
  auto blk = std::make_shared<Block>();
  blk->E = Mat(dim, dim);
  for (unsigned i = 0; i < dim; ++i) {
    if (i >= r.pivots.size() || r.pivots[i] >= K)
      throw InternalError("leading part of P(T) is not injective at " + V.vertex_str(x));
    blk->pivots.push_back(keys[r.pivots[i]]);
    Induced row;
    for (unsigned j = 0; j < dim; ++j) {
      blk->E(i, j) = r.m(i, K + j);
      sv_axpy(F, row, r.m(i, K + j), cols[j]);
    }
    blk->rows.push_back(std::move(row));
  }
  std::lock_guard<std::mutex> lk(mu_);
  return blocks_.emplace(vk, std::move(blk)).first->second;
}

Induced Quotient::reduce_P(const Induced& f, Induced* preimage) const {
  const GF& F = space().F();
  unsigned q = space().ctx().ring.q();
  Induced work = f;
  std::vector<Entry> pre;
  if (P_.is_zero()) return work;
  unsigned r = CInd::radius(work);
  while (!work.empty() && r >= d_) {
    uint64_t lo = uint64_t(r) << 55;
    auto it = std::lower_bound(work.begin(), work.end(), lo, [](const Entry& e, uint64_t k) { return e.first < k; });
    std::vector<Vertex> anc;
    uint64_t last_vk = ~uint64_t(0);
    for (; it != work.end(); ++it) {
      uint64_t vk = it->first >> 10;
      if (vk == last_vk) continue;
      last_vk = vk;
      Vertex a = CInd::vertex_of(vk << 10);
      for (unsigned i = 0; i < d_; ++i) a = CInd::parent(a, q);
      anc.push_back(a);
    }
    std::sort(anc.begin(), anc.end());
    anc.erase(std::unique(anc.begin(), anc.end()), anc.end());
    std::vector<Entry> delta;
    for (const auto& a : anc) {
      auto blk = block(a);
      for (size_t i = 0; i < blk->pivots.size(); ++i) {
        Fe c = sv_get(work, blk->pivots[i]);
        if (!c) continue;
        Fe m = F.neg(c);
        for (const auto& e : blk->rows[i]) delta.emplace_back(e.first, F.mul(m, e.second));
        if (preimage)
          for (unsigned j = 0; j < blk->E.cols; ++j)
            if (Fe e = blk->E(i, j)) pre.emplace_back(CInd::key(a, j), F.mul(c, e));
      }
    }
    if (!delta.empty()) sv_axpy(F, work, 1, sv_collect(F, std::move(delta)));
    if (r == 0) break;
    r = std::min(r - 1, CInd::radius(work));
  }
  if (preimage) *preimage = sv_collect(F, std::move(pre));
  return work;
}

Induced Quotient::reduce_tracked(const Induced& f, Induced* preimage) const {
  unsigned limit = extra_.empty() ? N_ : N_ + slack_ + 1;
  if (CInd::radius(f) > limit) throw PrecisionError("element leaves the truncation ball");
  Induced w = reduce_P(f, preimage);
  extras_.reduce(w);
  return w;
}

void Quotient::build_extras() {
  const CInd& V = space();
  const GF& F = V.F();
  const Gl2& G = V.ctx().group;
  unsigned q = V.ctx().ring.q();

  // Iwahori closure of the relations.
  Subspace cl(F);
  {
    std::vector<Induced> queue = extra_;
    while (!queue.empty()) {
      Induced v = std::move(queue.back());
      queue.pop_back();
      cl.reduce(v);
      if (v.empty()) continue;
      unsigned rad = CInd::radius(v);
      cl.insert(v);
      for (const auto& g : G.generators(Subgroup{Subgroup::I, 0}, rad)) queue.push_back(V.g_act(g, v));
    }
  }

  std::vector<GElt> kreps{G.identity()};
  for (Fe l = 0; l < q; ++l) kreps.push_back(G.k_lambda(l));

  auto count_low = [&](const Subspace& E) {
    size_t n = 0;
    for (const auto& row : E.basis())
      if (CInd::radius_of(row.back().first) <= N_) ++n;
    return n;
  };

  // Translates inside ball N+slack, then those reaching the next sphere.
  unsigned lim = N_ + slack_;
  std::vector<Induced> inner, outer;
  for (const auto& v : V.ball(lim + 1)) {
    GElt h = G.vertex_rep(v);
    for (const auto& k : kreps) {
      GElt hk = G.mul(h, k);
      for (const auto& e : cl.basis()) {
        Induced t = V.g_act(hk, e);
        unsigned rad = CInd::radius(t);
        if (rad <= lim)
          inner.push_back(std::move(t));
        else if (rad == lim + 1)
          outer.push_back(std::move(t));
      }
    }
  }
  translates_ = inner.size();
  Subspace E(F);
  for (const auto& t : inner) E.insert(reduce_P(t, nullptr));
  size_t low = count_low(E);
  for (const auto& t : outer) E.insert(reduce_P(t, nullptr));
  if (count_low(E) != low)
    throw InstabilityError("relation span inside the ball changed between slack " + std::to_string(slack_) +
                           " and " + std::to_string(slack_ + 1));
  for (const auto& row : E.basis())
    if (CInd::radius_of(row.back().first) <= N_) extras_.insert(row);
}

std::vector<uint64_t> Quotient::free_coords(unsigned n) const {
  if (n > N_) throw PrecisionError("ball exceeds the truncation radius");
  const CInd& V = space();
  std::vector<uint64_t> piv;
  if (!P_.is_zero() && n >= d_)
    for (const auto& x : V.ball(n - d_)) {
      auto b = block(x);
      piv.insert(piv.end(), b->pivots.begin(), b->pivots.end());
    }
  for (const auto& row : extras_.basis())
    if (CInd::radius_of(row.back().first) <= n) piv.push_back(row.back().first);
  std::sort(piv.begin(), piv.end());
  std::vector<uint64_t> out;
  for (const auto& v : V.ball(n))
    for (unsigned j = 0; j < V.dim(); ++j) {
      uint64_t k = CInd::key(v, j);
      if (!std::binary_search(piv.begin(), piv.end(), k)) out.push_back(k);
    }
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t Quotient::kernel_dim(unsigned n) const {
  const CInd& V = space();
  uint64_t k = 0;
  if (!P_.is_zero() && n >= d_) k = V.ball_dim(n - d_);
  for (const auto& row : extras_.basis())
    if (CInd::radius_of(row.back().first) <= n) ++k;
  return k;
}

Subspace closure(const Ambient& A, const std::vector<GElt>& gens, const std::vector<Induced>& xs) {
  const CInd& V = A.space();
  Subspace E(V.F());
  std::vector<Induced> queue;
  for (const auto& x : xs) queue.push_back(A.reduce(x));
  while (!queue.empty()) {
    Induced v = std::move(queue.back());
    queue.pop_back();
    E.reduce(v);
    if (v.empty()) continue;
    E.insert(v);
    for (const auto& g : gens) queue.push_back(A.reduce(V.g_act(g, v)));
  }
  return E;
}

Subspace invariants_span(const Ambient& A, const std::vector<GElt>& gens, std::vector<Induced> basis, unsigned n) {
  const CInd& V = A.space();
  const GF& F = V.F();
  for (const auto& g : gens) {
    if (basis.empty()) break;
    KeyCompressor comp;
    std::vector<SVec> images;
    images.reserve(basis.size());
    bool moved = false;
    for (const auto& b : basis) {
      Induced t = V.g_act(g, b);
      if (CInd::radius(t) > n) throw DomainError("subgroup does not preserve the ball");
      sv_axpy(F, t, F.neg(1), b);
      std::vector<Entry> img;
      for (const auto& x : A.reduce(t)) img.emplace_back(comp(x.first), x.second);
      moved |= !img.empty();
      images.push_back(sv_collect(F, std::move(img)));
    }
    if (!moved) continue;
    std::vector<Induced> next;
    for (const auto& k : sparse_kernel(F, images)) {
      std::vector<Entry> acc;
      for (const auto& [idx, c] : k)
        for (const auto& e : basis[idx]) acc.emplace_back(e.first, F.mul(c, e.second));
      next.push_back(sv_collect(F, std::move(acc)));
    }
    basis.swap(next);
  }
  Subspace out(F);
  for (auto& b : basis) out.insert(std::move(b));
  return out;
}

std::vector<Induced> local_fixed_vectors(const CInd& V, const std::vector<GElt>& gens, const std::vector<Vertex>& verts) {
  const Gl2& G = V.ctx().group;
  const GF& F = V.F();
  unsigned dim = V.dim();
  std::map<std::vector<const Mat*>, Mat> cache;
  std::vector<Induced> out;
  for (const auto& x : verts) {
    GElt h = G.vertex_rep(x), hinv = G.vertex_rep_inv(x);
    std::vector<std::shared_ptr<const Mat>> mats;
    std::vector<const Mat*> key;
    for (const auto& g : gens) {
      GElt t = G.mul(hinv, G.mul(g, h));
      if (!G.member(t, Subgroup{Subgroup::KZ, 0})) throw DomainError("generator moves a vertex of the block");
      mats.push_back(V.rep().act(t));
      key.push_back(mats.back().get());
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      Mat stack(static_cast<unsigned>(gens.size()) * dim, dim);
      for (size_t gi = 0; gi < mats.size(); ++gi)
        for (unsigned i = 0; i < dim; ++i)
          for (unsigned j = 0; j < dim; ++j)
            stack(static_cast<unsigned>(gi) * dim + i, j) = F.sub((*mats[gi])(i, j), i == j ? 1 : 0);
      it = cache.emplace(key, nullspace(F, stack)).first;
    }
    const Mat& ns = it->second;
    for (unsigned r = 0; r < ns.rows; ++r) {
      Induced v;
      for (unsigned j = 0; j < dim; ++j)
        if (ns(r, j)) v.emplace_back(CInd::key(x, j), ns(r, j));
      out.push_back(std::move(v));
    }
  }
  return out;
}

Subspace invariants_gens(const Ambient& A, const std::vector<GElt>& gens, unsigned n) {
  std::vector<Induced> basis;
  for (uint64_t c : A.free_coords(n)) basis.push_back(Induced{{c, 1}});
  return invariants_span(A, gens, std::move(basis), n);
}

Subspace invariants(const Ambient& A, const Subgroup& h, unsigned n) {
  if (h.tag == Subgroup::Pplus || h.tag == Subgroup::UminusP || h.tag == Subgroup::H)
    throw DomainError("invariants need a subgroup fixing the base vertex");
  return invariants_gens(A, A.space().ctx().group.generators(h, n), n);
}

Subspace radical_p_group(const Ambient& A, const std::vector<GElt>& gens, const Induced& x) {
  const CInd& V = A.space();
  const GF& F = V.F();
  Subspace M = closure(A, gens, {x});
  Subspace rad(F);
  for (const auto& m : M.basis())
    for (const auto& g : gens) {
      Induced t = V.g_act(g, m);
      sv_axpy(F, t, F.neg(1), m);
      rad.insert(A.reduce(t));
    }
  return rad;
}

PmImages i_pm_images(const Ambient& A, unsigned n) {
  const CInd& V = A.space();
  PmImages out{Subspace(V.F()), Subspace(V.F())};
  for (const auto& v : V.ball(n))
    for (unsigned j = 0; j < V.dim(); ++j) {
      Induced r = A.reduce(V.basis(v, j));
      (v.side == Side::Plus ? out.plus : out.minus).insert(std::move(r));
    }
  return out;
}

Subspace intersect(const GF& F, const Subspace& a, const Subspace& b) {
  std::vector<SVec> images;
  for (const auto& x : a.basis()) images.push_back(x);
  for (const auto& y : b.basis()) images.push_back(sv_scale(F, F.neg(1), y));
  Subspace out(F);
  size_t na = a.dim();
  for (const auto& k : sparse_kernel(F, images)) {
    SVec v;
    for (const auto& [idx, c] : k)
      if (idx < na) sv_axpy(F, v, c, a.basis()[idx]);
    out.insert(std::move(v));
  }
  return out;
}

std::optional<unsigned> s_nilpotence_order(const Quotient& Q, const Induced& f, unsigned max_m) {
  const Hecke& H = Q.hecke();
  Induced y = Q.reduce(f);
  for (unsigned m = 0; m <= max_m; ++m) {
    if (y.empty()) return m;
    if (m == max_m) break;
    Induced t = H.S(y);
    if (CInd::radius(t) > Q.N()) throw PrecisionError("iterate of S leaves the truncation ball");
    y = Q.reduce(t);
  }
  return std::nullopt;
}

Induced phi_sigma(const Quotient& Q, const Induced& f) { return Q.reduce(Q.space().split(f).second); }

}  // namespace modp
