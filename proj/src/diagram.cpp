#include "diagram.hpp"

#include <algorithm>

namespace modp {

namespace {

// Relation generators of radius <= n whose support meets both halves of the tree.
std::vector<Induced> straddling_relations(const Quotient& Q, unsigned n) {
  const CInd& V = Q.space();
  const Hecke& H = Q.hecke();
  std::vector<Induced> out;
  unsigned d = Q.degree();
  if (!Q.poly().is_zero() && n >= d) {
    for (const auto& x : V.ball(n - d)) {
      unsigned dist = x.n;  // distance to the nearer end of the base edge
      if (dist + 1 > d) continue;
      for (unsigned j = 0; j < V.dim(); ++j) out.push_back(H.apply(Q.poly(), V.basis(x, j)));
    }
  }
  for (const auto& row : Q.extras().basis())
    if (CInd::radius_of(row.back().first) <= n) out.push_back(row);
  return out;
}

std::vector<GElt> k_generators(const Gl2& G, unsigned n) {
  auto gens = G.generators(Subgroup{Subgroup::I, 0}, n);
  for (Fe l = 0; l < G.ring().q(); ++l) gens.push_back(G.k_lambda(l));
  return gens;
}

}  // namespace

D1Result d1_compute(const Quotient& Q, unsigned n) {
  if (n >= Q.N()) throw PrecisionError("D1 radius must stay below the truncation radius");
  const CInd& V = Q.space();
  D1Result res{Subspace(V.F()), false, {}};
  auto rels = straddling_relations(Q, n);
  std::sort(rels.begin(), rels.end(), [](const Induced& a, const Induced& b) { return CInd::radius(a) < CInd::radius(b); });
  size_t i = 0;
  for (unsigned r = 0; r <= n; ++r) {
    for (; i < rels.size() && CInd::radius(rels[i]) <= r; ++i) res.basis.insert(phi_sigma(Q, rels[i]));
    res.growth.push_back({r, res.basis.dim()});
  }
  res.stable = n >= 1 && res.growth[n].dim == res.growth[n - 1].dim;
  return res;
}

Subspace k_closure(const Ambient& A, const std::vector<Induced>& xs, unsigned n, bool* truncated) {
  const CInd& V = A.space();
  auto gens = k_generators(V.ctx().group, n);
  Subspace E(V.F());
  std::vector<Induced> queue;
  for (const auto& x : xs) queue.push_back(A.reduce(x));
  bool trunc = false;
  while (!queue.empty()) {
    Induced v = std::move(queue.back());
    queue.pop_back();
    E.reduce(v);
    if (v.empty()) continue;
    if (CInd::radius(v) > n) {
      trunc = true;
      continue;
    }
    E.insert(v);
    for (const auto& g : gens) queue.push_back(A.reduce(V.g_act(g, v)));
  }
  if (truncated) *truncated = trunc;
  return E;
}

D0Result d0_compute(const Quotient& Q, const Subspace& D1, unsigned n) {
  D0Result r{Subspace(Q.space().F()), false};
  r.basis = k_closure(Q, D1.basis(), n, &r.truncated);
  return r;
}

int delta_minus1(const Gl2& G, const GElt& g) { return G.det_val(g) % 2 == 0 ? 1 : -1; }

LevelFiltration::LevelFiltration(const Quotient& Q, unsigned bound)
    : Q_(&Q), iplus_(Q.space().F()), iminus_(Q.space().F()) {
  const CInd& V = Q.space();
  const Gl2& G = V.ctx().group;
  unsigned B = Q.N();
  if (B < 2) throw PrecisionError("level computation needs a ball of radius at least 2");
  auto pm = i_pm_images(Q, B);
  iplus_ = std::move(pm.plus);
  iminus_ = std::move(pm.minus);
  layers_.push_back(d1_compute(Q, B - 1).basis);
  for (unsigned k = 1; k <= bound; ++k) {
    std::vector<Induced> moved;
    bool fits = true;
    for (const auto& v : layers_.back().basis()) {
      Induced t = V.g_act(G.pi(), v);
      if (CInd::radius(t) > B) {
        fits = false;
        break;
      }
      moved.push_back(Q.reduce(t));
    }
    if (!fits) break;
    bool trunc = false;
    Subspace span = k_closure(Q, moved, B, &trunc);
    if (trunc) break;
    layers_.push_back(intersect(V.F(), span, iplus_));
  }
}

std::pair<Induced, Induced> LevelFiltration::split(const Induced& v) const {
  return Q_->space().split(Q_->reduce(v));
}

std::optional<unsigned> LevelFiltration::level_plus(const Induced& vplus) const {
  Induced w = Q_->reduce(vplus);
  for (unsigned k = 0; k < layers_.size(); ++k)
    if (layers_[k].contains(w)) return k;
  return std::nullopt;
}

std::optional<unsigned> LevelFiltration::level_minus(const Induced& vminus) const {
  const CInd& V = Q_->space();
  Induced t = V.g_act(V.ctx().group.pi(), vminus);
  if (CInd::radius(t) > Q_->N()) return std::nullopt;
  return level_plus(t);
}

std::optional<unsigned> LevelFiltration::level(const Induced& vplus, const Induced& vminus) const {
  auto a = level_plus(vplus), b = level_minus(vminus);
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

std::optional<unsigned> LevelFiltration::level(const Induced& v) const {
  auto [p, m] = split(v);
  return level(p, m);
}

SubRep::SubRep(const Ambient& A, const Subspace& W) : A_(&A) {
  const GF& F = A.space().F();
  // Fully reduce so that coordinates can be read at the pivots.
  std::vector<Induced> rows = W.basis();
  std::sort(rows.begin(), rows.end(), [](const Induced& a, const Induced& b) { return a.back().first < b.back().first; });
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j) {
      Fe c = sv_get(rows[j], rows[i].back().first);
      if (c) sv_axpy(F, rows[j], F.neg(c), rows[i]);
    }
  for (size_t i = 0; i < rows.size(); ++i) {
    piv_.emplace(rows[i].back().first, i);
    vecs_.push_back(std::move(rows[i]));
  }
  level_ = 1;
  for (const auto& v : vecs_) level_ = std::max(level_, CInd::radius(v) + 1);
  const Gl2& G = A.space().ctx().group;
  auto gens = k_generators(G, level_);
  gens.push_back(G.central(1));
  for (const auto& g : gens)
    for (const auto& v : vecs_)
      if (!coords(A.reduce(A.space().g_act(g, v)))) throw DomainError("subspace is not stable under KZ");
}

std::optional<std::vector<Fe>> SubRep::coords(const Induced& v) const {
  const GF& F = A_->space().F();
  std::vector<Fe> c(vecs_.size(), 0);
  Induced w = v;
  while (!w.empty()) {
    auto it = piv_.find(w.back().first);
    if (it == piv_.end()) return std::nullopt;
    Fe a = w.back().second;
    c[it->second] = F.add(c[it->second], a);
    sv_axpy(F, w, F.neg(a), vecs_[it->second]);
  }
  return c;
}

Induced SubRep::vector(const std::vector<Fe>& c) const {
  Induced out;
  for (size_t i = 0; i < c.size(); ++i) sv_axpy(A_->space().F(), out, c[i], vecs_[i]);
  return out;
}

std::shared_ptr<const Mat> SubRep::act(const GElt& k) const {
  const Gl2& G = A_->space().ctx().group;
  const LocalRing& R = G.ring();
  if (!G.member(k, Subgroup{Subgroup::KZ, 0})) throw DomainError("subrepresentation action: element not in KZ");
  auto key = std::make_tuple(R.index(k.a, level_), R.index(k.b, level_), R.index(k.c, level_), R.index(k.d, level_),
                             k.shift);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  unsigned n = dim();
  Mat m(n, n);
  for (unsigned j = 0; j < n; ++j) {
    auto c = coords(A_->reduce(A_->space().g_act(k, vecs_[j])));
    if (!c) throw DomainError("subspace is not stable under KZ");
    for (unsigned i = 0; i < n; ++i) m(i, j) = (*c)[i];
  }
  auto ptr = std::make_shared<const Mat>(std::move(m));
  std::lock_guard<std::mutex> lk(mu_);
  return cache_.emplace(key, ptr).first->second;
}

Induced to_ambient(const SubRep& W, const CInd& VW, const Induced& f) {
  const CInd& V = W.ambient().space();
  const Gl2& G = V.ctx().group;
  const GF& F = V.F();
  Induced acc;
  size_t i = 0;
  while (i < f.size()) {
    uint64_t vk = f[i].first >> 10;
    std::vector<Fe> c(W.dim(), 0);
    for (; i < f.size() && (f[i].first >> 10) == vk; ++i) c[CInd::basis_of(f[i].first)] = f[i].second;
    Vertex x = CInd::vertex_of(vk << 10);
    sv_axpy(F, acc, 1, V.g_act(G.vertex_rep(x), W.vector(c)));
  }
  (void)VW;
  return W.ambient().reduce(acc);
}

Induced boundary_apply(const SubRep& D0, const CInd& VW, const Subspace& D1, const Induced& x, const GElt& g) {
  const Ambient& A = D0.ambient();
  const CInd& V = A.space();
  const Gl2& G = V.ctx().group;
  const GF& F = V.F();
  Induced xr = A.reduce(x);
  if (!D1.contains(xr)) throw DomainError("boundary source must lie in D1");
  auto cx = D0.coords(xr);
  auto cy = D0.coords(A.reduce(V.g_act(G.pi_inv(), xr)));
  if (!cx || !cy) throw DomainError("D1 is not contained in D0");
  Induced out = VW.inject(G.identity(), *cx);
  sv_axpy(F, out, F.neg(1), VW.inject(G.pi(), *cy));
  return VW.g_act(g, out);
}

R0Set r0_generators(const SubRep& W, const CInd& VW) {
  const Ambient& A = W.ambient();
  const CInd& V = A.space();
  const Gl2& G = V.ctx().group;
  const LocalRing& R = G.ring();
  const GF& F = V.F();
  R0Set out{Subspace(F), {}, {}, true};
  Subspace Wsp(F), PiW(F);
  for (const auto& w : W.vectors()) {
    Wsp.insert(w);
    PiW.insert(A.reduce(V.g_act(G.pi(), w)));
  }
  out.meet = intersect(F, Wsp, PiW);
  GElt dw = G.diag(R.uniformizer(), R.one());
  GElt dwinv = G.make(R.one(), R.zero(), R.zero(), R.uniformizer(), 1);
  for (const auto& x : out.meet.basis()) {
    auto cx = W.coords(x);
    auto cdx = W.coords(A.reduce(V.g_act(dw, x)));
    auto cpx = W.coords(A.reduce(V.g_act(G.pi_inv(), x)));
    if (!cx || !cdx || !cpx) throw InternalError("R0 generator left the subspace");
    Induced rel = VW.inject(dw, *cx);
    sv_axpy(F, rel, F.neg(1), VW.inject(G.identity(), *cdx));
    Induced sh = VW.g_act(dwinv, rel);
    Induced expect = VW.inject(G.identity(), *cx);
    sv_axpy(F, expect, F.neg(1), VW.inject(G.pi(), *cpx));
    if (sh != expect) out.identity_holds = false;
    out.relations.push_back(std::move(rel));
    out.shifted.push_back(std::move(sh));
  }
  return out;
}

Subspace edge_span(const CInd& V, const std::vector<Induced>& rels, unsigned R) {
  const Gl2& G = V.ctx().group;
  const GF& F = V.F();
  unsigned q = G.ring().q();
  Vertex v0{Side::Plus, 0, 0}, v1{Side::Minus, 0, 0};
  for (const auto& r : rels)
    for (const auto& e : r) {
      Vertex x = CInd::vertex_of(e.first);
      if (!(x == v0 || x == v1)) throw DomainError("edge relation must be supported on the base edge");
    }
  // Closure under the stabilizer of the base edge and the flip Pi.
  auto gens = G.generators(Subgroup{Subgroup::I, 0}, 1);
  gens.push_back(G.pi());
  gens.push_back(G.central(1));
  Subspace cl(F);
  std::vector<Induced> queue = rels;
  while (!queue.empty()) {
    Induced v = std::move(queue.back());
    queue.pop_back();
    cl.reduce(v);
    if (v.empty()) continue;
    cl.insert(v);
    for (const auto& g : gens) queue.push_back(V.g_act(g, v));
  }
  std::map<Vertex, Fe> neighbor;  // Plus(1, b) -> lambda with k_lambda v1 = Plus(1, b)
  for (Fe l = 0; l < q; ++l) neighbor.emplace(G.vertex(G.g_lambda(l)), l);

  Subspace out(F);
  if (R == 0) return out;
  for (const auto& u : V.ball(R - 1)) {
    GElt h = G.vertex_rep(u);
    GElt hinv = G.vertex_rep_inv(u);
    for (const auto& c : V.children(u)) {
      Vertex rel = G.vertex(G.mul(hinv, G.vertex_rep(c)));
      GElt g = h;
      if (!(rel == v1)) {
        auto it = neighbor.find(rel);
        if (it == neighbor.end()) throw InternalError("child is not adjacent to the base vertex");
        g = G.mul(h, G.k_lambda(it->second));
      }
      for (const auto& e : cl.basis()) out.insert(V.g_act(g, e));
    }
  }
  return out;
}

}  // namespace modp
