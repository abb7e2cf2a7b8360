#include "cind.hpp"

#include <algorithm>
#include <cctype>

namespace modp {

unsigned Poly::degree() const {
  for (size_t i = c.size(); i-- > 0;)
    if (c[i]) return static_cast<unsigned>(i);
  return 0;
}

bool Poly::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](Fe x) { return x == 0; });
}

Poly parse_poly(const GF& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ConfigError("empty polynomial");
  Poly P;
  size_t i = 0;
  while (i < s.size()) {
    bool negate = false;
    if (s[i] == '+' || s[i] == '-') {
      negate = s[i] == '-';
      ++i;
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw ConfigError("bad polynomial '" + text + "'");
    Fe coef = 1;
    unsigned expo = 0;
    size_t t = term.find('T');
    try {
      if (t == std::string::npos) {
        coef = static_cast<Fe>(std::stoul(term));
      } else {
        std::string head = term.substr(0, t);
        if (!head.empty() && head.back() == '*') head.pop_back();
        if (!head.empty()) coef = static_cast<Fe>(std::stoul(head));
        std::string tail = term.substr(t + 1);
        if (tail.empty()) {
          expo = 1;
        } else if (tail[0] == '^') {
          expo = static_cast<unsigned>(std::stoul(tail.substr(1)));
        } else {
          throw ConfigError("bad polynomial term '" + term + "'");
        }
      }
    } catch (const std::logic_error&) {
      throw ConfigError("bad polynomial term '" + term + "'");
    }
    if (!F.valid(coef)) throw ConfigError("polynomial coefficient out of range in '" + text + "'");
    if (expo > 64) throw ConfigError("polynomial degree too large");
    if (P.c.size() <= expo) P.c.resize(expo + 1, 0);
    P.c[expo] = F.add(P.c[expo], negate ? F.neg(coef) : coef);
    i = j;
  }
  while (P.c.size() > 1 && P.c.back() == 0) P.c.pop_back();
  return P;
}

std::string poly_str(const Poly& P) {
  std::string s;
  for (size_t i = P.c.size(); i-- > 0;) {
    if (!P.c[i]) continue;
    if (!s.empty()) s += "+";
    if (P.c[i] != 1 || i == 0) s += std::to_string(P.c[i]);
    if (i >= 1) s += (P.c[i] != 1 ? "*T" : "T");
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

bool poly_root(const GF& F, const Poly& P, Fe& root) {
  for (Fe x = 0; x < F.order(); ++x) {
    Fe acc = 0;
    for (size_t i = P.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), P.c[i]);
    if (acc == 0) {
      root = x;
      return true;
    }
  }
  return false;
}

Poly poly_div_linear(const GF& F, const Poly& P, Fe root) {
  unsigned d = P.degree();
  Poly Q;
  Q.c.assign(d, 0);
  Fe carry = 0;
  for (unsigned i = d; i >= 1; --i) {
    carry = F.add(P.c[i], F.mul(carry, root));
    Q.c[i - 1] = carry;
  }
  if (Q.c.empty()) Q.c.push_back(0);
  return Q;
}

CInd::CInd(const KZRep& rep) : rep_(&rep) {
  if (rep.dim() == 0 || rep.dim() > 1024) throw ConfigError("induced representation dimension must lie in [1, 1024]");
}

uint64_t CInd::key(const Vertex& v, unsigned j) {
  if (v.b >= (uint64_t(1) << 44) || v.radius() >= 64) throw PrecisionError("vertex outside the addressable ball");
  return (uint64_t(v.radius()) << 55) | (uint64_t(v.side == Side::Minus) << 54) | (v.b << 10) | j;
}

Vertex CInd::vertex_of(uint64_t key) {
  Vertex v;
  unsigned r = radius_of(key);
  v.side = (key >> 54) & 1 ? Side::Minus : Side::Plus;
  v.n = v.side == Side::Minus ? r - 1 : r;
  v.b = (key >> 10) & ((uint64_t(1) << 44) - 1);
  return v;
}

Induced CInd::inject(const GElt& g, const std::vector<Fe>& v) const {
  auto [x, tail] = ctx().group.vertex_tail(g);
  auto m = rep_->act(tail);
  auto w = mat_vec(F(), *m, v);
  Induced out;
  for (unsigned j = 0; j < w.size(); ++j)
    if (w[j]) out.emplace_back(key(x, j), w[j]);
  return out;
}

Induced CInd::basis(const Vertex& x, unsigned j) const { return Induced{{key(x, j), 1}}; }

std::vector<Fe> CInd::block(const Induced& f, const Vertex& x) const {
  std::vector<Fe> v(dim(), 0);
  uint64_t k0 = key(x, 0);
  auto it = std::lower_bound(f.begin(), f.end(), k0, [](const Entry& e, uint64_t k) { return e.first < k; });
  for (; it != f.end() && (it->first >> 10) == (k0 >> 10); ++it) v[basis_of(it->first)] = it->second;
  return v;
}

namespace {

// Calls fn(vertex, dense block) for every vertex in the support.
template <class Fn>
void for_blocks(const Induced& f, unsigned dim, Fn&& fn) {
  size_t i = 0;
  std::vector<Fe> v(dim);
  while (i < f.size()) {
    uint64_t vk = f[i].first >> 10;
    std::fill(v.begin(), v.end(), 0);
    for (; i < f.size() && (f[i].first >> 10) == vk; ++i) v[CInd::basis_of(f[i].first)] = f[i].second;
    fn(CInd::vertex_of(vk << 10), v);
  }
}

}  // namespace

Induced CInd::g_act(const GElt& g, const Induced& f) const {
  const Gl2& G = ctx().group;
  std::vector<Entry> acc;
  for_blocks(f, dim(), [&](const Vertex& x, const std::vector<Fe>& v) {
    auto part = inject(G.mul(g, G.vertex_rep(x)), v);
    acc.insert(acc.end(), part.begin(), part.end());
  });
  return sv_collect(F(), std::move(acc));
}

std::pair<Induced, Induced> CInd::split(const Induced& f) const {
  std::pair<Induced, Induced> r;
  for (const auto& e : f) ((e.first >> 54) & 1 ? r.second : r.first).push_back(e);
  return r;
}

std::vector<Vertex> CInd::sphere(unsigned r) const {
  const auto& R = ctx().ring;
  std::vector<Vertex> out;
  for (uint64_t b = 0; b < R.count(r); ++b) out.push_back(Vertex{Side::Plus, r, b});
  if (r >= 1)
    for (uint64_t b = 0; b < R.count(r - 1); ++b) out.push_back(Vertex{Side::Minus, r - 1, b});
  return out;
}

std::vector<Vertex> CInd::ball(unsigned r) const {
  std::vector<Vertex> out;
  for (unsigned i = 0; i <= r; ++i) {
    auto s = sphere(i);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

uint64_t CInd::ball_dim(unsigned r) const {
  const auto& R = ctx().ring;
  uint64_t n = 1;
  for (unsigned i = 1; i <= r; ++i) n += R.count(i) + R.count(i - 1);
  return n * dim();
}

Vertex CInd::parent(const Vertex& v, unsigned q) {
  if (v.side == Side::Minus && v.n == 0) return Vertex{Side::Plus, 0, 0};
  if (v.side == Side::Plus && v.n == 0) throw DomainError("the base vertex has no parent");
  uint64_t qn = 1;
  for (unsigned i = 0; i + 1 < v.n; ++i) qn *= q;
  return Vertex{v.side, v.n - 1, v.b % qn};
}

std::vector<Vertex> CInd::children(const Vertex& v) const {
  const auto& R = ctx().ring;
  uint64_t qn = R.count(v.n);
  std::vector<Vertex> out;
  if (v.side == Side::Plus && v.n == 0) out.push_back(Vertex{Side::Minus, 0, 0});
  for (uint64_t l = 0; l < R.q(); ++l) out.push_back(Vertex{v.side, v.n + 1, v.b + l * qn});
  std::sort(out.begin(), out.end());
  return out;
}

std::string CInd::vertex_str(const Vertex& v) const {
  const auto& R = ctx().ring;
  return std::string(v.side == Side::Plus ? "+" : "-") + "(" + std::to_string(v.n) + "," +
         R.str(R.from_index(v.b, v.n)) + ")";
}

Hecke::Hecke(const CInd& V, const Weight& w) : V_(&V), w_(&w) {
  if (&V.rep() != static_cast<const KZRep*>(&w)) throw ConfigError("Hecke operator needs the induction of its weight");
  const auto& ctx = V.ctx();
  const Gl2& G = ctx.group;
  const GF& C = V.F();
  const auto& R = ctx.ring;
  Mat sm = *w.act(G.s());
  Mat core = mat_mul(C, mat_mul(C, sm, w.U()), sm);
  for (Fe l = 0; l < R.q(); ++l) phi_.push_back(mat_mul(C, core, *w.act(G.upper(R.neg(R.teich(l))))));

  // T[1, v0] must put coefficient 1 on every [g_lambda, v0]; the [Pi, v0]
  // term appears only in dimension one.
  Induced expect;
  for (Fe l = 0; l < R.q(); ++l) {
    auto t = V.inject(G.g_lambda(l), w.v0());
    sv_axpy(C, expect, 1, t);
  }
  if (w.dim() == 1) {
    Fe sign = (w.spec().a % 2 == 0) ? 1 : C.neg(1);
    sv_axpy(C, expect, sign, V.inject(G.pi(), w.v0()));
  }
  if (T(id_v0()) != expect) throw InternalError("Hecke operator failed the T[1,v0] validation");
}

Induced Hecke::id_v0() const { return V_->inject(V_->ctx().group.identity(), w_->v0()); }
Induced Hecke::pi_v0() const { return V_->inject(V_->ctx().group.pi(), w_->v0()); }

Induced Hecke::T(const Induced& f) const {
  const auto& ctx = V_->ctx();
  const Gl2& G = ctx.group;
  const GF& C = V_->F();
  const auto& R = ctx.ring;
  GElt d1w = G.diag(R.one(), R.uniformizer());
  std::vector<GElt> gl;
  for (Fe l = 0; l < R.q(); ++l) gl.push_back(G.g_lambda(l));
  std::vector<Entry> acc;
  for_blocks(f, V_->dim(), [&](const Vertex& x, const std::vector<Fe>& v) {
    GElt h = G.vertex_rep(x);
    for (Fe l = 0; l < R.q(); ++l) {
      auto w = mat_vec(C, phi_[l], v);
      if (std::all_of(w.begin(), w.end(), [](Fe e) { return e == 0; })) continue;
      auto part = V_->inject(G.mul(h, gl[l]), w);
      acc.insert(acc.end(), part.begin(), part.end());
    }
    auto w = mat_vec(C, w_->U(), v);
    if (std::any_of(w.begin(), w.end(), [](Fe e) { return e != 0; })) {
      auto part = V_->inject(G.mul(h, d1w), w);
      acc.insert(acc.end(), part.begin(), part.end());
    }
  });
  return sv_collect(C, std::move(acc));
}

Induced Hecke::S(const Induced& f) const {
  const auto& ctx = V_->ctx();
  std::vector<Entry> acc;
  for (Fe l = 0; l < ctx.ring.q(); ++l) {
    auto part = V_->g_act(ctx.group.g_lambda(l), f);
    acc.insert(acc.end(), part.begin(), part.end());
  }
  return sv_collect(V_->F(), std::move(acc));
}

Induced Hecke::apply(const Poly& P, const Induced& f) const {
  const GF& C = V_->F();
  Induced acc, y = f;
  for (size_t i = 0; i < P.c.size(); ++i) {
    if (i) y = T(y);
    sv_axpy(C, acc, P.c[i], y);
  }
  return acc;
}

std::pair<Induced, Induced> Hecke::T_plus_minus(const Induced& f) const {
  if (f.empty()) return {};
  Vertex first = CInd::vertex_of(f.front().first);
  if (first.side != Side::Minus || first.n < 1) throw DomainError("T_plus_minus needs support in one R_n^-, n >= 1");
  for (const auto& e : f) {
    Vertex v = CInd::vertex_of(e.first);
    if (v.side != Side::Minus || v.n != first.n) throw DomainError("T_plus_minus needs support in a single R_n^-");
  }
  std::pair<Induced, Induced> out;
  for (const auto& e : T(f)) {
    Vertex v = CInd::vertex_of(e.first);
    if (v.side != Side::Minus) throw InternalError("T left the Minus half");
    if (v.n == first.n + 1) {
      out.first.push_back(e);
    } else if (v.n + 1 == first.n) {
      out.second.push_back(e);
    } else {
      throw InternalError("T moved a Minus grade by other than one");
    }
  }
  return out;
}

Induced Hecke::R_op(const Induced& f) const {
  const auto& ctx = V_->ctx();
  const auto& R = ctx.ring;
  const Gl2& G = ctx.group;
  const GF& Fq = R.residue();
  std::vector<Entry> acc;
  for (Fe l = 1; l < R.q(); ++l) {
    Scalar li = R.teich(Fq.inv(l));
    GElt a = G.make(R.uniformizer(), li, R.zero(), R.one());
    GElt b = G.make(R.neg(li), R.zero(), R.uniformizer(), R.teich(l));
    auto part = V_->g_act(G.mul(a, b), f);
    acc.insert(acc.end(), part.begin(), part.end());
  }
  return sv_collect(V_->F(), std::move(acc));
}

Induced Hecke::x0_extract(const Induced& f_minus) const {
  const auto& ctx = V_->ctx();
  for (const auto& e : f_minus)
    if (!((e.first >> 54) & 1)) throw DomainError("x0_extract needs a Minus-side element");
  Induced pf = V_->g_act(ctx.group.pi(), f_minus), part;
  unsigned q = ctx.ring.q();
  for (const auto& e : pf) {
    Vertex v = CInd::vertex_of(e.first);
    if (v.n >= 1 && v.b % q == 0) part.push_back(e);
  }
  return V_->g_act(ctx.group.s(), part);
}

std::vector<Induced> Hecke::m_n_plus_basis(unsigned n) const {
  const auto& ctx = V_->ctx();
  std::vector<Induced> out;
  for (uint64_t b = 0; b < ctx.ring.count(n); ++b)
    out.push_back(V_->inject(ctx.group.vertex_rep(Vertex{Side::Plus, n, b}), w_->v0()));
  return out;
}

Induced Hecke::solve_T_minus(const Induced& f) const {
  const GF& C = V_->F();
  unsigned d = V_->dim();
  const Gl2& G = V_->ctx().group;
  const auto& R = V_->ctx().ring;
  GElt d1w = G.diag(R.one(), R.uniformizer());
  // Only the U-term of T moves a Minus block towards the root, so the
  // contribution of a child block to its parent is one injection.
  std::vector<std::vector<Fe>> ucols(d);
  for (unsigned j = 0; j < d; ++j) {
    std::vector<Fe> e(d, 0);
    e[j] = 1;
    ucols[j] = mat_vec(C, w_->U(), e);
  }
  std::vector<Entry> acc;
  for_blocks(f, d, [&](const Vertex& y, const std::vector<Fe>& target) {
    if (y.side != Side::Minus) throw DomainError("pt_correction needs a Minus-side element");
    auto kids = V_->children(y);
    Mat A(d, static_cast<unsigned>(kids.size()) * d);
    for (unsigned c = 0; c < kids.size(); ++c) {
      GElt down = G.mul(G.vertex_rep(kids[c]), d1w);
      for (unsigned j = 0; j < d; ++j) {
        if (std::all_of(ucols[j].begin(), ucols[j].end(), [](Fe e) { return e == 0; })) continue;
        auto col = V_->block(V_->inject(down, ucols[j]), y);
        for (unsigned i = 0; i < d; ++i) A(i, c * d + j) = col[i];
      }
    }
    std::vector<Fe> sol;
    if (!solve(C, A, target, sol)) throw InternalError("T^- is not surjective onto a Minus block");
    for (unsigned c = 0; c < kids.size(); ++c)
      for (unsigned j = 0; j < d; ++j)
        if (sol[c * d + j]) acc.emplace_back(CInd::key(kids[c], j), sol[c * d + j]);
  });
  return sv_collect(C, std::move(acc));
}

Hecke::Correction Hecke::pt_correction(const Induced& f, const Poly& P) const {
  const GF& C = V_->F();
  if (P.degree() < 1) throw DomainError("pt_correction needs deg P >= 1");
  Fe lambda;
  if (!poly_root(C, P, lambda)) throw ConfigError("polynomial has no root in the coefficient field");
  Poly P1 = poly_div_linear(C, P, lambda);
  Induced h = solve_T_minus(f);
  Induced th = T(h);
  Correction out;
  if (P1.degree() == 0) {
    out.f_prime = sv_sub(C, th, f);
    sv_axpy(C, out.f_prime, C.neg(lambda), h);
    out.preimage = sv_scale(C, C.inv(P1.c[0]), h);
    return out;
  }
  Correction inner = pt_correction(h, P1);
  out.f_prime = sv_sub(C, th, f);
  sv_axpy(C, out.f_prime, C.neg(lambda), h);
  Induced tl = T(inner.f_prime);
  sv_axpy(C, tl, C.neg(lambda), inner.f_prime);
  sv_axpy(C, out.f_prime, 1, tl);
  out.preimage = inner.preimage;
  return out;
}

std::pair<Induced, Induced> Hecke::id_minus_witness(const Poly& P) const {
  const auto& ctx = V_->ctx();
  const auto& R = ctx.ring;
  const GF& C = V_->F();
  if (P.degree() < 1) throw DomainError("witness needs deg P >= 1");
  Fe lambda;
  if (!poly_root(C, P, lambda)) throw ConfigError("polynomial has no root in the coefficient field");
  Poly P1 = poly_div_linear(C, P, lambda);
  Induced f0 = V_->inject(ctx.group.diag(R.one(), R.uniformizer()), w_->v0());
  Induced tf = T(f0);
  sv_axpy(C, tf, C.neg(lambda), f0);
  auto [plus, h] = V_->split(tf);
  Induced idv = id_v0();
  if (plus.size() != idv.size() || plus.empty() || plus.back().first != idv.back().first)
    throw InternalError("(T - lambda)[diag(1,w), v0] has unexpected Plus part");
  Fe c = plus.back().second;
  if (sv_scale(C, c, idv) != plus) throw InternalError("(T - lambda)[diag(1,w), v0] has unexpected Plus part");
  Fe ci = C.inv(c);
  if (P1.degree() == 0) {
    Induced m = sv_scale(C, C.neg(ci), h);
    Induced g = sv_scale(C, C.inv(C.mul(P1.c[0], c)), f0);
    return {m, g};
  }
  Correction corr = pt_correction(f0, P1);
  Induced t = T(corr.f_prime);
  sv_axpy(C, t, C.neg(lambda), corr.f_prime);
  sv_axpy(C, t, 1, h);
  Induced m = sv_scale(C, C.neg(ci), t);
  auto [mp, mm] = V_->split(m);
  if (!mp.empty()) throw InternalError("witness left the Minus half");
  return {m, sv_scale(C, ci, corr.preimage)};
}

}  // namespace modp
