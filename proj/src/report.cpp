#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "parallel.hpp"

namespace modp {

using nlohmann::json;

// ---------------------------------------------------------------- scenario

unsigned Scenario::precision() const { return prec ? prec : std::max(12u, N + slack + 6); }

void Scenario::validate() const {
  if (!is_prime(p)) throw ConfigError("p must be prime");
  if (f < 1) throw ConfigError("f must be at least 1");
  if (backend == Backend::Mixed && f != 1) throw ConfigError("mixed characteristic supports f = 1 only");
  if (weight.p != p || weight.f != f) throw ConfigError("weight descriptor disagrees with the field (p, f)");
  if (coeff_degree() % f != 0) throw ConfigError("coefficient degree must be a multiple of f");
  if (N < 1 || N > 32) throw ConfigError("radius must lie in [1, 32]");
  if (slack > 8) throw ConfigError("slack must be at most 8");
  if (prec && prec < N + slack + 2) throw ConfigError("precision must be at least radius + slack + 2");
  if (samples < 1) throw ConfigError("samples must be positive");
}

json Scenario::to_json() const {
  return json{{"backend", backend == Backend::Equal ? "equal" : "mixed"},
              {"p", p},
              {"f", f},
              {"prec", precision()},
              {"m", coeff_degree()},
              {"weight", weight_str(weight)},
              {"poly", poly},
              {"rel", rel == RelPreset::Special ? "special" : "none"},
              {"N", N},
              {"slack", slack},
              {"seed", seed},
              {"samples", samples}};
}

Scenario Scenario::from_json(const json& j) {
  Scenario s;
  try {
    if (j.contains("backend")) {
      std::string b = j.at("backend");
      if (b == "equal") s.backend = Backend::Equal;
      else if (b == "mixed") s.backend = Backend::Mixed;
      else throw ConfigError("backend must be 'equal' or 'mixed'");
    }
    s.p = j.value("p", s.p);
    s.f = j.value("f", s.f);
    s.prec = j.value("prec", s.prec);
    s.m = j.value("m", s.m);
    s.N = j.value("N", s.N);
    s.slack = j.value("slack", s.slack);
    s.seed = j.value("seed", s.seed);
    s.samples = j.value("samples", s.samples);
    s.poly = j.value("poly", s.poly);
    std::string rel = j.value("rel", std::string("none"));
    if (rel == "special") s.rel = RelPreset::Special;
    else if (rel != "none") throw ConfigError("relation preset must be 'none' or 'special'");
    if (j.contains("weight")) {
      std::string w = j.at("weight");
      if (w.find("p=") == std::string::npos) w = "p=" + std::to_string(s.p) + ",f=" + std::to_string(s.f) + "," + w;
      s.weight = parse_weight(w);
    } else {
      s.weight.p = s.p;
      s.weight.f = s.f;
      s.weight.r.assign(s.f, 0);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad scenario: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------- model

Model::Model(const Scenario& s) : scenario(s) {
  s.validate();
  ctx = std::make_unique<Context>(s.backend, s.p, s.f, s.precision(), s.coeff_degree());
  weight = std::make_unique<Weight>(*ctx, s.weight);
  V = std::make_unique<CInd>(*weight);
  H = std::make_unique<Hecke>(*V, *weight);
  P = parse_poly(ctx->coeff, s.poly);
}

std::vector<Induced> Model::relations() const {
  if (scenario.rel == RelPreset::Special) return {special_relation(*H)};
  return {};
}

std::unique_ptr<Quotient> Model::quotient(int radius) const {
  unsigned n = radius < 0 ? scenario.N : static_cast<unsigned>(radius);
  return std::make_unique<Quotient>(*H, P, relations(), n, scenario.slack);
}

bool Model::linear(Fe* lambda) const {
  if (scenario.rel != RelPreset::None || P.is_zero() || P.degree() != 1 || P.c[1] != 1) return false;
  if (lambda) *lambda = ctx->coeff.neg(P.c[0]);
  return true;
}

// ---------------------------------------------------------------- report

void Report::add(std::string id, const std::string& expected, const std::string& got, bool pass) {
  checks.push_back(Check{std::move(id), expected, got, pass});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back(Check{prefix + c.id, c.expected, c.got, c.pass});
  for (const auto& w : other.warnings) warnings.push_back(prefix + w);
  for (const auto& [k, v] : other.series) series[prefix + k] = v;
  for (const auto& [k, v] : other.data.items()) data[prefix + k] = v;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::finalize() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
}

// ---------------------------------------------------------------- helpers

namespace {

std::mt19937_64 sample_rng(uint64_t seed, uint64_t stream, uint64_t i) {
  std::seed_seq seq{seed, stream, i};
  return std::mt19937_64(seq);
}

Induced random_induced(const CInd& V, const std::vector<Vertex>& verts, std::mt19937_64& rng, unsigned terms) {
  const GF& F = V.F();
  std::vector<Entry> acc;
  for (unsigned t = 0; t < terms; ++t) {
    const Vertex& x = verts[rng() % verts.size()];
    for (unsigned j = 0; j < V.dim(); ++j) {
      Fe c = static_cast<Fe>(rng() % F.order());
      if (c) acc.emplace_back(CInd::key(x, j), c);
    }
  }
  return sv_collect(F, std::move(acc));
}

std::string fails_str(size_t bad, size_t total) {
  return std::to_string(bad) + " of " + std::to_string(total) + " fail";
}

bool same_span(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& v : a.basis())
    if (!b.contains(v)) return false;
  return true;
}

Subspace span_of(const GF& F, const std::vector<Induced>& xs) {
  Subspace S(F);
  for (const auto& x : xs) S.insert(x);
  return S;
}

json subspace_json(const CInd& V, const Subspace& S) {
  json out = json::array();
  for (const auto& v : S.basis()) out.push_back(element_to_json(V, v));
  return out;
}

json growth_json(const std::vector<GrowthPoint>& g) {
  json out = json::array();
  for (const auto& p : g) out.push_back(json::array({p.radius, p.dim}));
  return out;
}

// Supported on Minus vertices (w^n, b) with n >= k.
bool minus_from(const Induced& f, unsigned k) {
  for (const auto& e : f) {
    Vertex v = CInd::vertex_of(e.first);
    if (v.side != Side::Minus || v.n < k) return false;
  }
  return true;
}

Poly poly_mul_linear(const GF& F, const Poly& P, Fe root) {
  Poly out;
  out.c.assign(P.c.size() + 1, 0);
  for (size_t i = 0; i < P.c.size(); ++i) {
    out.c[i + 1] = F.add(out.c[i + 1], P.c[i]);
    out.c[i] = F.sub(out.c[i], F.mul(root, P.c[i]));
  }
  return out;
}

// P = c T^k with no extra relation: the supersingular models of the nilpotence statement.
bool monomial_model(const Model& M) {
  if (M.scenario.rel != RelPreset::None || M.P.is_zero()) return false;
  for (unsigned i = 0; i < M.P.degree(); ++i)
    if (M.P.c[i]) return false;
  return true;
}

std::string opt_str(const std::optional<unsigned>& v) { return v ? std::to_string(*v) : "none"; }

}  // namespace

// ---------------------------------------------------------------- suites

void suite_decompositions(const Model& M, Report& R) {
  const Gl2& G = M.ctx->group;
  size_t n = M.scenario.samples;
  // Inverting an element of radius r costs r digits of precision.
  unsigned maxr = std::min(6u, M.scenario.precision() / 3);
  std::atomic<size_t> bad_cartan{0}, bad_iw{0}, bad_k{0}, bad_tail{0};
  parallel_for(n, [&](size_t i) {
    auto rng = sample_rng(M.scenario.seed, 1, i);
    GElt g = G.random_element(rng, maxr);
    CosetWord w = G.cartan_word(g);
    if (!G.equal(G.reassemble(w), g) || w.length() != G.length(g)) ++bad_cartan;

    auto [v, t] = G.vertex_tail(g);
    if (!G.member(t, Subgroup{Subgroup::KZ, 0}) || !G.equal(G.mul(G.vertex_rep(v), t), g)) ++bad_tail;

    GElt h = G.random_I1(rng);
    IwahoriFactors fac = G.iwahori_factor(h);
    const LocalRing& Rg = G.ring();
    bool shapes = Rg.is_zero(fac.upper.c) && Rg.is_zero(fac.diag.b) && Rg.is_zero(fac.diag.c) &&
                  Rg.is_zero(fac.lower.b) && Rg.val(fac.lower.c) >= 1;
    if (!shapes || !G.equal(G.mul(fac.upper, G.mul(fac.diag, fac.lower)), h)) ++bad_iw;

    GElt k = G.random_K(rng);
    KCoset kc = G.k_coset(k);
    bool ok = G.member(kc.i, Subgroup{Subgroup::I, 0}) &&
              G.equal(kc.in_I ? kc.i : G.mul(G.k_lambda(kc.lambda), kc.i), k);
    if (!ok) ++bad_k;
  });
  R.add("decomp.cartan-word", "0 fail", fails_str(bad_cartan, n), bad_cartan == 0);
  R.add("decomp.iwahori", "0 fail", fails_str(bad_iw, n), bad_iw == 0);
  R.add("decomp.k-coset", "0 fail", fails_str(bad_k, n), bad_k == 0);
  R.add("decomp.vertex-tail", "0 fail", fails_str(bad_tail, n), bad_tail == 0);
}

constexpr double kCorrectionBudget = 2e7;

void suite_hecke(const Model& M, Report& R) {
  const CInd& V = *M.V;
  const Hecke& H = *M.H;
  const Gl2& G = M.ctx->group;
  const GF& F = V.F();
  const Weight& w = *M.weight;
  unsigned q = M.ctx->ring.q();

  // T on [Id, v0].
  std::vector<Entry> acc;
  for (Fe l = 0; l < q; ++l)
    for (const auto& e : V.inject(G.g_lambda(l), w.v0())) acc.push_back(e);
  if (w.dim() == 1) {
    Fe sign = w.spec().a % 2 ? F.neg(1) : 1;
    for (const auto& e : V.inject(G.pi(), w.v0())) acc.emplace_back(e.first, F.mul(sign, e.second));
    if (w.spec().a % 2)
      R.warnings.push_back("hecke.t-v0: odd determinant twist, the [Pi, v0] term carries the sign -1");
  }
  Induced expected = sv_collect(F, std::move(acc));
  R.add_true("hecke.t-v0", H.T(H.id_v0()) == expected);

  // Equivariance and s S = Pi + R on random samples.
  auto verts = V.ball(2);
  size_t n = M.scenario.samples;
  std::atomic<size_t> bad_eq{0}, bad_sS{0};
  parallel_for(n, [&](size_t i) {
    auto rng = sample_rng(M.scenario.seed, 2, i);
    GElt g = G.random_element(rng, 2);
    Induced f = random_induced(V, verts, rng, 1 + static_cast<unsigned>(rng() % 3));
    if (H.T(V.g_act(g, f)) != V.g_act(g, H.T(f))) ++bad_eq;
    Induced lhs = V.g_act(G.s(), H.S(f));
    Induced rhs = V.g_act(G.pi(), f);
    sv_axpy(F, rhs, 1, H.R_op(f));
    if (lhs != rhs) ++bad_sS;
  });
  R.add("hecke.equivariance", "0 fail", fails_str(bad_eq, n), bad_eq == 0);
  R.add("hecke.s-S-identity", "0 fail", fails_str(bad_sS, n), bad_sS == 0);

  // Graded split of T on R_n^-.
  for (unsigned k : {1u, 2u}) {
    Subspace plus(F), minus(F);
    uint64_t count = M.ctx->ring.count(k);
    for (uint64_t b = 0; b < count; ++b)
      for (unsigned j = 0; j < V.dim(); ++j) {
        auto [tp, tm] = H.T_plus_minus(V.basis(Vertex{Side::Minus, k, b}, j));
        plus.insert(std::move(tp));
        minus.insert(std::move(tm));
      }
    std::string s = ".n" + std::to_string(k);
    R.add_eq("hecke.t-split" + s + ".plus-rank", count * V.dim(), plus.dim());
    R.add_eq("hecke.t-split" + s + ".minus-rank", M.ctx->ring.count(k - 1) * V.dim(), minus.dim());
  }

  // Correction of Minus elements modulo P(T) for split P of degree 1, 2, 3.
  Fe third = F.from_int(2);
  Poly P{{F.neg(1), 1}};
  for (unsigned deg = 1; deg <= 3; ++deg) {
    if (deg == 2) P = poly_mul_linear(F, P, 0);
    if (deg == 3) P = poly_mul_linear(F, P, third);
    // Each level of the correction spreads over up to min(dim, q) children, and
    // checking it applies T deg more times.
    double cost = std::pow(double(std::min(V.dim(), q)) * (q + 1), deg);
    if (cost > kCorrectionBudget) {
      R.warnings.push_back("hecke.pt-correction.deg" + std::to_string(deg) + ": skipped, estimated " +
                           std::to_string(static_cast<uint64_t>(cost)) + " block operations per sample");
      continue;
    }
    size_t m = std::max<size_t>(10, n / 20), bad = 0;
    for (size_t i = 0; i < m; ++i) {
      auto rng = sample_rng(M.scenario.seed, 3 + deg, i);
      unsigned k = 1 + static_cast<unsigned>(rng() % 2);
      std::vector<Vertex> grade;
      for (uint64_t b = 0; b < M.ctx->ring.count(k); ++b) grade.push_back(Vertex{Side::Minus, k, b});
      Induced f = random_induced(V, grade, rng, 2);
      auto corr = H.pt_correction(f, P);
      Induced lhs = f;
      sv_axpy(F, lhs, 1, corr.f_prime);
      bool ok = H.apply(P, corr.preimage) == lhs && minus_from(corr.f_prime, k + 1) && minus_from(corr.preimage, k + 1);
      if (!ok) ++bad;
    }
    R.add("hecke.pt-correction.deg" + std::to_string(deg), "0 fail", fails_str(bad, m), bad == 0);
  }
}

void suite_s_operator(const Model& M, Report& R, unsigned max_n) {
  const CInd& V = *M.V;
  const Hecke& H = *M.H;
  const Gl2& G = M.ctx->group;
  const LocalRing& Rg = M.ctx->ring;
  unsigned q = Rg.q();
  Induced sn = H.id_v0();
  for (unsigned n = 0; n <= max_n; ++n) {
    if (n) sn = H.S(sn);
    FullInduction A(V, n);
    // Generators deep enough to fix every vertex of the sphere act block by block.
    std::vector<GElt> fix, rest;
    for (auto& g : G.generators(Subgroup{Subgroup::UplusO, 0}, n))
      (n > 0 && G.member(g, Subgroup{Subgroup::Kn, n}) ? fix : rest).push_back(g);
    std::vector<Vertex> verts;
    for (uint64_t b = 0; b < Rg.count(n); ++b) verts.push_back(Vertex{Side::Plus, n, b});
    std::vector<Induced> basis;
    if (fix.empty()) {
      for (const auto& x : verts)
        for (unsigned j = 0; j < V.dim(); ++j) basis.push_back(V.basis(x, j));
    } else {
      basis = local_fixed_vectors(V, fix, verts);
    }
    std::reverse(rest.begin(), rest.end());
    Subspace inv = invariants_span(A, rest, std::move(basis), n);
    std::string s = ".n" + std::to_string(n);
    R.add_eq("sop.rplus-invariants" + s, 1, inv.dim());
    R.add_true("sop.rplus-generator" + s, !sn.empty() && inv.contains(sn));

    if (n > 3 || q > 9) continue;
    auto mb = H.m_n_plus_basis(n);
    Subspace span = span_of(V.F(), mb);
    uint64_t qn = Rg.count(n);
    R.add_eq("sop.mplus-rank" + s, qn, span.dim());
    size_t moved = 0;
    for (unsigned k = n; k <= n + 1; ++k)
      for (Fe mu = 1; mu < q; ++mu) {
        GElt u = G.upper(Rg.mul_pi(Rg.teich(mu), k));
        for (const auto& v : mb)
          if (V.g_act(u, v) != v) ++moved;
      }
    R.add("sop.mplus-fixed" + s, "0 moved", std::to_string(moved) + " moved", moved == 0);
    auto socle = invariants_span(A, G.generators(Subgroup{Subgroup::UplusO, 0}, n), mb, n);
    R.add_eq("sop.mplus-socle" + s, 1, socle.dim());
  }
}

void suite_d1(const Model& M, Report& R) {
  auto Q = M.quotient();
  const CInd& V = *M.V;
  unsigned n = M.scenario.N - 1;
  D1Result d1 = d1_compute(*Q, n);
  for (const auto& g : d1.growth) R.series["d1.growth"].emplace_back(g.radius, g.dim);
  R.data["d1"] = json{{"dim", d1.basis.dim()}, {"stability_flag", d1.stable}, {"growth", growth_json(d1.growth)}};
  if (!d1.stable) R.warnings.push_back("d1: dimension still changing at radius " + std::to_string(n));
  Fe lambda;
  if (M.linear(&lambda)) {
    R.add_eq("d1.dim", 2, d1.basis.dim());
    Subspace ref = span_of(V.F(), {Q->reduce(M.H->id_v0()), Q->reduce(M.H->pi_v0())});
    R.add_true("d1.basis", same_span(ref, d1.basis));
    R.add_true("d1.stable", d1.stable);
  } else if (M.scenario.rel == RelPreset::Special) {
    R.add_eq("d1.dim", 1, d1.basis.dim());
    R.add_true("d1.basis", same_span(span_of(V.F(), {Q->reduce(M.H->id_v0())}), d1.basis));
    R.add_true("d1.stable", d1.stable);
  } else {
    R.warnings.push_back("d1: no closed-form expectation for this model; growth reported only");
  }
}

void suite_invariants(const Model& M, Report& R) {
  auto Q = M.quotient();
  const CInd& V = *M.V;
  const GF& F = V.F();
  unsigned n = M.scenario.N - 1;
  D1Result d1 = d1_compute(*Q, n);
  Subspace i1 = invariants(*Q, Subgroup{Subgroup::I1, 0}, n);
  D0Result d0 = d0_compute(*Q, d1.basis, n);
  Subspace k1 = invariants(*Q, Subgroup{Subgroup::Kn, 1}, n);
  R.data["invariants"] = json{{"radius", n}, {"d1", d1.basis.dim()}, {"i1", i1.dim()}, {"d0", d0.basis.dim()},
                              {"k1", k1.dim()}, {"d0_truncated", d0.truncated}};
  if (d0.truncated) R.warnings.push_back("invariants: K-closure of D1 reached the ball boundary");

  // D0 cap Pi(D0), computed inside the ball.
  Subspace pid0(F);
  bool fits = true;
  for (const auto& v : d0.basis.basis()) {
    Induced t = V.g_act(M.ctx->group.pi(), v);
    if (CInd::radius(t) > Q->N()) fits = false;
    else pid0.insert(Q->reduce(t));
  }
  Fe lambda = 0;
  bool lin = M.linear(&lambda);
  bool special = M.scenario.rel == RelPreset::Special;
  bool admissible = special || (lin && (lambda != 0 || M.scenario.backend == Backend::Mixed));
  if (lin && !admissible)
    R.warnings.push_back("invariants: lambda = 0 in equal characteristic, pro-p invariants are not finite; reported only");
  if (!lin && !special) R.warnings.push_back("invariants: no closed-form expectation for this model; reported only");
  if (admissible) {
    R.add_eq("inv.i1.dim", special ? 1 : 2, i1.dim());
    R.add_true("inv.i1-equals-d1", same_span(i1, d1.basis));
    if (fits) R.add_true("inv.d1-equals-d0-meet-pi-d0", same_span(intersect(F, d0.basis, pid0), d1.basis));
    else R.warnings.push_back("invariants: Pi(D0) leaves the ball; meet check skipped");
  }
  if (lin && admissible && lambda != 0) R.add_true("inv.d0-equals-k1", same_span(d0.basis, k1));
  if (lin && admissible && lambda == 0) {
    // Supersingular: D0 is the K-socle. It splits as the spans of the two I1-lines,
    // each with a single I1-line and hence irreducible.
    Subspace a = k_closure(*Q, {Q->reduce(M.H->id_v0())}, n);
    Subspace b = k_closure(*Q, {Q->reduce(M.H->pi_v0())}, n);
    bool direct = intersect(F, a, b).dim() == 0 && a.dim() + b.dim() == d0.basis.dim();
    bool simple = intersect(F, a, i1).dim() == 1 && intersect(F, b, i1).dim() == 1;
    R.add_true("inv.d0-k-socle", direct && simple,
               std::to_string(a.dim()) + " + " + std::to_string(b.dim()) + (simple ? "" : ", not simple"));
    R.add_eq("inv.d0.dim", M.ctx->ring.q() + 1, d0.basis.dim());
  }
  if (special) {
    R.add_eq("inv.d0.dim", V.dim(), d0.basis.dim());
    std::vector<Induced> img;
    for (unsigned j = 0; j < V.dim(); ++j) img.push_back(Q->reduce(V.basis(Vertex{}, j)));
    R.add_true("inv.d0-image-of-sigma", same_span(span_of(F, img), d0.basis));
  }

  // Level function on V(sigma, lambda) with dim sigma >= 2.
  if (lin && V.dim() >= 2 && Q->N() >= 4) {
    LevelFiltration L(*Q, Q->N() - 2);
    json layers = json::array();
    for (unsigned k = 0; k < L.computed(); ++k) layers.push_back(L.layer(k).dim());
    R.data["level_layers"] = layers;
    std::vector<Fe> top(V.dim(), 0);
    top[0] = 1;
    Induced x = V.inject(M.ctx->group.identity(), top);
    auto l1 = L.level(x), l2 = L.level(M.H->S(x));
    R.add("level.id-top", "1", opt_str(l1), l1 == 1u);
    R.add("level.s-id-top", "2", opt_str(l2), l2 == 2u);
    // Alternative decomposition differing by a D1 vector.
    Induced v = Q->reduce(M.H->S(x));
    sv_axpy(F, v, 1, V.g_act(M.ctx->group.pi(), x));
    v = Q->reduce(v);
    auto [vp, vm] = L.split(v);
    size_t bad = 0, tried = 0;
    auto base = L.level(vp, vm);
    for (const auto& d : d1.basis.basis()) {
      Induced ap = vp, am = vm;
      sv_axpy(F, ap, 1, d);
      sv_axpy(F, am, F.neg(1), d);
      ++tried;
      if (L.level(ap, am) != base) ++bad;
    }
    R.add("level.decomposition-independent", "0 fail", fails_str(bad, tried), bad == 0 && base.has_value());
  }
}

void suite_nilpotence(const Model& M, Report& R, unsigned max_order) {
  auto Q = M.quotient();
  const CInd& V = *M.V;
  unsigned N = Q->N();
  if (N < 3) throw ConfigError("nilpotence needs radius at least 3");
  unsigned probe = std::min(max_order + 1, N - 2);
  size_t total = 0, ok = 0;
  json orders = json::array();
  for (unsigned n = 0; n <= 2; ++n)
    for (uint64_t b = 0; b < M.ctx->ring.count(n); ++b)
      for (unsigned j = 0; j < V.dim(); ++j) {
        ++total;
        auto m = s_nilpotence_order(*Q, V.basis(Vertex{Side::Plus, n, b}, j), probe);
        if (m && *m <= max_order) ++ok;
        orders.push_back(m ? json(*m) : json(nullptr));
      }
  R.data["nilpotence"] = json{{"probe", probe}, {"orders", orders}};
  std::string got = std::to_string(ok) + " of " + std::to_string(total);
  if (monomial_model(M) && M.scenario.backend == Backend::Equal) {
    R.add("nil.plus-ball2", std::to_string(total) + " of " + std::to_string(total) + " with order <= " + std::to_string(max_order),
          got, ok == total);
  } else {
    R.warnings.push_back("nilpotence: expectation applies to P = T^k in equal characteristic; reported only (" + got + ")");
  }
}

void suite_presentation(const Model& M, Report& R, unsigned radius) {
  auto Q = M.quotient();
  unsigned n = M.scenario.N - 1;
  D1Result d1 = d1_compute(*Q, n);
  D0Result d0 = d0_compute(*Q, d1.basis, n);
  if (d0.truncated) R.warnings.push_back("presentation: K-closure of D1 reached the ball boundary");
  SubRep W(*Q, d0.basis);
  CInd VW(W);
  R0Set r0 = r0_generators(W, VW);
  R.add_eq("pres.r0-count", r0.meet.dim(), r0.relations.size());
  R.add_true("pres.r0-shift-identity", r0.identity_holds);
  std::vector<Induced> bd;
  for (const auto& x : d1.basis.basis()) bd.push_back(boundary_apply(W, VW, d1.basis, x, M.ctx->group.identity()));
  size_t nonzero = 0;
  for (const auto& x : bd)
    if (!to_ambient(W, VW, x).empty()) ++nonzero;
  R.add("pres.boundary-vanishes", "0 nonzero", std::to_string(nonzero) + " nonzero", nonzero == 0);
  Subspace a = edge_span(VW, r0.shifted, radius), b = edge_span(VW, bd, radius);
  R.add("pres.span-equals-boundary-image", "equal", std::to_string(a.dim()) + " vs " + std::to_string(b.dim()),
        same_span(a, b));
  R.data["presentation"] = json{{"d0", d0.basis.dim()}, {"meet", r0.meet.dim()}, {"span_dim", a.dim()}, {"radius", radius}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"decompositions", "hecke",   "s-operator", "d1-dims",
                                              "invariants",     "char-p-nilpotence", "presentation", "all"};
  return names;
}

Report run_suite(const std::string& name, const Scenario& s) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw ConfigError("unknown suite '" + name + "'");
  Model M(s);
  Report R;
  R.suite = name;
  R.scenario = s.to_json();
  auto guarded = [&](const std::string& tag, auto&& fn) {
    try {
      fn();
    } catch (const InstabilityError& e) {
      R.add(tag + ".completed", "true", std::string("unstable: ") + e.what(), false);
    } catch (const PrecisionError& e) {
      R.add(tag + ".completed", "true", std::string("precision: ") + e.what(), false);
    } catch (const InternalError& e) {
      R.add(tag + ".completed", "true", std::string("internal: ") + e.what(), false);
    }
  };
  bool all = name == "all";
  if (all || name == "decompositions") guarded("decomp", [&] { suite_decompositions(M, R); });
  if (all || name == "hecke") guarded("hecke", [&] { suite_hecke(M, R); });
  if (all || name == "s-operator") guarded("sop", [&] { suite_s_operator(M, R, std::min(s.N, 4u)); });
  if (all || name == "d1-dims") guarded("d1", [&] { suite_d1(M, R); });
  if (all || name == "invariants") guarded("inv", [&] { suite_invariants(M, R); });
  if (name == "char-p-nilpotence" || (all && monomial_model(M) && s.backend == Backend::Equal))
    guarded("nil", [&] { suite_nilpotence(M, R, 5); });
  if (all || name == "presentation") guarded("pres", [&] { suite_presentation(M, R, 3); });
  R.finalize();
  return R;
}

// ---------------------------------------------------------------- elements

json element_to_json(const CInd& V, const Induced& f) {
  json out = json::array();
  size_t i = 0;
  while (i < f.size()) {
    Vertex x = CInd::vertex_of(f[i].first);
    std::vector<Fe> vec(V.dim(), 0);
    for (; i < f.size() && CInd::vertex_of(f[i].first) == x; ++i) vec[CInd::basis_of(f[i].first)] = f[i].second;
    out.push_back(json{{"side", x.side == Side::Plus ? "+" : "-"}, {"n", x.n}, {"b", x.b}, {"vector", vec}});
  }
  return out;
}

Induced element_from_json(const CInd& V, const json& j) {
  if (!j.is_array()) throw ConfigError("element must be a JSON list of {side, n, b, vector}");
  std::vector<Entry> acc;
  try {
    for (const auto& blk : j) {
      Vertex x;
      std::string side = blk.at("side");
      if (side == "+") x.side = Side::Plus;
      else if (side == "-") x.side = Side::Minus;
      else throw ConfigError("side must be '+' or '-'");
      x.n = blk.at("n");
      x.b = blk.at("b");
      if (x.n > 32 || x.b >= V.ctx().ring.count(x.n)) throw ConfigError("vertex index out of range");
      std::vector<Fe> vec = blk.at("vector");
      if (vec.size() != V.dim()) throw ConfigError("vector length must equal the weight dimension");
      for (unsigned k = 0; k < vec.size(); ++k) {
        if (!V.F().valid(vec[k])) throw ConfigError("coefficient out of range");
        if (vec[k]) acc.emplace_back(CInd::key(x, k), vec[k]);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad element: ") + e.what());
  }
  return sv_collect(V.F(), std::move(acc));
}

// ---------------------------------------------------------------- commands

Report run_command(const std::string& cmd, const std::string& op, const Scenario& s, const json& args) {
  Model M(s);
  Report R;
  R.suite = cmd + " " + op;
  R.scenario = s.to_json();
  const CInd& V = *M.V;
  auto element_arg = [&](const char* key) {
    if (!args.contains(key)) throw ConfigError(std::string("missing argument '") + key + "'");
    return element_from_json(V, args.at(key));
  };
  if (cmd == "cind") {
    Induced f = element_arg("element");
    Induced out;
    if (op == "act") {
      if (!args.contains("g")) throw ConfigError("missing argument 'g'");
      out = V.g_act(M.ctx->group.parse(args.at("g").get<std::string>()), f);
    } else if (op == "T") {
      out = M.H->T(f);
    } else if (op == "S") {
      out = M.H->S(f);
    } else {
      throw ConfigError("cind operation must be act, T or S");
    }
    R.data["result"] = element_to_json(V, out);
  } else if (cmd == "quotient") {
    if (op != "make") throw ConfigError("quotient operation must be make");
    auto Q = M.quotient();
    json kd = json::array(), kg = json::array(), bd = json::array();
    uint64_t prev = 0;
    for (unsigned n = 0; n <= Q->N(); ++n) {
      uint64_t k = Q->kernel_dim(n);
      kd.push_back(k);
      kg.push_back(k - prev);
      prev = k;
      bd.push_back(V.ball_dim(n));
      R.series["quotient.dim"].emplace_back(n, V.ball_dim(n) - k);
    }
    R.data["kernel_dim_by_radius"] = kd;
    R.data["kernel_dim_by_grade"] = kg;
    R.data["ball_dims"] = bd;
    R.data["extras_dim"] = Q->extras().dim();
    R.data["translates"] = Q->translate_count();
  } else if (cmd == "diagram") {
    auto Q = M.quotient();
    unsigned n = args.value("n", s.N - 1);
    if (op == "d1") {
      D1Result d1 = d1_compute(*Q, n);
      R.data["dim"] = d1.basis.dim();
      R.data["basis"] = subspace_json(V, d1.basis);
      R.data["stability_flag"] = d1.stable;
      R.data["growth"] = growth_json(d1.growth);
      for (const auto& g : d1.growth) R.series["d1.growth"].emplace_back(g.radius, g.dim);
      if (!d1.stable) R.warnings.push_back("d1: dimension still changing at radius " + std::to_string(n));
    } else if (op == "d0") {
      D1Result d1 = d1_compute(*Q, n);
      D0Result d0 = d0_compute(*Q, d1.basis, n);
      R.data["dim"] = d0.basis.dim();
      R.data["basis"] = subspace_json(V, d0.basis);
      R.data["truncated"] = d0.truncated;
      if (d0.truncated) R.warnings.push_back("d0: K-closure reached the ball boundary");
    } else if (op == "level") {
      unsigned bound = args.value("bound", s.N >= 2 ? s.N - 2 : 0u);
      LevelFiltration L(*Q, bound);
      json layers = json::array();
      for (unsigned k = 0; k < L.computed(); ++k) layers.push_back(L.layer(k).dim());
      R.data["layers"] = layers;
      if (args.contains("element")) {
        auto l = L.level(element_arg("element"));
        R.data["level"] = l ? json(*l) : json(nullptr);
        if (!l) R.warnings.push_back("level: not reached within the computed layers");
      }
    } else if (op == "r0") {
      D1Result d1 = d1_compute(*Q, n);
      D0Result d0 = d0_compute(*Q, d1.basis, n);
      SubRep W(*Q, d0.basis);
      CInd VW(W);
      R0Set r0 = r0_generators(W, VW);
      R.data["meet_dim"] = r0.meet.dim();
      R.data["relations"] = r0.relations.size();
      R.data["identity_holds"] = r0.identity_holds;
      json rels = json::array();
      for (const auto& r : r0.relations) rels.push_back(element_to_json(VW, r));
      R.data["relations_in_induction"] = rels;
    } else {
      throw ConfigError("diagram operation must be d1, d0, level or r0");
    }
  } else {
    throw ConfigError("unknown command '" + cmd + "'");
  }
  R.finalize();
  return R;
}

// ---------------------------------------------------------------- emit

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw ConfigError("format must be json, csv or table");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit(const Report& r, Format fmt) {
  std::ostringstream os;
  switch (fmt) {
    case Format::Json: {
      if (r.empty()) return "[]\n";
      json checks = json::array();
      for (const auto& c : r.checks)
        checks.push_back(json{{"statement_id", c.id}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
      json series = json::object();
      for (const auto& [k, v] : r.series) {
        json pts = json::array();
        for (const auto& [x, y] : v) pts.push_back(json::array({x, y}));
        series[k] = pts;
      }
      json out{{"schema_version", kSchemaVersion}, {"suite", r.suite},   {"scenario", r.scenario},
               {"passed", r.passed()},           {"checks", checks},   {"warnings", r.warnings},
               {"series", series},               {"data", r.data}};
      os << out.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "statement_id,expected,got,pass\n";
      for (const auto& c : r.checks)
        os << csv_field(c.id) << ',' << csv_field(c.expected) << ',' << csv_field(c.got) << ','
           << (c.pass ? "true" : "false") << "\n";
      if (!r.series.empty()) {
        os << "\nseries,radius,dim\n";
        for (const auto& [k, v] : r.series)
          for (const auto& [x, y] : v) os << csv_field(k) << ',' << x << ',' << y << "\n";
      }
      break;
    case Format::Table: {
      char line[512];
      std::snprintf(line, sizeof line, "%-40s %-24s %-24s %s\n", "statement_id", "expected", "got", "pass");
      os << line;
      for (const auto& c : r.checks) {
        std::snprintf(line, sizeof line, "%-40s %-24s %-24s %s\n", c.id.c_str(), c.expected.c_str(), c.got.c_str(),
                      c.pass ? "PASS" : "FAIL");
        os << line;
      }
      for (const auto& w : r.warnings) os << "warning: " << w << "\n";
      for (const auto& [k, v] : r.series) {
        std::snprintf(line, sizeof line, "%-40s %8s %12s\n", k.c_str(), "radius", "dim");
        os << line;
        for (const auto& [x, y] : v) {
          std::snprintf(line, sizeof line, "%-40s %8u %12llu\n", "", x, static_cast<unsigned long long>(y));
          os << line;
        }
      }
      break;
    }
  }
  return os.str();
}

}  // namespace modp
