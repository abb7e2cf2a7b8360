#include "gl2.hpp"

#include <algorithm>
#include <sstream>

namespace modp {

std::string subgroup_name(const Subgroup& h) {
  switch (h.tag) {
    case Subgroup::K: return "K";
    case Subgroup::Z: return "Z";
    case Subgroup::KZ: return "KZ";
    case Subgroup::I: return "I";
    case Subgroup::I1: return "I1";
    case Subgroup::Kn: return "K_n:" + std::to_string(h.level);
    case Subgroup::In: return "I_n:" + std::to_string(h.level);
    case Subgroup::IZ: return "IZ";
    case Subgroup::Pplus: return "Pplus";
    case Subgroup::H: return "H";
    case Subgroup::UplusO: return "UplusO";
    case Subgroup::UminusP: return "UminusP";
  }
  return "?";
}

Subgroup parse_subgroup(const std::string& s) {
  static const std::pair<const char*, Subgroup::Tag> plain[] = {
      {"K", Subgroup::K},   {"Z", Subgroup::Z},         {"KZ", Subgroup::KZ},
      {"I", Subgroup::I},   {"I1", Subgroup::I1},       {"IZ", Subgroup::IZ},
      {"Pplus", Subgroup::Pplus}, {"H", Subgroup::H},   {"UplusO", Subgroup::UplusO},
      {"UminusP", Subgroup::UminusP}};
  for (const auto& [name, tag] : plain)
    if (s == name) return Subgroup{tag, 0};
  for (const auto& [prefix, tag] : {std::pair{"K_n:", Subgroup::Kn}, std::pair{"I_n:", Subgroup::In}}) {
    std::string pre = prefix;
    if (s.rfind(pre, 0) == 0) {
      try {
        unsigned lv = static_cast<unsigned>(std::stoul(s.substr(pre.size())));
        if (lv == 0) break;
        return Subgroup{tag, lv};
      } catch (const std::logic_error&) {
        break;
      }
    }
  }
  throw ConfigError("unknown subgroup '" + s + "'");
}

GElt Gl2::normalize(GElt x) const {
  const auto& R = *R_;
  if (x.prec <= 0) throw PrecisionError("group element lost all precision");
  unsigned P = static_cast<unsigned>(x.prec);
  unsigned v = std::min({R.val(x.a), R.val(x.b), R.val(x.c), R.val(x.d), P});
  if (v >= P) throw PrecisionError("group element entries vanish at precision");
  if (v > 0) {
    x.a = R.div_pi(x.a, v);
    x.b = R.div_pi(x.b, v);
    x.c = R.div_pi(x.c, v);
    x.d = R.div_pi(x.d, v);
    x.shift -= static_cast<int>(v);
    P -= v;
    x.prec = static_cast<int>(P);
  }
  x.a = R.truncate(x.a, P);
  x.b = R.truncate(x.b, P);
  x.c = R.truncate(x.c, P);
  x.d = R.truncate(x.d, P);
  Scalar det = R.sub(R.mul(x.a, x.d), R.mul(x.b, x.c));
  if (R.val(det) >= P) throw PrecisionError("determinant not certifiable at precision");
  return x;
}

GElt Gl2::make(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d, int shift) const {
  return normalize(GElt{a, b, c, d, shift, static_cast<int>(R_->N())});
}

GElt Gl2::identity() const { return make(R_->one(), R_->zero(), R_->zero(), R_->one()); }
GElt Gl2::pi() const { return make(R_->zero(), R_->one(), R_->uniformizer(), R_->zero()); }
GElt Gl2::pi_inv() const { return make(R_->zero(), R_->one(), R_->uniformizer(), R_->zero(), 1); }
GElt Gl2::s() const { return make(R_->zero(), R_->one(), R_->one(), R_->zero()); }
GElt Gl2::g_lambda(Fe l) const { return make(R_->uniformizer(), R_->teich(l), R_->zero(), R_->one()); }
GElt Gl2::k_lambda(Fe l) const { return make(R_->teich(l), R_->one(), R_->one(), R_->zero()); }
GElt Gl2::upper(const Scalar& x) const { return make(R_->one(), x, R_->zero(), R_->one()); }
GElt Gl2::lower(const Scalar& x) const { return make(R_->one(), R_->zero(), x, R_->one()); }
GElt Gl2::diag(const Scalar& x, const Scalar& y) const { return make(x, R_->zero(), R_->zero(), y); }
GElt Gl2::central(int e) const { return make(R_->one(), R_->zero(), R_->zero(), R_->one(), -e); }

GElt Gl2::mul(const GElt& x, const GElt& y) const {
  const auto& R = *R_;
  GElt r;
  r.a = R.add(R.mul(x.a, y.a), R.mul(x.b, y.c));
  r.b = R.add(R.mul(x.a, y.b), R.mul(x.b, y.d));
  r.c = R.add(R.mul(x.c, y.a), R.mul(x.d, y.c));
  r.d = R.add(R.mul(x.c, y.b), R.mul(x.d, y.d));
  r.shift = x.shift + y.shift;
  r.prec = std::min(x.prec, y.prec);
  return normalize(r);
}

GElt Gl2::inv(const GElt& x) const {
  const auto& R = *R_;
  Scalar det = R.sub(R.mul(x.a, x.d), R.mul(x.b, x.c));
  unsigned dv = R.val(det);
  if (static_cast<int>(dv) >= x.prec) throw PrecisionError("inverse: determinant not certifiable");
  Scalar ui = R.inv(R.div_pi(det, dv));
  GElt r;
  r.a = R.mul(ui, x.d);
  r.b = R.neg(R.mul(ui, x.b));
  r.c = R.neg(R.mul(ui, x.c));
  r.d = R.mul(ui, x.a);
  r.shift = static_cast<int>(dv) - x.shift;
  r.prec = x.prec - static_cast<int>(dv);
  return normalize(r);
}

bool Gl2::equal(const GElt& x, const GElt& y, int n) const {
  if (x.shift != y.shift) return false;
  if (n < 0) n = std::min(x.prec, y.prec);
  unsigned m = static_cast<unsigned>(n);
  const auto& R = *R_;
  return R.eq_mod(x.a, y.a, m) && R.eq_mod(x.b, y.b, m) && R.eq_mod(x.c, y.c, m) && R.eq_mod(x.d, y.d, m);
}

int Gl2::det_val(const GElt& x) const {
  const auto& R = *R_;
  return static_cast<int>(R.val(R.sub(R.mul(x.a, x.d), R.mul(x.b, x.c)))) - 2 * x.shift;
}

bool Gl2::member(const GElt& x, const Subgroup& h) const {
  const auto& R = *R_;
  unsigned P = static_cast<unsigned>(x.prec);
  auto v = [&](const Scalar& s) { return std::min(R.val(s), P); };
  Scalar one = R.one();
  bool det_unit = R.val(R.sub(R.mul(x.a, x.d), R.mul(x.b, x.c))) == 0;
  bool inK = x.shift == 0 && det_unit;
  auto teich_like = [&](const Scalar& s) { return R.is_unit(s) && R.eq_mod(s, R.teich(R.reduce(s)), P); };
  switch (h.tag) {
    case Subgroup::KZ: return det_unit;
    case Subgroup::K: return inK;
    case Subgroup::Z: return v(x.b) >= P && v(x.c) >= P && R.eq_mod(x.a, x.d, P);
    case Subgroup::I: return inK && v(x.c) >= 1;
    case Subgroup::IZ: return det_unit && v(x.c) >= 1;
    case Subgroup::I1:
      return inK && v(x.c) >= 1 && R.reduce(x.a) == 1 && R.reduce(x.d) == 1;
    case Subgroup::Kn:
      if (h.level >= P) throw PrecisionError("congruence level exceeds precision");
      return inK && v(R.sub(x.a, one)) >= h.level && v(x.b) >= h.level && v(x.c) >= h.level &&
             v(R.sub(x.d, one)) >= h.level;
    case Subgroup::In:
      if (h.level >= P) throw PrecisionError("congruence level exceeds precision");
      return inK && v(R.sub(x.a, one)) >= h.level && v(x.b) + 1 >= h.level && v(x.c) >= h.level &&
             v(R.sub(x.d, one)) >= h.level;
    case Subgroup::Pplus: {
      if (v(x.c) < P || x.shift < 0) return false;
      unsigned e = static_cast<unsigned>(x.shift);
      if (e >= P || v(x.d) != e) return false;
      if (!R.eq_mod(R.div_pi(x.d, e), one, P - e)) return false;
      return v(x.a) >= e && v(x.a) < P && v(x.b) >= e;
    }
    case Subgroup::H:
      return x.shift == 0 && v(x.b) >= P && v(x.c) >= P && teich_like(x.a) && teich_like(x.d);
    case Subgroup::UplusO:
      return x.shift == 0 && v(x.c) >= P && R.eq_mod(x.a, one, P) && R.eq_mod(x.d, one, P);
    case Subgroup::UminusP:
      return x.shift == 0 && v(x.b) >= P && v(x.c) >= 1 && R.eq_mod(x.a, one, P) && R.eq_mod(x.d, one, P);
  }
  return false;
}

std::vector<GElt> Gl2::generators(const Subgroup& h, unsigned n) const {
  const auto& R = *R_;
  std::vector<Scalar> basis;  // lifts of an F_p-basis of the residue field
  for (unsigned j = 0, c = 1; j < R.f(); ++j, c *= R.p()) basis.push_back(R.teich(c));
  Fe zeta = R.residue().generator();
  std::vector<GElt> out;
  auto ups = [&](unsigned from) {
    for (unsigned i = from; i <= n; ++i)
      for (const auto& m : basis) out.push_back(upper(R.mul_pi(m, i)));
  };
  auto lows = [&](unsigned from) {
    for (unsigned i = std::max(from, 1u); i <= n; ++i)
      for (const auto& m : basis) out.push_back(lower(R.mul_pi(m, i)));
  };
  auto tori = [&](unsigned from) {
    for (unsigned i = std::max(from, 1u); i <= n; ++i)
      for (const auto& m : basis) {
        Scalar u = R.add(R.one(), R.mul_pi(m, i));
        out.push_back(diag(u, R.one()));
        out.push_back(diag(R.one(), u));
      }
  };
  auto torus0 = [&] {
    if (R.q() > 2) {
      out.push_back(diag(R.teich(zeta), R.one()));
      out.push_back(diag(R.one(), R.teich(zeta)));
    }
  };
  switch (h.tag) {
    case Subgroup::UplusO: ups(0); break;
    case Subgroup::UminusP: lows(1); break;
    case Subgroup::I1: ups(0); tori(1); lows(1); break;
    case Subgroup::I: ups(0); tori(1); lows(1); torus0(); break;
    case Subgroup::IZ: ups(0); tori(1); lows(1); torus0(); out.push_back(central(1)); break;
    case Subgroup::K: ups(0); tori(1); lows(1); torus0(); out.push_back(s()); break;
    case Subgroup::KZ: ups(0); tori(1); lows(1); torus0(); out.push_back(s()); out.push_back(central(1)); break;
    case Subgroup::Kn: ups(h.level); tori(h.level); lows(h.level); break;
    case Subgroup::In: ups(h.level - 1); tori(h.level); lows(h.level); break;
    case Subgroup::H: torus0(); break;
    case Subgroup::Z:
      out.push_back(central(1));
      if (R.q() > 2) out.push_back(diag(R.teich(zeta), R.teich(zeta)));
      for (unsigned i = 1; i <= n; ++i)
        for (const auto& m : basis) {
          Scalar u = R.add(R.one(), R.mul_pi(m, i));
          out.push_back(diag(u, u));
        }
      break;
    case Subgroup::Pplus: throw DomainError("P+ is not compact; no finite generating set");
  }
  return out;
}

std::optional<std::pair<unsigned, Scalar>> Gl2::plus_coset(const GElt& g) const {
  const auto& R = *R_;
  unsigned P = static_cast<unsigned>(g.prec);
  auto cv = [&](const Scalar& x) { return std::min(R.val(x), P); };
  Scalar a = g.a, b = g.b, c = g.c, d = g.d;
  if (cv(c) < cv(d)) {
    std::swap(a, b);
    std::swap(c, d);
  }
  unsigned dl = cv(d);
  if (dl >= P) throw PrecisionError("vertex: bottom row vanishes at precision");
  Scalar udi = R.inv(R.div_pi(d, dl));
  Scalar t = R.mul(R.div_pi(c, dl), udi);
  Scalar a2 = R.sub(a, R.mul(t, b));
  unsigned P2 = P - dl;
  unsigned al = std::min(R.val(a2), P2);
  if (al >= P2) throw PrecisionError("vertex: diagonal entry vanishes at precision");
  if (al < dl || cv(b) < dl) return std::nullopt;
  unsigned m = al - dl;
  if (P < 2 * dl + m) throw PrecisionError("vertex: coset parameter beyond precision");
  Scalar x = R.truncate(R.div_pi(R.mul(b, udi), dl), m);
  return std::pair{m, x};
}

Vertex Gl2::vertex(const GElt& g) const {
  const auto& R = *R_;
  if (auto r = plus_coset(g)) return Vertex{Side::Plus, r->first, R.index(r->second, r->first)};
  GElt y;
  y.a = g.c;
  y.b = g.d;
  y.c = R.mul_pi(g.a, 1);
  y.d = R.mul_pi(g.b, 1);
  y.shift = g.shift + 1;
  y.prec = g.prec;
  y = normalize(y);
  auto r = plus_coset(y);
  if (!r) throw InternalError("vertex: element lies in neither Cartan half");
  return Vertex{Side::Minus, r->first, R.index(r->second, r->first)};
}

GElt Gl2::vertex_rep(const Vertex& v) const {
  const auto& R = *R_;
  Scalar B = R.from_index(v.b, v.n);
  if (v.side == Side::Plus) return make(R.mul_pi(R.one(), v.n), B, R.zero(), R.one());
  return make(R.zero(), R.one(), R.mul_pi(R.one(), v.n + 1), R.mul_pi(B, 1));
}

GElt Gl2::vertex_rep_inv(const Vertex& v) const {
  const auto& R = *R_;
  Scalar B = R.from_index(v.b, v.n);
  int n = static_cast<int>(v.n);
  if (v.side == Side::Plus) return make(R.one(), R.neg(B), R.zero(), R.mul_pi(R.one(), v.n), n);
  return make(R.neg(R.mul_pi(B, 1)), R.one(), R.mul_pi(R.one(), v.n + 1), R.zero(), n + 1);
}

std::pair<Vertex, GElt> Gl2::vertex_tail(const GElt& x) const {
  Vertex v = vertex(x);
  GElt t = mul(vertex_rep_inv(v), x);
  if (!member(t, Subgroup{Subgroup::KZ, 0})) throw InternalError("vertex tail not in KZ");
  return {v, t};
}

CosetWord Gl2::cartan_word(const GElt& x) const {
  const auto& R = *R_;
  Vertex v = vertex(x);
  GElt y = v.side == Side::Plus ? x : mul(pi_inv(), x);
  // Teichmuller digits of the coset parameter; lambda_1 is the lowest.
  Scalar rest = R.from_index(v.b, v.n);
  std::vector<Fe> low_first;
  Scalar xt = R.zero();
  for (unsigned i = 0; i < v.n; ++i) {
    Fe l = R.reduce(rest);
    low_first.push_back(l);
    xt = R.add(xt, R.mul_pi(R.teich(l), i));
    rest = R.div_pi(R.sub(rest, R.teich(l)), 1);
  }
  GElt pinv = make(R.one(), R.neg(xt), R.zero(), R.mul_pi(R.one(), v.n), static_cast<int>(v.n));
  CosetWord w;
  w.side = v.side;
  w.digits.assign(low_first.rbegin(), low_first.rend());
  w.tail = mul(pinv, y);
  if (!member(w.tail, Subgroup{Subgroup::KZ, 0})) throw InternalError("cartan word tail not in KZ");
  return w;
}

GElt Gl2::reassemble(const CosetWord& w) const {
  GElt g = w.side == Side::Minus ? pi() : identity();
  for (auto it = w.digits.rbegin(); it != w.digits.rend(); ++it) g = mul(g, g_lambda(*it));
  return mul(g, w.tail);
}

IwahoriFactors Gl2::iwahori_factor(const GElt& g) const {
  if (!member(g, Subgroup{Subgroup::I1, 0})) throw DomainError("iwahori_factor: element not in I1");
  const auto& R = *R_;
  Scalar di = R.inv(g.d);
  Scalar x = R.mul(g.b, di), y = R.mul(g.c, di);
  Scalar alpha = R.sub(g.a, R.mul(x, g.c));
  IwahoriFactors f{upper(x), diag(alpha, g.d), lower(y)};
  f.upper.prec = f.diag.prec = f.lower.prec = g.prec;
  return f;
}

KCoset Gl2::k_coset(const GElt& k) const {
  if (!member(k, Subgroup{Subgroup::K, 0})) throw DomainError("k_coset: element not in K");
  const auto& R = *R_;
  KCoset out;
  if (R.val(k.c) >= 1) {
    out.i = k;
    return out;
  }
  const auto& F = R.residue();
  out.in_I = false;
  out.lambda = F.div(R.reduce(k.a), R.reduce(k.c));
  GElt w = make(R.zero(), R.one(), R.one(), R.neg(R.teich(out.lambda)));
  out.i = mul(w, k);
  return out;
}

std::pair<Scalar, GElt> Gl2::rewrite_ip(const GElt& i, unsigned n, const Scalar& x) const {
  if (!member(i, Subgroup{Subgroup::IZ, 0})) throw DomainError("rewrite_ip: element not in IZ");
  const auto& R = *R_;
  GElt g = mul(i, make(R.mul_pi(R.one(), n), x, R.zero(), R.one()));
  auto [v, tail] = vertex_tail(g);
  if (v.side != Side::Plus || v.n != n) throw InternalError("rewrite_ip: grade not preserved");
  return {R.from_index(v.b, n), tail};
}

GElt Gl2::random_K(std::mt19937_64& rng) const {
  const auto& R = *R_;
  for (;;) {
    Scalar a = R.random(rng), b = R.random(rng), c = R.random(rng), d = R.random(rng);
    if (R.is_unit(R.sub(R.mul(a, d), R.mul(b, c)))) return make(a, b, c, d);
  }
}

GElt Gl2::random_I(std::mt19937_64& rng) const {
  const auto& R = *R_;
  for (;;) {
    Scalar a = R.random(rng), b = R.random(rng), c = R.mul_pi(R.random(rng), 1), d = R.random(rng);
    if (R.is_unit(a) && R.is_unit(d)) return make(a, b, c, d);
  }
}

GElt Gl2::random_I1(std::mt19937_64& rng) const {
  const auto& R = *R_;
  Scalar a = R.add(R.one(), R.mul_pi(R.random(rng), 1));
  Scalar d = R.add(R.one(), R.mul_pi(R.random(rng), 1));
  return make(a, R.random(rng), R.mul_pi(R.random(rng), 1), d);
}

GElt Gl2::random_element(std::mt19937_64& rng, unsigned max_radius) const {
  const auto& R = *R_;
  unsigned r = std::uniform_int_distribution<unsigned>(0, max_radius)(rng);
  Vertex v;
  if (r > 0) {
    v.side = (rng() & 1) ? Side::Minus : Side::Plus;
    v.n = v.side == Side::Plus ? r : r - 1;
  }
  v.b = std::uniform_int_distribution<uint64_t>(0, R.count(v.n) - 1)(rng);
  int e = std::uniform_int_distribution<int>(-2, 2)(rng);
  return mul(mul(vertex_rep(v), random_K(rng)), central(e));
}

std::string Gl2::str(const GElt& x) const {
  const auto& R = *R_;
  std::string s = "[[" + R.str(x.a) + "," + R.str(x.b) + "],[" + R.str(x.c) + "," + R.str(x.d) + "]]";
  if (x.shift != 0) s += " * w^" + std::to_string(-x.shift);
  return s;
}

GElt Gl2::parse(const std::string& text) const {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  int expo = 0;
  size_t star = s.find("]]*");
  std::string m = s;
  if (star != std::string::npos) {
    std::string tail = s.substr(star + 3);
    if (tail.rfind("w^", 0) != 0) throw ConfigError("bad matrix '" + text + "'");
    try {
      expo = std::stoi(tail.substr(2));
    } catch (const std::logic_error&) {
      throw ConfigError("bad matrix exponent in '" + text + "'");
    }
    m = s.substr(0, star + 2);
  }
  if (m.size() < 4 || m.substr(0, 2) != "[[" || m.substr(m.size() - 2) != "]]")
    throw ConfigError("bad matrix '" + text + "'");
  std::string body = m.substr(2, m.size() - 4);
  size_t mid = body.find("],[");
  if (mid == std::string::npos) throw ConfigError("bad matrix '" + text + "'");
  auto split2 = [&](const std::string& row) {
    size_t c = row.find(',');
    if (c == std::string::npos) throw ConfigError("bad matrix row '" + row + "'");
    return std::pair{R_->parse(row.substr(0, c)), R_->parse(row.substr(c + 1))};
  };
  auto [a, b] = split2(body.substr(0, mid));
  auto [c, d] = split2(body.substr(mid + 3));
  return make(a, b, c, d, -expo);
}

}  // namespace modp
