#include "localring.hpp"

#include <sstream>

namespace modp {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

unsigned residue_degree_guard(Backend b, unsigned f) {
  if (b == Backend::Mixed && f != 1)
    throw ConfigError("mixed characteristic is supported only for q = p (f = 1)");
  return f;
}

}  // namespace

LocalRing::LocalRing(Backend backend, unsigned p, unsigned f, unsigned N)
    : backend_(backend), p_(p), f_(residue_degree_guard(backend, f)), N_(N), res_(p, f) {
  q_ = res_.order();
  if (N < 1 || N > kMaxPrec) throw ConfigError("precision N must lie in [1, 32]");
  if (backend_ == Backend::Equal) {
    if (q_ > 256) throw ConfigError("equal-characteristic residue field must have q <= 256");
  } else {
    unsigned __int128 v = 1;
    for (unsigned i = 0; i < N; ++i) v *= p;
    if (v >= (static_cast<unsigned __int128>(1) << 62))
      throw ConfigError("p^N too large for the mixed-characteristic backend");
    pN_ = static_cast<uint64_t>(v);
  }
}

Scalar LocalRing::from_int(long long v) const {
  Scalar s;
  if (backend_ == Backend::Mixed) {
    long long r = v % static_cast<long long>(pN_);
    if (r < 0) r += static_cast<long long>(pN_);
    s.m = static_cast<uint64_t>(r);
  } else {
    s.d[0] = static_cast<uint8_t>(res_.from_int(v));
  }
  return s;
}

Scalar LocalRing::teich(Fe lambda) const {
  if (lambda >= q_) throw DomainError("residue element out of range");
  Scalar s;
  if (backend_ == Backend::Equal) {
    s.d[0] = static_cast<uint8_t>(lambda);
    return s;
  }
  uint64_t x = lambda;
  for (unsigned it = 0; it <= N_ + 1; ++it) {
    uint64_t y = powmod(x, p_, pN_);
    if (y == x) break;
    x = y;
  }
  s.m = x;
  return s;
}

Scalar LocalRing::add(const Scalar& a, const Scalar& b) const {
  Scalar s;
  if (backend_ == Backend::Mixed) {
    s.m = a.m + b.m;
    if (s.m >= pN_) s.m -= pN_;
  } else {
    for (unsigned i = 0; i < N_; ++i) s.d[i] = static_cast<uint8_t>(res_.add(a.d[i], b.d[i]));
  }
  return s;
}

Scalar LocalRing::neg(const Scalar& a) const {
  Scalar s;
  if (backend_ == Backend::Mixed) {
    s.m = a.m ? pN_ - a.m : 0;
  } else {
    for (unsigned i = 0; i < N_; ++i) s.d[i] = static_cast<uint8_t>(res_.neg(a.d[i]));
  }
  return s;
}

Scalar LocalRing::mul(const Scalar& a, const Scalar& b) const {
  Scalar s;
  if (backend_ == Backend::Mixed) {
    s.m = mulmod(a.m, b.m, pN_);
    return s;
  }
  for (unsigned i = 0; i < N_; ++i) {
    if (!a.d[i]) continue;
    for (unsigned j = 0; i + j < N_; ++j) {
      if (!b.d[j]) continue;
      s.d[i + j] = static_cast<uint8_t>(res_.add(s.d[i + j], res_.mul(a.d[i], b.d[j])));
    }
  }
  return s;
}

Scalar LocalRing::inv(const Scalar& a) const {
  if (!is_unit(a)) throw DomainError("inverse of a non-unit");
  Scalar s;
  if (backend_ == Backend::Mixed) {
    // extended Euclid on (a, p^N)
    __int128 r0 = static_cast<__int128>(pN_), r1 = a.m, t0 = 0, t1 = 1;
    while (r1) {
      __int128 qq = r0 / r1;
      __int128 tmp = r0 - qq * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - qq * t1;
      t0 = t1;
      t1 = tmp;
    }
    __int128 m = static_cast<__int128>(pN_);
    t0 %= m;
    if (t0 < 0) t0 += m;
    s.m = static_cast<uint64_t>(t0);
    return s;
  }
  Fe a0inv = res_.inv(a.d[0]);
  s.d[0] = static_cast<uint8_t>(a0inv);
  for (unsigned k = 1; k < N_; ++k) {
    Fe acc = 0;
    for (unsigned i = 1; i <= k; ++i)
      if (a.d[i] && s.d[k - i]) acc = res_.add(acc, res_.mul(a.d[i], s.d[k - i]));
    s.d[k] = static_cast<uint8_t>(res_.neg(res_.mul(a0inv, acc)));
  }
  return s;
}

unsigned LocalRing::val(const Scalar& a) const {
  if (backend_ == Backend::Mixed) {
    if (a.m == 0) return N_;
    unsigned v = 0;
    uint64_t x = a.m;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    return v;
  }
  for (unsigned i = 0; i < N_; ++i)
    if (a.d[i]) return i;
  return N_;
}

Fe LocalRing::reduce(const Scalar& a) const {
  return backend_ == Backend::Mixed ? static_cast<Fe>(a.m % p_) : a.d[0];
}

Scalar LocalRing::mul_pi(const Scalar& a, unsigned k) const {
  Scalar s;
  if (k >= N_) return s;
  if (backend_ == Backend::Mixed) {
    uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p_;
    s.m = mulmod(a.m, pk, pN_);
  } else {
    for (unsigned i = k; i < N_; ++i) s.d[i] = a.d[i - k];
  }
  return s;
}

Scalar LocalRing::div_pi(const Scalar& a, unsigned k) const {
  if (k == 0) return a;
  Scalar s;
  if (k >= N_) return s;
  if (backend_ == Backend::Mixed) {
    uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p_;
    s.m = a.m / pk;
  } else {
    for (unsigned i = 0; i + k < N_; ++i) s.d[i] = a.d[i + k];
  }
  return s;
}

Scalar LocalRing::truncate(const Scalar& a, unsigned n) const {
  if (n >= N_) return a;
  Scalar s;
  if (backend_ == Backend::Mixed) {
    uint64_t pn = 1;
    for (unsigned i = 0; i < n; ++i) pn *= p_;
    s.m = a.m % pn;
  } else {
    for (unsigned i = 0; i < n; ++i) s.d[i] = a.d[i];
  }
  return s;
}

uint64_t LocalRing::count(unsigned n) const {
  uint64_t c = 1;
  for (unsigned i = 0; i < n; ++i) c *= q_;
  return c;
}

uint64_t LocalRing::index(const Scalar& a, unsigned n) const {
  if (n > N_) throw PrecisionError("index beyond precision");
  if (backend_ == Backend::Mixed) return truncate(a, n).m;
  uint64_t v = 0;
  for (unsigned i = n; i-- > 0;) v = v * q_ + a.d[i];
  return v;
}

Scalar LocalRing::from_index(uint64_t idx, unsigned n) const {
  Scalar s;
  if (backend_ == Backend::Mixed) {
    s.m = idx % pN_;
    return s;
  }
  for (unsigned i = 0; i < n && i < N_; ++i) {
    s.d[i] = static_cast<uint8_t>(idx % q_);
    idx /= q_;
  }
  return s;
}

Scalar LocalRing::random(std::mt19937_64& rng) const {
  Scalar s;
  if (backend_ == Backend::Mixed) {
    s.m = std::uniform_int_distribution<uint64_t>(0, pN_ - 1)(rng);
  } else {
    std::uniform_int_distribution<unsigned> dist(0, q_ - 1);
    for (unsigned i = 0; i < N_; ++i) s.d[i] = static_cast<uint8_t>(dist(rng));
  }
  return s;
}

std::string LocalRing::str(const Scalar& a) const {
  if (backend_ == Backend::Mixed) return std::to_string(a.m);
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < N_; ++i) {
    if (!a.d[i]) continue;
    if (!first) os << '+';
    first = false;
    os << unsigned(a.d[i]);
    if (i == 1) os << "*w";
    if (i > 1) os << "*w^" << i;
  }
  return first ? "0" : os.str();
}

Scalar LocalRing::parse(const std::string& text) const {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ConfigError("empty scalar");
  if (backend_ == Backend::Mixed) {
    try {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw ConfigError("bad scalar '" + text + "'");
      return from_int(v);
    } catch (const std::logic_error&) {
      throw ConfigError("bad scalar '" + text + "'");
    }
  }
  Scalar out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    std::string term = s.substr(start, end - start);
    if (term.empty()) throw ConfigError("bad scalar '" + text + "'");
    unsigned coef = 1, expo = 0;
    size_t w = term.find('w');
    try {
      if (w == std::string::npos) {
        coef = static_cast<unsigned>(std::stoul(term));
      } else {
        std::string head = term.substr(0, w);
        if (!head.empty()) {
          if (head.back() != '*') throw ConfigError("bad scalar term '" + term + "'");
          coef = static_cast<unsigned>(std::stoul(head.substr(0, head.size() - 1)));
        }
        std::string tail = term.substr(w + 1);
        if (tail.empty()) {
          expo = 1;
        } else {
          if (tail[0] != '^') throw ConfigError("bad scalar term '" + term + "'");
          expo = static_cast<unsigned>(std::stoul(tail.substr(1)));
        }
      }
    } catch (const std::logic_error&) {
      throw ConfigError("bad scalar term '" + term + "'");
    }
    if (coef >= q_) throw ConfigError("residue digit out of range in '" + text + "'");
    if (expo < N_) out.d[expo] = static_cast<uint8_t>(res_.add(out.d[expo], coef));
    start = end + 1;
  }
  return out;
}

}  // namespace modp
