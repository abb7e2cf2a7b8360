#include "gf.hpp"

namespace modp {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<unsigned> digits_of(unsigned v, unsigned p, unsigned m) {
  std::vector<unsigned> d(m);
  for (unsigned i = 0; i < m; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

unsigned code_of(const std::vector<unsigned>& d, unsigned p) {
  unsigned v = 0;
  for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

}  // namespace

GF::GF(unsigned p, unsigned m) : p_(p), m_(m) {
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  if (m < 1 || m > kMaxDegree) throw ConfigError("field degree must lie in [1, 12]");
  uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) q *= p;
  if (q > kMaxOrder) throw ConfigError("field order p^m exceeds 65536");
  q_ = static_cast<unsigned>(q);

  neg_.resize(q_);
  for (Fe a = 0; a < q_; ++a) {
    auto d = digits_of(a, p_, m_);
    for (auto& x : d) x = (p_ - x) % p_;
    neg_[a] = code_of(d, p_);
  }

  // First primitive modulus in the order of its coefficient code.
  for (unsigned k = 1; k < q_; ++k) {
    auto c = digits_of(k, p_, m_);
    if (c[0] == 0) continue;
    mod_ = c;
    Fe x = 1;
    unsigned ord = 0;
    do {
      x = mul_t(x);
      ++ord;
    } while (x != 1 && ord < q_);
    if (ord == q_ - 1) break;
    mod_.clear();
  }
  if (mod_.empty()) throw InternalError("no primitive modulus found");

  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Fe x = 1;
  for (unsigned i = 0; i + 1 < q_; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = mul_t(x);
  }
  if (q_ <= 256) {
    add_.resize(size_t(q_) * q_);
    mul_.resize(size_t(q_) * q_);
    for (Fe a = 0; a < q_; ++a)
      for (Fe b = 0; b < q_; ++b) {
        auto da = digits_of(a, p_, m_), db = digits_of(b, p_, m_);
        for (unsigned i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
        add_[a * q_ + b] = code_of(da, p_);
        if (a == 0 || b == 0) {
          mul_[a * q_ + b] = 0;
        } else {
          unsigned s = (log_[a] + log_[b]) % (q_ - 1);
          mul_[a * q_ + b] = exp_[s];
        }
      }
  }
}

Fe GF::mul_t(Fe a) const {
  auto d = digits_of(a, p_, m_);
  unsigned top = d[m_ - 1];
  for (unsigned i = m_ - 1; i > 0; --i) d[i] = d[i - 1];
  d[0] = 0;
  for (unsigned i = 0; i < m_; ++i) d[i] = (d[i] + (p_ - mod_[i]) * top) % p_;
  return code_of(d, p_);
}

Fe GF::add(Fe a, Fe b) const {
  if (!add_.empty()) return add_[a * q_ + b];
  if (p_ == 2) return a ^ b;
  Fe r = 0, scale = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Fe GF::neg(Fe a) const { return neg_[a]; }

Fe GF::inv(Fe a) const {
  if (a == 0) throw DomainError("inverse of zero in finite field");
  unsigned l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Fe GF::pow(Fe a, uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

Fe GF::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Fe>(r);
}

Fe GF::frob(Fe a, unsigned j) const {
  uint64_t e = 1;
  for (unsigned i = 0; i < j % m_; ++i) e *= p_;
  return pow(a, e);
}

Fe GF::embedding_root(const GF& sub) const {
  if (sub.p() != p_ || m_ % sub.m() != 0)
    throw ConfigError("residue field F_" + std::to_string(sub.order()) +
                      " does not embed in coefficient field F_" + std::to_string(q_));
  const auto& h = sub.modulus();
  for (Fe beta = 0; beta < q_; ++beta) {
    Fe acc = 1, pw = 1;  // leading monic term handled last
    Fe val = 0;
    for (unsigned i = 0; i < h.size(); ++i) {
      val = add(val, mul(from_int(h[i]), pw));
      pw = mul(pw, beta);
    }
    acc = add(val, pw);
    if (acc == 0) return beta;
  }
  throw InternalError("embedding root not found");
}

Embedding::Embedding(const GF& small, const GF& big) {
  Fe beta = big.embedding_root(small);
  unsigned q = small.order();
  table_.resize(q);
  back_.assign(big.order(), -1);
  for (Fe a = 0; a < q; ++a) {
    Fe v = 0, pw = 1, x = a;
    for (unsigned i = 0; i < small.m(); ++i) {
      v = big.add(v, big.mul(big.from_int(x % small.p()), pw));
      pw = big.mul(pw, beta);
      x /= small.p();
    }
    table_[a] = v;
    back_[v] = a;
  }
}

bool Embedding::preimage(Fe b, Fe& out) const {
  if (b >= back_.size() || back_[b] < 0) return false;
  out = static_cast<Fe>(back_[b]);
  return true;
}

}  // namespace modp
