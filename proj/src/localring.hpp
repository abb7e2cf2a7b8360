#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "gf.hpp"

namespace modp {

constexpr unsigned kMaxPrec = 32;

enum class Backend { Equal, Mixed };

// Element of O / w^N. Equal characteristic keeps residue digits, mixed
// characteristic keeps an integer mod p^N. Only the field of the active
// backend is meaningful.
struct Scalar {
  uint64_t m = 0;
  std::array<uint8_t, kMaxPrec> d{};
  bool operator==(const Scalar&) const = default;
};

class LocalRing {
 public:
  LocalRing(Backend backend, unsigned p, unsigned f, unsigned N);

  Backend backend() const { return backend_; }
  unsigned p() const { return p_; }
  unsigned f() const { return f_; }
  unsigned q() const { return q_; }
  unsigned N() const { return N_; }
  const GF& residue() const { return res_; }

  Scalar zero() const { return {}; }
  Scalar one() const { return from_int(1); }
  Scalar uniformizer() const { return mul_pi(one(), 1); }
  Scalar from_int(long long v) const;
  Scalar teich(Fe lambda) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;

  unsigned val(const Scalar& a) const;  // N for zero
  bool is_zero(const Scalar& a) const { return a == Scalar{}; }
  bool is_unit(const Scalar& a) const { return reduce(a) != 0; }
  Fe reduce(const Scalar& a) const;

  Scalar mul_pi(const Scalar& a, unsigned k) const;
  // a / w^k for val(a) >= k; the top k digits of the result are unknown and set to 0.
  Scalar div_pi(const Scalar& a, unsigned k) const;
  Scalar truncate(const Scalar& a, unsigned n) const;  // a mod w^n
  bool eq_mod(const Scalar& a, const Scalar& b, unsigned n) const {
    return val(sub(a, b)) >= n;
  }

  // Canonical integer label of a mod w^n and its inverse.
  uint64_t index(const Scalar& a, unsigned n) const;
  Scalar from_index(uint64_t idx, unsigned n) const;
  uint64_t count(unsigned n) const;  // q^n

  Scalar random(std::mt19937_64& rng) const;

  std::string str(const Scalar& a) const;
  Scalar parse(const std::string& s) const;

 private:
  Backend backend_;
  unsigned p_, f_, q_, N_;
  uint64_t pN_ = 0;
  GF res_;
};

}  // namespace modp
