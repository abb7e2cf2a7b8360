#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field element code: the integer sum c_i p^i of its coordinates in the
// power basis 1, t, ..., t^{m-1}.
using Fe = uint32_t;

bool is_prime(unsigned n);

class GF {
 public:
  static constexpr unsigned kMaxOrder = 65536;
  static constexpr unsigned kMaxDegree = 12;

  GF(unsigned p, unsigned m);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned order() const { return q_; }
  const std::vector<unsigned>& modulus() const { return mod_; }

  Fe add(Fe a, Fe b) const;
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe neg(Fe a) const;
  Fe mul(Fe a, Fe b) const {
    if (!mul_.empty()) return mul_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    unsigned s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, uint64_t e) const;
  Fe from_int(long long v) const;  // image of an integer in the prime field
  Fe frob(Fe a, unsigned j) const;  // a^{p^j}
  Fe generator() const { return exp(1); }
  unsigned log(Fe a) const { return log_[a]; }
  Fe exp(unsigned i) const { return exp_[i % (q_ - 1)]; }
  bool valid(Fe a) const { return a < q_; }

  // Root in *this of the minimal polynomial of sub's generator; requires sub.m() | m().
  Fe embedding_root(const GF& sub) const;

 private:
  Fe mul_t(Fe a) const;
  unsigned p_, m_, q_;
  std::vector<unsigned> mod_;  // monic modulus: t^m + sum mod_[i] t^i
  std::vector<Fe> exp_;
  std::vector<unsigned> log_;
  std::vector<Fe> add_, mul_;
  std::vector<Fe> neg_;
};

// Field map F_q -> F_{p^m} fixed by sending the residue generator to a chosen root.
class Embedding {
 public:
  Embedding(const GF& small, const GF& big);
  Fe operator()(Fe a) const { return table_[a]; }
  // Inverse map for elements in the image; returns false if not in the image.
  bool preimage(Fe b, Fe& out) const;

 private:
  std::vector<Fe> table_;
  std::vector<int64_t> back_;
};

}  // namespace modp
