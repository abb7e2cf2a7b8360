#pragma once

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "gl2.hpp"
#include "linalg.hpp"

namespace modp {

// Rings and fields shared by one computation. Not movable: the group keeps a
// pointer to the ring.
struct Context {
  LocalRing ring;
  Gl2 group;
  GF coeff;
  Embedding emb;
  Context(Backend backend, unsigned p, unsigned f, unsigned N, unsigned m)
      : ring(backend, p, f, N), group(ring), coeff(p, m), emb(ring.residue(), coeff) {}
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
};

// A finite-dimensional representation of KZ over the coefficient field.
class KZRep {
 public:
  virtual ~KZRep() = default;
  virtual unsigned dim() const = 0;
  // Column j is the image of basis vector j. Throws DomainError off KZ.
  virtual std::shared_ptr<const Mat> act(const GElt& k) const = 0;
  virtual const Context& context() const = 0;
  const GF& coeff() const { return context().coeff; }
};

struct WeightSpec {
  unsigned p = 2, f = 1;
  std::vector<unsigned> r{0};
  unsigned a = 0;  // det twist
  Fe z = 1;        // central value at w
};

WeightSpec parse_weight(const std::string& s);
std::string weight_str(const WeightSpec& w);

class Weight : public KZRep {
 public:
  Weight(const Context& ctx, WeightSpec spec);

  unsigned dim() const override { return dim_; }
  std::shared_ptr<const Mat> act(const GElt& k) const override;
  const Context& context() const override { return *ctx_; }

  const WeightSpec& spec() const { return spec_; }
  // sigma of a residue matrix (a b; c d) in GL2(F_q), without central factor.
  Mat act_residue(Fe a, Fe b, Fe c, Fe d) const;
  const std::vector<Fe>& v0() const { return v0_; }
  unsigned v0_index() const { return dim_ - 1; }
  const Mat& U() const { return U_; }
  std::string basis_label(unsigned j) const;
  // Exponents of x in each tensor factor of basis vector j.
  std::vector<unsigned> exponents(unsigned j) const;
  unsigned k_translates_span() const;

 private:
  std::vector<Fe> solve_i1_line() const;
  const Context* ctx_;
  WeightSpec spec_;
  unsigned dim_;
  std::vector<Fe> v0_;
  Mat U_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<uint64_t, std::shared_ptr<const Mat>> cache_;
};

}  // namespace modp
