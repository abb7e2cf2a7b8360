#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cind.hpp"

namespace modp {

struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Subspace = SparseEchelon;

// A ball-truncated G-space realized inside the compact induction, with a
// canonical reduction map. The full induction uses the identity.
class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual const CInd& space() const = 0;
  virtual unsigned max_radius() const = 0;
  virtual Induced reduce(const Induced& f) const = 0;
  // Coordinates of ball_n left untouched by reduction; their classes form a basis.
  virtual std::vector<uint64_t> free_coords(unsigned n) const = 0;
};

class FullInduction : public Ambient {
 public:
  FullInduction(const CInd& V, unsigned max_radius) : V_(&V), max_(max_radius) {}
  const CInd& space() const override { return *V_; }
  unsigned max_radius() const override { return max_; }
  Induced reduce(const Induced& f) const override;
  std::vector<uint64_t> free_coords(unsigned n) const override;

 private:
  const CInd* V_;
  unsigned max_;
};

enum class RelPreset { None, Special };

// pi = cInd / (P(T) + G-span of the extra relations), truncated to ball_N.
class Quotient : public Ambient {
 public:
  Quotient(const Hecke& H, Poly P, std::vector<Induced> extra, unsigned N, unsigned slack);

  const CInd& space() const override { return H_->space(); }
  const Hecke& hecke() const { return *H_; }
  unsigned max_radius() const override { return N_; }
  unsigned N() const { return N_; }
  unsigned slack() const { return slack_; }
  unsigned degree() const { return d_; }
  const Poly& poly() const { return P_; }

  Induced reduce(const Induced& f) const override { return reduce_tracked(f, nullptr); }
  // Also returns g with f - reduce(f) - (extra part) = P(T) g.
  Induced reduce_tracked(const Induced& f, Induced* preimage) const;
  bool is_zero(const Induced& f) const { return reduce(f).empty(); }
  std::vector<uint64_t> free_coords(unsigned n) const override;

  uint64_t kernel_dim(unsigned n) const;
  uint64_t dim(unsigned n) const { return space().ball_dim(n) - kernel_dim(n); }
  const Subspace& extras() const { return extras_; }
  const std::vector<Induced>& extra_relations() const { return extra_; }

  // Number of extra-relation translates and I-closure size used during construction.
  size_t translate_count() const { return translates_; }

 private:
  struct Block {
    std::vector<uint64_t> pivots;  // top-radius pivot keys
    std::vector<Induced> rows;     // P(T)[x, sum_j E_ij e_j], fully reduced at the pivots
    Mat E;
  };
  std::shared_ptr<const Block> block(const Vertex& x) const;
  Induced reduce_P(const Induced& f, Induced* preimage) const;
  void build_extras();

  const Hecke* H_;
  Poly P_;
  std::vector<Induced> extra_;
  unsigned N_, slack_, d_;
  Subspace extras_;
  size_t translates_ = 0;
  mutable std::mutex mu_;
  mutable std::unordered_map<uint64_t, std::shared_ptr<const Block>> blocks_;
};

Induced special_relation(const Hecke& H);

// Span of x under the generators, iterated to a fixpoint.
Subspace closure(const Ambient& A, const std::vector<GElt>& gens, const std::vector<Induced>& xs);

Subspace invariants(const Ambient& A, const Subgroup& h, unsigned n);
Subspace invariants_gens(const Ambient& A, const std::vector<GElt>& gens, unsigned n);
// Fixed vectors of the generators inside span(basis), intersecting one generator at a time.
Subspace invariants_span(const Ambient& A, const std::vector<GElt>& gens, std::vector<Induced> basis, unsigned n);
// Per-vertex fixed vectors of generators that fix each listed vertex.
std::vector<Induced> local_fixed_vectors(const CInd& V, const std::vector<GElt>& gens, const std::vector<Vertex>& verts);

// span{(h-1)m : h in gens, m in <H x>}
Subspace radical_p_group(const Ambient& A, const std::vector<GElt>& gens, const Induced& x);

struct PmImages {
  Subspace plus, minus;
};
PmImages i_pm_images(const Ambient& A, unsigned n);
Subspace intersect(const GF& F, const Subspace& a, const Subspace& b);

std::optional<unsigned> s_nilpotence_order(const Quotient& Q, const Induced& f, unsigned max_m);

// Image in pi of the Minus component.
Induced phi_sigma(const Quotient& Q, const Induced& f);

}  // namespace modp
