#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "quotient.hpp"

namespace modp {

struct GrowthPoint {
  unsigned radius;
  size_t dim;
};

struct D1Result {
  Subspace basis;
  bool stable = false;  // same dimension at radius n and n-1
  std::vector<GrowthPoint> growth;
};

// I+ cap I- of the quotient, as the image of the relation module under the
// Minus projection. Only relations straddling the base edge contribute.
D1Result d1_compute(const Quotient& Q, unsigned n);

struct D0Result {
  Subspace basis;
  bool truncated = false;
};

// <K . xs> inside ball_n: fixpoint under the Iwahori generators and the
// coset representatives ([lambda], 1; 1, 0).
Subspace k_closure(const Ambient& A, const std::vector<Induced>& xs, unsigned n, bool* truncated = nullptr);
D0Result d0_compute(const Quotient& Q, const Subspace& D1, unsigned n);

// (-1)^{val det g}
int delta_minus1(const Gl2& G, const GElt& g);

// Filtration I^{+,k} and the level function.
class LevelFiltration {
 public:
  LevelFiltration(const Quotient& Q, unsigned bound);

  const Quotient& quotient() const { return *Q_; }
  unsigned computed() const { return static_cast<unsigned>(layers_.size()); }
  const Subspace& layer(unsigned k) const { return layers_.at(k); }
  const Subspace& iplus() const { return iplus_; }
  const Subspace& iminus() const { return iminus_; }

  // Canonical decomposition v = v+ + v- read off the normal form.
  std::pair<Induced, Induced> split(const Induced& v) const;
  std::optional<unsigned> level_plus(const Induced& vplus) const;
  std::optional<unsigned> level_minus(const Induced& vminus) const;
  std::optional<unsigned> level(const Induced& v) const;
  // Level from an explicit decomposition.
  std::optional<unsigned> level(const Induced& vplus, const Induced& vminus) const;

 private:
  const Quotient* Q_;
  Subspace iplus_, iminus_;
  std::vector<Subspace> layers_;
};

// A KZ-stable finite-dimensional subspace of an ambient, viewed as a KZ representation.
class SubRep : public KZRep {
 public:
  SubRep(const Ambient& A, const Subspace& W);

  unsigned dim() const override { return static_cast<unsigned>(vecs_.size()); }
  std::shared_ptr<const Mat> act(const GElt& k) const override;
  const Context& context() const override { return A_->space().ctx(); }

  const Ambient& ambient() const { return *A_; }
  const std::vector<Induced>& vectors() const { return vecs_; }
  std::optional<std::vector<Fe>> coords(const Induced& v) const;
  Induced vector(const std::vector<Fe>& c) const;

 private:
  const Ambient* A_;
  std::vector<Induced> vecs_;
  std::unordered_map<uint64_t, size_t> piv_;
  unsigned level_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<uint64_t, uint64_t, uint64_t, uint64_t, int>, std::shared_ptr<const Mat>> cache_;
};

// Image in the ambient of an element of the induction of W: [g, w] -> g w.
Induced to_ambient(const SubRep& W, const CInd& VW, const Induced& f);

// g ([Id, x] - [Pi, Pi^{-1} x]) in the induction of D0, for x in D1.
Induced boundary_apply(const SubRep& D0, const CInd& VW, const Subspace& D1, const Induced& x, const GElt& g);

struct R0Set {
  Subspace meet;                   // W cap Pi(W)
  std::vector<Induced> relations;  // [(w,0;0,1), x] - [Id, (w,0;0,1) x]
  std::vector<Induced> shifted;    // diag(w^{-1},1) applied to the relations
  bool identity_holds = true;      // shifted[i] == [Id, x] - [Pi, Pi^{-1} x]
};
R0Set r0_generators(const SubRep& W, const CInd& VW);

// Span of the G-translates of relations supported on the base edge, over
// all edges inside ball_R.
Subspace edge_span(const CInd& V, const std::vector<Induced>& rels, unsigned R);

}  // namespace modp
