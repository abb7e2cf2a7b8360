#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weights.hpp"

namespace modp {

// Polynomial in T over the coefficient field; c[i] is the coefficient of T^i.
struct Poly {
  std::vector<Fe> c;
  unsigned degree() const;
  bool is_zero() const;
};
Poly parse_poly(const GF& F, const std::string& s);
std::string poly_str(const Poly& P);
// Root of P in the coefficient field, if any.
bool poly_root(const GF& F, const Poly& P, Fe& root);
Poly poly_div_linear(const GF& F, const Poly& P, Fe root);  // P / (T - root)

// Sparse element of the compact induction. Coordinates are keyed by
// (radius, side, coset index, basis index); the order is the basis order.
using Induced = SVec;

class CInd {
 public:
  explicit CInd(const KZRep& rep);

  const KZRep& rep() const { return *rep_; }
  const Context& ctx() const { return rep_->context(); }
  const GF& F() const { return rep_->coeff(); }
  unsigned dim() const { return rep_->dim(); }

  static uint64_t key(const Vertex& v, unsigned j);
  static uint64_t vertex_key(const Vertex& v) { return key(v, 0); }
  static Vertex vertex_of(uint64_t key);
  static unsigned basis_of(uint64_t key) { return static_cast<unsigned>(key & 1023u); }
  static unsigned radius_of(uint64_t key) { return static_cast<unsigned>(key >> 55); }
  static unsigned radius(const Induced& f) { return f.empty() ? 0 : radius_of(f.back().first); }

  Induced inject(const GElt& g, const std::vector<Fe>& v) const;
  Induced basis(const Vertex& x, unsigned j) const;
  Induced g_act(const GElt& g, const Induced& f) const;
  // (plus part, minus part)
  std::pair<Induced, Induced> split(const Induced& f) const;

  // Vertex block of f at x as a dense vector.
  std::vector<Fe> block(const Induced& f, const Vertex& x) const;

  // Tree combinatorics.
  std::vector<Vertex> sphere(unsigned r) const;
  std::vector<Vertex> ball(unsigned r) const;
  uint64_t ball_dim(unsigned r) const;
  static Vertex parent(const Vertex& v, unsigned q);
  std::vector<Vertex> children(const Vertex& v) const;

  std::string vertex_str(const Vertex& v) const;

 private:
  const KZRep* rep_;
};

// Operators that need the Hecke kernel of an irreducible weight.
class Hecke {
 public:
  Hecke(const CInd& V, const Weight& w);

  const CInd& space() const { return *V_; }
  const Weight& weight() const { return *w_; }
  const GF& F() const { return V_->F(); }

  Induced T(const Induced& f) const;
  Induced S(const Induced& f) const;
  Induced apply(const Poly& P, const Induced& f) const;
  // Graded split of T on a single R_n^- (n >= 1): (part in R_{n+1}^-, part in R_{n-1}^-).
  std::pair<Induced, Induced> T_plus_minus(const Induced& f) const;
  // Sum over lambda != 0 of (w, [1/lambda]; 0, 1)(-[1/lambda], 0; w, [lambda]).
  Induced R_op(const Induced& f) const;
  // Component x_0 of Pi(f^-) = y + sum_mu ([mu],1;1,0) x_mu.
  Induced x0_extract(const Induced& f_minus) const;
  std::vector<Induced> m_n_plus_basis(unsigned n) const;

  struct Correction {
    Induced f_prime;    // in the Minus grades >= k+1
    Induced preimage;   // f + f_prime = P(T) preimage
  };
  Correction pt_correction(const Induced& f, const Poly& P) const;
  // m in the Minus half with [Id, v0] - m = P(T) g; returns (m, g).
  std::pair<Induced, Induced> id_minus_witness(const Poly& P) const;

  Induced id_v0() const;
  Induced pi_v0() const;

 private:
  // h in the Minus grades >= k+1 with T^-(h) = f.
  Induced solve_T_minus(const Induced& f) const;
  const CInd* V_;
  const Weight* w_;
  std::vector<Mat> phi_;  // phi(g_lambda^{-1})
};

}  // namespace modp
