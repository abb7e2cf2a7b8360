#pragma once

#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "localring.hpp"

namespace modp {

// The element w^{-shift} * (a b; c d). Entries are integral with minimal
// valuation 0 and are known modulo w^prec.
struct GElt {
  Scalar a, b, c, d;
  int shift = 0;
  int prec = 0;
};

enum class Side { Plus, Minus };

// Vertex of the tree: (w^n, b; 0, 1) KZ or Pi (w^n, b; 0, 1) KZ, with b an
// index of an element of O / w^n.
struct Vertex {
  Side side = Side::Plus;
  unsigned n = 0;
  uint64_t b = 0;
  unsigned radius() const { return n + (side == Side::Minus ? 1 : 0); }
  bool operator==(const Vertex&) const = default;
  std::strong_ordering operator<=>(const Vertex& o) const {
    int s1 = side == Side::Plus ? 0 : 1, s2 = o.side == Side::Plus ? 0 : 1;
    if (s1 != s2) return s1 <=> s2;
    if (n != o.n) return n <=> o.n;
    return b <=> o.b;
  }
};

struct CosetWord {
  Side side = Side::Plus;
  std::vector<Fe> digits;  // (lambda_n, ..., lambda_1); lambda_1 is the leftmost factor
  GElt tail;
  unsigned length() const { return static_cast<unsigned>(digits.size()) + (side == Side::Minus ? 1 : 0); }
};

struct IwahoriFactors {
  GElt upper, diag, lower;
};

struct KCoset {
  bool in_I = true;
  Fe lambda = 0;  // meaningful when !in_I
  GElt i;
};

struct Subgroup {
  enum Tag { K, Z, KZ, I, I1, Kn, In, IZ, Pplus, H, UplusO, UminusP };
  Tag tag = K;
  unsigned level = 0;
};

std::string subgroup_name(const Subgroup& h);
Subgroup parse_subgroup(const std::string& s);

class Gl2 {
 public:
  explicit Gl2(const LocalRing& R) : R_(&R) {}
  const LocalRing& ring() const { return *R_; }

  GElt make(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d, int shift = 0) const;
  GElt identity() const;
  GElt pi() const;
  GElt pi_inv() const;
  GElt s() const;
  GElt g_lambda(Fe lambda) const;         // (w, [lambda]; 0, 1)
  GElt k_lambda(Fe lambda) const;         // ([lambda], 1; 1, 0)
  GElt upper(const Scalar& x) const;      // (1, x; 0, 1)
  GElt lower(const Scalar& x) const;      // (1, 0; x, 1)
  GElt diag(const Scalar& x, const Scalar& y) const;
  GElt central(int e) const;              // w^e Id

  GElt mul(const GElt& x, const GElt& y) const;
  GElt inv(const GElt& x) const;
  bool equal(const GElt& x, const GElt& y, int n = -1) const;
  int det_val(const GElt& x) const;  // valuation of det of the element

  bool member(const GElt& x, const Subgroup& h) const;
  // Generators of h modulo K_{n+1}; they act on the ball of radius n through this finite quotient.
  std::vector<GElt> generators(const Subgroup& h, unsigned n) const;

  Vertex vertex(const GElt& x) const;
  GElt vertex_rep(const Vertex& v) const;
  GElt vertex_rep_inv(const Vertex& v) const;
  // x = vertex_rep(vertex(x)) * tail with tail in KZ.
  std::pair<Vertex, GElt> vertex_tail(const GElt& x) const;

  CosetWord cartan_word(const GElt& x) const;
  GElt reassemble(const CosetWord& w) const;
  unsigned length(const GElt& x) const { return vertex(x).radius(); }
  IwahoriFactors iwahori_factor(const GElt& x) const;
  KCoset k_coset(const GElt& x) const;
  // i (w^n, x; 0, 1) = (w^n, x'; 0, 1) i' for i in IZ.
  std::pair<Scalar, GElt> rewrite_ip(const GElt& i, unsigned n, const Scalar& x) const;

  GElt random_K(std::mt19937_64& rng) const;
  GElt random_I(std::mt19937_64& rng) const;
  GElt random_I1(std::mt19937_64& rng) const;
  GElt random_element(std::mt19937_64& rng, unsigned max_radius) const;

  std::string str(const GElt& x) const;
  GElt parse(const std::string& s) const;

 private:
  GElt normalize(GElt x) const;
  std::optional<std::pair<unsigned, Scalar>> plus_coset(const GElt& x) const;
  const LocalRing* R_;
};

}  // namespace modp
