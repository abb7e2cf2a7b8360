#include "weights.hpp"

#include <sstream>

namespace modp {

WeightSpec parse_weight(const std::string& s) {
  WeightSpec w;
  bool have_p = false, have_r = false;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("bad weight field '" + item + "'");
      std::string k = item.substr(0, eq), v = item.substr(eq + 1);
      if (k == "p") {
        w.p = static_cast<unsigned>(std::stoul(v));
        have_p = true;
      } else if (k == "f") {
        w.f = static_cast<unsigned>(std::stoul(v));
      } else if (k == "r") {
        w.r.clear();
        std::stringstream rs(v);
        std::string t;
        while (std::getline(rs, t, ':')) w.r.push_back(static_cast<unsigned>(std::stoul(t)));
        have_r = true;
      } else if (k == "a") {
        w.a = static_cast<unsigned>(std::stoul(v));
      } else if (k == "z") {
        w.z = static_cast<Fe>(std::stoul(v));
      } else {
        throw ConfigError("unknown weight field '" + k + "'");
      }
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad weight descriptor '" + s + "'");
  }
  if (!have_p) throw ConfigError("weight descriptor needs p");
  if (!have_r) w.r.assign(w.f, 0);
  return w;
}

std::string weight_str(const WeightSpec& w) {
  std::string r;
  for (size_t i = 0; i < w.r.size(); ++i) r += (i ? ":" : "") + std::to_string(w.r[i]);
  return "p=" + std::to_string(w.p) + ",f=" + std::to_string(w.f) + ",r=" + r + ",a=" + std::to_string(w.a) +
         ",z=" + std::to_string(w.z);
}

Weight::Weight(const Context& ctx, WeightSpec spec) : ctx_(&ctx), spec_(std::move(spec)) {
  const auto& R = ctx.ring;
  if (spec_.p != R.p() || spec_.f != R.f())
    throw ConfigError("weight (p, f) does not match the field");
  if (spec_.r.size() != spec_.f) throw ConfigError("weight needs one exponent per residue degree");
  dim_ = 1;
  for (unsigned r : spec_.r) {
    if (r > spec_.p - 1) throw ConfigError("weight exponents must lie in [0, p-1]");
    dim_ *= r + 1;
  }
  if (spec_.a >= R.q() - 1 && !(R.q() == 2 && spec_.a == 0))
    throw ConfigError("det twist must lie in [0, q-2]");
  if (spec_.z == 0 || !ctx.coeff.valid(spec_.z)) throw ConfigError("central value must be a nonzero coefficient");
  U_ = Mat(dim_, dim_);
  U_(0, 0) = 1;  // projection onto the tensor of the y^{r_j}; identity when dim = 1
  v0_ = solve_i1_line();
}

std::vector<unsigned> Weight::exponents(unsigned j) const {
  std::vector<unsigned> e(spec_.f);
  for (unsigned t = 0; t < spec_.f; ++t) {
    e[t] = j % (spec_.r[t] + 1);
    j /= spec_.r[t] + 1;
  }
  return e;
}

std::string Weight::basis_label(unsigned j) const {
  auto e = exponents(j);
  std::string s;
  for (unsigned t = 0; t < spec_.f; ++t) {
    if (t) s += " | ";
    s += "x^" + std::to_string(e[t]) + " y^" + std::to_string(spec_.r[t] - e[t]);
  }
  return s;
}

Mat Weight::act_residue(Fe a, Fe b, Fe c, Fe d) const {
  const GF& Fq = ctx_->ring.residue();
  const GF& C = ctx_->coeff;
  Mat acc = Mat::identity(1);
  for (unsigned j = 0; j < spec_.f; ++j) {
    Fe A = ctx_->emb(Fq.frob(a, j)), B = ctx_->emb(Fq.frob(b, j));
    Fe Cc = ctx_->emb(Fq.frob(c, j)), D = ctx_->emb(Fq.frob(d, j));
    unsigned r = spec_.r[j];
    Mat M(r + 1, r + 1);
    for (unsigned i = 0; i <= r; ++i) {
      // (A x + C y)^i (B x + D y)^{r-i}, coefficients indexed by the power of x
      std::vector<Fe> poly{1};
      auto times = [&](Fe cx, Fe cy) {
        std::vector<Fe> out(poly.size() + 1, 0);
        for (size_t l = 0; l < poly.size(); ++l) {
          out[l + 1] = C.add(out[l + 1], C.mul(poly[l], cx));
          out[l] = C.add(out[l], C.mul(poly[l], cy));
        }
        poly.swap(out);
      };
      for (unsigned t = 0; t < i; ++t) times(A, Cc);
      for (unsigned t = i; t < r; ++t) times(B, D);
      for (unsigned l = 0; l <= r; ++l) M(l, i) = poly[l];
    }
    acc = j == 0 ? M : kron(C, M, acc);
  }
  Fe det = Fq.sub(Fq.mul(a, d), Fq.mul(b, c));
  Fe tw = C.pow(ctx_->emb(det), spec_.a);
  return tw == 1 ? acc : mat_scale(C, tw, acc);
}

std::shared_ptr<const Mat> Weight::act(const GElt& k) const {
  const auto& R = ctx_->ring;
  if (!ctx_->group.member(k, Subgroup{Subgroup::KZ, 0})) throw DomainError("weight action: element not in KZ");
  Fe a = R.reduce(k.a), b = R.reduce(k.b), c = R.reduce(k.c), d = R.reduce(k.d);
  uint64_t key = (uint64_t(a) << 24) | (uint64_t(b) << 16) | (uint64_t(c) << 8) | d;
  key |= uint64_t(static_cast<uint32_t>(k.shift + (1 << 20))) << 32;
  {
    std::shared_lock lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Mat m = act_residue(a, b, c, d);
  if (k.shift != 0) {
    const GF& C = ctx_->coeff;
    Fe zc = k.shift > 0 ? C.inv(C.pow(spec_.z, k.shift)) : C.pow(spec_.z, -k.shift);
    m = mat_scale(C, zc, m);
  }
  auto ptr = std::make_shared<const Mat>(std::move(m));
  std::unique_lock lk(mu_);
  cache_.emplace(key, ptr);
  return ptr;
}

std::vector<Fe> Weight::solve_i1_line() const {
  const GF& C = ctx_->coeff;
  // I1 / K1 is the residue upper unipotent group, generated by u(t^j).
  Mat stack(dim_ * spec_.f, dim_);
  for (unsigned j = 0, code = 1; j < spec_.f; ++j, code *= spec_.p) {
    Mat g = act_residue(1, code, 0, 1);
    for (unsigned r = 0; r < dim_; ++r)
      for (unsigned c = 0; c < dim_; ++c) stack(j * dim_ + r, c) = C.sub(g(r, c), r == c ? 1 : 0);
  }
  Mat ns = nullspace(C, stack);
  if (ns.rows != 1) throw InternalError("I1-invariants of the weight are not one-dimensional");
  std::vector<Fe> v(dim_);
  for (unsigned c = 0; c < dim_; ++c) v[c] = ns(0, c);
  unsigned lead = dim_;
  while (lead > 0 && v[lead - 1] == 0) --lead;
  Fe inv = C.inv(v[lead - 1]);
  for (auto& x : v) x = C.mul(inv, x);
  return v;
}

unsigned Weight::k_translates_span() const {
  const GF& C = ctx_->coeff;
  unsigned q = ctx_->ring.q();
  Mat m(q, dim_);
  for (Fe l = 0; l < q; ++l) {
    Mat g = act_residue(l, 1, 1, 0);
    auto w = mat_vec(C, g, v0_);
    for (unsigned c = 0; c < dim_; ++c) m(l, c) = w[c];
  }
  return rank(C, m);
}

}  // namespace modp
