#include <gtest/gtest.h>

#include <random>

#include "weights.hpp"

using namespace modp;

namespace {

std::unique_ptr<Context> field(Backend b, unsigned p, unsigned f, unsigned m = 0) {
  return std::make_unique<Context>(b, p, f, 10, m ? m : f);
}

// Column of x^i y^(r-i) under x -> a x + c y, y -> b x + d y, computed by
// brute-force expansion over all 2^r monomial choices.
std::vector<Fe> substitute(const GF& F, unsigned r, unsigned i, Fe a, Fe b, Fe c, Fe d) {
  std::vector<Fe> out(r + 1, 0);
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    Fe coef = 1;
    unsigned xs = 0;
    for (unsigned t = 0; t < r; ++t) {
      bool take_x = mask >> t & 1;
      Fe cx = t < i ? a : b, cy = t < i ? c : d;
      coef = F.mul(coef, take_x ? cx : cy);
      xs += take_x;
    }
    out[xs] = F.add(out[xs], coef);
  }
  return out;
}

}  // namespace

TEST(Weights, SymSquareExample) {
  auto ctx = field(Backend::Equal, 3, 1);
  Weight w(*ctx, parse_weight("p=3,r=2"));
  ASSERT_EQ(w.dim(), 3u);
  EXPECT_EQ(w.basis_label(0), "x^0 y^2");
  EXPECT_EQ(w.basis_label(2), "x^2 y^0");
  Mat m = w.act_residue(1, 1, 0, 1);
  // columns: y^2 -> y^2 + 2xy + x^2, xy -> xy + x^2, x^2 -> x^2
  Mat expect(3, 3);
  expect(0, 0) = 1, expect(1, 0) = 2, expect(2, 0) = 1;
  expect(1, 1) = 1, expect(2, 1) = 1;
  expect(2, 2) = 1;
  EXPECT_EQ(m, expect);
}

TEST(Weights, SubstitutionOracle) {
  for (unsigned p : {2u, 3u, 5u}) {
    auto ctx = field(Backend::Equal, p, 1);
    for (unsigned r = 0; r < p; ++r) {
      Weight w(*ctx, parse_weight("p=" + std::to_string(p) + ",r=" + std::to_string(r)));
      for (Fe a = 0; a < p; ++a)
        for (Fe b = 0; b < p; ++b)
          for (Fe c = 0; c < p; ++c)
            for (Fe d = 0; d < p; ++d) {
              if ((a * d + p * p - b * c % p) % p == 0) continue;
              Mat m = w.act_residue(a, b, c, d);
              for (unsigned i = 0; i <= r; ++i) {
                auto col = substitute(ctx->coeff, r, i, a, b, c, d);
                for (unsigned l = 0; l <= r; ++l) EXPECT_EQ(m(l, i), col[l]);
              }
            }
    }
  }
}

TEST(Weights, ActionIsHomomorphism) {
  for (auto [b, p, f, desc] : {std::tuple{Backend::Equal, 3u, 1u, "p=3,r=2,a=1,z=2"},
                               {Backend::Equal, 2u, 2u, "p=2,f=2,r=1:1,a=1"},
                               {Backend::Equal, 3u, 2u, "p=3,f=2,r=1:2,a=3,z=2"},
                               {Backend::Mixed, 5u, 1u, "p=5,r=3,a=2,z=3"}}) {
    auto ctx = field(b, p, f);
    Weight w(*ctx, parse_weight(desc));
    const Gl2& G = ctx->group;
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
      GElt x = G.mul(G.random_K(rng), G.central(int(rng() % 5) - 2));
      GElt y = G.mul(G.random_K(rng), G.central(int(rng() % 5) - 2));
      EXPECT_EQ(*w.act(G.mul(x, y)), mat_mul(ctx->coeff, *w.act(x), *w.act(y))) << desc;
    }
    EXPECT_THROW(w.act(G.pi()), DomainError);
  }
}

TEST(Weights, CentralCharacter) {
  auto ctx = field(Backend::Equal, 5, 1);
  Weight w(*ctx, parse_weight("p=5,r=1,z=3"));
  Mat m = *w.act(ctx->group.central(1));
  EXPECT_EQ(m, mat_scale(ctx->coeff, 3, Mat::identity(2)));
}

TEST(Weights, I1LineIsHighestWeight) {
  auto ctx = field(Backend::Equal, 5, 1);
  for (unsigned r = 0; r < 5; ++r) {
    Weight w(*ctx, parse_weight("p=5,r=" + std::to_string(r)));
    std::vector<Fe> xr(r + 1, 0);
    xr[r] = 1;
    EXPECT_EQ(w.v0(), xr);
    EXPECT_EQ(w.v0_index(), r);
  }
}

TEST(Weights, I1LineTensorProduct) {
  auto ctx = field(Backend::Equal, 3, 2);
  Weight w(*ctx, parse_weight("p=3,f=2,r=1:0"));
  ASSERT_EQ(w.dim(), 2u);
  EXPECT_EQ(w.basis_label(1), "x^1 y^0 | x^0 y^0");
  EXPECT_EQ(w.v0(), (std::vector<Fe>{0, 1}));
}

TEST(Weights, I1FixesLine) {
  auto ctx = field(Backend::Equal, 3, 2);
  Weight w(*ctx, parse_weight("p=3,f=2,r=2:1"));
  std::mt19937_64 rng(29);
  for (int t = 0; t < 100; ++t) {
    auto m = w.act(ctx->group.random_I1(rng));
    EXPECT_EQ(mat_vec(ctx->coeff, *m, w.v0()), w.v0());
  }
}

TEST(Weights, KTranslatesSpan) {
  auto ctx3 = field(Backend::Equal, 3, 1);
  EXPECT_EQ(Weight(*ctx3, parse_weight("p=3,r=2")).k_translates_span(), 3u);
  EXPECT_EQ(Weight(*ctx3, parse_weight("p=3,r=1")).k_translates_span(), 2u);
  auto ctx5 = field(Backend::Equal, 5, 1);
  EXPECT_EQ(Weight(*ctx5, parse_weight("p=5,r=4")).k_translates_span(), 5u);
  for (unsigned r = 0; r < 5; ++r)
    EXPECT_EQ(Weight(*ctx5, parse_weight("p=5,r=" + std::to_string(r))).k_translates_span(), r + 1);
}

TEST(Weights, ProjectionKillsHighestWeight) {
  auto ctx = field(Backend::Equal, 5, 1);
  for (unsigned r = 1; r < 5; ++r) {
    Weight w(*ctx, parse_weight("p=5,r=" + std::to_string(r)));
    auto u = mat_vec(ctx->coeff, w.U(), w.v0());
    EXPECT_EQ(u, std::vector<Fe>(r + 1, 0));
  }
}

TEST(Weights, CoefficientExtension) {
  auto ctx = field(Backend::Equal, 3, 1, 2);
  Weight w(*ctx, parse_weight("p=3,r=1,z=5"));
  EXPECT_EQ(*w.act(ctx->group.central(1)), mat_scale(ctx->coeff, 5, Mat::identity(2)));
}

TEST(Weights, DescriptorValidation) {
  auto ctx = field(Backend::Equal, 3, 1);
  EXPECT_THROW(parse_weight("r=1"), ConfigError);
  EXPECT_THROW(parse_weight("p=3,q=1"), ConfigError);
  EXPECT_THROW(Weight(*ctx, parse_weight("p=3,r=3")), ConfigError);
  EXPECT_THROW(Weight(*ctx, parse_weight("p=3,r=1,a=2")), ConfigError);
  EXPECT_THROW(Weight(*ctx, parse_weight("p=3,r=1,z=0")), ConfigError);
  EXPECT_THROW(Weight(*ctx, parse_weight("p=5,r=1")), ConfigError);
  EXPECT_EQ(weight_str(parse_weight("p=3,r=2,a=1")), "p=3,f=1,r=2,a=1,z=1");
}
