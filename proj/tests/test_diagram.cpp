#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "report.hpp"

using namespace modp;
using nlohmann::json;

namespace {

Scenario make(json j) { return Scenario::from_json(j); }

bool same_span(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& v : a.basis())
    if (!b.contains(v)) return false;
  return true;
}

}  // namespace

TEST(Diagram, D1OfLinearQuotient) {
  for (const char* poly : {"T", "T-1", "T-2"}) {
    Model M(make({{"p", 3}, {"weight", "r=1"}, {"poly", poly}, {"N", 5}}));
    auto Q = M.quotient();
    D1Result d1 = d1_compute(*Q, 4);
    EXPECT_EQ(d1.basis.dim(), 2u) << poly;
    EXPECT_TRUE(d1.basis.contains(Q->reduce(M.H->id_v0()))) << poly;
    EXPECT_TRUE(d1.basis.contains(Q->reduce(M.H->pi_v0()))) << poly;
    EXPECT_TRUE(d1.stable) << poly;
    ASSERT_FALSE(d1.growth.empty());
    EXPECT_EQ(d1.growth.back().dim, 2u);
  }
}

TEST(Diagram, D1AgreesWithBallMeet) {
  // I+ cap I- computed directly from the two images inside the ball.
  for (const char* poly : {"T-1", "T-2"}) {
    Model M(make({{"p", 3}, {"weight", "r=2"}, {"poly", poly}, {"N", 5}}));
    auto Q = M.quotient();
    D1Result d1 = d1_compute(*Q, 4);
    PmImages pm = i_pm_images(*Q, 5);
    Subspace meet = intersect(M.V->F(), pm.plus, pm.minus);
    EXPECT_EQ(meet.dim(), d1.basis.dim()) << poly;
  }
}

TEST(Diagram, D1OfSpecialSeries) {
  Model M(make({{"p", 3}, {"weight", "r=2"}, {"poly", "T-1"}, {"rel", "special"}, {"slack", 1}, {"N", 4}}));
  auto Q = M.quotient();
  D1Result d1 = d1_compute(*Q, 3);
  EXPECT_EQ(d1.basis.dim(), 1u);
  D0Result d0 = d0_compute(*Q, d1.basis, 3);
  EXPECT_EQ(d0.basis.dim(), 3u);
  EXPECT_FALSE(d0.truncated);
}

TEST(Diagram, D0OfPrincipalSeriesIsK1Invariants) {
  Model M(make({{"p", 3}, {"weight", "r=1"}, {"poly", "T-1"}, {"N", 5}}));
  auto Q = M.quotient();
  D1Result d1 = d1_compute(*Q, 4);
  D0Result d0 = d0_compute(*Q, d1.basis, 4);
  Subspace k1 = invariants(*Q, Subgroup{Subgroup::Kn, 1}, 4);
  EXPECT_TRUE(same_span(d0.basis, k1));
  EXPECT_EQ(d0.basis.dim(), 4u);  // dim sigma + dim of the other Serre weight
}

TEST(Diagram, DeltaSign) {
  Model M(make({{"p", 3}, {"weight", "r=0"}, {"N", 3}}));
  const Gl2& G = M.ctx->group;
  EXPECT_EQ(delta_minus1(G, G.identity()), 1);
  EXPECT_EQ(delta_minus1(G, G.pi()), -1);
  EXPECT_EQ(delta_minus1(G, G.central(1)), 1);
  EXPECT_EQ(delta_minus1(G, G.g_lambda(2)), -1);
}

class Presentation : public ::testing::Test {
 protected:
  const D1Result& d1() const { return *d1_; }
  void SetUp() override {
    M = std::make_unique<Model>(make({{"p", 3}, {"weight", "r=1"}, {"poly", "T-2"}, {"N", 5}}));
    Q = M->quotient();
    d1_ = d1_compute(*Q, 4);
    d0_ = d0_compute(*Q, d1_->basis, 4);
    W = std::make_unique<SubRep>(*Q, d0_->basis);
    VW = std::make_unique<CInd>(*W);
  }
  std::unique_ptr<Model> M;
  std::unique_ptr<Quotient> Q;
  std::optional<D1Result> d1_;
  std::optional<D0Result> d0_;
  std::unique_ptr<SubRep> W;
  std::unique_ptr<CInd> VW;
};

TEST_F(Presentation, SubRepIsKZRepresentation) {
  const Gl2& G = M->ctx->group;
  std::mt19937_64 rng(67);
  for (int t = 0; t < 40; ++t) {
    GElt x = G.mul(G.random_K(rng), G.central(int(rng() % 3) - 1));
    GElt y = G.random_K(rng);
    EXPECT_EQ(*W->act(G.mul(x, y)), mat_mul(M->V->F(), *W->act(x), *W->act(y)));
  }
}

TEST_F(Presentation, BoundaryVanishesInQuotient) {
  for (const auto& x : d1().basis.basis()) {
    Induced b = boundary_apply(*W, *VW, d1().basis, x, M->ctx->group.identity());
    EXPECT_FALSE(b.empty());
    EXPECT_TRUE(to_ambient(*W, *VW, b).empty());
  }
}

TEST_F(Presentation, BoundaryTwistByPi) {
  const Gl2& G = M->ctx->group;
  const GF& F = M->V->F();
  for (const auto& x : d1().basis.basis()) {
    Induced lhs = boundary_apply(*W, *VW, d1().basis, M->V->g_act(G.pi(), x), G.identity());
    Induced rhs = sv_scale(F, F.neg(1), boundary_apply(*W, *VW, d1().basis, x, G.pi()));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_F(Presentation, BoundaryRejectsVectorsOutsideD1) {
  std::vector<Fe> top(M->V->dim(), 0);
  top[0] = 1;
  Induced x = M->V->inject(M->ctx->group.identity(), top);
  EXPECT_THROW(boundary_apply(*W, *VW, d1().basis, x, M->ctx->group.identity()), DomainError);
}

TEST_F(Presentation, R0Generators) {
  R0Set r0 = r0_generators(*W, *VW);
  EXPECT_EQ(r0.relations.size(), r0.meet.dim());
  EXPECT_TRUE(r0.identity_holds);
  EXPECT_TRUE(same_span(r0.meet, d1().basis));
}

TEST_F(Presentation, LevelFunction) {
  LevelFiltration L(*Q, 3);
  ASSERT_GE(L.computed(), 2u);
  const GF& F = M->V->F();
  std::vector<Fe> top(M->V->dim(), 0);
  top[0] = 1;
  Induced x = M->V->inject(M->ctx->group.identity(), top);
  EXPECT_EQ(L.level(x), 1u);
  EXPECT_EQ(L.level(M->H->S(x)), 2u);
  EXPECT_EQ(L.level(Q->reduce(M->H->id_v0())), 0u);
  // Moving a D1 vector between the two halves does not change the level.
  Induced v = Q->reduce(M->H->S(x));
  sv_axpy(F, v, 1, M->V->g_act(M->ctx->group.pi(), x));
  v = Q->reduce(v);
  auto [vp, vm] = L.split(v);
  auto base = L.level(vp, vm);
  ASSERT_TRUE(base.has_value());
  for (const auto& d : d1().basis.basis()) {
    Induced ap = vp, am = vm;
    sv_axpy(F, ap, 1, d);
    sv_axpy(F, am, F.neg(1), d);
    EXPECT_EQ(L.level(ap, am), base);
  }
}
