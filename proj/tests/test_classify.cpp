#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "pgx/classify.hpp"
#include "pgx/enumeration.hpp"

using namespace pgx;

namespace {

const GroupSpec kD8{2, 2, 2, 2, 1, 1, 1, 2};
const InvariantTuple kD8Tuple{2, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1};

InvariantTuple fixture(i64 u) { return {3, 3, 3, 2, 1, 1, 2, 0, 1, 2, 1, u}; }

std::vector<InvariantTuple> tuples() {
  auto ts = enumerate_tuples(2, 7);
  for (const auto& t : enumerate_tuples(3, 5)) ts.push_back(t);
  return ts;
}

// Min of (sigma, o) over every basis with z components, using conjugation
// by brute force.
SigmaO brute_sigma_o_min(const Group& G) {
  std::optional<SigmaO> best;
  for (const auto& c : base_candidates(G)) {
    const Element b1{c[0], c[1], 0}, b2{c[2], c[3], 0};
    const SignOrder s1 = sigma_o_of_r(oracle::slow_r(G, b1), G.p(), G.m());
    const SignOrder s2 = sigma_o_of_r(oracle::slow_r(G, b2), G.p(), G.m());
    const SigmaO so{s1.sign, s2.sign, s1.o, s2.o};
    if (!best || so < *best) best = so;
  }
  return *best;
}

}  // namespace

TEST(ROf, Examples) {
  const Group F(construct(fixture(1)));
  for (const auto& s : {kD8, F.spec()}) {
    const Group G(s);
    EXPECT_EQ(r_of(G, G.identity()), 1u % G.M());
    EXPECT_EQ(r_of(G, G.a()), 1u % G.M());
  }
  EXPECT_EQ(r_of(F, F.b1()), 4u);
}

TEST(ROf, AgreesWithConjugation) {
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    for (u64 i = 0; i < G.order(); i += 1 + G.order() / 200) {
      const Element g = G.element_at(i);
      ASSERT_EQ(r_of(G, g), r_of_conjugation(G, g));
      ASSERT_EQ(r_of(G, g), oracle::slow_r(G, g));
    }
  }
}

TEST(SigmaOfElement, Examples) {
  const Group D(kD8), F(construct(fixture(1)));
  EXPECT_EQ(sigma_o(D, D.identity()), (SignOrder{1, 0}));
  EXPECT_EQ(sigma_o(D, D.b1()), (SignOrder{1, 0}));
  EXPECT_EQ(sigma_o(F, F.b1()), (SignOrder{1, 2}));
}

TEST(BaseCandidates, Examples) {
  const Group D(kD8);
  const auto cands = base_candidates(D);
  EXPECT_EQ(cands.size(), 6u);
  for (const auto& s : enumerate_presentations(3, 4)) {
    const Group G(s);
    const auto cs = base_candidates(G);
    EXPECT_NE(std::find(cs.begin(), cs.end(), std::array<u64, 4>{1, 0, 0, 1}), cs.end());
    for (const auto& c : cs) {
      ASSERT_FALSE(c[0] == 0 && c[1] == 0);
      ASSERT_TRUE(is_base_candidate(G, {{c[0], c[1], 0}, {c[2], c[3], 0}}));
    }
  }
}

TEST(BaseCandidates, CountMatchesDefinition) {
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    const u64 p = G.p(), d = G.N1() / G.N2();
    u64 count = 0;
    for (u64 x1 = 0; x1 < G.N1(); ++x1)
      for (u64 y1 = 0; y1 < G.N2(); ++y1)
        for (u64 x2 = 0; x2 < G.N1(); x2 += d)
          for (u64 y2 = 0; y2 < G.N2(); ++y2) count += (x1 * y2 + p * p * G.N1() - x2 * y1 % (p * G.N1())) % p != 0;
    ASSERT_EQ(base_candidates(G).size(), count) << to_positional(t);
  }
}

TEST(SigmaOMin, Examples) {
  EXPECT_EQ(compute_sigma_o_min(Group(kD8)), (SigmaO{1, 1, 0, 0}));
  EXPECT_EQ(compute_sigma_o_min(Group(construct(fixture(1)))), (SigmaO{1, 1, 2, 0}));
  for (const auto& s : enumerate_presentations(2, 5)) {
    if (s.r1 % s.M == 1 % s.M && s.r2 % s.M == 1 % s.M) {
      EXPECT_EQ(compute_sigma_o_min(Group(s)), (SigmaO{1, 1, 0, 0}));
    }
  }
}

TEST(SigmaOMin, MatchesBruteForce) {
  for (const auto& s : enumerate_presentations(2, 6)) {
    const Group G(s);
    ASSERT_EQ(compute_sigma_o_min(G), brute_sigma_o_min(G)) << to_positional(s);
  }
}

TEST(ComputeInv, Examples) {
  EXPECT_EQ(compute_inv(Group(construct(kD8Tuple))).tuple, kD8Tuple);
  EXPECT_EQ(compute_inv(Group(construct(fixture(4)))).tuple, fixture(4));
  const InvariantTuple heis{3, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1};
  EXPECT_EQ(compute_inv(Group(construct(heis))).tuple, heis);
}

TEST(ComputeInv, RejectsUnclassifiable) {
  // cyclic quotient direction: N2 < p is not a 2-generated quotient
  EXPECT_THROW(compute_inv(Group(GroupSpec{2, 2, 2, 1, 1, 1, 1, 2})), std::invalid_argument);
  // N1 < N2
  EXPECT_THROW(compute_inv(Group(GroupSpec{2, 2, 2, 4, 1, 1, 2, 1})), std::invalid_argument);
}

TEST(ComputeInv, WitnessAttainsTheTuple) {
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    const InvResult r = compute_inv(G);
    const BaseData d = base_data(G, r.witness);
    EXPECT_EQ(d.sigma1, t.sigma1);
    EXPECT_EQ(d.o1, t.o1);
    EXPECT_EQ(d.o2, t.o2);
    EXPECT_EQ(d.op1, t.op1);
    EXPECT_EQ(d.op2, t.op2);
    EXPECT_EQ(static_cast<i64>(d.u1), t.u1);
    EXPECT_EQ(static_cast<i64>(d.u2), t.u2);
    EXPECT_TRUE(in_Brt(G, t, r.witness));
  }
}

TEST(ComputeInv, BasisIndependence) {
  std::mt19937_64 rng(17);
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    const auto cands = base_candidates(G);
    for (int c = 0; c < 3; ++c) {
      const auto& k = cands[rng() % cands.size()];
      const Basis b{{k[0], k[1], rng() % G.M()}, {k[2], k[3], rng() % G.M()}};
      const GroupSpec relabeled = oracle::relabel(G, b);
      ASSERT_EQ(compute_inv(Group(relabeled)).tuple, t) << to_positional(t) << " via " << to_positional(relabeled);
    }
    const GroupSpec from_witness = oracle::relabel(G, compute_inv(G).witness);
    ASSERT_EQ(compute_inv(Group(from_witness)).tuple, t);
  }
}

TEST(ComputeInv, OutputsAreValidForEveryPresentation) {
  for (const auto& s : enumerate_presentations(3, 5)) {
    ASSERT_TRUE(validate(compute_inv(Group(s)).tuple).valid) << to_positional(s);
  }
}

TEST(ComputeInv, ThreadCountDoesNotMatter) {
  for (const auto& t : enumerate_tuples(2, 8)) {
    const Group G(construct(t));
    const InvResult a = compute_inv(G, 1), b = compute_inv(G, 4);
    ASSERT_EQ(a.tuple, b.tuple);
    ASSERT_EQ(a.witness, b.witness);
  }
  const Group F(construct(fixture(7)));
  const InvResult a = compute_inv(F, 1), b = compute_inv(F, 4);
  EXPECT_EQ(a.tuple, b.tuple);
  EXPECT_EQ(a.witness, b.witness);
}

TEST(BaseData, MatchesRepeatedMultiplication) {
  std::mt19937_64 rng(2);
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    const auto cands = base_candidates(G);
    for (int c = 0; c < 5; ++c) {
      const auto& k = cands[rng() % cands.size()];
      const Basis b{{k[0], k[1], rng() % G.M()}, {k[2], k[3], rng() % G.M()}};
      const BaseData d = base_data(G, b);
      const Element comm = commutator(G, b.b2, b.b1);
      const Element w1 = oracle::slow_power(G, b.b1, G.N1()), w2 = oracle::slow_power(G, b.b2, G.N2());
      // b_i^{N_i} = [b2, b1]^{t_i}
      ASSERT_EQ(oracle::slow_power(G, comm, d.t1), w1);
      ASSERT_EQ(oracle::slow_power(G, comm, d.t2), w2);
      ASSERT_GE(d.t1, 1u);
      ASSERT_LE(d.t1, G.M());
      ASSERT_EQ(d.t1, d.u1 * ipow(G.p(), G.m() - static_cast<unsigned>(d.op1)));
      ASSERT_NE(d.u1 % G.p(), 0u);
      ASSERT_NE(d.u2 % G.p(), 0u);
    }
  }
}

TEST(BaseData, ZShiftUpdateFormulas) {
  // Moving b_i to b_i a^{z_i}: the commutator exponent changes by
  // z2 (r(b1) - 1) + z1 (1 - r(b2)) and b_i^{N_i} by z_i S_{r(b_i)}(N_i).
  std::mt19937_64 rng(4);
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    const u64 M = G.M();
    const auto cands = base_candidates(G);
    for (int c = 0; c < 5; ++c) {
      const auto& k = cands[rng() % cands.size()];
      const Element h1{k[0], k[1], 0}, h2{k[2], k[3], 0};
      const u64 z1 = rng() % M, z2 = rng() % M;
      const Element g1{k[0], k[1], z1}, g2{k[2], k[3], z2};
      const u64 r1 = r_of(G, h1), r2 = r_of(G, h2);
      const u64 c0 = commutator(G, h2, h1).z;
      const u64 cz = addmod(addmod(c0, mulmod(z2, submod(r1, 1 % M, M), M), M), mulmod(z1, submod(1 % M, r2, M), M), M);
      ASSERT_EQ(commutator(G, g2, g1).z, cz);
      const u64 w1 = power(G, h1, G.N1()).z, w2 = power(G, h2, G.N2()).z;
      ASSERT_EQ(power(G, g1, G.N1()).z, addmod(w1, mulmod(z1, literal::ese(static_cast<i64>(r1), G.N1(), M), M), M));
      ASSERT_EQ(power(G, g2, G.N2()).z, addmod(w2, mulmod(z2, literal::ese(static_cast<i64>(r2), G.N2(), M), M), M));
    }
  }
}

TEST(BaseData, BrMembersHaveTheExpectedOrders) {
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    const SigmaO so{t.sigma1, t.sigma2, t.o1, t.o2};
    for (const auto& k : base_candidates(G)) {
      const Basis b{{k[0], k[1], 1 % G.M()}, {k[2], k[3], 0}};
      if (!in_Br(G, so, b)) continue;
      const BaseData d = base_data(G, b);
      ASSERT_GE(d.op1, 0);
      ASSERT_LE(d.op1, static_cast<i64>(G.m()));
      ASSERT_EQ(element_order(G, b.b1), ipow(G.p(), G.n1() + static_cast<unsigned>(d.op1)));
      ASSERT_EQ(element_order(G, b.b2), ipow(G.p(), G.n2() + static_cast<unsigned>(d.op2)));
    }
  }
}

TEST(BaseData, RejectsNonBases) {
  const Group G(kD8);
  EXPECT_THROW(base_data(G, {{0, 0, 1}, {0, 1, 0}}), std::invalid_argument);
  EXPECT_THROW(base_data(G, {{1, 1, 0}, {1, 1, 0}}), std::invalid_argument);
}

TEST(Fastpath, Examples) {
  const Group D(construct(kD8Tuple));
  const SigmaO so = compute_sigma_o_min(D);
  EXPECT_TRUE(fastpath_in_Brprime(D, so, {D.b1(), D.b2()}));
  // b1 b2 has o'1 = 0 < 1
  const Basis mixed{{1, 1, 0}, D.b2()};
  EXPECT_EQ(base_data(D, mixed).op1, 0);
  EXPECT_FALSE(fastpath_in_Brprime(D, so, mixed));
  for (const auto& t : tuples()) {
    const Group G(construct(t));
    EXPECT_TRUE(in_Br(G, {t.sigma1, t.sigma2, t.o1, t.o2}, {G.b1(), G.b2()})) << to_positional(t);
  }
  const Group F(construct(fixture(1)));
  EXPECT_TRUE(fastpath_in_Brt(F, fixture(1), {F.b1(), F.b2()}));
}

TEST(Fastpath, StagePreconditionsThrow) {
  const Group F(construct(fixture(1)));
  const InvariantTuple t = fixture(1);
  const SigmaO so{1, 1, 2, 0};
  EXPECT_THROW(fastpath_in_Bprime(F, {{0, 0, 0}, {0, 1, 0}}), std::invalid_argument);
  // b1 b2 acts by 4 * 1 = r1 but b2 b1^... move b2 out of B_r
  const Basis off{F.b1(), {1, 1, 0}};
  ASSERT_FALSE(in_Br(F, so, off));
  EXPECT_THROW(fastpath_in_Brprime(F, so, off), std::invalid_argument);
  EXPECT_THROW(fastpath_in_Brt(F, t, off), std::invalid_argument);
}

TEST(Fastpath, AgreesWithDefinitionOnTheFixture) {
  for (i64 u : {1, 4, 7}) {
    const Group G(construct(fixture(u)));
    const SigmaO so = compute_sigma_o_min(G);
    for (const auto& k : base_candidates(G)) {
      const Basis b{{k[0], k[1], 0}, {k[2], k[3], 0}};
      ASSERT_EQ(fastpath_in_Bprime(G, b), in_Bprime(G, so, b));
      ASSERT_EQ(fastpath_in_Br(G, so, b), in_Br(G, so, b));
    }
  }
}
