#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "oracles.hpp"
#include "pgx/enumeration.hpp"
#include "pgx/invariants.hpp"

using namespace pgx;

namespace {

const InvariantTuple kD8{2, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1};
const InvariantTuple kQ8{2, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1};

InvariantTuple fixture(i64 u) { return {3, 3, 3, 2, 1, 1, 2, 0, 1, 2, 1, u}; }

bool has(const ConditionReport& r, const char* label) { return r.violates(label); }

// Subgroup of units mod M generated by r.
std::vector<u64> cyclic(u64 r, u64 M) {
  std::vector<u64> out{1 % M};
  for (u64 x = r % M; x != 1 % M; x = mulmod(x, r, M)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Validate, Examples) {
  for (i64 u : {1, 4, 7}) EXPECT_TRUE(validate(fixture(u)).valid) << u;
  const ConditionReport bad = validate({2, 2, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1});
  EXPECT_FALSE(bad.valid);
  EXPECT_TRUE(has(bad, "2"));
  EXPECT_TRUE(has(bad, "3"));
  EXPECT_TRUE(validate(kD8).valid);
  EXPECT_TRUE(validate(kQ8).valid);
  const ConditionReport c6 = validate({2, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1});
  EXPECT_FALSE(c6.valid);
  EXPECT_TRUE(has(c6, "6c"));
}

TEST(Validate, OtherFixtureUnitsAreRejected) {
  for (i64 u : {2, 3, 5, 6, 8, 9}) EXPECT_FALSE(validate(fixture(u)).valid) << u;
}

TEST(Validate, ReportIsOrderedAndValidIffEmpty) {
  for (const auto& t : oracle::naive_tuple_scan(2, 4)) ASSERT_TRUE(validate(t).violations.empty());
  const ConditionReport r = validate({2, 2, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1});
  std::vector<std::size_t> pos;
  for (const auto& v : r.violations) {
    const auto it = std::find(kConditionLabels.begin(), kConditionLabels.end(), v);
    ASSERT_NE(it, kConditionLabels.end()) << v;
    pos.push_back(static_cast<std::size_t>(it - kConditionLabels.begin()));
  }
  EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
  EXPECT_EQ(r.valid, r.violations.empty());
}

TEST(Validate, RejectsNonPrime) {
  EXPECT_THROW(validate({4, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1}), std::invalid_argument);
}

TEST(Validate, AbelianAndOutOfRangeInputsAreReported) {
  EXPECT_TRUE(has(validate({2, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1}), "1"));
  EXPECT_FALSE(validate({2, 1, 1, 2, 1, 1, 0, 0, 1, 0, 1, 1}).valid);
  EXPECT_FALSE(validate({3, 1, 1, 1, -1, 1, 0, 0, 0, 0, 1, 1}).valid);
}

TEST(DeriveR, Examples) {
  EXPECT_EQ(derive_r(fixture(1)), (RPair{4, 28}));
  EXPECT_EQ(derive_r(kD8), (RPair{3, 3}));
  EXPECT_THROW(derive_r({2, 2, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1}), std::invalid_argument);
}

TEST(DeriveT, Examples) {
  EXPECT_EQ(derive_t(fixture(1)), (TPair{9, 3}));
  EXPECT_EQ(derive_t(kD8), (TPair{1, 2}));
  EXPECT_EQ(derive_t(kQ8), (TPair{1, 1}));
}

TEST(ConsistencyCheck, Examples) {
  EXPECT_TRUE(consistency_check(3, 27, 27, 9, 4, 28, 9, 3));
  EXPECT_FALSE(consistency_check(3, 27, 27, 9, 4, 28, 9, 6));
  EXPECT_TRUE(consistency_check(2, 2, 2, 2, 1, 1, 1, 2));
}

TEST(ABounds, FixtureFollowsTheFormula) {
  // a1 = min(1, 0 + min(3 - 2 + 1 - 2, 0)) = 0; a2 = 2 from the o1 o2 = 0 branch
  for (i64 u : {1, 4, 7}) EXPECT_EQ(a_bounds(fixture(u)), (ABounds{0, 2}));
}

TEST(ABounds, ZeroCases) {
  for (u64 p : {2u, 3u}) {
    for (const auto& t : enumerate_tuples(p, p == 2 ? 7 : 5)) {
      if (t.sigma1 != 1) continue;
      const ABounds b = a_bounds(t);
      if (t.o1 == 0) EXPECT_EQ(b.a2, 0) << to_positional(t);
      if (t.op1 == 0) EXPECT_EQ(b.a1, 0) << to_positional(t);
    }
  }
  EXPECT_THROW(a_bounds({2, 2, 2, 1, -1, 1, 0, 0, 1, 1, 1, 1}), std::invalid_argument);
}

TEST(Derived, ValidTuplesAreConsistent) {
  for (auto [p, e] : {std::pair<u64, unsigned>{2, 8}, {3, 6}, {5, 4}}) {
    for (const auto& t : enumerate_tuples(p, e)) {
      const RPair r = derive_r(t);
      const TPair tt = derive_t(t);
      const u64 M = ipow(p, static_cast<unsigned>(t.m));
      ASSERT_GT(r.r1, 1u);
      ASSERT_LE(r.r1, M + 1);
      ASSERT_GT(r.r2, 1u);
      ASSERT_LE(r.r2, M + 1);
      ASSERT_GE(tt.t1, 1u);
      ASSERT_LE(tt.t1, M);
      ASSERT_TRUE(consistency_check(p, M, ipow(p, static_cast<unsigned>(t.n1)), ipow(p, static_cast<unsigned>(t.n2)),
                                    r.r1, r.r2, tt.t1, tt.t2))
          << to_positional(t);
    }
  }
}

TEST(Derived, RGeneratesTheSameUnitSubgroup) {
  for (auto [p, e] : {std::pair<u64, unsigned>{2, 8}, {3, 6}}) {
    for (const auto& t : enumerate_tuples(p, e)) {
      const u64 M = ipow(p, static_cast<unsigned>(t.m));
      const RPair r = derive_r(t);
      auto plain = [&](i64 sigma, i64 o) {
        return literal::mod_of(sigma + static_cast<i64>(ipow(p, static_cast<unsigned>(t.m - o))), M);
      };
      EXPECT_EQ(cyclic(r.r1 % M, M), cyclic(plain(t.sigma1, t.o1), M)) << to_positional(t);
      EXPECT_EQ(cyclic(r.r2 % M, M), cyclic(plain(t.sigma2, t.o2), M)) << to_positional(t);
    }
  }
}

TEST(Encoding, RoundTripIsByteIdentical) {
  for (const auto& t : enumerate_tuples(2, 6)) {
    const std::string j = to_json(t), pos = to_positional(t);
    EXPECT_EQ(parse_tuple(j), t);
    EXPECT_EQ(to_json(parse_tuple(j)), j);
    EXPECT_EQ(to_positional(parse_tuple(pos)), pos);
  }
  EXPECT_EQ(to_positional(kD8), "2,1,1,1,1,1,0,0,1,0,1,1");
  EXPECT_EQ(to_json(kD8),
            R"({"p":2,"m":1,"n1":1,"n2":1,"sigma1":1,"sigma2":1,"o1":0,"o2":0,"op1":1,"op2":0,"u1":1,"u2":1})");
}

TEST(Encoding, MalformedInputThrowsInvalidArgument) {
  for (const char* bad : {"", "1,2,3", "2,1,1,1,1,1,0,0,1,0,1,1,5", "2,1,1,1,1,1,0,0,1,0,1,x",
                          "2,1,1,1,1,1,0,0,1,0,1,", "{\"p\":2}", "{\"p\":2,", "{\"p\":\"2\",\"m\":1}",
                          "99999999999999999999,1,1,1,1,1,0,0,1,0,1,1", "[1,2]"}) {
    EXPECT_THROW(parse_tuple(bad), std::invalid_argument) << bad;
  }
}

TEST(Encoding, ToleratesWhitespace) { EXPECT_EQ(parse_tuple(" 2, 1,1,1,1,1,0,0,1,0,1,1\n"), kD8); }
