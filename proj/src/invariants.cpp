#include "pgx/invariants.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "pgx/encoding.hpp"

namespace pgx {

std::ostream& operator<<(std::ostream& os, const InvariantTuple& t) {
  return os << "(" << to_positional(t) << ")";
}

bool ConditionReport::violates(std::string_view label) const {
  return std::find(violations.begin(), violations.end(), label) != violations.end();
}

namespace {

constexpr i64 kSaturated = static_cast<i64>(kMaxOrder);

// p^a for a >= 0, saturating at 2^62. Only meaningful for a >= 0.
i64 sat_pow(i64 p, i64 a) {
  i64 r = 1;
  for (i64 i = 0; i < a; ++i) {
    if (r > kSaturated / p) return kSaturated;
    r *= p;
  }
  return r;
}

// 1 <= u <= p^a; false for a < 0 since then p^a < 1.
bool in_unit_range(i64 u, i64 p, i64 a) { return a >= 0 && u >= 1 && u <= sat_pow(p, a); }

// x = y mod p^e for e >= 0.
bool congruent(i64 x, i64 y, i64 p, i64 e) {
  if (e < 0) return false;
  i64 mod = sat_pow(p, e);
  if (mod == kSaturated) return x == y;
  i64 d = (x - y) % mod;
  return d == 0;
}

bool divides(i64 p, i64 u) { return u % p == 0; }

ABounds bounds_unchecked(const InvariantTuple& t) {
  const i64 a1 = std::min(t.op1, t.o2 + std::min<i64>(t.n1 - t.n2 + t.op1 - t.op2, 0));
  i64 a2;
  if (t.o1 == 0) {
    a2 = 0;
  } else if (t.o2 == 0) {
    a2 = std::min({t.o1, t.op2, t.op2 - t.op1 + std::max<i64>(0, t.o1 + t.n2 - t.n1)});
  } else {
    a2 = std::min(t.o1 - t.o2, t.op2 - t.op1);
  }
  return {a1, a2};
}

bool sign_ok(i64 s) { return s == 1 || s == -1; }

}  // namespace

ConditionReport validate(const InvariantTuple& t) {
  if (t.p < 2 || !is_prime(static_cast<u64>(t.p))) {
    throw std::invalid_argument("validate: p = " + std::to_string(t.p) + " is not prime");
  }
  const i64 p = t.p, m = t.m, n1 = t.n1, n2 = t.n2;
  const i64 o1 = t.o1, o2 = t.o2, op1 = t.op1, op2 = t.op2;
  const i64 u1 = t.u1, u2 = t.u2;

  ConditionReport rep;
  auto fail = [&](std::string_view label) { rep.violations.emplace_back(label); };

  // (1) non-abelian: m >= 1
  if (!(n1 >= n2 && n2 >= 1 && m >= 1)) fail("1");

  // (2)
  {
    bool ok = sign_ok(t.sigma1) && sign_ok(t.sigma2);
    ok = ok && 0 <= o1 && o1 < std::min(m, n1) && 0 <= o2 && o2 < std::min(m, n2);
    ok = ok && !divides(p, u1) && !divides(p, u2);
    if (!ok) fail("2");
  }

  // (3)
  if (p == 2 && m >= 2 && !(o1 < m - 1 && o2 < m - 1)) fail("3");

  // (4)
  if (!(0 <= op1 && op1 <= m - o1 && 0 <= op2 && op2 <= m - o2 && op1 <= m - o2)) fail("4");

  // (5)
  {
    bool a = o1 == 0;
    bool b = 0 < o1 && o1 == o2 && t.sigma2 == -1;
    bool c = o2 == 0 && 0 < o1 && n2 < n1;
    bool d = 0 < o2 && o2 < o1 && o1 < o2 + n1 - n2;
    if (!(a || b || c || d)) fail("5");
  }

  if (t.sigma1 == 1) {
    // (6a)
    if (!(t.sigma2 == 1 && o2 + op1 <= m && m <= n1)) fail("6a");

    // (6b)
    {
      bool first = o1 + op2 <= m && m <= n2;
      bool second = 2 * m - o1 - op2 == n2 && n2 < m && congruent(u2, 1, p, m - n2);
      if (!(first || second)) fail("6b");
    }

    // (6c)
    if (o1 == 0) {
      bool i = op1 <= op2 && op2 <= op1 + o2 + n1 - n2 && std::max({p - 2, op2, n1 - m}) > 0;
      bool ii = p == 2 && m == n1 && op2 == 0 && op1 == 1;
      if (!(i || ii)) fail("6c");
    }

    // (6d)
    if (o2 == 0 && 0 < o1) {
      bool ok = op1 + std::min<i64>(0, n1 - n2 - o1) <= op2 && op2 <= op1 + n1 - n2 &&
                std::max({p - 2, op1, n1 - m}) > 0;
      if (!ok) fail("6d");
    }

    // (6e)
    if (0 < o2 && o2 < o1) {
      if (!(op1 <= op2 && op2 <= op1 + n1 - n2)) fail("6e");
    }

    const ABounds ab = bounds_unchecked(t);

    // (6f)
    if (!in_unit_range(u1, p, ab.a1)) fail("6f");

    // (6g)
    {
      bool i = in_unit_range(u2, p, ab.a2);
      bool ii = false;
      if (ab.a2 >= 0) {
        const i64 pa2 = sat_pow(p, ab.a2);
        ii = o1 * o2 != 0 && n1 - n2 + op1 - op2 == 0 && 0 < ab.a1 && 1 + pa2 <= u2 &&
             u2 <= 2 * pa2 && congruent(u1, 1, p, 1);
      }
      if (!(i || ii)) fail("6g");
    }
  } else if (t.sigma1 == -1) {
    // (7a)
    if (!(p == 2 && m >= 2 && op1 <= 1 && u1 == 1)) fail("7a");

    if (t.sigma2 == 1) {
      // (7b)
      if (!(n2 < n1)) fail("7b");

      // (7b)(i)
      if (m <= n2) {
        bool ok = op2 <= 1 && u2 == 1 && (op1 <= op2 || (o2 == 0 && 0 < n1 - n2 && n1 - n2 < o1));
        if (!ok) fail("7bi");
      }

      // (7b)(ii)
      if (m > n2) {
        bool ok = m + 1 == n2 + op2;
        // u2 (1 + 2^{m-o1-1}) = -1 mod 2^{m-n2}, the form forced by the
        // consistency relations for r1 = -(1 + 2^{m-o1}).
        const i64 e = m - o1 - 1;
        if (e >= 0) {
          const i64 mod = sat_pow(2, m - n2);
          const __int128 lhs = static_cast<__int128>(u2 % mod) * ((1 + sat_pow(2, e)) % mod) % mod;
          ok = ok && (lhs + 1) % mod == 0;
        } else {
          ok = false;
        }
        ok = ok && in_unit_range(u2, 2, m - n2 + 1);
        ok = ok && (op1 == 1 || o1 + 1 != n1);
        const bool alt1 = op1 == 0 && (o1 == 0 || o2 + 1 != n2);
        const bool alt2 = op1 == 1 && o2 == 0 && n1 - n2 < o1;
        const bool alt3 = u2 <= sat_pow(2, m - n2);
        ok = ok && (alt1 || alt2 || alt3);
        if (!ok) fail("7bii");
      }
    } else if (t.sigma2 == -1) {
      // (7c)
      bool ok = op2 <= 1 && u2 == 1;
      if (o1 <= o2 && n1 > n2) ok = ok && op1 <= op2;                 // (a)
      if (o1 == o2 && n1 == n2) ok = ok && op1 >= op2;                // (b)
      if (o2 == 0 && 0 < o1 && o1 == n1 - 1 && n2 == 1) {             // (c)
        ok = ok && (op1 == 1 || op2 == 1);
      }
      if (o2 == 0 && 0 < o1 && (n1 != o1 + 1 || n2 != 1)) {           // (d)
        ok = ok && op1 + std::min<i64>(0, n1 - n2 - o1) <= op2;
      }
      if (o1 * o2 != 0 && o1 != o2) ok = ok && op1 <= op2;            // (e)
      if (!ok) fail("7c");
    }
  }

  rep.valid = rep.violations.empty();
  return rep;
}

namespace {

void require_valid(const InvariantTuple& t, const char* who) {
  ConditionReport rep = validate(t);
  if (!rep.valid) {
    std::string msg = std::string(who) + ": invalid tuple " + to_positional(t) + " violates";
    for (const auto& v : rep.violations) msg += " " + v;
    throw std::invalid_argument(msg);
  }
}

}  // namespace

RPair derive_r(const InvariantTuple& t) {
  require_valid(t, "derive_r");
  const u64 p = static_cast<u64>(t.p);
  const u64 M = ipow(p, static_cast<unsigned>(t.m));
  auto signed_res = [&](i64 sigma, u64 v) { return sigma == 1 ? v % M : (M - v % M) % M; };
  auto lift = [&](u64 res) { return res <= 1 ? res + M : res; };

  const u64 base1 = (1 + ipow(p, static_cast<unsigned>(t.m - t.o1))) % M;
  const u64 r1 = signed_res(t.sigma1, base1);
  u64 r2;
  if (t.o1 * t.o2 == 0) {
    r2 = signed_res(t.sigma2, (1 + ipow(p, static_cast<unsigned>(t.m - t.o2))) % M);
  } else {
    const u64 e = ipow(p, static_cast<unsigned>(t.o1 - t.o2));
    r2 = signed_res(t.sigma2, powmod(base1, e, M));
  }
  return {lift(r1), lift(r2)};
}

TPair derive_t(const InvariantTuple& t) {
  require_valid(t, "derive_t");
  const u64 p = static_cast<u64>(t.p);
  return {static_cast<u64>(t.u1) * ipow(p, static_cast<unsigned>(t.m - t.op1)),
          static_cast<u64>(t.u2) * ipow(p, static_cast<unsigned>(t.m - t.op2))};
}

bool consistency_check(u64 /*p*/, u64 M, u64 N1, u64 N2, u64 r1, u64 r2, u64 t1, u64 t2) {
  if (M == 0) return false;
  const u64 R1 = r1 % M, R2 = r2 % M, T1 = t1 % M, T2 = t2 % M;
  if (powmod(R1, N1, M) != 1 % M || powmod(R2, N2, M) != 1 % M) return false;
  if (mulmod(T1, R1, M) != T1 || mulmod(T2, R2, M) != T2) return false;
  const u64 s1 = ese(static_cast<i64>(R1), N1, M).value;
  const u64 s2 = ese(static_cast<i64>(R2), N2, M).value;
  if (s1 != mulmod(T1, submod(1 % M, R2, M), M)) return false;
  if (s2 != mulmod(T2, submod(R1, 1 % M, M), M)) return false;
  return true;
}

ABounds a_bounds(const InvariantTuple& t) {
  if (t.sigma1 != 1) throw std::invalid_argument("a_bounds: defined only for sigma1 = 1");
  return bounds_unchecked(t);
}

std::string to_positional(const InvariantTuple& t) { return join_ints(t.as_array()); }

std::string to_json(const InvariantTuple& t) {
  nlohmann::ordered_json j;
  j["p"] = t.p;
  j["m"] = t.m;
  j["n1"] = t.n1;
  j["n2"] = t.n2;
  j["sigma1"] = t.sigma1;
  j["sigma2"] = t.sigma2;
  j["o1"] = t.o1;
  j["o2"] = t.o2;
  j["op1"] = t.op1;
  j["op2"] = t.op2;
  j["u1"] = t.u1;
  j["u2"] = t.u2;
  return j.dump();
}

InvariantTuple parse_tuple(std::string_view text) {
  static constexpr std::array<const char*, 12> keys = {
      "p", "m", "n1", "n2", "sigma1", "sigma2", "o1", "o2", "op1", "op2", "u1", "u2"};
  std::array<i64, 12> a{};
  if (looks_like_json(text)) {
    a = parse_json_fields<12>(text, keys, "tuple");
  } else {
    a = parse_positional<12>(text, "tuple");
  }
  return InvariantTuple::from_array(a);
}

}  // namespace pgx
