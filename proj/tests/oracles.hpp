#pragma once

// Brute-force oracles for the unit tests. Everything here is derived from
// definitions (literal sums, repeated multiplication, rectangle scans) and
// avoids the closed forms under test.

#include <map>
#include <vector>

#include "literal.hpp"
#include "pgx/classify.hpp"
#include "pgx/group.hpp"
#include "pgx/invariants.hpp"

namespace oracle {

using namespace pgx;
using pgx::literal::Collector;

/// Every tuple in a generous rectangle that validates, in lexicographic order.
inline std::vector<InvariantTuple> naive_tuple_scan(i64 p, i64 max_total_exp) {
  std::vector<InvariantTuple> out;
  for (i64 m = 1; m <= max_total_exp; ++m) {
    for (i64 n1 = 1; m + n1 <= max_total_exp; ++n1) {
      for (i64 n2 = 1; n2 <= n1 && m + n1 + n2 <= max_total_exp; ++n2) {
        const i64 pm = static_cast<i64>(ipow(static_cast<u64>(p), static_cast<unsigned>(m)));
        for (i64 s1 : {-1, 1}) {
          for (i64 s2 : {-1, 1}) {
            for (i64 o1 = 0; o1 <= m; ++o1) {
              for (i64 o2 = 0; o2 <= m; ++o2) {
                for (i64 q1 = 0; q1 <= m; ++q1) {
                  for (i64 q2 = 0; q2 <= m; ++q2) {
                    for (i64 u1 = 1; u1 <= pm; ++u1) {
                      for (i64 u2 = 1; u2 <= pm; ++u2) {
                        const InvariantTuple t{p, m, n1, n2, s1, s2, o1, o2, q1, q2, u1, u2};
                        if (validate(t).valid) out.push_back(t);
                      }
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

/// g^k by k - 1 multiplications.
inline Element slow_power(const Group& G, const Element& g, u64 k) {
  Element r{};
  for (u64 i = 0; i < k; ++i) r = G.mul(r, g);
  return r;
}

/// Inverse by search.
inline Element slow_inverse(const Group& G, const Element& g) {
  for (u64 i = 0; i < G.order(); ++i) {
    const Element h = G.element_at(i);
    if (G.mul(g, h) == Element{}) return h;
  }
  return {~u64{0}, 0, 0};
}

/// Smallest k >= 1 with g^k = 1, by repeated multiplication.
inline u64 slow_order(const Group& G, const Element& g) {
  Element r = g;
  u64 k = 1;
  while (r != Element{}) {
    r = G.mul(r, g);
    ++k;
  }
  return k;
}

/// The exponent r with g^-1 a g = a^r, found by searching <a>.
inline u64 slow_r(const Group& G, const Element& g) {
  const Element c = G.mul(G.mul(slow_inverse(G, g), G.a()), g);
  return c.z;
}

/// Orders histogram by repeated multiplication.
inline std::map<u64, u64> slow_histogram(const Group& G) {
  std::map<u64, u64> h;
  for (u64 i = 0; i < G.order(); ++i) ++h[slow_order(G, G.element_at(i))];
  return h;
}

/// The presentation read off from a basis b: a' = [b2, b1] and the
/// exponents r(b_i), t_i(b) relative to a'.
inline GroupSpec relabel(const Group& G, const Basis& b) {
  const BaseData d = base_data(G, b);
  return {G.p(), G.M(), G.N1(), G.N2(), r_of(G, b.b1), r_of(G, b.b2), d.t1, d.t2};
}

}  // namespace oracle
