#pragma once

// Slow reference implementations that follow the definitions term by term.
// Used as oracles by the acceptance suite and the unit tests; nothing here
// shares code with the fast paths it checks.

#include "pgx/group.hpp"
#include "pgx/modarith.hpp"

namespace pgx::literal {

inline u64 mod_of(i64 s, u64 m) {
  i64 r = s % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// s^n by n multiplications.
inline u64 pow(i64 s, u64 n, u64 m) {
  const u64 b = mod_of(s, m);
  u64 r = 1 % m;
  for (u64 i = 0; i < n; ++i) r = static_cast<u64>(static_cast<u128>(r) * b % m);
  return r;
}

/// Smallest k >= 1 with s^k = 1 mod m, by repeated multiplication.
inline u64 order(i64 s, u64 m) {
  const u64 b = mod_of(s, m);
  u64 x = b % m, k = 1;
  while (x != 1 % m) {
    x = static_cast<u64>(static_cast<u128>(x) * b % m);
    ++k;
  }
  return k;
}

/// sum_{i<n} s^i, term by term.
inline u64 ese(i64 s, u64 n, u64 m) {
  const u64 b = mod_of(s, m);
  u64 sum = 0, term = 1 % m;
  for (u64 i = 0; i < n; ++i) {
    sum = (sum + term) % m;
    term = static_cast<u64>(static_cast<u128>(term) * b % m);
  }
  return sum;
}

/// sum_{0<=i<j<n} s^i t^j, grouping the inner sum over i for each j.
inline u64 ese2(i64 s, i64 t, u64 n, u64 m) {
  const u64 bs = mod_of(s, m), bt = mod_of(t, m);
  u64 sum = 0, prefix = 0, spow = 1 % m, tpow = 1 % m;
  for (u64 j = 0; j < n; ++j) {
    sum = (sum + static_cast<u64>(static_cast<u128>(prefix) * tpow % m)) % m;
    prefix = (prefix + spow) % m;
    spow = static_cast<u64>(static_cast<u128>(spow) * bs % m);
    tpow = static_cast<u64>(static_cast<u128>(tpow) * bt % m);
  }
  return sum;
}

/// sum_{0<=i<j<n} s^i t^j as an explicit double loop.
inline u64 ese2_double_loop(i64 s, i64 t, u64 n, u64 m) {
  u64 sum = 0;
  for (u64 j = 0; j < n; ++j) {
    for (u64 i = 0; i < j; ++i) {
      sum = (sum + static_cast<u64>(static_cast<u128>(pow(s, i, m)) * pow(t, j, m) % m)) % m;
    }
  }
  return sum;
}

/// v_p(x) for x taken mod p^K; returns K when x = 0 mod p^K.
inline unsigned vp_mod(u64 x, u64 p, unsigned K) {
  unsigned v = 0;
  while (v < K && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Normal-form product by collecting the word b1^x b2^y a^z letter by letter,
/// using only the defining relations:
///   a^M = 1, a^{b_i} = a^{r_i}, b_i^{N_i} = a^{t_i}, b1^{-1} b2 b1 = b2 a.
class Collector {
 public:
  explicit Collector(const GroupSpec& s)
      : p_(s.p), M_(s.M), N1_(s.N1), N2_(s.N2), r1_(s.r1 % s.M), r2_(s.r2 % s.M),
        t1_(s.t1 % s.M), t2_(s.t2 % s.M) {}

  Element times_a(Element g) const {
    g.z = (g.z + 1) % M_;
    return g;
  }

  // b1^x b2^y a^z b2 = b1^x b2^{y+1} a^{z r2}
  Element times_b2(Element g) const {
    g.z = mul(g.z, r2_);
    if (++g.y == N2_) {
      g.y = 0;
      g.z = (g.z + t2_) % M_;
    }
    return g;
  }

  // b1^x b2^y a^z b1 = b1^{x+1} (b2 a)^y a^{z r1}
  Element times_b1(Element g) const {
    Element w{};
    for (u64 k = 0; k < g.y; ++k) w = times_a(times_b2(w));
    Element out{g.x + 1, w.y, (w.z + mul(g.z, r1_)) % M_};
    if (out.x == N1_) {
      // a^{t1} moved right past (b2 a)^y picks up r2^y
      out.x = 0;
      out.z = (out.z + mul(t1_, pow(static_cast<i64>(r2_), g.y, M_))) % M_;
    }
    return out;
  }

  Element multiply(Element g, const Element& h) const {
    for (u64 k = 0; k < h.x; ++k) g = times_b1(g);
    for (u64 k = 0; k < h.y; ++k) g = times_b2(g);
    for (u64 k = 0; k < h.z; ++k) g = times_a(g);
    return g;
  }

 private:
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % M_); }

  u64 p_, M_, N1_, N2_, r1_, r2_, t1_, t2_;
};

}  // namespace pgx::literal
