#pragma once

// Exact number-theoretic primitives on 63-bit moduli.
//
// Products are formed in 128-bit intermediates, so any modulus up to 2^62
// is handled without overflow. Nothing here allocates.

#include <compare>
#include <cstdint>
#include <iosfwd>

namespace pgx {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest group order / modulus the toolkit accepts.
inline constexpr u64 kMaxOrder = u64{1} << 62;

/// p-adic valuation. v_p(0) is the distinguished infinite value, never a
/// large integer.
class Valuation {
 public:
  constexpr explicit Valuation(unsigned value) : value_(value), infinite_(false) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; throws std::domain_error on infinity.
  unsigned value() const;

  constexpr bool operator==(const Valuation&) const = default;
  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }

 private:
  constexpr Valuation() : value_(0), infinite_(true) {}
  unsigned value_;
  bool infinite_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// An element of Z/modulus. value is always in [0, modulus).
struct Residue {
  u64 value = 0;
  u64 modulus = 1;

  constexpr bool operator==(const Residue&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

// Raw modular helpers. All assume modulus >= 1 and reduce their result.
inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < m <= 2^62, no wrap
  return s >= m ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
/// Canonical representative of n in [0, m).
u64 reduce(i64 n, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

u64 gcd(u64 a, u64 b);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// p^k, throwing std::overflow_error if it exceeds kMaxOrder.
u64 ipow(u64 p, unsigned k);
/// Exponent k with p^k == n, or -1 when n is not a power of p.
int log_p_exact(u64 p, u64 n);

Valuation vp(u64 p, i64 n);

/// Smallest k >= 1 with n^k = 1 mod m. Requires gcd(m, n) = 1.
u64 ord_mod(u64 m, i64 n);

/// sum_{i<n} s^i mod modulus.
Residue ese(i64 s, u64 n, u64 modulus);

/// sum_{0<=i<j<n} s^i t^j mod modulus.
Residue ese2(i64 s, i64 t, u64 n, u64 modulus);

/// x with a*x = 1 mod m.
Residue inv_mod(i64 a, u64 m);

struct SignOrder {
  int sign = 1;    // +1 or -1
  unsigned o = 0;  // logarithmic order of the action

  constexpr bool operator==(const SignOrder&) const = default;
};

/// Sign and logarithmic order of the automorphism a -> a^r of a cyclic
/// group of order p^m.
SignOrder sigma_o_of_r(u64 r, u64 p, unsigned m);

}  // namespace pgx
