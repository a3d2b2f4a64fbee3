#include "pgx/modarith.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgx {

unsigned Valuation::value() const {
  if (infinite_) throw std::domain_error("valuation is infinite");
  return value_;
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

std::ostream& operator<<(std::ostream& os, const Residue& r) {
  return os << r.value << " (mod " << r.modulus << ")";
}

u64 reduce(i64 n, u64 m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  if (n >= 0) return static_cast<u64>(n) % m;
  // -(n+1) avoids overflow at INT64_MIN
  u64 r = static_cast<u64>(-(n + 1)) % m;
  return m - 1 - r;
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 ipow(u64 p, unsigned k) {
  u64 result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (p != 0 && result > kMaxOrder / p) {
      throw std::overflow_error("prime power exceeds 2^62");
    }
    result *= p;
  }
  return result;
}

int log_p_exact(u64 p, u64 n) {
  if (p < 2 || n == 0) return -1;
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

Valuation vp(u64 p, i64 n) {
  if (!is_prime(p)) {
    throw std::invalid_argument("vp: " + std::to_string(p) + " is not prime");
  }
  if (n == 0) return Valuation::infinity();
  u64 a = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return Valuation(v);
}

namespace {

// Trial division; adequate for the prime-power moduli used here.
std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

void push_unique(std::vector<u64>& v, u64 x) {
  for (u64 y : v) {
    if (y == x) return;
  }
  v.push_back(x);
}

}  // namespace

u64 ord_mod(u64 m, i64 n) {
  if (m == 0) throw std::invalid_argument("ord_mod: modulus must be positive");
  u64 r = reduce(n, m);
  if (gcd(r, m) != 1) {
    throw std::invalid_argument("ord_mod: " + std::to_string(n) +
                                " is not a unit mod " + std::to_string(m));
  }
  if (m == 1) return 1;

  // phi(m), and the primes dividing it
  u64 phi = 1;
  std::vector<u64> phi_primes;
  u64 rest = m;
  for (u64 q : prime_factors(m)) {
    u64 qe = 1;
    while (rest % q == 0) {
      rest /= q;
      qe *= q;
    }
    phi *= qe / q * (q - 1);
    if (qe != q) push_unique(phi_primes, q);
    for (u64 f : prime_factors(q - 1)) push_unique(phi_primes, f);
  }

  u64 order = phi;
  for (u64 q : phi_primes) {
    while (order % q == 0 && powmod(r, order / q, m) == 1) order /= q;
  }
  return order;
}

Residue ese(i64 s, u64 n, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("ese: modulus must be positive");
  const u64 m = modulus;
  const u64 base = reduce(s, m);
  // Walk the bits of n from the top, keeping (S_s(k), s^k).
  u64 sum = 0;
  u64 pw = 1 % m;
  bool started = false;
  for (int bit = 63; bit >= 0; --bit) {
    if (started) {
      // k -> 2k:  S(2k) = S(k)(1 + s^k)
      sum = mulmod(sum, addmod(1 % m, pw, m), m);
      pw = mulmod(pw, pw, m);
    }
    if ((n >> bit) & 1) {
      // k -> k+1: S(k+1) = 1 + s S(k)
      sum = addmod(1 % m, mulmod(base, sum, m), m);
      pw = mulmod(pw, base, m);
      started = true;
    }
  }
  return {sum, m};
}

Residue ese2(i64 s, i64 t, u64 n, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("ese2: modulus must be positive");
  const u64 m = modulus;
  const u64 one = 1 % m;
  const u64 sb = reduce(s, m);
  const u64 tb = reduce(t, m);
  // State for prefix length k: A = S_{s,t}(k), Ss = S_s(k), St = S_t(k),
  // sp = s^k, tp = t^k.
  u64 a = 0, ss = 0, st = 0, sp = one, tp = one;
  bool started = false;
  for (int bit = 63; bit >= 0; --bit) {
    if (started) {
      // S_{s,t}(2k) = S_{s,t}(k)(1 + (st)^k) + t^k S_s(k) S_t(k)
      u64 a2 = addmod(mulmod(a, addmod(one, mulmod(sp, tp, m), m), m),
                      mulmod(tp, mulmod(ss, st, m), m), m);
      ss = mulmod(ss, addmod(one, sp, m), m);
      st = mulmod(st, addmod(one, tp, m), m);
      sp = mulmod(sp, sp, m);
      tp = mulmod(tp, tp, m);
      a = a2;
    }
    if ((n >> bit) & 1) {
      // S_{s,t}(k+1) = S_{s,t}(k) + t^k S_s(k)
      a = addmod(a, mulmod(tp, ss, m), m);
      ss = addmod(one, mulmod(sb, ss, m), m);
      st = addmod(one, mulmod(tb, st, m), m);
      sp = mulmod(sp, sb, m);
      tp = mulmod(tp, tb, m);
      started = true;
    }
  }
  return {a, m};
}

Residue inv_mod(i64 a, u64 m) {
  if (m == 0) throw std::invalid_argument("inv_mod: modulus must be positive");
  u64 r = reduce(a, m);
  if (m == 1) return {0, 1};
  // extended Euclid on signed 128-bit to stay clear of overflow
  __int128 old_r = r, cur_r = m;
  __int128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    __int128 q = old_r / cur_r;
    __int128 tmp = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
  }
  if (old_r != 1) {
    throw std::invalid_argument("inv_mod: " + std::to_string(a) +
                                " is not invertible mod " + std::to_string(m));
  }
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return {static_cast<u64>(x), m};
}

SignOrder sigma_o_of_r(u64 r, u64 p, unsigned m) {
  if (!is_prime(p)) {
    throw std::invalid_argument("sigma_o_of_r: " + std::to_string(p) + " is not prime");
  }
  if (r % p == 0) {
    throw std::invalid_argument("sigma_o_of_r: r is not a unit");
  }
  const u64 mod = ipow(p, m);
  const u64 res = r % mod;
  SignOrder out;
  if (p == 2 && m >= 2 && r % 4 == 3) out.sign = -1;
  if (res == (mod - 1) % mod) {
    out.o = 0;
    return out;
  }
  int k = log_p_exact(p, ord_mod(mod, static_cast<i64>(res)));
  if (k < 0) {
    throw std::invalid_argument("sigma_o_of_r: order of r is not a power of p");
  }
  out.o = static_cast<unsigned>(k);
  return out;
}

}  // namespace pgx
