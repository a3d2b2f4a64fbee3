#include "pgx/group.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "pgx/encoding.hpp"

namespace pgx {

std::ostream& operator<<(std::ostream& os, const GroupSpec& s) {
  return os << "(" << to_positional(s) << ")";
}

std::ostream& operator<<(std::ostream& os, const Element& e) {
  return os << "(" << e.x << "," << e.y << "," << e.z << ")";
}

std::string to_positional(const GroupSpec& s) {
  std::array<i64, 8> a = {static_cast<i64>(s.p),  static_cast<i64>(s.M),  static_cast<i64>(s.N1),
                          static_cast<i64>(s.N2), static_cast<i64>(s.r1), static_cast<i64>(s.r2),
                          static_cast<i64>(s.t1), static_cast<i64>(s.t2)};
  return join_ints(a);
}

std::string to_json(const GroupSpec& s) {
  nlohmann::ordered_json j;
  j["p"] = s.p;
  j["M"] = s.M;
  j["N1"] = s.N1;
  j["N2"] = s.N2;
  j["r1"] = s.r1;
  j["r2"] = s.r2;
  j["t1"] = s.t1;
  j["t2"] = s.t2;
  return j.dump();
}

GroupSpec parse_spec(std::string_view text) {
  static constexpr std::array<const char*, 8> keys = {"p", "M", "N1", "N2", "r1", "r2", "t1", "t2"};
  std::array<i64, 8> a{};
  if (looks_like_json(text)) {
    a = parse_json_fields<8>(text, keys, "spec");
  } else if (std::count(text.begin(), text.end(), ',') == 6) {
    // M,N1,N2,r1,r2,t1,t2 with p the least prime factor of M
    const auto b = parse_positional<7>(text, "spec");
    if (b[0] < 2) throw std::invalid_argument("malformed spec: M must be at least 2");
    i64 q = 2;
    while (b[0] % q != 0) ++q;
    a[0] = q;
    std::copy(b.begin(), b.end(), a.begin() + 1);
  } else {
    a = parse_positional<8>(text, "spec");
  }
  for (i64 v : a) {
    if (v < 0) throw std::invalid_argument("malformed spec: negative field");
  }
  return {static_cast<u64>(a[0]), static_cast<u64>(a[1]), static_cast<u64>(a[2]),
          static_cast<u64>(a[3]), static_cast<u64>(a[4]), static_cast<u64>(a[5]),
          static_cast<u64>(a[6]), static_cast<u64>(a[7])};
}

namespace {

[[noreturn]] void bad_spec(const GroupSpec& s, const std::string& why) {
  throw std::invalid_argument("invalid group spec " + to_positional(s) + ": " + why);
}

unsigned exponent_of(const GroupSpec& s, u64 n, const char* name) {
  int k = log_p_exact(s.p, n);
  if (k < 0) bad_spec(s, std::string(name) + " is not a power of p");
  return static_cast<unsigned>(k);
}

}  // namespace

Group::Group(const GroupSpec& spec) : spec_(spec) {
  if (spec.p < 2 || !is_prime(spec.p)) bad_spec(spec, "p is not prime");
  m_ = exponent_of(spec, spec.M, "M");
  n1_ = exponent_of(spec, spec.N1, "N1");
  n2_ = exponent_of(spec, spec.N2, "N2");
  const u128 ord = static_cast<u128>(spec.M) * spec.N1 * spec.N2;
  if (spec.N1 > kMaxOrder || spec.N2 > kMaxOrder || ord > kMaxOrder) {
    bad_spec(spec, "group order exceeds 2^62");
  }
  order_ = static_cast<u64>(ord);
  if (gcd(spec.r1 % spec.M, spec.M) != 1 || gcd(spec.r2 % spec.M, spec.M) != 1) {
    bad_spec(spec, "r_i must be units mod M");
  }
  if (spec.t1 < 1 || spec.t1 > spec.M || spec.t2 < 1 || spec.t2 > spec.M) {
    bad_spec(spec, "t_i must lie in [1, M]");
  }
  if (!consistency_check(spec.p, spec.M, spec.N1, spec.N2, spec.r1, spec.r2, spec.t1, spec.t2)) {
    bad_spec(spec, "consistency relations fail");
  }
  spec_.r1 %= spec.M;
  spec_.r2 %= spec.M;
  t1_mod_ = spec.t1 % spec.M;
  t2_mod_ = spec.t2 % spec.M;

  if (order_ <= kTableOrderLimit) {
    const u64 M = spec.M;
    auto fill = [M](u64 r, u64 n, std::vector<u64>& pw, std::vector<u64>& s) {
      pw.resize(n);
      s.resize(n);
      u64 cur = 1 % M, sum = 0;
      for (u64 k = 0; k < n; ++k) {
        pw[k] = cur;
        s[k] = sum;
        sum = addmod(sum, cur, M);
        cur = mulmod(cur, r, M);
      }
    };
    fill(spec_.r1, spec.N1, r1_pow_, s1_);
    fill(spec_.r2, spec.N2, r2_pow_, s2_);
    tabulated_ = true;
  }
}

Element multiply(const Group& G, const Element& g, const Element& h) {
  if (!G.contains(g) || !G.contains(h)) {
    throw std::invalid_argument("multiply: element not in normal form for this group");
  }
  return G.mul(g, h);
}

Element identity(const Group&) { return {}; }

Element inverse(const Group& G, const Element& g) {
  if (!G.contains(g)) throw std::invalid_argument("inverse: element not in normal form");
  const u64 M = G.M();
  const u64 xi = (G.N1() - g.x) % G.N1();
  const u64 yi = (G.N2() - g.y) % G.N2();
  const u64 r2y = G.r2_pow(yi);
  u64 s = mulmod(mulmod(G.s1(xi), G.s2(g.y), M), r2y, M);
  s = addmod(s, mulmod(mulmod(g.z, G.r1_pow(xi), M), r2y, M), M);
  if (g.x != 0) s = addmod(s, G.t1_mod(), M);
  if (g.y != 0) s = addmod(s, G.t2_mod(), M);
  Element h{xi, yi, (M - s) % M};
#ifndef NDEBUG
  if (G.mul(g, h) != Element{}) throw std::logic_error("inverse: postcondition failed");
#endif
  return h;
}

Element power(const Group& G, const Element& g, u64 k) {
  if (!G.contains(g)) throw std::invalid_argument("power: element not in normal form");
  Element result{}, base = g;
  while (k) {
    if (k & 1) result = G.mul(result, base);
    base = G.mul(base, base);
    k >>= 1;
  }
  return result;
}

u64 element_order(const Group& G, const Element& g) {
  if (!G.contains(g)) throw std::invalid_argument("element_order: element not in normal form");
  const unsigned limit = G.m() + G.n1() + G.n2();
  Element h = g;
  u64 ord = 1;
  for (unsigned k = 0; k <= limit; ++k) {
    if (h == Element{}) return ord;
    h = power(G, h, G.p());
    ord *= G.p();
  }
  throw std::logic_error("element_order: no p-power order found");
}

Element commutator(const Group& G, const Element& g, const Element& h) {
  return G.mul(G.mul(inverse(G, g), inverse(G, h)), G.mul(g, h));
}

Element conjugate(const Group& G, const Element& g, const Element& h) {
  return G.mul(G.mul(inverse(G, h), g), h);
}

u64 cocycle(const Group& G, u64 x1, u64 y1, u64 x2, u64 y2) {
  const GroupSpec& s = G.spec();
  const u64 M = s.M;
  const i64 r1 = static_cast<i64>(s.r1), r2 = static_cast<i64>(s.r2);
  u64 v = mulmod(mulmod(powmod(s.r2, y2, M), ese(r1, x2, M).value, M), ese(r2, y1, M).value, M);
  v = addmod(v, mulmod(mulmod(s.t1 % M, powmod(s.r2, y1 + y2, M), M), (x1 + x2) / s.N1 % M, M), M);
  v = addmod(v, mulmod(s.t2 % M, (y1 + y2) / s.N2 % M, M), M);
  return v;
}

GroupSpec construct(const InvariantTuple& t) {
  const RPair r = derive_r(t);
  const TPair tt = derive_t(t);
  const u64 p = static_cast<u64>(t.p);
  const u64 M = ipow(p, static_cast<unsigned>(t.m));
  GroupSpec s{p, M, ipow(p, static_cast<unsigned>(t.n1)), ipow(p, static_cast<unsigned>(t.n2)),
              r.r1 % M, r.r2 % M, tt.t1, tt.t2};
  Group check(s);  // throws on overflow or inconsistency
  return s;
}

bool verify_relations(const Group& G) {
  const Element e{}, a = G.a(), b1 = G.b1(), b2 = G.b2();
  if (element_order(G, a) != G.M()) return false;
  if (conjugate(G, a, b1) != power(G, a, G.spec().r1)) return false;
  if (conjugate(G, a, b2) != power(G, a, G.spec().r2)) return false;
  if (power(G, b1, G.N1()) != Element{0, 0, G.t1_mod()}) return false;
  if (power(G, b2, G.N2()) != Element{0, 0, G.t2_mod()}) return false;
  if (commutator(G, b2, b1) != a) return false;

  auto axioms = [&](const Element& g, const Element& h, const Element& k) {
    if (G.mul(e, g) != g || G.mul(g, e) != g) return false;
    if (G.mul(g, inverse(G, g)) != e || G.mul(inverse(G, g), g) != e) return false;
    if (G.element_at(G.index(g)) != g) return false;
    return G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k));
  };

  const u64 n = G.order();
  if (n <= (u64{1} << 6)) {
    for (u64 i = 0; i < n; ++i) {
      for (u64 j = 0; j < n; ++j) {
        for (u64 k = 0; k < n; ++k) {
          if (!axioms(G.element_at(i), G.element_at(j), G.element_at(k))) return false;
        }
      }
    }
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<u64> pick(0, n - 1);
  for (int i = 0; i < 4096; ++i) {
    if (!axioms(G.element_at(pick(rng)), G.element_at(pick(rng)), G.element_at(pick(rng)))) {
      return false;
    }
  }
  return true;
}

void write_multiplication_table(const Group& G, std::ostream& os) {
  const u64 n = G.order();
  if (n > (u64{1} << 12)) {
    throw std::invalid_argument("write_multiplication_table: order " + std::to_string(n) +
                                " exceeds 4096");
  }
  for (u64 i = 0; i < n; ++i) {
    const Element g = G.element_at(i);
    for (u64 j = 0; j < n; ++j) {
      if (j) os << ',';
      os << G.index(G.mul(g, G.element_at(j)));
    }
    os << '\n';
  }
}

}  // namespace pgx
