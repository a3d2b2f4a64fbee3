#include "pgx/classify.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "pgx/parallel.hpp"

namespace pgx {

u64 r_of(const Group& G, const Element& g) {
  return mulmod(powmod(G.spec().r1, g.x, G.M()), powmod(G.spec().r2, g.y, G.M()), G.M());
}

u64 r_of_conjugation(const Group& G, const Element& g) {
  const Element c = conjugate(G, G.a(), g);
  if (c.x != 0 || c.y != 0) throw std::logic_error("r_of_conjugation: a^g left <a>");
  return c.z;
}

SignOrder sigma_o(const Group& G, const Element& g) {
  return sigma_o_of_r(r_of(G, g), G.p(), G.m());
}

namespace {

u64 det_mod_p(const Group& G, u64 x1, u64 y1, u64 x2, u64 y2) {
  const u64 p = G.p();
  return (x1 % p * (y2 % p) + p * p - x2 % p * (y1 % p)) % p;
}

bool candidate(const Group& G, u64 x1, u64 y1, u64 x2, u64 y2) {
  return x2 % (G.N1() / G.N2()) == 0 && det_mod_p(G, x1, y1, x2, y2) != 0;
}

// x = y mod p^e
bool cong(u64 x, u64 y, u64 pe) { return x % pe == y % pe; }

unsigned vp_unsigned(u64 p, u64 n) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

bool is_base_candidate(const Group& G, const Basis& b) {
  return G.contains(b.b1) && G.contains(b.b2) && candidate(G, b.b1.x, b.b1.y, b.b2.x, b.b2.y);
}

std::vector<std::array<u64, 4>> base_candidates(const Group& G) {
  std::vector<std::array<u64, 4>> out;
  for (u64 x1 = 0; x1 < G.N1(); ++x1) {
    for (u64 y1 = 0; y1 < G.N2(); ++y1) {
      for (u64 x2 = 0; x2 < G.N1(); x2 += G.N1() / G.N2()) {
        for (u64 y2 = 0; y2 < G.N2(); ++y2) {
          if (candidate(G, x1, y1, x2, y2)) out.push_back({x1, y1, x2, y2});
        }
      }
    }
  }
  return out;
}

void require_classifiable(const Group& G) {
  if (G.m() < 1 || G.n2() < 1 || G.n1() < G.n2()) {
    throw std::invalid_argument("classify: need M >= p and N1 >= N2 >= p");
  }
}

SigmaO compute_sigma_o_min(const Group& G) {
  require_classifiable(G);
  const u64 N1 = G.N1(), N2 = G.N2();
  std::vector<SignOrder> grid(N1 * N2);
  for (u64 x = 0; x < N1; ++x) {
    for (u64 y = 0; y < N2; ++y) grid[x * N2 + y] = sigma_o(G, Element{x, y, 0});
  }
  std::optional<SigmaO> best;
  for (u64 x1 = 0; x1 < N1; ++x1) {
    for (u64 y1 = 0; y1 < N2; ++y1) {
      const SignOrder& s1 = grid[x1 * N2 + y1];
      for (u64 x2 = 0; x2 < N1; x2 += N1 / N2) {
        for (u64 y2 = 0; y2 < N2; ++y2) {
          if (det_mod_p(G, x1, y1, x2, y2) == 0) continue;
          const SignOrder& s2 = grid[x2 * N2 + y2];
          SigmaO so{s1.sign, s2.sign, s1.o, s2.o};
          if (!best || so < *best) best = so;
        }
      }
    }
  }
  if (!best) throw std::logic_error("compute_sigma_o_min: no basis found");
  return *best;
}

std::array<u64, 2> action_residues(const Group& G, const SigmaO& so) {
  const u64 M = G.M(), p = G.p();
  const unsigned m = G.m();
  auto signed_res = [M](i64 sigma, u64 v) { return sigma == 1 ? v % M : (M - v % M) % M; };
  const u64 base1 = (1 + ipow(p, m - static_cast<unsigned>(so.o1))) % M;
  const u64 r1 = signed_res(so.sigma1, base1);
  u64 r2;
  if (so.o1 * so.o2 == 0) {
    r2 = signed_res(so.sigma2, (1 + ipow(p, m - static_cast<unsigned>(so.o2))) % M);
  } else {
    r2 = signed_res(so.sigma2, powmod(base1, ipow(p, static_cast<unsigned>(so.o1 - so.o2)), M));
  }
  return {r1, r2};
}

BaseData base_data(const Group& G, const Basis& b) {
  if (!is_base_candidate(G, b)) throw std::invalid_argument("base_data: not a basis");
  const u64 M = G.M();
  const Element c = commutator(G, b.b2, b.b1);
  const Element w1 = power(G, b.b1, G.N1());
  const Element w2 = power(G, b.b2, G.N2());
  if (c.x || c.y || w1.x || w1.y || w2.x || w2.y || c.z % G.p() == 0) {
    throw std::logic_error("base_data: basis relations fail");
  }
  const u64 ci = inv_mod(static_cast<i64>(c.z), M).value;
  BaseData d;
  const SignOrder s1 = sigma_o(G, b.b1), s2 = sigma_o(G, b.b2);
  d.sigma1 = s1.sign;
  d.sigma2 = s2.sign;
  d.o1 = s1.o;
  d.o2 = s2.o;
  auto fill = [&](u64 wz, u64& t, i64& op, u64& u) {
    t = mulmod(wz, ci, M);
    if (t == 0) t = M;
    const unsigned v = vp_unsigned(G.p(), t);
    op = static_cast<i64>(G.m()) - v;
    u = t / ipow(G.p(), v);
  };
  fill(w1.z, d.t1, d.op1, d.u1);
  fill(w2.z, d.t2, d.op2, d.u2);
  return d;
}

namespace {

// Minimized in one pass: maximal o' first, then minimal (u2, u1).
using StageKey = std::tuple<i64, i64, u64, u64>;

struct BlockBest {
  std::optional<StageKey> key;
  Basis basis;
};

struct Pattern {
  u64 x, y;
  u64 r;        // r(B1^x B2^y)
  u64 w;        // z-part of (B1^x B2^y)^{N_i}
  u64 s;        // S_r(N_i) mod M
};

}  // namespace

InvResult compute_inv(const Group& G, unsigned threads) {
  require_classifiable(G);
  const SigmaO so = compute_sigma_o_min(G);
  const auto target = action_residues(G, so);
  const u64 M = G.M(), N1 = G.N1(), N2 = G.N2(), p = G.p();
  const unsigned m = G.m();

  std::vector<Pattern> P1, P2;
  for (u64 x = 0; x < N1; ++x) {
    for (u64 y = 0; y < N2; ++y) {
      const Element h{x, y, 0};
      const u64 r = r_of(G, h);
      if (r == target[0]) {
        P1.push_back({x, y, r, power(G, h, N1).z, ese(static_cast<i64>(r), N1, M).value});
      }
      if (r == target[1] && x % (N1 / N2) == 0) {
        P2.push_back({x, y, r, power(G, h, N2).z, ese(static_cast<i64>(r), N2, M).value});
      }
    }
  }

  std::vector<u64> inverse_table;
  if (M <= (u64{1} << 22)) {
    inverse_table.assign(M, 0);
    for (u64 z = 1; z < M; ++z) {
      if (z % p) inverse_table[z] = inv_mod(static_cast<i64>(z), M).value;
    }
  }
  auto stage = [&](u64 w, u64 ci, i64& op, u64& u) {
    u64 t = mulmod(w, ci, M);
    if (t == 0) t = M;
    unsigned v = 0;
    while (t % p == 0) {
      t /= p;
      ++v;
    }
    op = static_cast<i64>(m) - v;
    u = t;
  };

  std::vector<BlockBest> blocks(P1.size());
  parallel_for(P1.size(), threads, [&](std::size_t i) {
    const Pattern& h1 = P1[i];
    BlockBest& best = blocks[i];
    for (const Pattern& h2 : P2) {
      if (det_mod_p(G, h1.x, h1.y, h2.x, h2.y) == 0) continue;
      const Element c0 = commutator(G, Element{h2.x, h2.y, 0}, Element{h1.x, h1.y, 0});
      const u64 d1 = submod(h1.r, 1 % M, M);  // coefficient of z2
      const u64 d2 = submod(1 % M, h2.r, M);  // coefficient of z1
      for (u64 z1 = 0; z1 < M; ++z1) {
        const u64 c1 = addmod(c0.z, mulmod(z1, d2, M), M);
        const u64 w1 = addmod(h1.w, mulmod(z1, h1.s, M), M);
        for (u64 z2 = 0; z2 < M; ++z2) {
          const u64 c = addmod(c1, mulmod(z2, d1, M), M);
          if (c % p == 0) throw std::logic_error("compute_inv: commutator does not generate G'");
          const u64 ci = inverse_table.empty() ? inv_mod(static_cast<i64>(c), M).value
                                               : inverse_table[c];
          const u64 w2 = addmod(h2.w, mulmod(z2, h2.s, M), M);
          i64 op1, op2;
          u64 u1, u2;
          stage(w1, ci, op1, u1);
          stage(w2, ci, op2, u2);
          const StageKey key{-op1, -op2, u2, u1};
          if (!best.key || key < *best.key) {
            best.key = key;
            best.basis = {Element{h1.x, h1.y, z1}, Element{h2.x, h2.y, z2}};
          }
        }
      }
    }
  });

  const BlockBest* winner = nullptr;
  for (const auto& b : blocks) {
    if (b.key && (!winner || *b.key < *winner->key)) winner = &b;
  }
  if (!winner) throw std::logic_error("compute_inv: B_r is empty");

  InvResult res;
  InvariantTuple& t = res.tuple;
  t.p = static_cast<i64>(p);
  t.m = m;
  t.n1 = G.n1();
  t.n2 = G.n2();
  t.sigma1 = so.sigma1;
  t.sigma2 = so.sigma2;
  t.o1 = so.o1;
  t.o2 = so.o2;
  t.op1 = -std::get<0>(*winner->key);
  t.op2 = -std::get<1>(*winner->key);
  t.u2 = static_cast<i64>(std::get<2>(*winner->key));
  t.u1 = static_cast<i64>(std::get<3>(*winner->key));
  res.witness = winner->basis;
  return res;
}

bool in_Bprime(const Group& G, const SigmaO& so, const Basis& b) {
  if (!is_base_candidate(G, b)) return false;
  const SignOrder s1 = sigma_o(G, b.b1), s2 = sigma_o(G, b.b2);
  return SigmaO{s1.sign, s2.sign, s1.o, s2.o} == so;
}

bool in_Br(const Group& G, const SigmaO& so, const Basis& b) {
  if (!is_base_candidate(G, b)) return false;
  const auto r = action_residues(G, so);
  return r_of(G, b.b1) == r[0] && r_of(G, b.b2) == r[1];
}

namespace {

SigmaO sigma_o_part(const InvariantTuple& t) { return {t.sigma1, t.sigma2, t.o1, t.o2}; }

}  // namespace

bool in_Brprime(const Group& G, const InvariantTuple& inv, const Basis& b) {
  if (!in_Br(G, sigma_o_part(inv), b)) return false;
  const BaseData d = base_data(G, b);
  return d.op1 == inv.op1 && d.op2 == inv.op2;
}

bool in_Brt(const Group& G, const InvariantTuple& inv, const Basis& b) {
  if (!in_Brprime(G, inv, b)) return false;
  const BaseData d = base_data(G, b);
  return static_cast<i64>(d.u1) == inv.u1 && static_cast<i64>(d.u2) == inv.u2;
}

bool fastpath_in_Bprime(const Group& G, const Basis& b) {
  if (!is_base_candidate(G, b)) throw std::invalid_argument("fastpath_in_Bprime: not a basis");
  const SignOrder s1 = sigma_o(G, b.b1), s2 = sigma_o(G, b.b2);
  const i64 n1 = G.n1(), n2 = G.n2();
  const i64 o1 = s1.o, o2 = s2.o;
  if (s1.sign == 1 && s2.sign != 1) return false;
  if (n1 == n2 && s1.sign != s2.sign) return false;
  return o1 == 0 || (0 < o1 && o1 == o2 && s1.sign == -1 && s2.sign == -1) ||
         (o2 == 0 && 0 < o1 && n2 < n1) || (0 < o2 && o2 < o1 && o1 < o2 + n1 - n2);
}

bool fastpath_in_Br(const Group& G, const SigmaO& so, const Basis& b) {
  if (!is_base_candidate(G, b)) throw std::invalid_argument("fastpath_in_Br: not a basis");
  if (!in_Br(G, so, Basis{G.b1(), G.b2()})) {
    throw std::invalid_argument("fastpath_in_Br: canonical generators are not in B_r");
  }
  const u64 p = G.p();
  const u64 x1 = b.b1.x, y1 = b.b1.y, x2 = b.b2.x, y2 = b.b2.y;
  const i64 o1 = so.o1, o2 = so.o2;
  if (so.sigma2 == -1 && ((x1 + y1) % 2 == 0 || (x2 + y2) % 2 == 0)) return false;
  if (o1 == 0) {
    const u64 q = ipow(p, static_cast<unsigned>(o2));
    return cong(y1, 0, q) && cong(y2, 1, q);
  }
  const u64 q1 = ipow(p, static_cast<unsigned>(o1));
  if (o1 == o2) return cong(x1 + y1, 1, q1) && cong(x2 + y2, 1, q1);
  if (o2 == 0) return cong(x1, 1, q1) && cong(x2, 0, q1);
  if (o2 < o1) {
    const u64 d = ipow(p, static_cast<unsigned>(o1 - o2));
    const u64 q2 = ipow(p, static_cast<unsigned>(o2));
    return cong(x1 + y1 % q1 * d, 1, q1) && cong(x2 / d + y2, 1, q2);
  }
  // o2 > o1 > 0 never attains the minimum
  throw std::invalid_argument("fastpath_in_Br: sigma-o data is not minimal");
}

bool fastpath_in_Brprime(const Group& G, const SigmaO& so, const Basis& b) {
  if (!in_Br(G, so, b)) throw std::invalid_argument("fastpath_in_Brprime: basis not in B_r");
  const BaseData d = base_data(G, b);
  const i64 p = static_cast<i64>(G.p()), m = G.m(), n1 = G.n1(), n2 = G.n2();
  const i64 o1 = so.o1, o2 = so.o2;
  const i64 q1 = d.op1, q2 = d.op2;
  if (so.sigma1 == 1) {
    if (o1 == 0) {
      const bool a = q1 <= q2 && q2 <= q1 + o2 + n1 - n2 && std::max({p - 2, q2, n1 - m}) > 0;
      const bool bb = p == 2 && m == n1 && q2 == 0 && q1 == 1;
      return a || bb;
    }
    if (o2 == 0) {
      return std::max({p - 2, q1, n1 - m}) > 0 && q1 + std::min<i64>(0, n1 - n2 - o1) <= q2 &&
             q2 <= q1 + n1 - n2;
    }
    return q1 <= q2 && q2 <= q1 + n1 - n2;
  }
  if (so.sigma2 == 1) {
    if (m <= n2) return q1 <= q2 || (o2 == 0 && 0 < n1 - n2 && n1 - n2 < o1);
    return q1 == 1 || o1 + 1 != n1;
  }
  bool ok = true;
  if (o1 <= o2 && n1 > n2) ok = ok && q1 <= q2;
  if (o1 == o2 && n1 == n2) ok = ok && q1 >= q2;
  if (o2 == 0 && 0 < o1 && o1 == n1 - 1 && n2 == 1) ok = ok && (q1 == 1 || q2 == 1);
  if (o2 == 0 && 0 < o1 && (n1 != o1 + 1 || n2 != 1)) {
    ok = ok && q1 + std::min<i64>(0, n1 - n2 - o1) <= q2;
  }
  if (o1 * o2 != 0 && o1 != o2) ok = ok && q1 <= q2;
  return ok;
}

bool fastpath_in_Brt(const Group& G, const InvariantTuple& inv, const Basis& b) {
  const SigmaO so = sigma_o_part(inv);
  if (!in_Br(G, so, b)) throw std::invalid_argument("fastpath_in_Brt: basis not in B_r");
  const BaseData d = base_data(G, b);
  if (d.op1 != inv.op1 || d.op2 != inv.op2) {
    throw std::invalid_argument("fastpath_in_Brt: basis not in B'_r");
  }
  const u64 p = G.p();
  const i64 m = inv.m, n1 = inv.n1, n2 = inv.n2, o1 = inv.o1, o2 = inv.o2;
  if (inv.sigma1 == 1) {
    const ABounds ab = a_bounds(inv);
    if (ab.a1 < 0 || ab.a2 < 0) return false;
    const u64 pa1 = ipow(p, static_cast<unsigned>(ab.a1));
    const u64 pa2 = ipow(p, static_cast<unsigned>(ab.a2));
    if (d.u1 > pa1) return false;
    if (d.u2 <= pa2) return true;
    return o1 * o2 != 0 && n1 - n2 + inv.op1 - inv.op2 == 0 && 0 < ab.a1 && 1 + pa2 <= d.u2 &&
           d.u2 <= 2 * pa2 && d.u1 % p == 1 % p;
  }
  if (inv.sigma2 == -1 || m <= n2) return true;
  if (inv.op1 == 0 && (o1 == 0 || o2 + 1 != n2)) return true;
  if (inv.op1 == 1 && o2 == 0 && n1 - n2 < o1) return true;
  return d.u2 <= ipow(2, static_cast<unsigned>(m - n2));
}

}  // namespace pgx
