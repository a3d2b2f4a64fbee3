#include "pgx/iso_oracle.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pgx/parallel.hpp"

namespace pgx {

namespace {

void check_size(const Group& G, u64 max_elems, const char* who) {
  if (G.order() > max_elems) {
    throw std::invalid_argument(std::string(who) + ": |G| = " + std::to_string(G.order()) +
                                " exceeds the limit " + std::to_string(max_elems));
  }
}

// Order of a^z in <a> of order M.
u64 cyclic_order(u64 z, u64 M) { return M / gcd(z, M); }

}  // namespace

std::map<u64, u64> order_histogram(const Group& G, u64 max_elems) {
  check_size(G, max_elems, "order_histogram");
  std::map<u64, u64> hist;
  for (u64 i = 0; i < G.order(); ++i) ++hist[element_order(G, G.element_at(i))];
  return hist;
}

u64 closure_size(const Group& G, const std::vector<Element>& gens) {
  std::vector<bool> seen(G.order(), false);
  std::vector<Element> queue{Element{}};
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Element g = queue[head];
    for (const Element& s : gens) {
      const Element h = multiply(G, g, s);
      const u64 idx = G.index(h);
      if (!seen[idx]) {
        seen[idx] = true;
        queue.push_back(h);
      }
    }
    if (queue.size() == G.order()) break;
  }
  return queue.size();
}

bool check_witness(const Group& G, const Group& H, const IsoWitness& w) {
  if (G.order() != H.order() || !H.contains(w.g1) || !H.contains(w.g2)) return false;
  const GroupSpec& s = G.spec();
  const Element c = commutator(H, w.g2, w.g1);
  if (element_order(H, c) != s.M) return false;
  const Element gs[2] = {w.g1, w.g2};
  const u64 r[2] = {s.r1, s.r2}, N[2] = {s.N1, s.N2}, t[2] = {s.t1 % s.M, s.t2 % s.M};
  for (int i = 0; i < 2; ++i) {
    if (conjugate(H, c, gs[i]) != power(H, c, r[i])) return false;
    if (power(H, gs[i], N[i]) != power(H, c, t[i])) return false;
  }
  return closure_size(H, {w.g1, w.g2}) == H.order();
}

IsoResult are_isomorphic(const Group& G, const Group& H, unsigned threads, u64 max_elems) {
  if (G.order() != H.order()) return {};
  check_size(G, max_elems, "are_isomorphic");
  check_size(H, max_elems, "are_isomorphic");
  if (order_histogram(G, max_elems) != order_histogram(H, max_elems)) return {};

  const GroupSpec& s = G.spec();
  const u64 MG = s.M, MH = H.M();
  if (MH % MG != 0) return {};
  const u64 N[2] = {s.N1, s.N2};
  const u64 r[2] = {s.r1 % MG, s.r2 % MG};
  const u64 t[2] = {s.t1 % MG, s.t2 % MG};
  const u64 ord[2] = {element_order(G, G.b1()), element_order(G, G.b2())};

  // Candidate images: right order, acting on H' by r_i modulo M(G), with
  // N_i-th power inside H'.
  std::vector<Element> S[2];
  std::vector<u64> Sw[2];
  for (u64 idx = 0; idx < H.order(); ++idx) {
    const Element g = H.element_at(idx);
    const u64 rg = mulmod(powmod(H.spec().r1, g.x, MH), powmod(H.spec().r2, g.y, MH), MH) % MG;
    for (int i = 0; i < 2; ++i) {
      if (rg != r[i]) continue;
      const Element w = power(H, g, N[i]);
      if (w.x != 0 || w.y != 0) continue;
      if (element_order(H, g) != ord[i]) continue;
      S[i].push_back(g);
      Sw[i].push_back(w.z);
    }
  }

  const u64 p = H.p();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best_i{kNone};
  std::vector<std::size_t> found_j(S[0].size(), kNone);

  parallel_for(S[0].size(), threads, [&](std::size_t i) {
    if (i > best_i.load()) return;
    const Element& g1 = S[0][i];
    for (std::size_t j = 0; j < S[1].size(); ++j) {
      const Element& g2 = S[1][j];
      // generation of H/Phi(H) needs a unit determinant mod p
      if ((g1.x % p * (g2.y % p) + p * p - g2.x % p * (g1.y % p)) % p == 0) continue;
      const Element c = commutator(H, g2, g1);
      if (cyclic_order(c.z, MH) != MG) continue;
      // c = a_H^{c.z}; c^{t_i} has z-part c.z * t_i
      if (Sw[0][i] != mulmod(c.z, t[0], MH) || Sw[1][j] != mulmod(c.z, t[1], MH)) continue;
      if (conjugate(H, c, g1) != power(H, c, r[0]) || conjugate(H, c, g2) != power(H, c, r[1])) {
        continue;
      }
      if (closure_size(H, {g1, g2}) != H.order()) continue;
      found_j[i] = j;
      std::size_t cur = best_i.load();
      while (i < cur && !best_i.compare_exchange_weak(cur, i)) {
      }
      return;
    }
  });

  const std::size_t i = best_i.load();
  if (i == kNone) return {};
  return {true, IsoWitness{S[0][i], S[1][found_j[i]]}};
}

}  // namespace pgx
