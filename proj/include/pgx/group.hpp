#pragma once

// Finite groups G = <b1, b2> with G' = <a>, a = [b2, b1], given by
//
//   a^M = 1,  a^{b_i} = a^{r_i},  b_i^{N_i} = a^{t_i}   (i = 1, 2)
//
// and realized as explicit normal-form arithmetic on exponent triples
// b1^x b2^y a^z with 0 <= x < N1, 0 <= y < N2, 0 <= z < M.

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pgx/invariants.hpp"
#include "pgx/modarith.hpp"

namespace pgx {

/// Raw presentation parameters. r1, r2 are units mod M (reduced on use);
/// t1, t2 lie in [1, M], where t = M acts as a^0.
struct GroupSpec {
  u64 p = 0;
  u64 M = 0;
  u64 N1 = 0;
  u64 N2 = 0;
  u64 r1 = 0;
  u64 r2 = 0;
  u64 t1 = 0;
  u64 t2 = 0;

  auto operator<=>(const GroupSpec&) const = default;
};

std::ostream& operator<<(std::ostream& os, const GroupSpec& s);
std::string to_positional(const GroupSpec& s);
std::string to_json(const GroupSpec& s);
/// JSON object {"p","M","N1","N2","r1","r2","t1","t2"}, "p,M,N1,N2,r1,r2,t1,t2", or
/// "M,N1,N2,r1,r2,t1,t2" with p taken as the least prime factor of M.
GroupSpec parse_spec(std::string_view text);

inline constexpr std::string_view kSpecCsvHeader = "p,M,N1,N2,r1,r2,t1,t2";

/// Normal form b1^x b2^y a^z.
struct Element {
  u64 x = 0;
  u64 y = 0;
  u64 z = 0;

  auto operator<=>(const Element&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

/// A GroupSpec checked for consistency, with its exponent tables. Immutable
/// after construction, so it can be shared across threads.
class Group {
 public:
  /// Throws std::invalid_argument when the spec is malformed, violates the
  /// consistency relations, or has order above 2^62.
  explicit Group(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  u64 p() const { return spec_.p; }
  u64 M() const { return spec_.M; }
  u64 N1() const { return spec_.N1; }
  u64 N2() const { return spec_.N2; }
  unsigned m() const { return m_; }
  unsigned n1() const { return n1_; }
  unsigned n2() const { return n2_; }
  u64 order() const { return order_; }

  /// t_i reduced mod M, i.e. the exponent of a in b_i^{N_i}.
  u64 t1_mod() const { return t1_mod_; }
  u64 t2_mod() const { return t2_mod_; }

  // r_i^k and S_{r_i}(k) for 0 <= k < N_i.
  u64 r1_pow(u64 x) const { return tabulated_ ? r1_pow_[x] : powmod(spec_.r1, x, spec_.M); }
  u64 r2_pow(u64 y) const { return tabulated_ ? r2_pow_[y] : powmod(spec_.r2, y, spec_.M); }
  u64 s1(u64 x) const {
    return tabulated_ ? s1_[x] : ese(static_cast<i64>(spec_.r1), x, spec_.M).value;
  }
  u64 s2(u64 y) const {
    return tabulated_ ? s2_[y] : ese(static_cast<i64>(spec_.r2), y, spec_.M).value;
  }
  bool tabulated() const { return tabulated_; }

  bool contains(const Element& g) const { return g.x < N1() && g.y < N2() && g.z < M(); }

  /// Product in normal form, without range checks.
  Element mul(const Element& g, const Element& h) const {
    const u64 M = spec_.M;
    u64 x = g.x + h.x, cx = 0;
    if (x >= spec_.N1) {
      x -= spec_.N1;
      cx = 1;
    }
    u64 y = g.y + h.y, cy = 0;
    if (y >= spec_.N2) {
      y -= spec_.N2;
      cy = 1;
    }
    const u64 r2y2 = r2_pow(h.y);
    // S_{r1}(x2) S_{r2}(y1) r2^{y2} + z1 r1^{x2} r2^{y2} + z2 + t1 cx r2^{y1+y2} + t2 cy
    u64 z = mulmod(mulmod(s1(h.x), s2(g.y), M), r2y2, M);
    z = addmod(z, mulmod(mulmod(g.z, r1_pow(h.x), M), r2y2, M), M);
    z = addmod(z, h.z, M);
    if (cx) z = addmod(z, mulmod(t1_mod_, r2_pow(y), M), M);
    if (cy) z = addmod(z, t2_mod_, M);
    return {x, y, z};
  }

  /// index = x N2 M + y M + z.
  u64 index(const Element& g) const { return (g.x * spec_.N2 + g.y) * spec_.M + g.z; }
  Element element_at(u64 idx) const {
    return {idx / (spec_.N2 * spec_.M), idx / spec_.M % spec_.N2, idx % spec_.M};
  }

  Element identity() const { return {}; }
  Element b1() const { return {1 % spec_.N1, 0, 0}; }
  Element b2() const { return {0, 1 % spec_.N2, 0}; }
  Element a() const { return {0, 0, 1 % spec_.M}; }

 private:
  GroupSpec spec_;
  unsigned m_ = 0, n1_ = 0, n2_ = 0;
  u64 order_ = 0;
  u64 t1_mod_ = 0, t2_mod_ = 0;
  bool tabulated_ = false;
  std::vector<u64> r1_pow_, r2_pow_, s1_, s2_;
};

/// Orders up to this size get exponent lookup tables.
inline constexpr u64 kTableOrderLimit = u64{1} << 26;

/// Checked product; throws std::invalid_argument for elements outside G.
Element multiply(const Group& G, const Element& g, const Element& h);
Element identity(const Group& G);
Element inverse(const Group& G, const Element& g);
Element power(const Group& G, const Element& g, u64 k);
/// Smallest p^k with g^{p^k} = 1.
u64 element_order(const Group& G, const Element& g);
/// [g, h] = g^-1 h^-1 g h.
Element commutator(const Group& G, const Element& g, const Element& h);
/// g^h = h^-1 g h.
Element conjugate(const Group& G, const Element& g, const Element& h);

/// Exponent of a in rho(b1^x1 b2^y1, b1^x2 b2^y2), the 2-cocycle of the
/// extension 1 -> <a> -> G -> C_N1 x C_N2 -> 1. Evaluated directly from the
/// cocycle formula; independent of Group::mul.
u64 cocycle(const Group& G, u64 x1, u64 y1, u64 x2, u64 y2);

/// Presentation parameters of the canonical group for a valid tuple.
GroupSpec construct(const InvariantTuple& t);

/// Checks the defining relations and group axioms in the constructed
/// arithmetic (exhaustive axioms up to order 64, 4096 sampled triples otherwise).
bool verify_relations(const Group& G);

/// Row-major multiplication table as CSV: row i, column j holds the index of
/// element_at(i) * element_at(j).
void write_multiplication_table(const Group& G, std::ostream& os);

}  // namespace pgx
