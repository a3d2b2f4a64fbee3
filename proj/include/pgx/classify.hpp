#pragma once

// Recomputing inv(G) from a constructed group by sweeping its bases.
//
// A basis b = (b1, b2) is stored by its normal forms relative to the
// canonical generators, so b_i = B1^{x_i} B2^{y_i} A^{z_i} is exactly the
// Element {x_i, y_i, z_i}.

#include <array>
#include <compare>
#include <vector>

#include "pgx/group.hpp"
#include "pgx/invariants.hpp"

namespace pgx {

struct Basis {
  Element b1;
  Element b2;

  auto operator<=>(const Basis&) const = default;
};

/// (sigma1, sigma2, o1, o2); the defaulted ordering is the lexicographic one
/// used for minimization, with -1 < 1.
struct SigmaO {
  i64 sigma1 = 1;
  i64 sigma2 = 1;
  i64 o1 = 0;
  i64 o2 = 0;

  auto operator<=>(const SigmaO&) const = default;
};

/// Per-basis quantities. t_i lies in [1, M] and b_i^{N_i} = [b2, b1]^{t_i}.
struct BaseData {
  i64 sigma1 = 1, sigma2 = 1;
  i64 o1 = 0, o2 = 0;
  u64 t1 = 0, t2 = 0;
  i64 op1 = 0, op2 = 0;
  u64 u1 = 0, u2 = 0;

  bool operator==(const BaseData&) const = default;
};

/// r(g) = r1^x r2^y mod M.
u64 r_of(const Group& G, const Element& g);
/// The same residue read off from the conjugate a^g.
u64 r_of_conjugation(const Group& G, const Element& g);
SignOrder sigma_o(const Group& G, const Element& g);

/// p^{n1-n2} | x2 and x1 y2 - x2 y1 is a unit mod p.
bool is_base_candidate(const Group& G, const Basis& b);
/// z-free candidates (x1, y1, x2, y2) in lexicographic order.
std::vector<std::array<u64, 4>> base_candidates(const Group& G);

/// Throws std::invalid_argument unless N1 >= N2 >= p and M >= p.
void require_classifiable(const Group& G);

SigmaO compute_sigma_o_min(const Group& G);

/// The residues mod M of sigma_i (1 + p^{m - o_i}) (with the power form for
/// r2 when o1 o2 != 0) that the generators of a basis in B_r act by.
std::array<u64, 2> action_residues(const Group& G, const SigmaO& so);

/// Throws std::invalid_argument when b is not a basis.
BaseData base_data(const Group& G, const Basis& b);

struct InvResult {
  InvariantTuple tuple;
  Basis witness;
};

/// Full pipeline. The witness is the first basis, in (x1, y1, x2, y2, z1, z2)
/// order, attaining every extremum. Independent of `threads` (0 = default).
InvResult compute_inv(const Group& G, unsigned threads = 1);

// Definitional stage membership, by comparing against the extrema.
bool in_Bprime(const Group& G, const SigmaO& so, const Basis& b);
bool in_Br(const Group& G, const SigmaO& so, const Basis& b);
bool in_Brprime(const Group& G, const InvariantTuple& inv, const Basis& b);
bool in_Brt(const Group& G, const InvariantTuple& inv, const Basis& b);

// Closed-form stage membership, no extremum search. Each throws
// std::invalid_argument when b is outside the previous stage.

/// b must be a basis.
bool fastpath_in_Bprime(const Group& G, const Basis& b);
/// Congruences on (x_i, y_i); the canonical generators must lie in B_r.
bool fastpath_in_Br(const Group& G, const SigmaO& so, const Basis& b);
/// b must lie in B_r.
bool fastpath_in_Brprime(const Group& G, const SigmaO& so, const Basis& b);
/// b must lie in B'_r; inv supplies sigma, o and o'.
bool fastpath_in_Brt(const Group& G, const InvariantTuple& inv, const Basis& b);

}  // namespace pgx
