#pragma once

// Brute-force isomorphism testing between constructed groups. Independent of
// the invariant pipeline in classify: it searches H for images of G's
// canonical generators satisfying G's defining relations.

#include <map>
#include <optional>

#include "pgx/group.hpp"

namespace pgx {

inline constexpr u64 kDefaultMaxElems = u64{1} << 24;

/// Element order -> number of elements of that order.
/// Throws std::invalid_argument when |G| > max_elems.
std::map<u64, u64> order_histogram(const Group& G, u64 max_elems = kDefaultMaxElems);

/// Images in H of the canonical generators of G.
struct IsoWitness {
  Element g1;
  Element g2;

  auto operator<=>(const IsoWitness&) const = default;
};

struct IsoResult {
  bool isomorphic = false;
  std::optional<IsoWitness> witness;
};

/// Searches for g1, g2 in H with c = [g2, g1] of order M(G),
/// c^{g_i} = c^{r_i(G)}, g_i^{N_i(G)} = c^{t_i(G)} and <g1, g2> = H.
/// Orders that differ give false at once; larger than max_elems throws
/// std::invalid_argument. The witness is the first pair in element-index
/// order and does not depend on `threads` (0 = default).
IsoResult are_isomorphic(const Group& G, const Group& H, unsigned threads = 1,
                         u64 max_elems = kDefaultMaxElems);

/// Rechecks a witness from scratch: the relations by direct evaluation and
/// generation by breadth-first closure.
bool check_witness(const Group& G, const Group& H, const IsoWitness& w);

/// Size of the subgroup of G generated by gens, by breadth-first closure.
u64 closure_size(const Group& G, const std::vector<Element>& gens);

}  // namespace pgx
