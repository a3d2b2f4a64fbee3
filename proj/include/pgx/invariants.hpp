#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pgx/modarith.hpp"

namespace pgx {

/// Numerical invariants of a 2-generated non-abelian cyclic-by-abelian
/// p-group: (p, m, n1, n2, sigma1, sigma2, o1, o2, o'1, o'2, u1, u2).
///
/// |G'| = p^m and G/G' = C_{p^n1} x C_{p^n2}. Signs are stored as the
/// integers -1/+1 so the defaulted ordering is the positional lexicographic
/// order with -1 < 1.
struct InvariantTuple {
  i64 p = 0;
  i64 m = 0;
  i64 n1 = 0;
  i64 n2 = 0;
  i64 sigma1 = 1;
  i64 sigma2 = 1;
  i64 o1 = 0;
  i64 o2 = 0;
  i64 op1 = 0;
  i64 op2 = 0;
  i64 u1 = 1;
  i64 u2 = 1;

  auto operator<=>(const InvariantTuple&) const = default;

  std::array<i64, 12> as_array() const {
    return {p, m, n1, n2, sigma1, sigma2, o1, o2, op1, op2, u1, u2};
  }
  static InvariantTuple from_array(const std::array<i64, 12>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9], a[10], a[11]};
  }
  i64 total_exp() const { return m + n1 + n2; }
};

std::ostream& operator<<(std::ostream& os, const InvariantTuple& t);

/// Condition labels in reporting order.
inline constexpr std::array<std::string_view, 17> kConditionLabels = {
    "1",  "2",  "3",  "4",  "5",  "6a", "6b",  "6c",  "6d",
    "6e", "6f", "6g", "7a", "7b", "7bi", "7bii", "7c"};

struct ConditionReport {
  bool valid = true;
  std::vector<std::string> violations;  // subset of kConditionLabels, in order

  bool violates(std::string_view label) const;
};

/// Checks every clause of the classification theorem and reports each
/// violated one. Throws std::invalid_argument when p is not prime.
ConditionReport validate(const InvariantTuple& t);

/// Representatives 1 < r_i <= 1 + p^m of the action of the canonical
/// generators on G'.
struct RPair {
  u64 r1;
  u64 r2;
  constexpr bool operator==(const RPair&) const = default;
};
RPair derive_r(const InvariantTuple& t);

/// t_i = u_i p^(m - o'_i), in [1, p^m].
struct TPair {
  u64 t1;
  u64 t2;
  constexpr bool operator==(const TPair&) const = default;
};
TPair derive_t(const InvariantTuple& t);

/// True iff r_i^{N_i} = 1, t_i r_i = t_i, S_{r1}(N1) = t1 (1 - r2) and
/// S_{r2}(N2) = t2 (r1 - 1), all mod M.
bool consistency_check(u64 p, u64 M, u64 N1, u64 N2, u64 r1, u64 r2, u64 t1, u64 t2);

/// The exponents bounding u1 and u2 when sigma1 = 1.
struct ABounds {
  i64 a1;
  i64 a2;
  constexpr bool operator==(const ABounds&) const = default;
};
ABounds a_bounds(const InvariantTuple& t);

// Encodings. Both accept and produce integers only.
std::string to_positional(const InvariantTuple& t);
std::string to_json(const InvariantTuple& t);
/// Accepts the JSON object form or the positional "p,m,n1,...,u2" form.
InvariantTuple parse_tuple(std::string_view text);

/// CSV header matching to_positional.
inline constexpr std::string_view kTupleCsvHeader =
    "p,m,n1,n2,sigma1,sigma2,o1,o2,op1,op2,u1,u2";

}  // namespace pgx
