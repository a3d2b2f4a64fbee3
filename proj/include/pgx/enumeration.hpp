#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "pgx/group.hpp"
#include "pgx/invariants.hpp"

namespace pgx {

/// Every valid tuple with m + n1 + n2 <= max_total_exp, in lexicographic
/// order. Throws std::invalid_argument if p is not prime or p^max_total_exp
/// exceeds 2^62.
std::vector<InvariantTuple> enumerate_tuples(u64 p, unsigned max_total_exp);

/// Every spec (p, p^m, p^n1, p^n2, r1, r2, t1, t2) with m >= 1,
/// n1 >= n2 >= 1, m + n1 + n2 <= max_total_exp, r_i a unit residue in
/// [1, M), 1 <= t_i <= M, passing consistency_check. Lexicographic order.
std::vector<GroupSpec> enumerate_presentations(u64 p, unsigned max_total_exp);

/// Number of valid tuples per total exponent m + n1 + n2.
std::map<unsigned, u64> count_classes(u64 p, unsigned max_total_exp);

void write_tuples_csv(std::ostream& os, const std::vector<InvariantTuple>& tuples);
void write_specs_csv(std::ostream& os, const std::vector<GroupSpec>& specs);

}  // namespace pgx
