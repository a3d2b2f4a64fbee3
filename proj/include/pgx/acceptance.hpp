#pragma once

// End-to-end acceptance checks, shared by the acceptance binary and
// `pgx selftest`.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pgx/invariants.hpp"
#include "pgx/modarith.hpp"

namespace pgx {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// (p, max m + n1 + n2) pairs.
using ExpBound = std::pair<u64, unsigned>;

struct AcceptanceBounds {
  std::vector<ExpBound> tuples{{2, 8}, {3, 6}, {5, 4}};  // criteria 1, 5, 7
  std::vector<ExpBound> presentations{{2, 7}, {3, 5}};  // criteria 2, 5, 6
  bool fixture = true;
  unsigned lemma_cases = 1000;
  u64 exhaustive_order = 512;
  u64 random_triples = 100000;
  unsigned threads = 1;
};

/// Full-size bounds.
AcceptanceBounds default_bounds();
/// Bounds restricted to one prime and total exponent, for quick self tests.
AcceptanceBounds bounds_for(u64 p, unsigned max_order_exp);

/// The three tuples (3,3,3,2,1,1,2,0,1,2,1,u), u in {1, 4, 7}.
std::vector<InvariantTuple> order_6561_fixture();

/// Conclusions every valid tuple satisfies beyond the defining conditions;
/// returns a description of each that fails.
std::vector<std::string> derived_bound_violations(const InvariantTuple& t);

inline constexpr int kCriterionCount = 7;

/// Runs criterion id in [1, kCriterionCount].
CriterionResult run_criterion(int id, const AcceptanceBounds& bounds);

/// Runs every criterion in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceBounds& bounds,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 1 round trip: ... (0.42 s)"
std::string format_result(const CriterionResult& r);

}  // namespace pgx
