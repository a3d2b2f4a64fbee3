#include "pgx/enumeration.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace pgx {

namespace {

void check_bounds(u64 p, unsigned max_total_exp, const char* who) {
  if (p < 2 || !is_prime(p)) {
    throw std::invalid_argument(std::string(who) + ": p = " + std::to_string(p) + " is not prime");
  }
  try {
    ipow(p, max_total_exp);
  } catch (const std::overflow_error&) {
    throw std::invalid_argument(std::string(who) + ": p^" + std::to_string(max_total_exp) +
                                " exceeds 2^62");
  }
}

}  // namespace

std::vector<InvariantTuple> enumerate_tuples(u64 p, unsigned max_total_exp) {
  check_bounds(p, max_total_exp, "enumerate_tuples");
  std::vector<InvariantTuple> out;
  const i64 P = static_cast<i64>(p);
  const i64 T = max_total_exp;
  InvariantTuple t;
  t.p = P;
  // Loops run in field order so emission is lexicographic. Only the interval
  // constraints of conditions (2)-(4) prune; validate decides the rest.
  for (t.m = 1; t.m + 2 <= T; ++t.m) {
    for (t.n1 = 1; t.m + t.n1 + 1 <= T; ++t.n1) {
      for (t.n2 = 1; t.n2 <= t.n1 && t.m + t.n1 + t.n2 <= T; ++t.n2) {
        for (t.sigma1 = -1; t.sigma1 <= 1; t.sigma1 += 2) {
          for (t.sigma2 = -1; t.sigma2 <= 1; t.sigma2 += 2) {
            for (t.o1 = 0; t.o1 < std::min(t.m, t.n1); ++t.o1) {
              for (t.o2 = 0; t.o2 < std::min(t.m, t.n2); ++t.o2) {
                for (t.op1 = 0; t.op1 <= t.m - std::max(t.o1, t.o2); ++t.op1) {
                  for (t.op2 = 0; t.op2 <= t.m - t.o2; ++t.op2) {
                    const i64 max_u1 = static_cast<i64>(ipow(p, static_cast<unsigned>(t.op1)));
                    const i64 max_u2 = static_cast<i64>(ipow(p, static_cast<unsigned>(t.op2)));
                    for (t.u1 = 1; t.u1 <= max_u1; ++t.u1) {
                      if (t.u1 % P == 0) continue;
                      for (t.u2 = 1; t.u2 <= max_u2; ++t.u2) {
                        if (t.u2 % P == 0) continue;
                        if (validate(t).valid) out.push_back(t);
                      }
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<GroupSpec> enumerate_presentations(u64 p, unsigned max_total_exp) {
  check_bounds(p, max_total_exp, "enumerate_presentations");
  std::vector<GroupSpec> out;
  for (unsigned m = 1; m + 2 <= max_total_exp; ++m) {
    const u64 M = ipow(p, m);
    for (unsigned n1 = 1; m + n1 + 1 <= max_total_exp; ++n1) {
      for (unsigned n2 = 1; n2 <= n1 && m + n1 + n2 <= max_total_exp; ++n2) {
        const u64 N1 = ipow(p, n1), N2 = ipow(p, n2);
        std::vector<u64> units1, units2;
        for (u64 r = 1; r < M; ++r) {
          if (r % p == 0) continue;
          if (powmod(r, N1, M) == 1) units1.push_back(r);
          if (powmod(r, N2, M) == 1) units2.push_back(r);
        }
        for (u64 r1 : units1) {
          for (u64 r2 : units2) {
            for (u64 t1 = 1; t1 <= M; ++t1) {
              for (u64 t2 = 1; t2 <= M; ++t2) {
                if (consistency_check(p, M, N1, N2, r1, r2, t1, t2)) {
                  out.push_back({p, M, N1, N2, r1, r2, t1, t2});
                }
              }
            }
          }
        }
      }
    }
  }
  return out;
}

std::map<unsigned, u64> count_classes(u64 p, unsigned max_total_exp) {
  std::map<unsigned, u64> counts;
  for (const auto& t : enumerate_tuples(p, max_total_exp)) {
    ++counts[static_cast<unsigned>(t.total_exp())];
  }
  return counts;
}

void write_tuples_csv(std::ostream& os, const std::vector<InvariantTuple>& tuples) {
  os << kTupleCsvHeader << '\n';
  for (const auto& t : tuples) os << to_positional(t) << '\n';
}

void write_specs_csv(std::ostream& os, const std::vector<GroupSpec>& specs) {
  os << kSpecCsvHeader << '\n';
  for (const auto& s : specs) os << to_positional(s) << '\n';
}

}  // namespace pgx
