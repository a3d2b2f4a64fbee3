#include "pgx/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "literal.hpp"
#include "pgx/classify.hpp"
#include "pgx/enumeration.hpp"
#include "pgx/group.hpp"
#include "pgx/iso_oracle.hpp"
#include "pgx/parallel.hpp"

namespace pgx {

namespace {

using Rng = std::mt19937_64;

i64 uniform(Rng& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

// Failure bookkeeping: counts cases and keeps the first counterexample.
struct Tally {
  std::string name;
  u64 cases = 0;
  u64 failures = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++cases;
    if (!ok && failures++ == 0) first = describe();
  }
  std::string summary() const {
    std::string s = name + " " + std::to_string(cases - failures) + "/" + std::to_string(cases);
    if (failures) s += " [first failure: " + first + "]";
    return s;
  }
};

std::string join(const std::vector<std::string>& parts, const char* sep = "; ") {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string str(const InvariantTuple& t) { return "(" + to_positional(t) + ")"; }
std::string str(const GroupSpec& s) { return "(" + to_positional(s) + ")"; }

// Exact valuation of a nonzero integer.
unsigned val(u64 p, i64 n) {
  unsigned v = 0;
  while (n % static_cast<i64>(p) == 0) {
    n /= static_cast<i64>(p);
    ++v;
  }
  return v;
}

// Largest K with p^K <= 2^62.
unsigned max_exp(u64 p) {
  unsigned k = 0;
  for (u128 q = p; q <= kMaxOrder; q *= p) ++k;
  return k;
}

std::vector<InvariantTuple> tuples_in(const std::vector<ExpBound>& bounds) {
  std::vector<InvariantTuple> out;
  for (const auto& [p, e] : bounds) {
    auto ts = enumerate_tuples(p, e);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

std::vector<GroupSpec> presentations_in(const std::vector<ExpBound>& bounds) {
  std::vector<GroupSpec> out;
  for (const auto& [p, e] : bounds) {
    auto ss = enumerate_presentations(p, e);
    out.insert(out.end(), ss.begin(), ss.end());
  }
  return out;
}

// Runs body(i) for i < n in parallel; body returns an error message or
// nullopt. Returns the failure count and the lowest-index message.
std::pair<u64, std::string> sweep(std::size_t n, unsigned threads,
                                  const std::function<std::optional<std::string>(std::size_t)>& body) {
  std::vector<std::optional<std::string>> errs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      errs[i] = body(i);
    } catch (const std::exception& e) {
      errs[i] = std::string("exception: ") + e.what();
    }
  });
  u64 count = 0;
  std::string first;
  for (const auto& e : errs) {
    if (e && count++ == 0) first = *e;
  }
  return {count, first};
}

// ---------------------------------------------------------------------------
// 1. Round trip

CriterionResult round_trip(const AcceptanceBounds& bounds) {
  CriterionResult res{1, "round trip", true, "", 0};
  std::vector<std::string> parts;
  for (const auto& [p, e] : bounds.tuples) {
    const auto ts = enumerate_tuples(p, e);
    const auto [bad, first] = sweep(ts.size(), bounds.threads, [&](std::size_t i) -> std::optional<std::string> {
      const InvariantTuple& t = ts[i];
      const Group G(construct(t));
      if (!verify_relations(G)) return "relations fail for " + str(t);
      const InvariantTuple back = compute_inv(G).tuple;
      if (back != t) return "inv" + str(t) + " = " + str(back);
      return std::nullopt;
    });
    std::string part = "p=" + std::to_string(p) + " exp<=" + std::to_string(e) + ": " +
                       std::to_string(ts.size() - bad) + "/" + std::to_string(ts.size());
    if (bad) {
      res.passed = false;
      part += " [" + first + "]";
    }
    parts.push_back(part);
  }
  res.detail = join(parts);
  return res;
}

// ---------------------------------------------------------------------------
// 2. Reverse direction against the isomorphism oracle

CriterionResult reverse_vs_oracle(const AcceptanceBounds& bounds) {
  CriterionResult res{2, "presentations vs isomorphism oracle", true, "", 0};
  std::vector<std::string> parts;
  for (const auto& [p, e] : bounds.presentations) {
    const auto specs = enumerate_presentations(p, e);
    std::vector<Group> groups;
    groups.reserve(specs.size());
    for (const auto& s : specs) groups.emplace_back(s);

    std::vector<std::map<u64, u64>> hist(specs.size());
    std::vector<InvariantTuple> inv(specs.size());
    parallel_for(specs.size(), bounds.threads, [&](std::size_t i) {
      hist[i] = order_histogram(groups[i]);
      inv[i] = compute_inv(groups[i]).tuple;
    });

    std::vector<std::string> errors;
    std::vector<std::size_t> reps;               // class -> representative spec
    std::vector<std::size_t> cls(specs.size());  // spec -> class
    std::map<std::pair<u64, std::map<u64, u64>>, std::vector<std::size_t>> buckets;
    u64 oracle_calls = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      auto& bucket = buckets[{groups[i].order(), hist[i]}];
      std::optional<std::size_t> found;
      for (std::size_t c : bucket) {
        ++oracle_calls;
        const IsoResult r = are_isomorphic(groups[reps[c]], groups[i], bounds.threads);
        if (r.isomorphic) {
          if (!r.witness || !check_witness(groups[reps[c]], groups[i], *r.witness)) {
            errors.push_back("bad witness for " + str(specs[i]));
          }
          found = c;
          break;
        }
      }
      if (!found) {
        found = reps.size();
        reps.push_back(i);
        bucket.push_back(*found);
      }
      cls[i] = *found;
    }

    // (a) valid tuples, (b) equal tuples iff isomorphic
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (!validate(inv[i]).valid) errors.push_back("invalid tuple " + str(inv[i]) + " for " + str(specs[i]));
      if (inv[i] != inv[reps[cls[i]]]) {
        errors.push_back("isomorphic specs " + str(specs[reps[cls[i]]]) + " and " + str(specs[i]) +
                         " get different tuples");
      }
    }
    std::map<InvariantTuple, std::size_t> seen;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      auto [it, fresh] = seen.emplace(inv[reps[c]], c);
      if (!fresh) {
        errors.push_back("non-isomorphic specs " + str(specs[reps[it->second]]) + " and " +
                         str(specs[reps[c]]) + " share tuple " + str(inv[reps[c]]));
      }
    }

    // (c) class counts per order
    std::map<unsigned, u64> classes;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      const Group& G = groups[reps[c]];
      ++classes[G.m() + G.n1() + G.n2()];
    }
    std::map<unsigned, u64> expected;
    for (const auto& [k, v] : count_classes(p, e)) {
      if (v) expected[k] = v;
    }
    if (classes != expected) {
      std::ostringstream os;
      os << "class counts differ:";
      for (const auto& [k, v] : expected) os << " " << p << "^" << k << " expected " << v << " got " << classes[k];
      errors.push_back(os.str());
    }

    std::string part = "p=" + std::to_string(p) + " exp<=" + std::to_string(e) + ": " +
                       std::to_string(specs.size()) + " specs, " + std::to_string(reps.size()) +
                       " classes, " + std::to_string(oracle_calls) + " oracle calls";
    if (!errors.empty()) {
      res.passed = false;
      part += " [" + std::to_string(errors.size()) + " errors, first: " + errors.front() + "]";
    }
    parts.push_back(part);
  }
  res.detail = join(parts);
  return res;
}

// ---------------------------------------------------------------------------
// 3. Order 3^8 fixture

CriterionResult fixture_criterion(const AcceptanceBounds& bounds) {
  CriterionResult res{3, "order 3^8 fixture", true, "", 0};
  if (!bounds.fixture) {
    res.detail = "skipped: outside the selected range";
    return res;
  }
  std::vector<std::string> errors;
  const auto ts = order_6561_fixture();
  std::vector<Group> groups;
  for (const auto& t : ts) {
    const ConditionReport rep = validate(t);
    if (!rep.valid) errors.push_back(str(t) + " fails validate: " + join(rep.violations, ","));
    groups.emplace_back(construct(t));
    if (groups.back().order() != 6561) errors.push_back(str(t) + " has the wrong order");
    const InvariantTuple back = compute_inv(groups.back(), bounds.threads).tuple;
    if (back != t) errors.push_back("inv" + str(t) + " = " + str(back));
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < groups.size(); ++j) {
      const IsoResult r = are_isomorphic(groups[i], groups[j], bounds.threads);
      if (r.isomorphic != (i == j)) {
        errors.push_back("are_isomorphic(u=" + std::to_string(ts[i].u2) + ", u=" + std::to_string(ts[j].u2) +
                         ") = " + (r.isomorphic ? "true" : "false"));
      }
      if (r.isomorphic && (!r.witness || !check_witness(groups[i], groups[j], *r.witness))) {
        errors.push_back("bad self-isomorphism witness");
      }
    }
  }
  res.passed = errors.empty();
  res.detail = errors.empty() ? "3 tuples valid, round trip exact, pairwise non-isomorphic"
                              : join(errors);
  return res;
}

// ---------------------------------------------------------------------------
// 4. Exponent-sum lemma suite

Tally geometric_sum_identities(Rng& rng, unsigned cases) {
  Tally t{"geometric-sum identities", 0, 0, ""};
  for (unsigned c = 0; c < cases; ++c) {
    const i64 x = uniform(rng, -6, 6);
    const u64 a = static_cast<u64>(uniform(rng, 0, 20));
    const u64 b = static_cast<u64>(uniform(rng, 0, 6));
    const u64 mod = static_cast<u64>(uniform(rng, 2, 1000000007));
    auto desc = [&] {
      return "x=" + std::to_string(x) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
             " mod=" + std::to_string(mod);
    };
    // exact closed form over the integers
    __int128 sum = 0, term = 1, xa = 1;
    for (u64 i = 0; i < a; ++i) {
      sum += term;
      term *= x;
    }
    for (u64 i = 0; i < a; ++i) xa *= x;
    const __int128 closed = x == 1 ? static_cast<__int128>(a) : (xa - 1) / (x - 1);
    const u64 sx_a = literal::ese(x, a, mod);
    const __int128 sum_mod = (sum % static_cast<__int128>(mod) + mod) % mod;
    const u64 lib = ese(x, a, mod).value;
    // S_x(1 + a) = 1 + x S_x(a)
    const u64 rhs1 = addmod(1 % mod, mulmod(literal::mod_of(x, mod), lib, mod), mod);
    // S_x(ab) = S_x(a) S_{x^a}(b)
    const i64 xa_mod = static_cast<i64>(literal::pow(x, a, mod));
    const u64 rhs2 = mulmod(lib, ese(xa_mod, b, mod).value, mod);
    // (x - 1) S_{x,1}(a) = S_x(a) - a
    const u64 lhs3 = mulmod(literal::mod_of(x - 1, mod), literal::ese2(x, 1, a, mod), mod);
    const u64 rhs3 = submod(lib, a % mod, mod);
    t.check(sum == closed && static_cast<u64>(sum_mod) == sx_a && sx_a == lib &&
                literal::ese(x, a + 1, mod) == rhs1 && literal::ese(x, a * b, mod) == rhs2 && lhs3 == rhs3,
            desc);
  }
  return t;
}

const u64 kSmallPrimes[] = {2, 3, 5, 7, 11, 13};

u64 random_prime(Rng& rng) { return kSmallPrimes[uniform(rng, 0, 5)]; }

// s with s - 1 of valuation >= base, random sign and unit part.
i64 random_one_mod(Rng& rng, u64 p, unsigned base) {
  i64 w;
  do {
    w = uniform(rng, -300, 300);
  } while (w == 0);
  return 1 + static_cast<i64>(ipow(p, base + static_cast<unsigned>(uniform(rng, 0, 3)))) * w;
}

u64 random_n(Rng& rng, u64 p) {
  const u64 n = static_cast<u64>(uniform(rng, 1, 60)) * ipow(p, static_cast<unsigned>(uniform(rng, 0, 3)));
  return std::min<u64>(n, 4000);
}

Tally valuations_plus(Rng& rng, unsigned cases) {
  Tally t{"valuations, p odd or s = 1 mod 4", 0, 0, ""};
  for (unsigned c = 0; c < cases; ++c) {
    const u64 p = random_prime(rng);
    const i64 s = random_one_mod(rng, p, p == 2 ? 2 : 1);
    const u64 n = random_n(rng, p);
    const unsigned K = max_exp(p);
    const u64 P = ipow(p, K);
    unsigned kmax = 1;
    while (ipow(p, kmax + 1) <= (u64{1} << 18)) ++kmax;
    const unsigned k = static_cast<unsigned>(uniform(rng, 1, kmax));
    const unsigned vs = val(p, s - 1);
    const u64 pk = ipow(p, k);
    const u64 want_ord = ipow(p, static_cast<unsigned>(std::max<i64>(0, static_cast<i64>(k) - vs)));
    t.check(literal::vp_mod(submod(literal::pow(s, n, P), 1, P), p, K) == vs + val(p, static_cast<i64>(n)) &&
                literal::vp_mod(literal::ese(s, n, P), p, K) == val(p, static_cast<i64>(n)) &&
                literal::order(s, pk) == want_ord && ord_mod(pk, s) == want_ord,
            [&] { return "p=" + std::to_string(p) + " s=" + std::to_string(s) + " n=" + std::to_string(n) +
                         " k=" + std::to_string(k); });
  }
  return t;
}

Tally valuations_minus(Rng& rng, unsigned cases) {
  Tally t{"valuations, s = -1 mod 4", 0, 0, ""};
  for (unsigned c = 0; c < cases; ++c) {
    i64 w;
    do {
      w = uniform(rng, -99, 99);
    } while (w % 2 == 0);
    const unsigned j = static_cast<unsigned>(uniform(rng, 2, 20));
    const i64 s = -1 + static_cast<i64>(u64{1} << j) * w;
    const u64 n = random_n(rng, 2);
    const unsigned K = 62;
    const u64 P = u64{1} << K;
    const unsigned k = static_cast<unsigned>(uniform(rng, 2, 18));
    const unsigned vn = val(2, static_cast<i64>(n));
    const bool odd = n % 2 == 1;
    const unsigned want_pow = odd ? 1 : j + vn;
    const unsigned want_sum = odd ? 0 : vn + j - 1;
    const u64 want_ord = u64{1} << std::max<i64>(1, static_cast<i64>(k) - j);
    t.check(literal::vp_mod(submod(literal::pow(s, n, P), 1, P), 2, K) == want_pow &&
                literal::vp_mod(literal::ese(s, n, P), 2, K) == want_sum &&
                literal::order(s, u64{1} << k) == want_ord && ord_mod(u64{1} << k, s) == want_ord,
            [&] { return "s=" + std::to_string(s) + " n=" + std::to_string(n) + " k=" + std::to_string(k); });
  }
  return t;
}

Tally sum_table(Rng& rng, unsigned cases) {
  Tally t{"S_s(n) mod p^m table", 0, 0, ""};
  const u64 primes[] = {2, 2, 2, 3, 5, 7};
  for (unsigned c = 0; c < cases; ++c) {
    const u64 p = primes[uniform(rng, 0, 5)];
    const unsigned a = static_cast<unsigned>(uniform(rng, 1, 6));
    i64 w;
    do {
      w = uniform(rng, -200, 200);
    } while (w % static_cast<i64>(p) == 0);
    const i64 s = 1 + static_cast<i64>(ipow(p, a)) * w;
    unsigned mmax = 1;
    while (ipow(p, mmax + 1) <= (u64{1} << 16)) ++mmax;
    const unsigned m = static_cast<unsigned>(uniform(rng, 1, mmax));
    const u64 pm = ipow(p, m);
    const u64 q = ipow(p, m > a ? m - a : 0);
    u64 n = static_cast<u64>(uniform(rng, 0, 16)) * q + static_cast<u64>(uniform(rng, 0, 1));
    if (n == 0) n = q;
    u64 want = n % pm;
    if (p == 2 && a == 1 && a < m) {
      want = n % (pm / 2) == 0 ? 0 : 1;
    } else if (p == 2 && 2 <= a && a < m) {
      const u64 r = n % (u64{1} << (m - a + 1));
      if (r != 0 && r != 1) want = (n + pm / 2) % pm;
    }
    t.check(literal::ese(s, n, pm) == want && ese(s, n, pm).value == want, [&] {
      return "p=" + std::to_string(p) + " s=" + std::to_string(s) + " m=" + std::to_string(m) +
             " n=" + std::to_string(n);
    });
  }
  return t;
}

Tally double_sum_prime_power(Rng& rng, unsigned cases) {
  Tally t{"S_{s,t}(p^n) mod p^n", 0, 0, ""};
  const u64 primes[] = {2, 2, 3, 5, 7};
  for (unsigned c = 0; c < cases; ++c) {
    const u64 p = primes[uniform(rng, 0, 4)];
    const i64 s = random_one_mod(rng, p, 1), u = random_one_mod(rng, p, 1);
    unsigned nmax = 1;
    while (ipow(p, nmax + 1) <= (u64{1} << 13)) ++nmax;
    const unsigned n = static_cast<unsigned>(uniform(rng, 1, nmax));
    const u64 pn = ipow(p, n);
    const u64 want = p == 2 ? pn / 2 : 0;
    t.check(literal::ese2(s, u, pn, pn) == want && ese2(s, u, pn, pn).value == want, [&] {
      return "p=" + std::to_string(p) + " s=" + std::to_string(s) + " t=" + std::to_string(u) +
             " n=" + std::to_string(n);
    });
  }
  return t;
}

Tally double_sum_mixed_signs(Rng& rng, unsigned cases) {
  Tally t{"S_{s1,s2}(2^n) mod 2^m, s1 = -1 mod 4", 0, 0, ""};
  while (t.cases < cases) {
    i64 w1, w2;
    do {
      w1 = uniform(rng, -99, 99);
    } while (w1 % 2 == 0);
    do {
      w2 = uniform(rng, -99, 99);
    } while (w2 % 2 == 0);
    const i64 j1 = uniform(rng, 2, 16), j2 = uniform(rng, 1, 16);
    const i64 s1 = -1 + (i64{1} << j1) * w1;
    const i64 s2 = uniform(rng, 0, 9) == 0 ? 1 : 1 + (i64{1} << j2) * w2;
    const i64 m = uniform(rng, 1, 14);
    const i64 o1 = std::max<i64>(0, m - j1);
    const i64 o2 = s2 == 1 ? 0 : std::max<i64>(0, m - j2);
    const i64 lo = std::max(o1, o2) + 1;
    if (lo > 13) continue;
    const unsigned n = static_cast<unsigned>(uniform(rng, lo, 13));
    const u64 mod = u64{1} << m;
    const u64 want = (u64{1} << (n - 1)) % mod;
    t.check(literal::ese2(s1, s2, u64{1} << n, mod) == want, [&] {
      return "s1=" + std::to_string(s1) + " s2=" + std::to_string(s2) + " m=" + std::to_string(m) +
             " n=" + std::to_string(n);
    });
  }
  return t;
}

Tally three_quotients() {
  Tally t{"three-quotient floor identity, n <= 16 exhaustive", 0, 0, ""};
  for (u64 n = 1; n <= 16; ++n) {
    for (u64 z1 = 0; z1 < n; ++z1) {
      for (u64 z2 = 0; z2 < n; ++z2) {
        for (u64 z3 = 0; z3 < n; ++z3) {
          const u64 lhs = ((z1 + z2) % n + z3) / n + (z1 + z2) / n;
          const u64 rhs = (z1 + (z2 + z3) % n) / n + (z2 + z3) / n;
          t.check(lhs == rhs, [&] {
            return "n=" + std::to_string(n) + " z=" + std::to_string(z1) + "," + std::to_string(z2) + "," +
                   std::to_string(z3);
          });
        }
      }
    }
  }
  return t;
}

Tally doubling(Rng& rng, unsigned cases) {
  Tally t{"S_{s,t}(p^{n+1}) doubling", 0, 0, ""};
  const u64 primes[] = {2, 3, 5};
  for (unsigned c = 0; c < cases; ++c) {
    const u64 p = primes[uniform(rng, 0, 2)];
    unsigned nmax = 0;
    while (ipow(p, nmax + 2) <= 2187) ++nmax;
    const unsigned n = static_cast<unsigned>(uniform(rng, 0, nmax));
    const i64 s = uniform(rng, -50, 50), u = uniform(rng, -50, 50);
    const u64 mod = static_cast<u64>(uniform(rng, 2, 1000000007));
    const u64 pn = ipow(p, n);
    const u64 lhs = literal::ese2(s, u, pn * p, mod);
    const u64 base = literal::ese2(s, u, pn, mod);
    const u64 ss = literal::ese(s, pn, mod);
    u64 rhs = 0;
    for (u64 k = 0; k < p; ++k) {
      const u64 st = mulmod(literal::pow(s, k * pn, mod), literal::pow(u, k * pn, mod), mod);
      rhs = addmod(rhs, mulmod(st, base, mod), mod);
      u64 cross = mulmod(literal::pow(s, k * pn, mod), literal::pow(u, (k + 1) * pn, mod), mod);
      cross = mulmod(cross, mulmod(ss, literal::ese(u, pn * (p - k - 1), mod), mod), mod);
      rhs = addmod(rhs, cross, mod);
    }
    t.check(lhs == rhs && ese2(s, u, pn * p, mod).value == lhs, [&] {
      return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " s=" + std::to_string(s) +
             " t=" + std::to_string(u) + " mod=" + std::to_string(mod);
    });
  }
  return t;
}

Tally power_sum_relations(Rng& rng, unsigned cases) {
  Tally t{"r-power sums and t relations", 0, 0, ""};
  std::vector<GroupSpec> specs;
  for (const auto& tup : enumerate_tuples(2, 8)) specs.push_back(construct(tup));
  for (const auto& tup : enumerate_tuples(3, 6)) specs.push_back(construct(tup));
  for (unsigned c = 0; c < cases; ++c) {
    const GroupSpec& g = specs[static_cast<std::size_t>(uniform(rng, 0, static_cast<i64>(specs.size()) - 1))];
    const u64 M = g.M;
    const i64 r1 = static_cast<i64>(g.r1 % M), r2 = static_cast<i64>(g.r2 % M);
    const u64 t1 = g.t1 % M, t2 = g.t2 % M;
    const u64 n = static_cast<u64>(uniform(rng, 0, static_cast<i64>(4 * g.N1)));
    const u64 S1N = literal::ese(r1, g.N1, M), S2N = literal::ese(r2, g.N2, M);
    const bool split1 = literal::ese(r1, n, M) == addmod(mulmod(n / g.N1 % M, S1N, M), literal::ese(r1, n % g.N1, M), M);
    const bool split2 = literal::ese(r2, n, M) == addmod(mulmod(n / g.N2 % M, S2N, M), literal::ese(r2, n % g.N2, M), M);
    const bool rel1 = t1 == addmod(mulmod(t1, literal::pow(r2, n, M), M), mulmod(literal::ese(r2, n, M), S1N, M), M);
    const bool rel2 = t2 == submod(mulmod(t2, literal::pow(r1, n, M), M), mulmod(literal::ese(r1, n, M), S2N, M), M);
    t.check(split1 && split2 && rel1 && rel2, [&] { return str(g) + " n=" + std::to_string(n); });
  }
  return t;
}

CriterionResult lemma_suite(const AcceptanceBounds& bounds) {
  CriterionResult res{4, "exponent-sum lemma suite", true, "", 0};
  Rng rng(0x1e44a5);
  const unsigned n = bounds.lemma_cases;
  std::vector<Tally> ts;
  ts.push_back(geometric_sum_identities(rng, n));
  ts.push_back(valuations_plus(rng, n));
  ts.push_back(valuations_minus(rng, n));
  ts.push_back(sum_table(rng, n));
  ts.push_back(double_sum_prime_power(rng, n));
  ts.push_back(double_sum_mixed_signs(rng, n));
  ts.push_back(three_quotients());
  ts.push_back(doubling(rng, n));
  ts.push_back(power_sum_relations(rng, n));
  std::vector<std::string> parts;
  for (const auto& t : ts) {
    if (t.failures || t.cases < n) res.passed = false;
    parts.push_back(t.summary());
  }
  res.detail = join(parts);
  return res;
}

// ---------------------------------------------------------------------------
// 5. Cocycle and associativity

std::optional<std::string> exhaustive_associativity(const Group& G) {
  const u64 n = G.order();
  std::vector<std::uint32_t> table(n * n);
  for (u64 i = 0; i < n; ++i) {
    const Element g = G.element_at(i);
    for (u64 j = 0; j < n; ++j) table[i * n + j] = static_cast<std::uint32_t>(G.index(G.mul(g, G.element_at(j))));
  }
  for (u64 i = 0; i < n; ++i) {
    for (u64 j = 0; j < n; ++j) {
      const u64 ij = table[i * n + j];
      for (u64 k = 0; k < n; ++k) {
        if (table[ij * n + k] != table[i * n + table[j * n + k]]) {
          return "associativity fails in " + str(G.spec()) + " at indices " + std::to_string(i) + "," +
                 std::to_string(j) + "," + std::to_string(k);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> random_associativity(const Group& G, u64 triples, u64 seed) {
  Rng rng(seed);
  std::uniform_int_distribution<u64> pick(0, G.order() - 1);
  for (u64 c = 0; c < triples; ++c) {
    const Element g = G.element_at(pick(rng)), h = G.element_at(pick(rng)), k = G.element_at(pick(rng));
    if (G.mul(G.mul(g, h), k) != G.mul(g, G.mul(h, k))) {
      std::ostringstream os;
      os << "associativity fails in " << str(G.spec()) << " at " << g << " " << h << " " << k;
      return os.str();
    }
  }
  return std::nullopt;
}

std::optional<std::string> carries_match_cocycle(const Group& G) {
  for (u64 x1 = 0; x1 < G.N1(); ++x1) {
    for (u64 y1 = 0; y1 < G.N2(); ++y1) {
      for (u64 x2 = 0; x2 < G.N1(); ++x2) {
        for (u64 y2 = 0; y2 < G.N2(); ++y2) {
          const Element prod = G.mul({x1, y1, 0}, {x2, y2, 0});
          const Element want{(x1 + x2) % G.N1(), (y1 + y2) % G.N2(), cocycle(G, x1, y1, x2, y2)};
          if (prod != want) {
            std::ostringstream os;
            os << "carry of " << Element{x1, y1, 0} << "*" << Element{x2, y2, 0} << " in " << str(G.spec())
               << " is " << prod << ", cocycle gives " << want;
            return os.str();
          }
        }
      }
    }
  }
  return std::nullopt;
}

CriterionResult cocycle_associativity(const AcceptanceBounds& bounds) {
  CriterionResult res{5, "cocycle and associativity", true, "", 0};
  std::vector<GroupSpec> specs;
  for (const auto& t : tuples_in(bounds.tuples)) specs.push_back(construct(t));
  const auto pres = presentations_in(bounds.presentations);
  specs.insert(specs.end(), pres.begin(), pres.end());
  if (bounds.fixture) {
    for (const auto& t : order_6561_fixture()) specs.push_back(construct(t));
  }
  std::vector<char> exhaustive(specs.size());
  const auto [bad, first] = sweep(specs.size(), bounds.threads, [&](std::size_t i) -> std::optional<std::string> {
    const Group G(specs[i]);
    exhaustive[i] = G.order() <= bounds.exhaustive_order;
    auto err = exhaustive[i] ? exhaustive_associativity(G) : random_associativity(G, bounds.random_triples, 0xa55 + i);
    if (err) return err;
    return carries_match_cocycle(G);
  });
  u64 ex = 0;
  for (char c : exhaustive) ex += c;
  res.passed = bad == 0;
  res.detail = std::to_string(ex) + " groups exhaustive (order <= " + std::to_string(bounds.exhaustive_order) +
               "), " + std::to_string(specs.size() - ex) + " with " + std::to_string(bounds.random_triples) +
               " random triples, cocycle on all z = 0 pairs; " + std::to_string(bad) + " failing";
  if (bad) res.detail += " [" + first + "]";
  return res;
}

// ---------------------------------------------------------------------------
// 6. Fast-path stage membership

struct StageCounts {
  u64 bprime = 0, br = 0, brprime = 0, brt = 0;
};

std::optional<std::string> fastpath_agreement(const Group& G, StageCounts& counts) {
  const SigmaO so = compute_sigma_o_min(G);
  const InvariantTuple inv = compute_inv(G).tuple;
  const bool canonical_in_br = in_Br(G, so, Basis{G.b1(), G.b2()});
  auto where = [&](const char* stage, const Basis& b) {
    std::ostringstream os;
    os << stage << " disagrees in " << str(G.spec()) << " at " << b.b1 << " " << b.b2;
    return os.str();
  };
  for (const auto& c : base_candidates(G)) {
    Basis b{{c[0], c[1], 0}, {c[2], c[3], 0}};
    ++counts.bprime;
    if (fastpath_in_Bprime(G, b) != in_Bprime(G, so, b)) return where("B'", b);
    if (canonical_in_br) {
      ++counts.br;
      if (fastpath_in_Br(G, so, b) != in_Br(G, so, b)) return where("B_r", b);
    }
    if (!in_Br(G, so, b)) continue;
    for (u64 z1 = 0; z1 < G.M(); ++z1) {
      for (u64 z2 = 0; z2 < G.M(); ++z2) {
        b.b1.z = z1;
        b.b2.z = z2;
        ++counts.brprime;
        const bool in_rp = in_Brprime(G, inv, b);
        if (fastpath_in_Brprime(G, so, b) != in_rp) return where("B'_r", b);
        if (!in_rp) continue;
        ++counts.brt;
        if (fastpath_in_Brt(G, inv, b) != in_Brt(G, inv, b)) return where("B_rt", b);
      }
    }
  }
  return std::nullopt;
}

CriterionResult fastpath_equivalence(const AcceptanceBounds& bounds) {
  CriterionResult res{6, "fast-path stage membership", true, "", 0};
  std::vector<GroupSpec> specs;
  for (const auto& t : tuples_in(bounds.presentations)) specs.push_back(construct(t));
  const auto pres = presentations_in(bounds.presentations);
  specs.insert(specs.end(), pres.begin(), pres.end());
  std::vector<StageCounts> counts(specs.size());
  const auto [bad, first] = sweep(specs.size(), bounds.threads, [&](std::size_t i) {
    return fastpath_agreement(Group(specs[i]), counts[i]);
  });
  StageCounts total;
  for (const auto& c : counts) {
    total.bprime += c.bprime;
    total.br += c.br;
    total.brprime += c.brprime;
    total.brt += c.brt;
  }
  res.passed = bad == 0;
  res.detail = std::to_string(specs.size()) + " groups; comparisons B' " + std::to_string(total.bprime) + ", B_r " +
               std::to_string(total.br) + ", B'_r " + std::to_string(total.brprime) + ", B_rt " +
               std::to_string(total.brt) + "; " + std::to_string(bad) + " failing";
  if (bad) res.detail += " [" + first + "]";
  return res;
}

// ---------------------------------------------------------------------------
// 7. Structural invariants

std::optional<std::string> structure(const InvariantTuple& t) {
  const Group G(construct(t));
  std::set<Element> comms;
  for (u64 i = 0; i < G.order(); ++i) {
    const Element g = G.element_at(i);
    for (u64 j = 0; j < G.order(); ++j) {
      const Element c = commutator(G, g, G.element_at(j));
      if (c.x != 0 || c.y != 0) return "commutator outside <a> in " + str(t);
      comms.insert(c);
    }
  }
  const u64 derived = closure_size(G, {comms.begin(), comms.end()});
  if (derived != G.M() || element_order(G, G.a()) != G.M()) {
    return "|G'| = " + std::to_string(derived) + " in " + str(t);
  }
  const u64 want1 = ipow(G.p(), static_cast<unsigned>(t.n1 + t.op1));
  const u64 want2 = ipow(G.p(), static_cast<unsigned>(t.n2 + t.op2));
  if (element_order(G, G.b1()) != want1 || element_order(G, G.b2()) != want2) {
    return "generator orders wrong in " + str(t);
  }
  const InvariantTuple inv = compute_inv(G).tuple;
  const auto v = derived_bound_violations(inv);
  if (!v.empty()) return str(inv) + ": " + join(v, ", ");
  return std::nullopt;
}

CriterionResult structural(const AcceptanceBounds& bounds) {
  CriterionResult res{7, "structural invariants", true, "", 0};
  const auto ts = tuples_in(bounds.tuples);
  const auto [bad, first] = sweep(ts.size(), bounds.threads, [&](std::size_t i) { return structure(ts[i]); });
  res.passed = bad == 0;
  res.detail = std::to_string(ts.size() - bad) + "/" + std::to_string(ts.size()) + " groups";
  if (bad) res.detail += " [" + first + "]";
  return res;
}

}  // namespace

AcceptanceBounds default_bounds() { return {}; }

AcceptanceBounds bounds_for(u64 p, unsigned max_order_exp) {
  AcceptanceBounds b;
  b.tuples = {{p, max_order_exp}};
  b.presentations = {{p, max_order_exp}};
  b.fixture = p == 3 && max_order_exp >= 8;
  return b;
}

std::vector<InvariantTuple> order_6561_fixture() {
  std::vector<InvariantTuple> out;
  for (i64 u : {1, 4, 7}) out.push_back({3, 3, 3, 2, 1, 1, 2, 0, 1, 2, 1, u});
  return out;
}

std::vector<std::string> derived_bound_violations(const InvariantTuple& t) {
  std::vector<std::string> v;
  const i64 p = t.p, m = t.m, n1 = t.n1, n2 = t.n2, o1 = t.o1, o2 = t.o2;
  if (t.op1 > m - o1 || t.op2 > m - o2 || t.op1 > m - o2) v.push_back("o' exceeds m - o");
  if (t.sigma1 == -1 && (t.op1 > 1 || t.u1 != 1)) v.push_back("sigma1 = -1 but o'1 > 1 or u1 != 1");
  if (t.sigma2 == -1 && (t.op2 > 1 || t.u2 != 1)) v.push_back("sigma2 = -1 but o'2 > 1 or u2 != 1");
  if (o1 > std::min(m, n1) - 1 || o2 > std::min(m, n2) - 1) v.push_back("o_i >= min(m, n_i)");
  if (p == 2 && m >= 2 && (o1 > m - 2 || o2 > m - 2)) v.push_back("p = 2 and o_i > m - 2");
  if (m > n1 && t.sigma1 != -1) v.push_back("m > n1 but sigma1 = 1");
  if (t.sigma1 == 1 && m == n1 && o1 * o2 != 0) v.push_back("sigma1 = 1, m = n1 and o1 o2 != 0");
  if (t.sigma1 != t.sigma2) {
    if (m <= n2 && t.op2 > 1) v.push_back("mixed signs, m <= n2 and o'2 > 1");
    if (m > n2) {
      if (t.op2 != m + 1 - n2) v.push_back("mixed signs, m > n2 and o'2 != m + 1 - n2");
      const i64 mod = i64{1} << (m - n2);
      const i64 e = m - o1 - 1;
      if (e < 0 || (t.u2 % mod * ((1 + (i64{1} << e)) % mod) + 1) % mod != 0) {
        v.push_back("u2 (1 + 2^(m-o1-1)) != -1 mod 2^(m-n2)");
      }
      if (t.u2 < 1 || t.u2 > (i64{1} << (m - n2 + 1))) v.push_back("u2 outside [1, 2^(m-n2+1)]");
    }
  }
  return v;
}

CriterionResult run_criterion(int id, const AcceptanceBounds& bounds) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult res;
  try {
    switch (id) {
      case 1: res = round_trip(bounds); break;
      case 2: res = reverse_vs_oracle(bounds); break;
      case 3: res = fixture_criterion(bounds); break;
      case 4: res = lemma_suite(bounds); break;
      case 5: res = cocycle_associativity(bounds); break;
      case 6: res = fastpath_equivalence(bounds); break;
      case 7: res = structural(bounds); break;
      default: throw std::out_of_range("run_criterion: no criterion " + std::to_string(id));
    }
  } catch (const std::out_of_range&) {
    throw;
  } catch (const std::exception& e) {
    res.id = id;
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceBounds& bounds,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, bounds));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail +
         " (" + secs + " s)";
}

}  // namespace pgx
