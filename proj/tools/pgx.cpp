// pgx: enumerate, validate, construct and classify 2-generated
// cyclic-by-abelian p-groups.
//
// Exit codes: 0 success or affirmative verdict, 1 negative verdict,
// 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgx/acceptance.hpp"
#include "pgx/classify.hpp"
#include "pgx/enumeration.hpp"
#include "pgx/group.hpp"
#include "pgx/invariants.hpp"
#include "pgx/iso_oracle.hpp"
#include "pgx/parallel.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kBadInput = 2;

// An input problem to report with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

pgx::u64 max_elems() {
  const char* env = std::getenv("PGX_MAX_ELEMS");
  if (!env || !*env) return pgx::kDefaultMaxElems;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InputError("PGX_MAX_ELEMS must be a positive integer");
  }
}

pgx::InvariantTuple read_tuple(const std::string& text) {
  try {
    return pgx::parse_tuple(text);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

pgx::Group read_group(const std::string& text) {
  try {
    return pgx::Group(pgx::parse_spec(text));
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

void require_size(const pgx::Group& G, pgx::u64 limit) {
  if (G.order() > limit) {
    throw InputError("group order " + std::to_string(G.order()) + " exceeds PGX_MAX_ELEMS = " +
                     std::to_string(limit));
  }
}

json element_json(const pgx::Group& G, const pgx::Element& g) {
  return {{"x", g.x}, {"y", g.y}, {"z", g.z}, {"index", G.index(g)}};
}

void require_prime(pgx::u64 p) {
  if (p < 2 || !pgx::is_prime(p)) throw InputError("p must be prime");
}

int cmd_enumerate(pgx::u64 p, unsigned max_exp, const std::string& format) {
  require_prime(p);
  std::vector<pgx::InvariantTuple> tuples;
  try {
    tuples = pgx::enumerate_tuples(p, max_exp);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (format == "csv") {
    pgx::write_tuples_csv(std::cout, tuples);
  } else {
    for (const auto& t : tuples) std::cout << pgx::to_json(t) << '\n';
  }
  return kOk;
}

int cmd_validate(const std::string& text) {
  const pgx::InvariantTuple t = read_tuple(text);
  pgx::ConditionReport rep;
  try {
    rep = pgx::validate(t);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::cout << json{{"valid", rep.valid}, {"violations", rep.violations}}.dump() << '\n';
  return rep.valid ? kOk : kNo;
}

int cmd_construct(const std::string& text, const std::string& table_path) {
  const pgx::InvariantTuple t = read_tuple(text);
  pgx::ConditionReport rep;
  try {
    rep = pgx::validate(t);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!rep.valid) {
    std::string v;
    for (const auto& s : rep.violations) v += (v.empty() ? "" : ",") + s;
    throw InputError("invalid tuple, violated conditions: " + v);
  }
  const pgx::GroupSpec spec = pgx::construct(t);
  std::cout << pgx::to_json(spec) << '\n';
  if (!table_path.empty()) {
    const pgx::Group G(spec);
    if (G.order() > 4096) throw InputError("multiplication table needs order <= 4096");
    std::ofstream out(table_path);
    if (!out) throw InputError("cannot write " + table_path);
    pgx::write_multiplication_table(G, out);
  }
  return kOk;
}

int cmd_inv(const std::string& text, unsigned threads) {
  const pgx::Group G = read_group(text);
  require_size(G, max_elems());
  try {
    pgx::require_classifiable(G);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const pgx::InvResult r = pgx::compute_inv(G, threads);
  const json out = {{"tuple", json::parse(pgx::to_json(r.tuple))},
                    {"witness", {{"b1", element_json(G, r.witness.b1)}, {"b2", element_json(G, r.witness.b2)}}}};
  std::cout << out.dump() << '\n';
  return kOk;
}

int cmd_iso(const std::string& a, const std::string& b, unsigned threads) {
  const pgx::Group G = read_group(a), H = read_group(b);
  const pgx::u64 limit = max_elems();
  require_size(G, limit);
  require_size(H, limit);
  const pgx::IsoResult r = pgx::are_isomorphic(G, H, threads, limit);
  json out = {{"isomorphic", r.isomorphic}, {"witness", nullptr}};
  if (r.witness) out["witness"] = {{"g1", element_json(H, r.witness->g1)}, {"g2", element_json(H, r.witness->g2)}};
  std::cout << out.dump() << '\n';
  return r.isomorphic ? kOk : kNo;
}

int cmd_selftest(pgx::u64 p, unsigned max_exp, bool bounded, unsigned threads) {
  pgx::AcceptanceBounds bounds = pgx::default_bounds();
  if (bounded) {
    require_prime(p);
    bounds = pgx::bounds_for(p, max_exp);
  }
  bounds.threads = threads;
  bool ok = true;
  pgx::run_acceptance(bounds, [&](const pgx::CriterionResult& r) {
    std::cout << pgx::format_result(r) << std::endl;
    ok = ok && r.passed;
  });
  return ok ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification toolkit for 2-generated cyclic-by-abelian p-groups"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();

  pgx::u64 p = 0;
  unsigned max_exp = 0;
  std::string format = "csv", tuple, spec, spec_b, table;

  auto* en = app.add_subcommand("enumerate", "list every valid tuple up to a total exponent");
  en->add_option("--p", p, "prime")->required();
  en->add_option("--max-order-exp", max_exp, "bound on m + n1 + n2")->required();
  en->add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();

  auto* va = app.add_subcommand("validate", "check a tuple against the classification conditions");
  va->add_option("--tuple", tuple, "JSON object or p,m,n1,n2,sigma1,sigma2,o1,o2,op1,op2,u1,u2")->required();

  auto* co = app.add_subcommand("construct", "print the presentation of a valid tuple");
  co->add_option("--tuple", tuple, "JSON object or positional tuple")->required();
  co->add_option("--table", table, "write the multiplication table as CSV to this path");

  auto* in = app.add_subcommand("inv", "compute the invariant tuple of a presentation");
  in->add_option("--spec", spec, "JSON object or p,M,N1,N2,r1,r2,t1,t2")->required();

  auto* is = app.add_subcommand("iso", "decide isomorphism by generator search");
  is->add_option("--a", spec, "first spec")->required();
  is->add_option("--b", spec_b, "second spec")->required();

  auto* se = app.add_subcommand("selftest", "run the acceptance suite");
  auto* sp = se->add_option("--p", p, "restrict to this prime");
  auto* sm = se->add_option("--max-order-exp", max_exp, "restrict to this total exponent");
  sp->needs(sm);
  sm->needs(sp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kBadInput;
  }

  try {
    if (threads == 0) threads = pgx::default_threads();
    if (*en) return cmd_enumerate(p, max_exp, format);
    if (*va) return cmd_validate(tuple);
    if (*co) return cmd_construct(tuple, table);
    if (*in) return cmd_inv(spec, threads);
    if (*is) return cmd_iso(spec, spec_b, threads);
    if (*se) return cmd_selftest(p, max_exp, sp->count() > 0, threads);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
