// Tests for the randomized soundness sweep: structural validity and
// determinism of the generated models, schema conformance of the generated
// axiom instances, and clean deterministic sweep reports.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "folp/evidence.hpp"
#include "folp/parse.hpp"
#include "folp/soundness.hpp"

using namespace folp;

namespace {

std::string dump_model(const FiniteModel& m) {
  std::ostringstream out;
  for (const auto& w : m.worlds) out << "w " << w << "\n";
  for (const auto& [w, succ] : m.access) {
    out << "r " << w << " ->";
    for (const auto& u : succ) out << " " << u;
    out << "\n";
  }
  for (const auto& [w, dom] : m.domain) {
    out << "d " << w << " ->";
    for (const auto& o : dom) out << " " << o;
    out << "\n";
  }
  for (const auto& [p, by_world] : m.interp)
    for (const auto& [w, tuples] : by_world) {
      out << "i " << p << " " << w << " ->";
      for (const auto& tup : tuples) {
        out << " (";
        for (const auto& o : tup) out << o << ",";
        out << ")";
      }
      out << "\n";
    }
  for (const auto& [key, ws] : m.basic.table()) {
    out << "e " << EvidenceTriple{key.term, key.formula, key.val}.to_string() << " ->";
    for (const auto& w : ws) out << " " << w;
    out << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("random models are small, valid and pass the basic audit") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    std::mt19937_64 rng(seed);
    FiniteModel m = random_model(rng);
    CAPTURE(seed);
    CHECK(m.worlds.size() >= 1);
    CHECK(m.worlds.size() <= 4);
    CHECK(m.objects().size() >= 1);
    CHECK(m.objects().size() <= 4);
    CHECK(m.cs.entries().empty());
    CHECK(validate_model(m).empty());
    auto audit = audit_basic(m);
    CAPTURE(audit.empty() ? "" : audit.front().condition + ": " + audit.front().witness);
    CHECK(audit.empty());
  }
}

TEST_CASE("model generation is deterministic under a seed") {
  std::mt19937_64 a(99), b(99), c(100);
  FiniteModel ma = random_model(a);
  FiniteModel mb = random_model(b);
  FiniteModel mc = random_model(c);
  CHECK(dump_model(ma) == dump_model(mb));
  CHECK(dump_model(ma) != dump_model(mc));
}

TEST_CASE("some generated tables are non-empty and feed the oracle") {
  bool saw_entries = false;
  bool saw_evidence_hit = false;
  for (uint64_t seed = 1; seed <= 40 && !(saw_entries && saw_evidence_hit); ++seed) {
    std::mt19937_64 rng(seed);
    FiniteModel m = random_model(rng);
    if (m.basic.empty()) continue;
    saw_entries = true;
    EvidenceOracle ev(m);
    for (const auto& [key, ws] : m.basic.table())
      if (!ws.empty() &&
          !ev.query(key.term, key.formula, key.val).empty())
        saw_evidence_hit = true;
  }
  CHECK(saw_entries);
  CHECK(saw_evidence_hit);
}

TEST_CASE("random instances match their target schema") {
  for (SchemaId id : all_schemas()) {
    std::mt19937_64 rng(1234 + static_cast<uint64_t>(id));
    for (int k = 0; k < 25; ++k) {
      Formula inst = random_instance(rng, id);
      CAPTURE(schema_name(id));
      CAPTURE(print(inst));
      CHECK(matches_schema(inst, id));
    }
  }
}

TEST_CASE("uniformly drawn instances are axioms") {
  std::mt19937_64 rng(777);
  for (int k = 0; k < 100; ++k) {
    Formula inst = random_instance(rng);
    CAPTURE(print(inst));
    CHECK(is_axiom(inst));
  }
}

TEST_CASE("instance generation is deterministic under a seed") {
  std::mt19937_64 a(5), b(5);
  for (int k = 0; k < 50; ++k) CHECK(print(random_instance(a)) == print(random_instance(b)));
}

TEST_CASE("random models are not degenerate validators") {
  // Non-axioms must be refutable somewhere, otherwise a clean sweep would be
  // vacuous.  P1(x) and box{} P1(x) are not valid in every model.
  bool refuted_atom = false;
  bool refuted_box = false;
  Formula atom = parse_formula("P1(x)");
  Formula boxed = parse_formula("box{} P1(x)");
  for (uint64_t seed = 1; seed <= 25 && !(refuted_atom && refuted_box); ++seed) {
    std::mt19937_64 rng(seed);
    FiniteModel m = random_model(rng);
    EvidenceOracle ev(m);
    if (!valid_in_model(m, ev, atom).valid) refuted_atom = true;
    if (!valid_in_model(m, ev, boxed).valid) refuted_box = true;
  }
  CHECK(refuted_atom);
  CHECK(refuted_box);
}

TEST_CASE("a small sweep is clean and counts correctly") {
  SweepOptions opt;
  opt.models = 8;
  opt.instances = 10;
  opt.seed = 7;
  SweepReport rep = soundness_sweep(opt);
  CAPTURE(rep.first_failure);
  CHECK(rep.ok());
  CHECK(rep.models_built == 8);
  CHECK(rep.instances_checked == 80);
  CHECK(rep.instances_failed == 0);
  CHECK(rep.rule_triples == 8);
  CHECK(rep.rule_failures == 0);
  CHECK(rep.first_failure.empty());
}

TEST_CASE("sweep reports are deterministic and seed-sensitive") {
  SweepOptions opt;
  opt.models = 5;
  opt.instances = 6;
  opt.seed = 42;
  SweepReport r1 = soundness_sweep(opt);
  SweepReport r2 = soundness_sweep(opt);
  CHECK(r1.ok());
  CHECK(r1.models_built == r2.models_built);
  CHECK(r1.instances_checked == r2.instances_checked);
  CHECK(r1.instances_failed == r2.instances_failed);
  CHECK(r1.rule_triples == r2.rule_triples);
  CHECK(r1.rule_failures == r2.rule_failures);
  CHECK(r1.first_failure == r2.first_failure);

  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SweepOptions o2 = opt;
    o2.seed = seed;
    SweepReport r = soundness_sweep(o2);
    CAPTURE(seed);
    CAPTURE(r.first_failure);
    CHECK(r.ok());
  }
}
