#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folp/axioms.hpp"
#include "folp/parse.hpp"

using namespace folp;

static Formula F(const std::string& s) { return parse_formula(s); }

static std::vector<std::string> names_of(const Formula& f) {
  std::vector<std::string> out;
  for (const auto& m : match_axiom(f)) out.push_back(schema_name(m.schema));
  return out;
}

static bool fits(const std::string& s, SchemaId id) { return matches_schema(F(s), id); }

TEST_CASE("schema names round-trip") {
  for (SchemaId id : all_schemas()) {
    auto back = schema_from_name(schema_name(id));
    REQUIRE(back);
    CHECK(*back == id);
  }
  CHECK(!schema_from_name("A9"));
  CHECK(!schema_from_name(""));
  CHECK(all_schemas().size() == (size_t)kSchemaCount);
}

TEST_CASE("propositional tautologies by skeleton truth table") {
  CHECK(fits("(P1(x) -> P1(x))", SchemaId::A0_TAUT));
  CHECK(fits("((P1(x) & P1(y)) -> P1(x))", SchemaId::A0_TAUT));
  CHECK(fits("~(P1(x) & ~P1(x))", SchemaId::A0_TAUT));
  CHECK(fits("(P1(x) | ~P1(x))", SchemaId::A0_TAUT));
  CHECK(fits("((P1(x) -> P1(y)) -> ((P1(y) -> P1(z)) -> (P1(x) -> P1(z))))",
             SchemaId::A0_TAUT));
  CHECK(fits("((P1(x) -> P1(y)) -> ((P1(y) -> P1(x)) -> (P1(x) <-> P1(y))))",
             SchemaId::A0_TAUT));
  // Modal parts are opaque atoms: equal parts collapse, different parts do not.
  CHECK(fits("(box{x} P1(x) -> box{x} P1(x))", SchemaId::A0_TAUT));
  CHECK(fits("([p1]{x} P1(x) -> ([p2]{} P2() -> [p1]{x} P1(x)))", SchemaId::A0_TAUT));
  CHECK(!fits("(box{x} P1(x) -> box{} P1(x))", SchemaId::A0_TAUT));
  CHECK(!fits("(P1(x) -> P1(y))", SchemaId::A0_TAUT));
  CHECK(!fits("(P1(x) -> forall x. P1(x))", SchemaId::A0_TAUT));
  CHECK(!fits("P1(x)", SchemaId::A0_TAUT));  // not a boolean compound
  CHECK(!fits("(P1(x) & P1(x))", SchemaId::A0_TAUT));
}

TEST_CASE("universal instantiation") {
  CHECK(fits("(forall x. P1(x) -> P1(y))", SchemaId::A0_FORALL_INST));
  CHECK(fits("(forall x. P1(x) -> P1(x))", SchemaId::A0_FORALL_INST));
  CHECK(fits("(forall x. P1(x, y) -> P1(z, y))", SchemaId::A0_FORALL_INST));
  CHECK(fits("(forall x. P1(y) -> P1(y))", SchemaId::A0_FORALL_INST));  // vacuous x
  CHECK(fits("(forall x. box{x} P1(x) -> box{y} P1(y))", SchemaId::A0_FORALL_INST));
  // Substituting y for x must not capture it.
  CHECK(!fits("(forall x. exists y. P1(x, y) -> exists y. P1(y, y))",
              SchemaId::A0_FORALL_INST));
  CHECK(!fits("(forall x. P1(x) -> P2(y))", SchemaId::A0_FORALL_INST));
  CHECK(!fits("(exists x. P1(x) -> P1(y))", SchemaId::A0_FORALL_INST));
}

TEST_CASE("existential introduction") {
  CHECK(fits("(P1(y) -> exists x. P1(x))", SchemaId::A0_EXISTS_INST));
  CHECK(fits("(P1(x) -> exists x. P1(x))", SchemaId::A0_EXISTS_INST));
  CHECK(fits("(P1(y, y) -> exists x. P1(x, y))", SchemaId::A0_EXISTS_INST));
  CHECK(!fits("(exists y. P1(y, y) -> exists x. exists y. P1(x, y))",
              SchemaId::A0_EXISTS_INST));
  CHECK(!fits("(P2(y) -> exists x. P1(x))", SchemaId::A0_EXISTS_INST));
}

TEST_CASE("quantifier distribution") {
  CHECK(fits("(forall x. (P1(y) -> P1(x)) -> (P1(y) -> forall x. P1(x)))",
             SchemaId::A0_FORALL_DISTR));
  CHECK(!fits("(forall x. (P1(x) -> P1(x)) -> (P1(x) -> forall x. P1(x)))",
              SchemaId::A0_FORALL_DISTR));  // x free in the antecedent part
  CHECK(fits("(forall x. (P1(x) -> P1(y)) -> (exists x. P1(x) -> P1(y)))",
             SchemaId::A0_EXISTS_DISTR));
  CHECK(!fits("(forall x. (P1(x) -> P1(x)) -> (exists x. P1(x) -> P1(x)))",
              SchemaId::A0_EXISTS_DISTR));  // x free in the consequent part
}

TEST_CASE("index-set weakening (drop a vacuous variable)") {
  CHECK(fits("([p1]{x, y} P1(x) -> [p1]{x} P1(x))", SchemaId::A1));
  CHECK(fits("([p1]{y} P1(x) -> [p1]{} P1(x))", SchemaId::A1));
  // Absorbed form: the dropped variable may already sit in the smaller set.
  CHECK(fits("([p1]{x, y} P1(x) -> [p1]{x, y} P1(x))", SchemaId::A1));
  CHECK(!fits("([p1]{x, y} P1(x, y) -> [p1]{x} P1(x, y))", SchemaId::A1));  // y free
  CHECK(!fits("([p1]{x, y} P1(x) -> [p2]{x} P1(x))", SchemaId::A1));
  CHECK(!fits("([p1]{x, y, z} P1(x) -> [p1]{x} P1(x))", SchemaId::A1));  // two at once
  CHECK(fits("(box{x, y} P1(x) -> box{x} P1(x))", SchemaId::A1P));
  CHECK(!fits("(box{x, y} P1(x, y) -> box{x} P1(x, y))", SchemaId::A1P));
}

TEST_CASE("index-set strengthening (add a variable)") {
  CHECK(fits("([p1]{x} P1(x) -> [p1]{x, y} P1(x))", SchemaId::A2));
  CHECK(fits("([p1]{x} P1(x, y) -> [p1]{x, y} P1(x, y))", SchemaId::A2));
  CHECK(fits("([p1]{x} P1(x) -> [p1]{x} P1(x))", SchemaId::A2));  // absorbed form
  CHECK(!fits("([p1]{} P1(x) -> [p1]{} P1(x))", SchemaId::A2));   // no y exists
  CHECK(!fits("([p1]{} P1(x) -> [p1]{x, y} P1(x))", SchemaId::A2));
  CHECK(fits("(box{} P1(x) -> box{y} P1(x))", SchemaId::A2P));
  CHECK(!fits("(box{y} P1(x) -> box{} P1(x))", SchemaId::A2P));
}

TEST_CASE("reflection") {
  CHECK(fits("([p1]{x} P1(x) -> P1(x))", SchemaId::A3));
  CHECK(fits("([p1]{} P1(x) -> P1(x))", SchemaId::A3));
  CHECK(!fits("([p1]{x} P1(x) -> P1(y))", SchemaId::A3));
  CHECK(fits("(box{x} P1(x, y) -> P1(x, y))", SchemaId::A3P));
  CHECK(!fits("(box{x} P1(x) -> box{x} P1(x))", SchemaId::A3P));
}

TEST_CASE("application") {
  CHECK(fits("([p1]{x} (P1(x) -> P2(x)) -> ([p2]{x} P1(x) -> [(p1 . p2)]{x} P2(x)))",
             SchemaId::A4));
  CHECK(!fits("([p1]{x} (P1(x) -> P2(x)) -> ([p2]{x} P1(x) -> [(p2 . p1)]{x} P2(x)))",
              SchemaId::A4));  // operands swapped
  CHECK(!fits("([p1]{x} (P1(x) -> P2(x)) -> ([p2]{} P1(x) -> [(p1 . p2)]{x} P2(x)))",
              SchemaId::A4));  // index mismatch
  CHECK(!fits("([p1]{x} (P1(x) -> P2(x)) -> ([p2]{x} P2(x) -> [(p1 . p2)]{x} P2(x)))",
              SchemaId::A4));  // argument mismatch
  CHECK(fits("(box{x} (P1(x) -> P2(x)) -> (box{x} P1(x) -> box{x} P2(x)))",
             SchemaId::A4P));
  CHECK(!fits("(box{x} (P1(x) -> P2(x)) -> (box{x} P1(x) -> box{} P2(x)))",
              SchemaId::A4P));
}

TEST_CASE("sum") {
  Formula left = F("([p1]{x} P1(x) -> [(p1 + p2)]{x} P1(x))");
  Formula right = F("([p2]{x} P1(x) -> [(p1 + p2)]{x} P1(x))");
  CHECK(matches_schema(left, SchemaId::A5L));
  CHECK(!matches_schema(left, SchemaId::A5R));
  CHECK(matches_schema(right, SchemaId::A5R));
  CHECK(!matches_schema(right, SchemaId::A5L));
  // A degenerate sum fits both schemas at once.
  auto ns = names_of(F("([p1]{x} P1(x) -> [(p1 + p1)]{x} P1(x))"));
  CHECK(ns == std::vector<std::string>{"A5L", "A5R"});
  CHECK(!fits("([p1]{x} P1(x) -> [(p1 + p2)]{y} P1(x))", SchemaId::A5L));
  CHECK(!fits("([p1]{x} P1(x) -> [(p1 + p2)]{x} P2(x))", SchemaId::A5L));
}

TEST_CASE("positive introspection") {
  CHECK(fits("([p1]{x} P1(x) -> [!p1]{x} [p1]{x} P1(x))", SchemaId::A6));
  CHECK(fits("([c1]{} P1(x) -> [!c1]{} [c1]{} P1(x))", SchemaId::A6));
  CHECK(!fits("([p1]{x} P1(x) -> [!p1]{x} [p1]{x, y} P1(x))", SchemaId::A6));
  CHECK(!fits("([p1]{x} P1(x) -> [!p1]{} [p1]{x} P1(x))", SchemaId::A6));
  CHECK(!fits("([p1]{x} P1(x) -> [!p2]{x} [p1]{x} P1(x))", SchemaId::A6));
  CHECK(fits("(box{x} P1(x) -> box{x} box{x} P1(x))", SchemaId::A6P));
  CHECK(!fits("(box{x} P1(x) -> box{x} box{x, y} P1(x))", SchemaId::A6P));
}

TEST_CASE("generalization axioms") {
  CHECK(fits("([p1]{} P1(x) -> [gen{x}(p1)]{} forall x. P1(x))", SchemaId::A7));
  CHECK(fits("([p1]{y} P1(x, y) -> [gen{x}(p1)]{y} forall x. P1(x, y))", SchemaId::A7));
  CHECK(!fits("([p1]{x} P1(x) -> [gen{x}(p1)]{x} forall x. P1(x))", SchemaId::A7));
  CHECK(!fits("([p1]{} P1(x) -> [gen{y}(p1)]{} forall x. P1(x))", SchemaId::A7));
  CHECK(!fits("([p1]{} P1(x) -> [gen{x}(p2)]{} forall x. P1(x))", SchemaId::A7));
  CHECK(fits("(box{y} P1(x, y) -> box{y} forall x. P1(x, y))", SchemaId::A7P));
  CHECK(fits("(box{} P1(x) -> box{} forall x. P1(x))", SchemaId::A7P));
  CHECK(!fits("(box{x} P1(x) -> box{x} forall x. P1(x))", SchemaId::A7P));
  // Vacuous quantification is allowed: x need not occur in the body.
  CHECK(fits("(box{} P1(y) -> box{} forall x. P1(y))", SchemaId::A7P));
}

TEST_CASE("explicit-to-implicit connection") {
  CHECK(fits("([p1]{x} P1(x) -> box{x} P1(x))", SchemaId::A8));
  CHECK(fits("([(p1 . p2)]{} P2() -> box{} P2())", SchemaId::A8));
  CHECK(!fits("([p1]{x} P1(x) -> box{} P1(x))", SchemaId::A8));
  CHECK(!fits("(box{x} P1(x) -> [p1]{x} P1(x))", SchemaId::A8));
}

TEST_CASE("overlapping instances are all reported, in schema order") {
  // Identity on a modal part: tautology, absorbed weakening and strengthening.
  auto ns = names_of(F("([p1]{x, y} P1(x) -> [p1]{x, y} P1(x))"));
  CHECK(ns == std::vector<std::string>{"A0_TAUT", "A1", "A2"});
  // Here the absorbed variable x is free in the body, so A1P does not fit.
  auto ns2 = names_of(F("(box{x} P1(x) -> box{x} P1(x))"));
  CHECK(ns2 == std::vector<std::string>{"A0_TAUT", "A2P"});
  auto ns3 = names_of(F("(box{x, y} P1(x) -> box{x, y} P1(x))"));
  CHECK(ns3 == std::vector<std::string>{"A0_TAUT", "A1P", "A2P"});
  CHECK(names_of(F("P1(x)")).empty());
  CHECK(is_axiom(F("([p1]{x} P1(x) -> P1(x))")));
  CHECK(!is_axiom(F("(P1(x) -> box{x} P1(x))")));
}

TEST_CASE("witness bindings are reported") {
  auto ms = match_axiom(F("([p1]{x, y} P1(x) -> [p1]{x} P1(x))"));
  bool saw_a1 = false;
  for (const auto& m : ms)
    if (m.schema == SchemaId::A1) {
      saw_a1 = true;
      CHECK(m.bindings.at("y") == "y");
      CHECK(m.bindings.at("t") == "p1");
      CHECK(m.bindings.at("F") == "P1(x)");
    }
  CHECK(saw_a1);
}
