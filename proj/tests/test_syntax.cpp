#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folp/ast.hpp"
#include "folp/parse.hpp"

using namespace folp;

static Formula F(const std::string& s) { return parse_formula(s); }
static Term T(const std::string& s) { return parse_term(s); }

TEST_CASE("parse/print round-trips on canonical strings") {
  const char* cases[] = {
      "P1(x)",
      "P1(x, y)",
      "P2()",
      "~P1(x)",
      "(P1(x) & P1(y))",
      "(P1(x) | P1(y))",
      "(P1(x) -> P1(y))",
      "(P1(x) <-> P1(y))",
      "forall x. P1(x)",
      "exists x. P1(x)",
      "forall x. exists y. (P1(x) -> P1(y))",
      "box{} P1(x)",
      "box{x} P1(x)",
      "box{x, y} P1(x, y)",
      "[p1]{} P1(x)",
      "[p1]{x} P1(x)",
      "[(p1 . p2)]{x, y} P1(x, y)",
      "[(p1 + p2)]{x} P1(x)",
      "[!p1]{x} [p1]{x} P1(x)",
      "[gen{x}(p1)]{} forall x. P1(x)",
      "[c1]{} (box{x} P1(x) -> P1(x))",
      "~~box{x} ~P1(x)",
      "box{x} forall x. P1(x)",
  };
  for (const char* s : cases) {
    CAPTURE(s);
    CHECK(print(F(s)) == s);
  }
}

TEST_CASE("term parse/print round-trips") {
  const char* cases[] = {
      "p1",
      "c12",
      "(p1 . p2)",
      "(p1 + p2)",
      "!p1",
      "!!p1",
      "!(p1 . c1)",
      "gen{x}(p1)",
      "gen{x}(gen{y}((p1 + !c2)))",
      "((p1 . p2) . p3)",
  };
  for (const char* s : cases) {
    CAPTURE(s);
    CHECK(print(T(s)) == s);
  }
}

TEST_CASE("whitespace-insensitive parsing; printing canonicalizes") {
  CHECK(print(F("( P1( x ,y )&~ P2(y ) )")) == "(P1(x, y) & ~P2(y))");
  CHECK(print(F("[ ( p1 .p2 ) ] { y,x } P1(x)")) == "[(p1 . p2)]{x, y} P1(x)");
  CHECK(print(F("box { } P1(x)")) == "box{} P1(x)");
  CHECK(print(T("gen { x } ( ! p1 )")) == "gen{x}(!p1)");
  // Index sets print sorted regardless of source order.
  CHECK(print(F("box{z, y, x} P1(x, y, z)")) == "box{x, y, z} P1(x, y, z)");
}

TEST_CASE("formatting is idempotent") {
  const char* cases[] = {
      "(P1(x)->(P1(y)|~P1(z)))",
      "forall x.box{x}[p1]{x}P1(x)",
      "exists y.( [gen{x}(p1)]{y} forall x. P1(x,y) & box{} P2() )",
  };
  for (const char* s : cases) {
    std::string once = print(F(s));
    CHECK(print(F(once)) == once);
  }
}

TEST_CASE("lexical classes") {
  // p<digits> / c<digits> are justification symbols, everything else
  // lowercase is an individual variable (including bare p and c).
  CHECK(T("p1").kind() == Term::Kind::JVar);
  CHECK(T("c7").kind() == Term::Kind::JConst);
  CHECK(print(F("P1(p, c, px, c1x)")) == "P1(p, c, px, c1x)");
  CHECK_THROWS_AS(F("Q1(x)"), Error);         // uppercase non-P<digits>
  CHECK_THROWS_AS(F("P1(p1)"), Error);        // JVar where IndVar expected
  CHECK_THROWS_AS(F("forall p1. P1(x)"), Error);
  CHECK_THROWS_AS(T("x"), Error);             // IndVar where term expected
  CHECK_THROWS_AS(F("P1(forall)"), Error);    // keyword is reserved
  try {
    F("Qx(y)");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == Error::Kind::Lexical);
  }
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(F("(P1(x))"), Error);           // parens require a connective
  CHECK_THROWS_AS(F("P1(x) & P1(y)"), Error);     // connective requires parens
  CHECK_THROWS_AS(F("P1(x,)"), Error);
  CHECK_THROWS_AS(F("box x P1(x)"), Error);
  CHECK_THROWS_AS(F("[p1] P1(x)"), Error);        // missing index braces
  CHECK_THROWS_AS(F("P1(x) trailing"), Error);
  CHECK_THROWS_AS(F("(P1(x) - P1(y))"), Error);
  CHECK_THROWS_AS(F("(P1(x) <- P1(y))"), Error);
  CHECK_THROWS_AS(T("p1 + p2"), Error);           // binary term needs parens
  CHECK_THROWS_AS(T("gen{x} p1"), Error);         // gen body needs parens
  CHECK_THROWS_AS(T("(p1 . p2 . p3)"), Error);
  try {
    F("forall x");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == Error::Kind::Syntax);
  }
}

TEST_CASE("arity is fixed on first use within one table") {
  PredTable t;
  parse_formula("P1(x, y)", &t);
  CHECK_THROWS_AS(parse_formula("P1(x)", &t), Error);
  CHECK_THROWS_AS(parse_formula("(P2(x) & P2(x, y))", &t), Error);
  // Independent parses use independent tables by default.
  CHECK(print(F("P1(x)")) == "P1(x)");
  try {
    parse_formula("(P3() -> P3(x))");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == Error::Kind::Arity);
  }
}

TEST_CASE("free variables: modal index is exact") {
  CHECK(free_vars(F("P1(x, y)")) == VarSet{"x", "y"});
  CHECK(free_vars(F("forall x. P1(x, y)")) == VarSet{"y"});
  CHECK(free_vars(F("box{x} P1(x, y)")) == VarSet{"x"});
  CHECK(free_vars(F("box{x, z} P1(x, y)")) == VarSet{"x", "z"});
  CHECK(free_vars(F("[p1]{} P1(x, y)")) == VarSet{});
  CHECK(free_vars(F("(box{x} P1(x) & [p1]{y} P1(y))")) == VarSet{"x", "y"});
  CHECK(free_vars(F("exists x. [p1]{x} P1(x)")) == VarSet{});
  CHECK(free_vars(F("box{x} forall x. P1(x)")) == VarSet{"x"});
}

TEST_CASE("renaming free occurrences") {
  auto ren = [](const std::string& f, VarRenaming s) { return print(rename(F(f), s)); };
  CHECK(ren("P1(x, y)", {{"x", "z"}}) == "P1(z, y)");
  CHECK(ren("forall x. P1(x, y)", {{"y", "z"}}) == "forall x. P1(x, z)");
  CHECK(ren("forall x. P1(x, y)", {{"x", "z"}}) == "forall x. P1(x, y)");  // x is bound
  CHECK(ren("box{x} P1(x, y)", {{"x", "z"}}) == "box{z} P1(z, y)");       // y stays bound
  CHECK(ren("box{x} P1(x, y)", {{"y", "z"}}) == "box{x} P1(x, y)");       // y is bound
  CHECK(ren("[p1]{x, y} P1(x, y)", {{"x", "y"}, {"y", "x"}}) == "[p1]{x, y} P1(y, x)");
  // A variable both free and bound: only the free occurrences move.
  CHECK(ren("(P1(x) & forall x. P1(x))", {{"x", "z"}}) == "(P1(z) & forall x. P1(x))");
  // Renaming into the index set is fine; collapsing index variables is fine.
  CHECK(ren("box{x, y} P1(x, y)", {{"x", "y"}}) == "box{y} P1(y, y)");
}

TEST_CASE("renaming detects capture and release") {
  CaptureError err;
  CHECK(!try_rename(F("forall x. P1(x, y)"), {{"y", "x"}}, &err));
  CHECK(err.binder == "x");
  CHECK(err.renamed == "y");
  // Renaming an index variable onto a modality-bound variable releases it.
  CHECK(!try_rename(F("box{y} P1(x, y)"), {{"y", "x"}}));
  CHECK(!try_rename(F("[p1]{x} P1(x, y)"), {{"x", "y"}}));
  CHECK_THROWS_AS(rename(F("forall x. P1(x, y)"), {{"y", "x"}}), Error);
  // Moving a free variable onto a binder is capture even when the bound
  // variable itself has no occurrence in the body.
  CHECK(!try_rename(F("forall x. P1(y)"), {{"y", "x"}}));
  // Renaming a variable that lost all free occurrences under the binder
  // chain is vacuous there and harmless.
  CHECK(print(rename(F("(P1(y) & forall y. P1(y))"), {{"y", "z"}})) ==
        "(P1(z) & forall y. P1(y))");
}

TEST_CASE("whole-derivation renaming moves binders too") {
  auto ren = [](const std::string& f, VarRenaming s) {
    auto r = try_rename_all(F(f), s);
    REQUIRE(r);
    return print(*r);
  };
  CHECK(ren("forall x. P1(x)", {{"x", "y"}}) == "forall y. P1(y)");
  CHECK(ren("box{x} P1(x, y)", {{"x", "u"}, {"y", "v"}}) == "box{u} P1(u, v)");
  CHECK(ren("[gen{x}(p1)]{y} forall x. P1(x, y)", {{"x", "u"}}) ==
        "[gen{u}(p1)]{y} forall u. P1(u, y)");
  // Collisions are refused.
  CHECK(!try_rename_all(F("forall x. P1(x, y)"), {{"x", "y"}}));
  CHECK(!try_rename_all(F("forall x. P1(x, y)"), {{"y", "x"}}));
  CHECK(!try_rename_all(F("box{x} P1(x, y)"), {{"y", "x"}}));
  // Collapsing two index variables is meaning-preserving and allowed.
  CHECK(ren("box{x, y} P1(x, y)", {{"x", "y"}}) == "box{y} P1(y, y)");
}

TEST_CASE("substitution of justification variables") {
  Term by = T("(c1 . p2)");
  CHECK(print(subst_jvar(T("!p1"), "p1", by)) == "!(c1 . p2)");
  CHECK(print(subst_jvar(T("(p1 + gen{x}(p1))"), "p1", by)) ==
        "((c1 . p2) + gen{x}((c1 . p2)))");
  CHECK(print(subst_jvar(F("[p1]{x} [p3]{x} P1(x)"), "p1", by)) ==
        "[(c1 . p2)]{x} [p3]{x} P1(x)");
  CHECK(print(subst_jvar(F("box{x} P1(x)"), "p1", by)) == "box{x} P1(x)");
}

TEST_CASE("desugaring to the And/Not/Forall core") {
  CHECK(print(desugar(F("(P1(x) | P1(y))"))) == "~(~P1(x) & ~P1(y))");
  CHECK(print(desugar(F("(P1(x) -> P1(y))"))) == "~(P1(x) & ~P1(y))");
  CHECK(print(desugar(F("(P1(x) <-> P1(y))"))) ==
        "(~(P1(x) & ~P1(y)) & ~(P1(y) & ~P1(x)))");
  CHECK(print(desugar(F("exists x. P1(x)"))) == "~forall x. ~P1(x)");
  CHECK(desugar(F("box{x} P1(x)")) == F("box{x} P1(x)"));
  CHECK(print(desugar(F("[p1]{x} (P1(x) -> P1(x))"))) == "[p1]{x} ~(P1(x) & ~P1(x))");
}

TEST_CASE("value semantics and ordering") {
  CHECK(F("P1(x)") == F("P1(x)"));
  CHECK(F("P1(x)") != F("P1(y)"));
  CHECK(F("forall x. P1(x)") != F("forall y. P1(y)"));  // no alpha-equivalence
  CHECK(T("(p1 . p2)") == T("( p1 . p2 )"));
  VarSet a{"x", "y"};
  VarSet b{"y"};
  CHECK(a.united(b) == a);
  CHECK(a.minus(b) == VarSet{"x"});
  CHECK(a.intersect(b) == b);
  CHECK(b.subset_of(a));
  CHECK(!a.subset_of(b));
  CHECK(VarSet{}.subset_of(b));
}
