#include <string>
#include <vector>

#include "aic/errors.hpp"
#include "aic/kernel.hpp"
#include "aic/proofscript.hpp"
#include "aic/rules.hpp"
#include "doctest.h"

using namespace aic;

namespace {

void expect_error(const std::string& text, const std::string& cls,
                  const rule_lookup& extra = {}) {
  try {
    parse_proof_document(text, extra);
    FAIL_CHECK("expected a ", cls, " for:\n", text);
  } catch (const error& e) {
    CHECK(e.cls() == cls);
  }
}

bool checks(const proof_script& ps) {
  auto rs = rule_set::builtin(ps.ruleset_spec, ps.funcs);
  return check(*ps.tree, ps.statement, rs).ok;
}

}  // namespace

TEST_CASE("a complete script parses into a checkable derivation") {
  const std::string text = R"(# replace equals inside x <= x
proof le-of-eq
ruleset AIC1
note a one-line demonstration of replacement
assume x = y
show x <= y

  step indiscern ctx hole:=h, s:=x, t:=h, u:=x, w:=y :: x <= y
    step reflex :: x <= x
    leaf 0 :: x = y
)";
  auto doc = parse_proof_document(text);
  REQUIRE(doc.size() == 1);
  const proof_script& ps = doc[0];
  CHECK(ps.name == "le-of-eq");
  CHECK(ps.ruleset_spec == "AIC1");
  CHECK(ps.funcs.empty());
  CHECK(ps.uses.empty());
  REQUIRE(ps.notes.size() == 1);
  CHECK(ps.notes[0] == "a one-line demonstration of replacement");
  REQUIRE(ps.statement.premises.size() == 1);
  CHECK(print_identity(ps.statement.premises[0]) == "x = y");
  CHECK(print_identity(ps.statement.conclusion) == "x <= y");
  REQUIRE(ps.tree);
  CHECK(ps.tree->rule == "indiscern");
  REQUIRE(ps.tree->ctx.has_value());
  CHECK(ps.tree->ctx->hole == "h");
  CHECK(checks(ps));
}

TEST_CASE("declared function symbols reach the identity parser") {
  const std::string text = R"(proof iter-reflexive
funcs F
ruleset AIC1
show F* bot <= F* bot

  step reflex :: F* bot <= F* bot
)";
  auto doc = parse_proof_document(text);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].funcs == std::vector<std::string>{"F"});
  CHECK(checks(doc[0]));
}

TEST_CASE("unicode identities are accepted in scripts") {
  const std::string text = R"(proof unicode-demo
ruleset AIC1
assume a ⪯ b
show ◇a ⪯ ◇b

  step dia-mono :: ◇a ≤ ◇b
    leaf 0 :: a ⋎ b = b
)";
  auto doc = parse_proof_document(text);
  CHECK(checks(doc[0]));
  CHECK(print_identity(doc[0].statement.conclusion) == "dia a <= dia b");
}

TEST_CASE("cuts expands to right-nested transitivity") {
  const std::string text = R"(proof chain
ruleset AIC1
assume a <= b
assume b <= c
assume c <= d
show a <= d

  step cuts :: a <= d
    leaf 0 :: a <= b
    leaf 1 :: b <= c
    leaf 2 :: c <= d
)";
  auto doc = parse_proof_document(text);
  const proof_script& ps = doc[0];
  REQUIRE(ps.tree->rule == "trans");
  REQUIRE(ps.tree->children.size() == 2);
  CHECK(ps.tree->children[0]->leaf);
  const derivation& rest = *ps.tree->children[1];
  CHECK(rest.rule == "trans");
  CHECK(print_identity(rest.conclusion) == "b <= d");
  CHECK(rest.children[0]->leaf);
  CHECK(rest.children[1]->leaf);
  CHECK(checks(ps));
}

TEST_CASE("rw cites an equation inside an inequality context") {
  SUBCASE("forward, instance synthesized from the bracket bindings") {
    const std::string text = R"(proof comm-under-le
ruleset AIC1
assume x <= a \/ b
show x <= b \/ a

  step rw[join-comm with a:=a, b:=b] ctx hole:=h, s:=x, t:=h :: x <= b \/ a
    leaf 0 :: x <= a \/ b
)";
    auto doc = parse_proof_document(text);
    const derivation& d = *doc[0].tree;
    CHECK(d.rule == "indiscern");
    REQUIRE(d.children.size() == 2);
    CHECK(d.children[1]->rule == "join-comm");
    CHECK(print_identity(d.children[1]->conclusion) == "a \\/ b = b \\/ a");
    REQUIRE(d.ctx.has_value());
    CHECK(print_term(d.ctx->u) == "a \\/ b");
    CHECK(print_term(d.ctx->w) == "b \\/ a");
    CHECK(checks(doc[0]));
  }

  SUBCASE("backwards via rw~, wrapping the instance in symm") {
    const std::string text = R"(proof comm-under-le-rev
ruleset AIC1
assume x <= b \/ a
show x <= a \/ b

  step rw~[join-comm with a:=a, b:=b] ctx hole:=h, s:=x, t:=h :: x <= a \/ b
    leaf 0 :: x <= b \/ a
)";
    auto doc = parse_proof_document(text);
    const derivation& d = *doc[0].tree;
    REQUIRE(d.children.size() == 2);
    CHECK(d.children[1]->rule == "symm");
    CHECK(d.children[1]->children[0]->rule == "join-comm");
    CHECK(checks(doc[0]));
  }

  SUBCASE("explicit u and w skip the lookup entirely") {
    const std::string text = R"(proof comm-explicit
ruleset AIC1
assume x <= a \/ b
show x <= b \/ a

  step rw[join-comm] ctx hole:=h, s:=x, t:=h, u:=a \/ b, w:=b \/ a :: x <= b \/ a
    leaf 0 :: x <= a \/ b
)";
    auto doc = parse_proof_document(text);
    CHECK(checks(doc[0]));
  }
}

TEST_CASE("later proofs may rewrite with earlier ones in the same document") {
  const std::string text = R"(proof comm-inside
ruleset AIC1
show x \/ (y \/ z) = x \/ (z \/ y)

  step cong-join :: x \/ (y \/ z) = x \/ (z \/ y)
    step eq-reflex :: x = x
    step join-comm :: y \/ z = z \/ y

proof use-comm-inside
ruleset AIC1
uses comm-inside
assume p <= m \/ (n \/ o)
show p <= m \/ (o \/ n)

  step rw[comm-inside with x:=m, y:=n, z:=o] ctx hole:=h, s:=p, t:=h :: p <= m \/ (o \/ n)
    leaf 0 :: p <= m \/ (n \/ o)
)";
  auto doc = parse_proof_document(text);
  REQUIRE(doc.size() == 2);
  CHECK(doc[1].uses == std::vector<std::string>{"comm-inside"});
  CHECK(checks(doc[0]));

  auto rs = rule_set::builtin("AIC1", {});
  rs = register_derived(rs, "comm-inside", doc[0].statement, doc[0].tree);
  CHECK(check(*doc[1].tree, doc[1].statement, rs).ok);
}

TEST_CASE("external lookups resolve rw citations the document does not define") {
  rule lemma;
  lemma.name = "dia-collapse";
  lemma.kind = rule_kind::derived;
  lemma.conclusion = parse_identity("dia dia a = dia a", {});
  rule_lookup extra = [&](const std::string& n) -> const rule* {
    return n == "dia-collapse" ? &lemma : nullptr;
  };

  const std::string text = R"(proof use-external
ruleset AIC1
assume p <= dia dia q
show p <= dia q

  step rw[dia-collapse with a:=q] ctx hole:=h, s:=p, t:=h :: p <= dia q
    leaf 0 :: p <= dia dia q
)";
  auto doc = parse_proof_document(text, extra);
  auto rs = rule_set::builtin("AIC1", {});
  rs.add(lemma);
  CHECK(check(*doc[0].tree, doc[0].statement, rs).ok);

  // without the lookup the citation is unknown
  expect_error(text, "RuleNotFound");
}

TEST_CASE("scripts round-trip through their canonical emission") {
  const std::string text = R"(proof chain
funcs F
ruleset AIC1
note emitted form re-parses
assume F a <= b
assume b <= c
assume c <= d
show F a <= d

  step cuts :: F a <= d
    leaf 0 :: F a <= b
    leaf 1 :: b <= c
    leaf 2 :: c <= d

proof comm-under-le
ruleset AIC1
uses chain
assume x <= a \/ b
show x <= b \/ a

  step rw[join-comm with a:=a, b:=b] ctx hole:=h, s:=x, t:=h :: x <= b \/ a
    leaf 0 :: x <= a \/ b
)";
  auto doc = parse_proof_document(text);
  auto doc2 = parse_proof_document(emit_proof_document(doc));
  REQUIRE(doc2.size() == doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    CHECK(doc2[i].name == doc[i].name);
    CHECK(doc2[i].funcs == doc[i].funcs);
    CHECK(doc2[i].ruleset_spec == doc[i].ruleset_spec);
    CHECK(doc2[i].uses == doc[i].uses);
    CHECK(doc2[i].notes == doc[i].notes);
    REQUIRE(doc2[i].statement.premises.size() == doc[i].statement.premises.size());
    for (size_t j = 0; j < doc[i].statement.premises.size(); ++j)
      CHECK(identity_eq(doc2[i].statement.premises[j], doc[i].statement.premises[j]));
    CHECK(identity_eq(doc2[i].statement.conclusion, doc[i].statement.conclusion));
    CHECK(deriv_eq(*doc2[i].tree, *doc[i].tree));
  }
}

TEST_CASE("malformed scripts are rejected with the documented classes") {
  // every fragment below is a tiny but otherwise complete document
  SUBCASE("structure errors") {
    expect_error("", "ParseError");                                   // empty
    expect_error("ruleset AIC1\nshow x = x\n  step eq-reflex :: x = x\n",
                 "ParseError");                                       // no proof line
    expect_error("proof p q\nruleset AIC1\nshow x = x\n  step eq-reflex :: x = x\n",
                 "ParseError");                                       // name with space
    expect_error("proof p\nshow x = x\n  step eq-reflex :: x = x\n",
                 "ParseError");                                       // no ruleset
    expect_error("proof p\nruleset AIC1\n  step eq-reflex :: x = x\n",
                 "ParseError");                                       // no show
    expect_error("proof p\nruleset AIC1\nshow x = x\n", "ParseError");  // no tree
    expect_error("proof p\nruleset AIC1\npremise x = y\nshow x = x\n  step eq-reflex :: x = x\n",
                 "ParseError");                                       // unknown header
    expect_error("proof p\nruleset AIC1\nshow x = x\n\tstep eq-reflex :: x = x\n",
                 "ParseError");                                       // tab indent
    expect_error("proof p\nruleset AIC1\nshow x = x\n    step eq-reflex :: x = x\n",
                 "ParseError");                                       // root at four spaces
    expect_error("proof p\nruleset AIC1\nshow x = x\n  step eq-reflex :: x = x\n"
                 "  step eq-reflex :: x = x\n",
                 "ParseError");                                       // two roots
    expect_error("proof p\nruleset AIC1\nshow x = x\n  step eq-reflex x = x\n",
                 "ParseError");                                       // missing ' :: '
    expect_error("proof p\nruleset AIC1\nassume x = y\nshow x = y\n"
                 "  step symm :: x = y\n      leaf 0 :: x = y\n",
                 "ParseError");                                       // over-indented child
    expect_error("proof p\nruleset AIC1\nassume x = y\nshow x = y\n"
                 "  leaf 0 :: x = y\n    leaf 0 :: x = y\n",
                 "ParseError");                                       // child under a leaf
    expect_error("proof p\nruleset AIC1\nshow x = x\n  step eq-reflex :: x = x\n"
                 "proof p\nruleset AIC1\nshow x = x\n  step eq-reflex :: x = x\n",
                 "ParseError");                                       // duplicate name
  }

  SUBCASE("identity and term errors") {
    expect_error("proof p\nruleset AIC1\nshow x =\n  step eq-reflex :: x = x\n", "ParseError");
    expect_error("proof p\nruleset AIC1\nshow F a = F a\n  step eq-reflex :: F a = F a\n",
                 "ParseError");  // F undeclared
    expect_error("proof p\nruleset AIC1\nshow x \\/ y /\\ z = x\n  step eq-reflex :: x = x\n",
                 "ParseError");  // mixed operators without parentheses
  }

  SUBCASE("shorthand errors") {
    expect_error("proof p\nruleset AIC1\nassume a <= b\nshow a <= b\n"
                 "  step cuts :: a <= b\n    leaf 0 :: a <= b\n",
                 "ParseError");  // cuts with one subproof
    expect_error("proof p\nruleset AIC1\nassume x <= a \\/ b\nshow x <= b \\/ a\n"
                 "  step rw[join-comm with a:=a, b:=b] :: x <= b \\/ a\n"
                 "    leaf 0 :: x <= a \\/ b\n",
                 "ParseError");  // rw without ctx
    expect_error("proof p\nruleset AIC1\nassume x <= a \\/ b\nshow x <= b \\/ a\n"
                 "  step rw[join-comm with a:=a, b:=b] ctx hole:=h, s:=x, t:=h, u:=a \\/ b"
                 " :: x <= b \\/ a\n    leaf 0 :: x <= a \\/ b\n",
                 "ParseError");  // u without w
    expect_error("proof p\nruleset AIC1\nassume x <= a \\/ b\nshow x <= b \\/ a\n"
                 "  step rw[join-comm with a:=a] ctx hole:=h, s:=x, t:=h :: x <= b \\/ a\n"
                 "    leaf 0 :: x <= a \\/ b\n",
                 "UnboundPatternVar");  // b of join-comm undetermined
    expect_error("proof p\nruleset AIC1\nassume x <= a \\/ b\nshow x <= b \\/ a\n"
                 "  step rw[no-such-lemma with a:=a] ctx hole:=h, s:=x, t:=h :: x <= b \\/ a\n"
                 "    leaf 0 :: x <= a \\/ b\n",
                 "RuleNotFound");
    expect_error("proof p\nruleset AIC1\nassume a <= a\nshow a <= a\n"
                 "  step rw[reflex with a:=a] ctx hole:=h, s:=a, t:=h :: a <= a\n"
                 "    leaf 0 :: a <= a\n",
                 "ParseError");  // rw citing an inequality
  }

  SUBCASE("clause errors") {
    expect_error("proof p\nruleset AIC1\nshow x = x\n  step eq-reflex with a :: x = x\n",
                 "ParseError");  // binding without :=
    expect_error("proof p\nruleset AIC1\nshow x = x\n"
                 "  step eq-reflex with a:=x, a:=y :: x = x\n",
                 "ParseError");  // duplicate binding
    expect_error("proof p\nruleset AIC1\nassume x = y\nshow x <= y\n"
                 "  step indiscern ctx hole:=x \\/ y, s:=x, t:=h, u:=x, w:=y :: x <= y\n"
                 "    step reflex :: x <= x\n    leaf 0 :: x = y\n",
                 "ParseError");  // hole must be a variable
    expect_error("proof p\nruleset AIC1\nassume x = y\nshow x <= y\n"
                 "  step indiscern ctx opening:=h, s:=x, t:=h, u:=x, w:=y :: x <= y\n"
                 "    step reflex :: x <= x\n    leaf 0 :: x = y\n",
                 "ParseError");  // unknown ctx field
    expect_error("proof p\nruleset AIC1\nshow x = x\n  step eq-reflex extra :: x = x\n",
                 "ParseError");  // junk before ::
  }

  SUBCASE("an invalid ruleset spec propagates its own class") {
    expect_error("proof p\nruleset AIC9\nshow x = x\n  step eq-reflex :: x = x\n",
                 "InvalidSpec");
  }
}
