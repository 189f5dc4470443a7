#include <random>

#include "aic/term.hpp"
#include "doctest.h"

using namespace aic;

namespace {

const std::set<std::string> FG = {"F", "G"};

term_ptr random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 4 : 10);
  switch (pick(rng)) {
    case 0: return t_bot();
    case 1: return t_top();
    case 2: return t_var("a");
    case 3: return t_var("b");
    case 4: return t_var("c");
    case 5: return t_join(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 6: return t_meet(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 7: return t_head(random_term(rng, depth - 1));
    case 8: return t_shift(random_term(rng, depth - 1));
    case 9:
      return pick(rng) % 2 ? t_dia(random_term(rng, depth - 1))
                           : t_box(random_term(rng, depth - 1));
    default:
      return pick(rng) % 2 ? t_apply(pick(rng) % 2 ? "F" : "G", random_term(rng, depth - 1))
                           : t_orbit(pick(rng) % 2 ? "F" : "G", random_term(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser builds the expected trees") {
  term_ptr t = parse_term("dia (F* x \\/ sh y)", FG);
  REQUIRE(t->kind == term_kind::majorum);
  REQUIRE(t->a->kind == term_kind::join);
  CHECK(t->a->a->kind == term_kind::orbit);
  CHECK(t->a->a->name == "F");
  CHECK(t->a->a->a->name == "x");
  CHECK(t->a->b->kind == term_kind::shift);

  // unary operators bind tighter than binary ones
  term_ptr u = parse_term("sh a \\/ b", FG);
  CHECK(u->kind == term_kind::join);
  CHECK(u->a->kind == term_kind::shift);

  // repeated joins associate to the right
  term_ptr chain = parse_term("a \\/ b \\/ c", FG);
  CHECK(chain->kind == term_kind::join);
  CHECK(chain->a->name == "a");
  CHECK(chain->b->kind == term_kind::join);

  // function application chains: F* F x = F*(F(x))
  term_ptr ff = parse_term("F* F x", FG);
  CHECK(ff->kind == term_kind::orbit);
  CHECK(ff->a->kind == term_kind::apply);
  CHECK(ff->a->a->name == "x");

  CHECK(parse_term("bot", {})->kind == term_kind::bot);
  CHECK(parse_term("top", {})->kind == term_kind::top);
}

TEST_CASE("unicode aliases are accepted") {
  CHECK(term_eq(parse_term("◇(F* x ⋎ ⊚ y)", FG),
                parse_term("dia (F* x \\/ sh y)", FG)));
  identity id = parse_identity("⊖⊚ x ⪯ x", {});
  CHECK(id.shape == id_shape::inequality);
  CHECK(term_eq(id.lhs, t_head(t_shift(t_var("x")))));
  CHECK(term_eq(parse_term("⊥ ⋏ ⊤", {}), t_meet(t_bot(), t_top())));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_term("a \\/ b /\\ c", FG), error);   // mixed binops
  CHECK_THROWS_AS(parse_term("a \\/", FG), error);           // missing operand
  CHECK_THROWS_AS(parse_term("(a", FG), error);              // unbalanced
  CHECK_THROWS_AS(parse_term("a b", FG), error);             // trailing junk
  CHECK_THROWS_AS(parse_term("H x", {}), error);             // undeclared: parses H as var, x junk
  CHECK_THROWS_AS(parse_term("H* x", FG), error);            // undeclared orbit
  CHECK_THROWS_AS(parse_term("hd", FG), error);              // missing operand
  CHECK_THROWS_AS(parse_term("a ? b", FG), error);           // bad character
  CHECK_THROWS_AS(parse_identity("a = b = c", FG), error);   // chained identity
  CHECK_THROWS_AS(parse_identity("a", FG), error);           // no relation
  CHECK_THROWS_AS(parse_term("x", {"hd"}), error);           // reserved fsym
  try {
    parse_term("a \\/ b /\\ c", FG);
  } catch (const error& e) {
    CHECK(e.cls() == "ParseError");
  }
}

TEST_CASE("printing inserts exactly the parentheses reparsing needs") {
  auto a = t_var("a"), b = t_var("b"), c = t_var("c");
  CHECK(print_term(t_join(a, t_join(b, c))) == "a \\/ b \\/ c");
  CHECK(print_term(t_join(t_join(a, b), c)) == "(a \\/ b) \\/ c");
  CHECK(print_term(t_meet(t_join(a, b), c)) == "(a \\/ b) /\\ c");
  CHECK(print_term(t_join(a, t_meet(b, c))) == "a \\/ (b /\\ c)");
  CHECK(print_term(t_shift(t_join(a, b))) == "sh (a \\/ b)");
  CHECK(print_term(t_join(t_shift(a), b)) == "sh a \\/ b");
  CHECK(print_term(t_orbit("F", t_apply("F", a))) == "F* F a");
  CHECK(print_identity(make_le(a, b)) == "a <= b");
  CHECK(print_identity(make_eq(t_bot(), t_top())) == "bot = top");
}

TEST_CASE("print/parse round-trips on random terms") {
  std::mt19937 rng(20260816);
  for (int i = 0; i < 2000; ++i) {
    term_ptr t = random_term(rng, 5);
    term_ptr back = parse_term(print_term(t), FG);
    CHECK(term_eq(t, back));
  }
}

TEST_CASE("substitution is simultaneous and shares unchanged subtrees") {
  term_ptr t = parse_term("a \\/ sh b", FG);
  std::map<std::string, term_ptr> swap = {{"a", t_var("b")}, {"b", t_var("a")}};
  CHECK(print_term(substitute(t, swap)) == "b \\/ sh a");
  // not sequential: a -> b must not then be hit by b -> a
  term_ptr u = parse_term("F* (a /\\ b)", FG);
  CHECK(print_term(substitute(u, swap)) == "F* (b /\\ a)");
  // unchanged trees come back pointer-identical
  term_ptr v = parse_term("dia c", FG);
  CHECK(substitute(v, swap) == v);
}

TEST_CASE("free variables and function symbols") {
  term_ptr t = parse_term("F* (a /\\ G b) \\/ hd c", FG);
  CHECK(free_vars(t) == std::set<std::string>{"a", "b", "c"});
  CHECK(fsyms_of(t) == std::set<std::string>{"F", "G"});
  CHECK(free_vars(t_bot()).empty());
  quasiequation q{{parse_identity("x <= F y", FG)}, parse_identity("dia x <= z", FG)};
  CHECK(free_vars(q) == std::set<std::string>{"x", "y", "z"});
  CHECK(fsyms_of(q) == std::set<std::string>{"F"});
}

TEST_CASE("inequalities desugar to join absorption equations") {
  identity le = parse_identity("a <= b", {});
  CHECK(le.shape == id_shape::inequality);
  identity eq = desugar(le);
  CHECK(eq.shape == id_shape::equation);
  CHECK(print_identity(eq) == "a \\/ b = b");
  CHECK(identity_eq_desugared(le, parse_identity("a \\/ b = b", {})));
  CHECK(!identity_eq(le, parse_identity("a \\/ b = b", {})));
  CHECK(identity_eq_desugared(desugar(le), le));
}
