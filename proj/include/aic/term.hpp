#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "aic/errors.hpp"

namespace aic {

enum class term_kind {
  bot,      // constant bottom sequence
  top,      // constant top sequence
  var,      // sequence variable
  join,     // pointwise join          a \/ b
  meet,     // pointwise meet          a /\ b
  head,     // freeze first value      hd a
  shift,    // drop first value        sh a
  majorum,  // running supremum        dia a
  minorum,  // running infimum         box a
  apply,    // pointwise application   F a
  orbit     // iterated application    F* a
};

struct term;
using term_ptr = std::shared_ptr<const term>;

struct term {
  term_kind kind;
  std::string name;  // variable name (var) or function symbol (apply/orbit)
  term_ptr a, b;
};

term_ptr t_bot();
term_ptr t_top();
term_ptr t_var(const std::string& name);
term_ptr t_join(term_ptr a, term_ptr b);
term_ptr t_meet(term_ptr a, term_ptr b);
term_ptr t_head(term_ptr a);
term_ptr t_shift(term_ptr a);
term_ptr t_dia(term_ptr a);
term_ptr t_box(term_ptr a);
term_ptr t_apply(const std::string& fsym, term_ptr a);
term_ptr t_orbit(const std::string& fsym, term_ptr a);

bool term_eq(const term_ptr& a, const term_ptr& b);
std::string print_term(const term_ptr& t);
std::set<std::string> free_vars(const term_ptr& t);
std::set<std::string> fsyms_of(const term_ptr& t);

// Simultaneous substitution of variables.  Shares unchanged subtrees.
term_ptr substitute(const term_ptr& t, const std::map<std::string, term_ptr>& sub);

// Concrete syntax.  Variables and function symbols are identifiers; which
// identifiers denote function symbols must be declared up front.  Operators:
//   bot top \/ /\ hd sh dia box F F*
// Unary operators bind tighter than binary ones; repeated \/ (or /\) chains
// associate to the right; mixing \/ and /\ without parentheses is an error.
// Unicode aliases of all operators are accepted on input.
term_ptr parse_term(const std::string& text, const std::set<std::string>& funcs);

// An identity is an equation s = t or an inequality s <= t.  Inequalities
// are definitional sugar: s <= t stands for s \/ t = t, and desugar performs
// exactly that rewrite.
enum class id_shape { equation, inequality };

struct identity {
  term_ptr lhs, rhs;
  id_shape shape = id_shape::equation;
};

identity make_eq(term_ptr l, term_ptr r);
identity make_le(term_ptr l, term_ptr r);
identity desugar(const identity& id);
bool identity_eq(const identity& a, const identity& b);            // structural
bool identity_eq_desugared(const identity& a, const identity& b);  // after desugar
std::string print_identity(const identity& id);
identity parse_identity(const std::string& text, const std::set<std::string>& funcs);
identity substitute(const identity& id, const std::map<std::string, term_ptr>& sub);
std::set<std::string> free_vars(const identity& id);
std::set<std::string> fsyms_of(const identity& id);

// premises |- conclusion
struct quasiequation {
  std::vector<identity> premises;
  identity conclusion;
};

std::set<std::string> free_vars(const quasiequation& q);
std::set<std::string> fsyms_of(const quasiequation& q);

}  // namespace aic
