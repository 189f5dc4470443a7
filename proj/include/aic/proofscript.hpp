#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aic/kernel.hpp"
#include "aic/rules.hpp"
#include "aic/term.hpp"

namespace aic {

// A named proof in the line-based script format.
//
//   proof <name>            one per proof; a document may hold several
//   funcs F,G               declared function symbols (optional)
//   ruleset <spec>          e.g. AIC1 or AIC0+wcont(F); required
//   uses <name>             earlier proof to be registered as a derived rule
//   assume <identity>       premises, indexed from 0 in order of appearance
//   show <identity>         the goal; required
//   note <text>             freeform commentary
//
// then the derivation tree, one node per line, root indented two spaces and
// each nesting level adding two more:
//
//   step <rule>[ with a:=<term>,...][ ctx hole:=<var>, s:=<term>, t:=<term>,
//        u:=<term>, w:=<term>] :: <identity>
//   leaf <index> :: <identity>
//
// Lines whose first non-space character is '#' are comments.  Two shorthand
// step forms expand during parsing:
//
//   step cuts :: a <= z          n-ary transitivity; it takes two or more
//                                subproofs and expands to right-nested trans
//                                steps with synthesized midpoints
//   step rw[<ax>[ with ...]] ctx hole:=h, s:=..., t:=...[, u:=..., w:=...]
//                                rewrite with the premise-free equation <ax>
//                                inside the context s <= t: expands to an
//                                indiscernibility step whose second subproof
//                                is the synthesized instance of <ax>.  When
//                                u/w are omitted they are computed from the
//                                axiom's statement, which the bracketed with
//                                must then determine completely
//                                (UnboundPatternVar otherwise).  rw~ cites
//                                the equation right to left, wrapping the
//                                synthesized instance in symm.
struct proof_script {
  std::string name;
  std::vector<std::string> funcs;
  std::string ruleset_spec;
  std::vector<std::string> uses;
  std::vector<std::string> notes;
  quasiequation statement;  // assume* |- show
  deriv_ptr tree;           // shorthand-free
};

// Resolves rule names that are not builtin to the declared ruleset, e.g.
// derived rules registered by earlier corpus entries.  May return nullptr.
using rule_lookup = std::function<const rule*(const std::string&)>;

// Parses a document of one or more scripts.  Shorthands are expanded here;
// rw instances cite, in order: the script's builtin ruleset, earlier proofs
// of the same document, then `extra`.  Throws `error` with classes
// ParseError, RuleNotFound, UnboundPatternVar, InvalidSpec.
std::vector<proof_script> parse_proof_document(const std::string& text,
                                               const rule_lookup& extra = {});

// Canonical text form (expanded steps only); parses back to an equal script.
std::string emit_proof_script(const proof_script& ps);
std::string emit_proof_document(const std::vector<proof_script>& doc);

}  // namespace aic
