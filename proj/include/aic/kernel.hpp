#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aic/rules.hpp"
#include "aic/term.hpp"

namespace aic {

using deriv_ptr = std::shared_ptr<const derivation>;

// Replacement context for an indiscernibility step: an inequality s <= t
// with a distinguished hole variable, plus the equated terms u (cited by the
// first child) and w (appearing in the node's own conclusion).
struct context_data {
  term_ptr s, t;
  std::string hole;
  term_ptr u, w;
};

// A derivation tree node: either a leaf citing a premise of the checked
// quasiequation by index, or a step citing a rule whose instance has the
// children's conclusions as premises.  `with` may pin bindings of the cited
// rule's variables explicitly; matching fills in the rest.
struct derivation {
  identity conclusion;
  bool leaf = false;
  int leaf_index = -1;
  std::string rule;
  std::map<std::string, term_ptr> with;
  std::optional<context_data> ctx;
  std::vector<deriv_ptr> children;
};

deriv_ptr make_leaf(int index, identity concl);
deriv_ptr make_step(std::string rule, identity concl, std::vector<deriv_ptr> children,
                    std::map<std::string, term_ptr> with = {},
                    std::optional<context_data> ctx = std::nullopt);

// Structural equality of derivation trees (conclusion shapes included).
bool deriv_eq(const derivation& a, const derivation& b);

// Verification verdict.  On failure: a stable error class, the path of
// child indices from the root to the offending node, and a detail message.
// Error classes: ConclusionMismatch, BadLeaf, RuleNotFound, ArityMismatch,
// MatchFail, UnboundPatternVar, MissingContext, ContextMismatch,
// InfinitaryRule.
struct check_error {
  std::string cls;
  std::vector<int> path;
  std::string detail;
};

struct check_result {
  bool ok = false;
  std::optional<check_error> err;
  explicit operator bool() const { return ok; }
};

// Checks that d proves q from its premises using only rules in rs.
// Inequalities are compared modulo their definition as join equations.
check_result check(const derivation& d, const quasiequation& q, const rule_set& rs);

// First-order matching: extends binding so that pattern[binding] == target.
// May leave partial bindings behind on failure.
bool match_term(const term_ptr& pattern, const term_ptr& target,
                std::map<std::string, term_ptr>& binding);
bool match_identity(const identity& pattern, const identity& target,
                    std::map<std::string, term_ptr>& binding);

// Checks d against rs and, on success, returns rs extended with a rule named
// `name` whose statement is q and whose provenance is d.  Throws on failure.
rule_set register_derived(const rule_set& rs, const std::string& name,
                          const quasiequation& q, const deriv_ptr& d);

// Expands every step citing a derived rule into a copy of that rule's
// registered derivation (recursively), so the result cites base rules only.
// Auxiliary variables of spliced derivations are renamed fresh.
deriv_ptr inline_derived(const deriv_ptr& d, const rule_set& rs);

}  // namespace aic
