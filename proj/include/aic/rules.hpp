#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aic/term.hpp"

namespace aic {

struct derivation;  // defined in kernel.hpp

enum class rule_kind {
  equational,       // equality logic: reflexivity, symmetry, transitivity, congruence
  context_schema,   // replacement of equals inside an arbitrary context
  aic0,             // inequational base system
  aic1,             // quasi-inequational extension
  continuity,       // per-symbol (co)continuity postulates
  aicw_finitary,    // finitary rules appearing only in the omega system
  aicw_infinitary,  // sequence rules with infinitely many premises
  derived           // registered with a checked derivation
};

struct rule {
  std::string name;
  rule_kind kind = rule_kind::equational;
  std::string fsym;  // non-empty for per-function-symbol rules
  std::vector<identity> premises;
  identity conclusion;
  // for derived rules: the derivation that justifies them
  std::shared_ptr<const derivation> provenance;
};

// An ordered, name-indexed collection of rules.  Built from a spec string:
//   base: EQ | AIC0 | AIC1 | AICw
//   additions, '+'-separated:
//     +wcont(F) +ccont(F) +wcocont(F) +ccocont(F)   continuity postulates
//     +aicw-heads                                   the head axioms row
//     +<rule-name>                                  any rule known to AIC1/AICw
// Equality logic is ambient: every base includes the EQ rules.
class rule_set {
 public:
  static rule_set builtin(const std::string& spec,
                          const std::vector<std::string>& funcs);

  const std::string& spec() const { return spec_; }
  const std::vector<std::string>& funcs() const { return funcs_; }
  const std::vector<rule>& rules() const { return rules_; }
  const rule* find(const std::string& name) const;
  bool has(const std::string& name) const { return find(name) != nullptr; }

  // Appends a rule under a fresh name (used for registering derived rules).
  void add(rule r);

 private:
  std::string spec_;
  std::vector<std::string> funcs_;
  std::vector<rule> rules_;
};

}  // namespace aic
