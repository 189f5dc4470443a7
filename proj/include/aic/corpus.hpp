#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aic/proofscript.hpp"
#include "aic/rules.hpp"

namespace aic {

// The bundled proof documents, compiled in from proofs/*.proof at build time
// as (document name, text) pairs.
const std::vector<std::pair<std::string, std::string>>& embedded_corpus();

// The proof library: named derivations with dependency-aware checking.  An
// entry's `uses` names become derived rules on top of its declared ruleset,
// their own dependencies registered first.  A used name that the ruleset
// already provides as a builtin is accepted when the statements agree (the
// builtin subsumes it) and rejected as DuplicateName otherwise.
class corpus {
 public:
  // the compiled-in library, parsed and indexed once
  static const corpus& embedded();
  static corpus from_documents(const std::vector<std::pair<std::string, std::string>>& docs);

  const std::vector<proof_script>& entries() const { return entries_; }
  const proof_script* find(const std::string& name) const;

  // the entry's declared ruleset extended with its transitive uses
  rule_set rules_for(const proof_script& ps) const;
  check_result check_entry(const proof_script& ps) const;

  struct report {
    std::string name;
    bool ok = false;
    std::string detail;  // empty when ok
  };
  std::vector<report> check_all() const;

  // Parses/checks an external document in this corpus' context: its scripts
  // may cite bundled proofs and earlier scripts of the same document.
  std::vector<proof_script> parse_document(const std::string& text) const;
  std::vector<report> check_document(const std::vector<proof_script>& doc) const;

 private:
  rule_set build_rules(const proof_script& ps,
                       const std::map<std::string, const proof_script*>& universe) const;
  std::map<std::string, const proof_script*> universe() const;

  std::vector<proof_script> entries_;
  std::map<std::string, size_t> index_;
};

// The k-induction bundle: a document proving
//   F P^k(b) <= b  &  sh b <= b  =>  dia F* bot <= b
// where P^0(b) = b and P^(j+1)(b) = F P^j(b) /\ b, as proof `k-ind-<k>`,
// preceded by the helper families kind-desc-j (P^(j+1) <= P^j), kind-descb-j
// (P^j <= b), kind-asc-pres-j (shift-ascent of b carries to P^j) and
// kind-park-<k> (the parked prefixed point), each citing its predecessors as
// derived rules so the document grows linearly in k.
std::vector<proof_script> gen_kind_proof(int k);

}  // namespace aic
