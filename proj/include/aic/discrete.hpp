#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aic/term.hpp"

namespace aic {

// The discrete fragment: terms built from hd and sh only, over sequence
// variables.  Provability here is equational logic from a fixed premise set
// (premise variables are indeterminates, not schema variables).

enum class decision { provable, unknown };

// One homogeneous identity:  sh^n x = sh^k y  (a shift identity) or
// hd sh^n x = hd sh^k y  (a head identity).
struct homogeneous_id {
  std::string x;
  int n = 0;
  std::string y;
  int k = 0;
};

// A premise set in which every identity is homogeneous.  Mixed-kind
// identities (hd on one side only), inequalities, and terms outside the
// hd/sh signature are rejected with NotHomogeneous.
struct homogeneous_premises {
  std::vector<homogeneous_id> shift_ids;
  std::vector<homogeneous_id> head_ids;

  static homogeneous_premises from_identities(const std::vector<identity>& ids);
  std::vector<identity> to_identities() const;

  int count() const;       // total number of identities
  int max_degree() const;  // largest shift degree anywhere (0 when empty)
  std::vector<std::string> vars() const;  // sorted, deduplicated
};

// A single homogeneous identity viewed as a provability query.
struct homogeneous_query {
  bool head = false;  // false: shift identity, true: head identity
  std::string x;
  int n = 0;
  std::string y;
  int k = 0;

  static homogeneous_query of(const identity& id);  // throws NotHomogeneous
};

// Default node-index bound for the reachability graph.  Covers the bounded
// exhaustive test space; a provably complete bound is an open question, so
// callers may override.
int default_bound(const homogeneous_premises& p, int query_max_degree);

// The premise graph over nodes (var, degree) with degree <= bound.  Strong
// edges come from shift identities closed under index shift within the
// bound: (x,n)=(y,k) contributes (x,n+j)--(y,k+j) for every j that keeps
// both degrees bounded.  Weak edges sit exactly at the head identities'
// indices; they are inserted unconditionally, since an edge parallel to a
// provable strong connection never changes path existence.
class proof_graph {
 public:
  proof_graph(const homogeneous_premises& p, std::vector<std::string> vars,
              int bound);

  int bound() const { return bound_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int strong_edge_count() const { return strong_edges_; }
  int weak_edge_count() const { return weak_edges_; }

  // Path queries; throw BoundTooSmall when a degree exceeds the bound and
  // UnknownElement when a variable is not a graph node.
  bool strong_path(const std::string& x, int n, const std::string& y, int k) const;
  bool any_path(const std::string& x, int n, const std::string& y, int k) const;

 private:
  int node(const std::string& v, int deg) const;
  int bound_ = 0;
  int strong_edges_ = 0, weak_edges_ = 0;
  std::vector<std::string> vars_;
  std::vector<int> strong_root_, any_root_;  // forest roots per node
};

// Graph-based decision procedures:  sh^n x = sh^k y  is provable iff the
// graph has a strong path between the endpoints;  hd sh^n x = hd sh^k y
// iff it has a path of any kind.  Provable answers are sound; unknown means
// no path within the bound.  bound < 0 selects default_bound.
decision decide_shift(const homogeneous_premises& p, const std::string& x, int n,
                      const std::string& y, int k, int bound = -1);
decision decide_head(const homogeneous_premises& p, const std::string& x, int n,
                     const std::string& y, int k, int bound = -1);
decision decide(const homogeneous_premises& p, const identity& goal,
                int bound = -1);

// Independent bounded prover for the same fragment: forward closure of the
// premises under reflexivity, symmetry, transitivity and hd/sh congruence
// over a finite term universe, with optional quasiequation schemas applied
// once per level (their variables range over universe terms).  Each level
// saturates the equational rules, then applies the schemas; `depth` caps the
// number of levels.  Sound; unknown beyond the depth or the size cap.
//
// The universe is goal-directed: when every input term is a plain tower
// (sh^n x or hd sh^n x) and no schemas are given, closure never needs any
// other term shape (rewrites replace suffixes with suffixes), so the
// universe holds exactly the towers up to a degree cap.  Otherwise it holds
// every hd/sh word up to a length cap.  size_cap = 0 picks a default:
// the default_bound formula for towers, max input size + 4 for words.
struct oracle_result {
  decision outcome = decision::unknown;
  int depth_used = 0;      // levels run (the goal's level when provable)
  bool saturated = false;  // closure reached a fixpoint before the depth cap
};
oracle_result proof_search_oracle(const std::vector<identity>& premises,
                                  const identity& goal, int depth,
                                  const std::vector<quasiequation>& schemas = {},
                                  int size_cap = 0);

// The valid quasiequations of the discrete fragment used as a candidate
// axiom set in the non-derivability evidence tests:
//   th1:           hd x = hd hd x
//   th2:        sh hd x = hd x
//   th3: x = hd y  =>  hd x = hd y
//   th4: x = hd y  =>  sh x = x
const std::vector<quasiequation>& theta_axioms();

}  // namespace aic
