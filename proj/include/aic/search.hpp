#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aic/rules.hpp"
#include "aic/semantics.hpp"

namespace aic {

// Semantic side condition a sampled function-symbol interpretation must pass
// before the model is admitted.  On a finite lattice, preserving binary joins
// is exactly preserving all non-empty countable suprema (dually for meets),
// so these are the finite-scale continuity/cocontinuity filters.
enum class cont_filter { none, joins, meets };

struct search_config {
  std::vector<std::string> lattices;  // catalogue pool; empty = full catalogue
  int trials = 1000;
  int max_prefix = 3;  // sampled lasso prefix length cap (0 allowed)
  int max_period = 4;  // sampled lasso period length cap (>= 1)
  std::uint64_t seed = 0;
  std::map<std::string, cont_filter> filters;  // per function symbol
  int threads = 0;  // worker cap for trial batches; 0 = hardware concurrency

  void validate() const;  // throws InvalidConfig
};

// A refutation witness.  Premises of the refuted quasiequation hold under I
// while the conclusion does not; `fail_index` is the first sequence position
// where the conclusion's sides disagree and `window` the number of positions
// that decide it.  Replayable: satisfies(q, I) is false.
struct counterexample {
  interpretation I;
  identity failed;
  std::size_t fail_index = 0;
  std::size_t window = 0;
  std::uint64_t trial = 0;  // index of the seed stream that found it
  std::string describe() const;
};

// Deterministic per-trial RNG stream: a splitmix64 finalizer applied to
// (seed, trial) seeds an independent mt19937_64 per trial index, so trials
// can run in any order or concurrently without changing what each one draws.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Sampling primitives.  A monotone map is drawn by repairing a uniformly
// random table to monotone via  x |-> join of raw(y) over y <= x,  then
// redrawn until the requested filter accepts (identity fallback keeps the
// draw total).  Lassos draw prefix length 0..max_prefix and period length
// 1..max_period with uniform entries.
monotone_map sample_monotone_map(const lattice_ptr& lat, std::mt19937_64& rng,
                                 const std::string& name,
                                 cont_filter filter = cont_filter::none);
lasso sample_lasso(const lattice_ptr& lat, std::mt19937_64& rng, int max_prefix,
                   int max_period);

// One full model + bindings for the given variables and function symbols.
// Draw order is pinned (lattice, then maps by symbol name, then lassos by
// variable name) so a (cfg, trial) pair always denotes the same value.
interpretation sample_interpretation(const search_config& cfg,
                                     const std::set<std::string>& vars,
                                     const std::set<std::string>& funcs,
                                     std::uint64_t trial = 0);

// Parallel trial contract: runs predicate(t) for t in [0, trials), possibly
// concurrently over immutable shared state, and returns the smallest t on
// which it returned true, or nullopt.  The result is deterministic: every
// index below the returned one is fully evaluated.
std::optional<std::uint64_t> first_hit(
    std::uint64_t trials, int threads,
    const std::function<bool(std::uint64_t)>& predicate);

// Randomized refutation.  Never claims validity: the outcome vocabulary is a
// counterexample or none-found after cfg.trials.
struct refute_result {
  std::optional<counterexample> cex;
  int trials_run = 0;
  bool found() const { return cex.has_value(); }
};
refute_result refute(const quasiequation& q, const search_config& cfg);

// Soundness fuzzing over a whole rule set: every finitary rule is refuted
// under the config (continuity rules under their own semantic filter, the
// infinitary sequence schemas via their exact head-set check); pattern-only
// schemas that have no fixed statement are skipped and say so.  Any hit is
// an implementation bug, reported by throwing error("SoundnessViolation")
// with the embedded counterexample description.
struct fuzz_entry {
  std::string rule;
  int trials = 0;
  bool skipped = false;
  std::string note;
};
struct fuzz_report {
  std::vector<fuzz_entry> entries;
  int rules_fuzzed = 0;
  int rules_skipped = 0;
};
fuzz_report fuzz_soundness(const rule_set& rs, const search_config& cfg);

// The flatness family at width N: from "a is periodic with period N and its
// first N values agree" conclude "a is flat".  Premises
//   sh^N a = a,   hd sh^k a = hd sh^(k+1) a   (0 <= k < N)
// with conclusion sh a = a.
quasiequation flatness_quasiequation(int n);

// Checks the family under sampled interpretations (stratified so that
// non-vacuous instances actually occur) and, whenever the premises hold,
// additionally confirms the conclusion by direct operations on the lasso.
struct flatness_report {
  int n = 0;
  int trials = 0;
  int nonvacuous = 0;
  bool ok = false;
  std::optional<counterexample> cex;
};
flatness_report validity_family_flatness(int n, const search_config& cfg);

// Exhaustive finite-scale check that a monotone map preserves suprema of
// ascending chains: for every strictly ascending chain x0 < ... < xk,
// f(xk) = f(x0) \/ ... \/ f(xk).  Ascending sequences over a finite lattice
// stabilize, so this is the whole semantic omega-continuity condition.
bool omega_cont_on_all_chains(const monotone_map& f);

// First position (and deciding window) where an identity fails under I,
// or nullopt if it holds.
struct violation_point {
  std::size_t index = 0;
  std::size_t window = 0;
};
std::optional<violation_point> first_violation(const identity& id,
                                               const interpretation& I);

}  // namespace aic
