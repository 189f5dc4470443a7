#pragma once

#include <map>
#include <string>

#include "aic/lasso.hpp"
#include "aic/term.hpp"

namespace aic {

// A model fixes the lattice and interprets every function symbol as a
// monotone unary map.  An interpretation additionally binds sequence
// variables to lassos.
struct model {
  lattice_ptr lat;
  std::map<std::string, monotone_map> funcs;
};

struct interpretation {
  model m;
  std::map<std::string, lasso> vars;
};

// Exact evaluation.  Shared subterms are evaluated once.
lasso eval(const term_ptr& t, const interpretation& I);

// An equation holds when both sides evaluate to the same sequence, an
// inequality when the left side is pointwise below the right one.  A
// quasiequation holds when every interpretation of its premises also
// satisfies its conclusion (so it holds vacuously if a premise fails).
bool satisfies(const identity& id, const interpretation& I);
bool satisfies(const quasiequation& q, const interpretation& I);

// Semantic validation of the sequence-indexed schemas (seq-dia, seq-box,
// seq-ext) on concrete sequences.  Their premise families quantify over all
// positions; positions beyond one pass of prefix+period (for seq-ext: the
// joint comparison window of a and b) repeat earlier checks, so the premise
// check is exact.
bool seq_schema_premises_hold(const std::string& name, const lasso& a, const lasso& b);
bool seq_schema_conclusion_holds(const std::string& name, const lasso& a, const lasso& b);
bool satisfies_seq_schema(const std::string& name, const lasso& a, const lasso& b);

// Value-table syntax for a function symbol: table{0->1, 1->2, 2->2}
monotone_map parse_table(const lattice_ptr& lat, const std::string& text,
                         const std::string& name);
std::string print_table(const monotone_map& f);

// Interpretation file format, one declaration per line ('#' comments):
//   lattice C3
//   let F = table{0->1, 1->2, 2->2}
//   let a = <2|0,1>
interpretation parse_interpretation(const std::string& text);
std::string print_interpretation(const interpretation& I);

}  // namespace aic
