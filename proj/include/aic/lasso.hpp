#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "aic/lattice.hpp"

namespace aic {

// An eventually periodic sequence over a finite lattice, stored as a finite
// prefix plus a non-empty repeating period.  Construction normalizes to the
// canonical form: the period is primitive (not a repetition of a shorter
// word) and the prefix is as short as possible (no prefix tail can be
// absorbed into a rotation of the period).  Canonical forms are unique, so
// structural equality coincides with pointwise equality.
class lasso {
 public:
  lasso(lattice_ptr lat, std::vector<elem> prefix, std::vector<elem> period);
  static lasso flat(lattice_ptr lat, elem v);

  const lattice_ptr& lat() const { return lat_; }
  const std::vector<elem>& prefix() const { return prefix_; }
  const std::vector<elem>& period() const { return period_; }

  // Value at index n: prefix[n] for n < |prefix|, then cyclic in the period.
  elem at(size_t n) const;

  // Literal syntax: "<p0,p1|q0,q1>", empty prefix prints as "<|q0>".
  std::string str() const;
  static lasso parse(const lattice_ptr& lat, const std::string& text);

 private:
  lattice_ptr lat_;
  std::vector<elem> prefix_, period_;
};

// Pointwise equality / order, decided over the window
// max(|prefix_a|,|prefix_b|) + lcm(|period_a|,|period_b|).
bool lasso_eq(const lasso& a, const lasso& b);
bool lasso_leq(const lasso& a, const lasso& b);

// The set of values the sequence ever takes.
std::set<elem> head_set(const lasso& a);

// The ten operations of the signature.
lasso op_bot(const lattice_ptr& lat);                      // constant bottom
lasso op_top(const lattice_ptr& lat);                      // constant top
lasso op_join(const lasso& a, const lasso& b);             // pointwise join
lasso op_meet(const lasso& a, const lasso& b);             // pointwise meet
lasso op_head(const lasso& a);                             // constant a(0)
lasso op_shift(const lasso& a);                            // n -> a(n+1)
lasso op_majorum(const lasso& a);                          // n -> sup_{k>=n} a(k)
lasso op_minorum(const lasso& a);                          // n -> inf_{k>=n} a(k)
lasso op_apply(const monotone_map& f, const lasso& a);     // n -> f(a(n))
lasso op_orbit(const monotone_map& f, const lasso& a);     // n -> f^n(a(n))

}  // namespace aic
