#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aic/errors.hpp"

namespace aic {

// Lattice elements are dense indices 0..size-1 into the element table.
using elem = int;

class finite_lattice;
using lattice_ptr = std::shared_ptr<const finite_lattice>;

// A finite lattice given by its order relation.  Construction validates that
// leq is a partial order in which every pair has a least upper bound and a
// greatest lower bound, then tabulates join/meet and locates bottom/top.
class finite_lattice {
 public:
  static lattice_ptr make(std::string key, std::vector<std::string> names,
                          const std::vector<std::vector<bool>>& leq);

  int size() const { return n_; }
  elem bot() const { return bot_; }
  elem top() const { return top_; }
  bool leq(elem x, elem y) const { return leq_[static_cast<size_t>(x) * n_ + y]; }
  elem join(elem x, elem y) const { return join_[static_cast<size_t>(x) * n_ + y]; }
  elem meet(elem x, elem y) const { return meet_[static_cast<size_t>(x) * n_ + y]; }

  // The spec string this lattice was built from ("C3", "product(C2,B2)", ...).
  const std::string& key() const { return key_; }
  const std::string& elem_name(elem x) const { return names_[x]; }
  std::optional<elem> elem_by_name(const std::string& name) const;
  elem require_elem(const std::string& name) const;  // throws UnknownElement

 private:
  finite_lattice() = default;
  int n_ = 0;
  elem bot_ = 0, top_ = 0;
  std::string key_;
  std::vector<std::string> names_;
  std::vector<bool> leq_;
  std::vector<elem> join_, meet_;
};

// Catalogue constructor.  Accepts C2..C6, B1..B3, M3, N5,
// product(<spec>,<spec>) nested arbitrarily, and
// closure(Bk; {..},{..},...) -- the intersection-closure of the given subsets
// of Bk's atom set together with the full set.
lattice_ptr build_lattice(const std::string& spec);

// Names of the plain catalogue lattices (no product/closure).
const std::vector<std::string>& lattice_catalogue();

// A monotone unary map on a lattice, given by its value table.  Construction
// validates monotonicity.
class monotone_map {
 public:
  monotone_map(lattice_ptr lat, std::vector<elem> table, std::string name = "F");

  elem operator()(elem x) const { return table_[x]; }
  const lattice_ptr& lat() const { return lat_; }
  const std::string& name() const { return name_; }
  const std::vector<elem>& table() const { return table_; }

  // Binary-join / binary-meet preservation (on a finite lattice this is
  // exactly preservation of all non-empty countable sups / infs).
  bool is_join_morphism() const;
  bool is_meet_morphism() const;

 private:
  lattice_ptr lat_;
  std::vector<elem> table_;
  std::string name_;
};

// Least fixed point of f above a (requires a <= f(a)), by iteration from a.
// Dually, greatest fixed point below a (requires f(a) <= a).
elem lfp_above(const monotone_map& f, elem a);
elem gfp_below(const monotone_map& f, elem a);

}  // namespace aic
