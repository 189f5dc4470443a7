#include "aic/lattice.hpp"

#include <algorithm>
#include <cctype>

#include "aic/text.hpp"

namespace aic {

using text::split_top;
using text::trim;

lattice_ptr finite_lattice::make(std::string key, std::vector<std::string> names,
                                 const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw error("NotALattice", key + ": empty carrier");
  if (static_cast<int>(leq.size()) != n)
    throw error("NotALattice", key + ": order table size mismatch");
  for (const auto& row : leq)
    if (static_cast<int>(row.size()) != n)
      throw error("NotALattice", key + ": order table row size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (names[i] == names[j])
        throw error("NotALattice", key + ": duplicate element name " + names[i]);

  for (int i = 0; i < n; ++i)
    if (!leq[i][i]) throw error("NotALattice", key + ": order not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i])
        throw error("NotALattice", key + ": order not antisymmetric at " + names[i] +
                                       "," + names[j]);
      if (leq[i][j])
        for (int k = 0; k < n; ++k)
          if (leq[j][k] && !leq[i][k])
            throw error("NotALattice", key + ": order not transitive");
    }

  auto lat = std::shared_ptr<finite_lattice>(new finite_lattice());
  lat->n_ = n;
  lat->key_ = std::move(key);
  lat->names_ = std::move(names);
  lat->leq_.assign(static_cast<size_t>(n) * n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lat->leq_[static_cast<size_t>(i) * n + j] = leq[i][j];

  lat->join_.assign(static_cast<size_t>(n) * n, 0);
  lat->meet_.assign(static_cast<size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int lub = -1, glb = -1;
      for (int z = 0; z < n; ++z) {
        if (leq[x][z] && leq[y][z]) {
          bool least = true;
          for (int w = 0; w < n; ++w)
            if (leq[x][w] && leq[y][w] && !leq[z][w]) least = false;
          if (least) lub = z;
        }
        if (leq[z][x] && leq[z][y]) {
          bool greatest = true;
          for (int w = 0; w < n; ++w)
            if (leq[w][x] && leq[w][y] && !leq[w][z]) greatest = false;
          if (greatest) glb = z;
        }
      }
      if (lub < 0)
        throw error("NotALattice", lat->key_ + ": no least upper bound for " +
                                       lat->names_[x] + "," + lat->names_[y]);
      if (glb < 0)
        throw error("NotALattice", lat->key_ + ": no greatest lower bound for " +
                                       lat->names_[x] + "," + lat->names_[y]);
      lat->join_[static_cast<size_t>(x) * n + y] = lub;
      lat->meet_[static_cast<size_t>(x) * n + y] = glb;
    }

  elem bot = 0, top = 0;
  for (int i = 0; i < n; ++i) {
    bot = lat->meet(bot, i);
    top = lat->join(top, i);
  }
  lat->bot_ = bot;
  lat->top_ = top;
  return lat;
}

std::optional<elem> finite_lattice::elem_by_name(const std::string& name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

elem finite_lattice::require_elem(const std::string& name) const {
  auto e = elem_by_name(name);
  if (!e) throw error("UnknownElement", "no element named '" + name + "' in " + key_);
  return *e;
}

namespace {

lattice_ptr make_chain(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[i][j] = true;
  return finite_lattice::make("C" + std::to_string(n), std::move(names), leq);
}

std::string subset_letters(int mask, int k) {
  static const char* atoms = "abc";
  std::string s;
  for (int i = 0; i < k; ++i)
    if (mask & (1 << i)) s.push_back(atoms[i]);
  return s;
}

lattice_ptr make_boolean(int k) {
  const int n = 1 << k;
  std::vector<std::string> names(n);
  for (int m = 0; m < n; ++m) {
    if (m == 0)
      names[m] = "bot";
    else if (m == n - 1)
      names[m] = "top";
    else
      names[m] = subset_letters(m, k);
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = (a & b) == a;
  return finite_lattice::make("B" + std::to_string(k), std::move(names), leq);
}

lattice_ptr make_from_cover(std::string key, std::vector<std::string> names,
                            const std::vector<std::pair<int, int>>& strict) {
  const int n = static_cast<int>(names.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [a, b] : strict) leq[a][b] = true;
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return finite_lattice::make(std::move(key), std::move(names), leq);
}

lattice_ptr make_m3() {
  // bot below a,b,c below top; a,b,c pairwise incomparable
  return make_from_cover("M3", {"bot", "a", "b", "c", "top"},
                         {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

lattice_ptr make_n5() {
  // pentagon: bot < a < c < top and bot < b < top, b incomparable with a, c
  return make_from_cover("N5", {"bot", "a", "c", "b", "top"},
                         {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
}

lattice_ptr make_product(const lattice_ptr& A, const lattice_ptr& B) {
  const int n = A->size() * B->size();
  std::vector<std::string> names;
  names.reserve(n);
  for (int a = 0; a < A->size(); ++a)
    for (int b = 0; b < B->size(); ++b)
      names.push_back("(" + A->elem_name(a) + "," + B->elem_name(b) + ")");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int a1 = 0; a1 < A->size(); ++a1)
    for (int b1 = 0; b1 < B->size(); ++b1)
      for (int a2 = 0; a2 < A->size(); ++a2)
        for (int b2 = 0; b2 < B->size(); ++b2)
          leq[a1 * B->size() + b1][a2 * B->size() + b2] =
              A->leq(a1, a2) && B->leq(b1, b2);
  return finite_lattice::make("product(" + A->key() + "," + B->key() + ")",
                              std::move(names), leq);
}

int parse_subset(const std::string& text, int k, const std::string& spec) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw error("InvalidSpec", spec + ": bad subset literal " + text);
  std::string body = trim(s.substr(1, s.size() - 2));
  int mask = 0;
  if (body.empty()) return 0;
  for (const auto& part : split_top(body, ',')) {
    int atom;
    try {
      atom = std::stoi(part);
    } catch (...) {
      throw error("InvalidSpec", spec + ": bad atom '" + part + "' in subset");
    }
    if (atom < 1 || atom > k)
      throw error("InvalidSpec", spec + ": atom " + part + " out of range 1.." +
                                     std::to_string(k));
    mask |= 1 << (atom - 1);
  }
  return mask;
}

std::string subset_name(int mask, int k) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < k; ++i)
    if (mask & (1 << i)) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  s += "}";
  return s;
}

// Intersection-closure of the seed subsets of {1..k} together with the full
// set, ordered by inclusion.  Closed under meet with a top element, hence a
// lattice (joins are intersections of common upper bounds).
lattice_ptr make_closure(int k, std::vector<int> seeds, const std::string& spec) {
  const int full = (1 << k) - 1;
  std::vector<int> members = {full};
  auto add = [&](int m) {
    if (std::find(members.begin(), members.end(), m) == members.end())
      members.push_back(m);
  };
  for (int s : seeds) add(s);
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t sz = members.size();
    for (size_t i = 0; i < sz; ++i)
      for (size_t j = i + 1; j < sz; ++j) {
        int m = members[i] & members[j];
        if (std::find(members.begin(), members.end(), m) == members.end()) {
          members.push_back(m);
          grew = true;
        }
      }
  }
  std::sort(members.begin(), members.end(), [](int a, int b) {
    int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  std::vector<std::string> names;
  for (int m : members) names.push_back(subset_name(m, k));
  const int n = static_cast<int>(members.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq[i][j] = (members[i] & members[j]) == members[i];

  std::string key = "closure(B" + std::to_string(k) + ";";
  for (size_t i = 0; i < seeds.size(); ++i)
    key += (i ? "," : "") + subset_name(seeds[i], k);
  key += ")";
  (void)spec;
  return finite_lattice::make(std::move(key), std::move(names), leq);
}

}  // namespace

lattice_ptr build_lattice(const std::string& spec) {
  const std::string s = trim(spec);
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    auto parts = split_top(s.substr(8, s.size() - 9), ',');
    if (parts.size() != 2)
      throw error("InvalidSpec", s + ": product needs exactly two factors");
    return make_product(build_lattice(parts[0]), build_lattice(parts[1]));
  }
  if (s.rfind("closure(", 0) == 0 && s.back() == ')') {
    auto parts = split_top(s.substr(8, s.size() - 9), ';');
    if (parts.size() != 2)
      throw error("InvalidSpec", s + ": closure needs 'closure(Bk; subsets)'");
    const std::string base = trim(parts[0]);
    if (base.size() != 2 || base[0] != 'B' || base[1] < '1' || base[1] > '3')
      throw error("InvalidSpec", s + ": closure base must be B1, B2 or B3");
    const int k = base[1] - '0';
    std::vector<int> seeds;
    for (const auto& piece : split_top(parts[1], ','))
      seeds.push_back(parse_subset(piece, k, s));
    if (seeds.empty()) throw error("InvalidSpec", s + ": closure needs seed subsets");
    return make_closure(k, std::move(seeds), s);
  }
  if (s.size() >= 2 && s[0] == 'C') {
    bool digits = true;
    for (size_t i = 1; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) digits = false;
    if (digits) {
      int n = std::stoi(s.substr(1));
      if (n >= 1 && n <= 64) return make_chain(n);
    }
  }
  if (s == "B1") return make_boolean(1);
  if (s == "B2") return make_boolean(2);
  if (s == "B3") return make_boolean(3);
  if (s == "M3") return make_m3();
  if (s == "N5") return make_n5();
  throw error("InvalidSpec", "unknown lattice spec '" + s + "'");
}

const std::vector<std::string>& lattice_catalogue() {
  static const std::vector<std::string> cat = {"C2", "C3", "C4", "C5", "C6",
                                               "B1", "B2", "B3", "M3", "N5"};
  return cat;
}

monotone_map::monotone_map(lattice_ptr lat, std::vector<elem> table, std::string name)
    : lat_(std::move(lat)), table_(std::move(table)), name_(std::move(name)) {
  const int n = lat_->size();
  if (static_cast<int>(table_.size()) != n)
    throw error("NotMonotone", name_ + ": table has " + std::to_string(table_.size()) +
                                   " entries, lattice has " + std::to_string(n));
  for (elem x : table_)
    if (x < 0 || x >= n)
      throw error("NotMonotone", name_ + ": table entry out of range");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (lat_->leq(x, y) && !lat_->leq(table_[x], table_[y]))
        throw error("NotMonotone", name_ + " violates monotonicity at " +
                                       lat_->elem_name(x) + " <= " + lat_->elem_name(y));
}

bool monotone_map::is_join_morphism() const {
  const int n = lat_->size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table_[lat_->join(x, y)] != lat_->join(table_[x], table_[y])) return false;
  return true;
}

bool monotone_map::is_meet_morphism() const {
  const int n = lat_->size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table_[lat_->meet(x, y)] != lat_->meet(table_[x], table_[y])) return false;
  return true;
}

elem lfp_above(const monotone_map& f, elem a) {
  const auto& lat = *f.lat();
  if (!lat.leq(a, f(a)))
    throw error("NotPostfixed", "lfp_above requires " + lat.elem_name(a) +
                                    " <= F(" + lat.elem_name(a) + ")");
  elem x = a;
  for (int i = 0; i <= lat.size(); ++i) {
    elem next = f(x);
    if (next == x) return x;
    x = next;
  }
  throw error("Internal", "lfp iteration failed to converge");
}

elem gfp_below(const monotone_map& f, elem a) {
  const auto& lat = *f.lat();
  if (!lat.leq(f(a), a))
    throw error("NotPrefixed", "gfp_below requires F(" + lat.elem_name(a) +
                                   ") <= " + lat.elem_name(a));
  elem x = a;
  for (int i = 0; i <= lat.size(); ++i) {
    elem next = f(x);
    if (next == x) return x;
    x = next;
  }
  throw error("Internal", "gfp iteration failed to converge");
}

}  // namespace aic
