#include "aic/discrete.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "aic/errors.hpp"

namespace aic {

namespace {

// A discrete term is a word over {h,s} applied to a variable; the word is
// stored outermost-first, so  hd sh sh x  becomes ("hss", "x").
std::optional<std::pair<std::string, std::string>> discrete_word(term_ptr t) {
  std::string word;
  while (true) {
    switch (t->kind) {
      case term_kind::head: word.push_back('h'); t = t->a; break;
      case term_kind::shift: word.push_back('s'); t = t->a; break;
      case term_kind::var: return std::make_pair(word, t->name);
      default: return std::nullopt;
    }
  }
}

bool is_tower(const std::string& word) {
  size_t from = !word.empty() && word[0] == 'h' ? 1 : 0;
  return word.find_first_not_of('s', from) == std::string::npos;
}

struct tower {
  bool head = false;
  std::string var;
  int deg = 0;
};

std::optional<tower> parse_tower(const term_ptr& t) {
  auto w = discrete_word(t);
  if (!w || !is_tower(w->first)) return std::nullopt;
  tower out;
  out.head = !w->first.empty() && w->first[0] == 'h';
  out.var = w->second;
  out.deg = static_cast<int>(w->first.size()) - (out.head ? 1 : 0);
  return out;
}

homogeneous_id to_hid(const tower& l, const tower& r) {
  return homogeneous_id{l.var, l.deg, r.var, r.deg};
}

std::pair<tower, tower> split_homogeneous(const identity& id) {
  if (id.shape != id_shape::equation)
    throw error("NotHomogeneous",
                "the discrete fragment works with equations: " + print_identity(id));
  auto l = parse_tower(id.lhs), r = parse_tower(id.rhs);
  if (!l || !r)
    throw error("NotHomogeneous",
                "terms must be sh-towers or head-of-sh-towers: " + print_identity(id));
  if (l->head != r->head)
    throw error("NotHomogeneous",
                "sides must agree on the head wrapper: " + print_identity(id));
  return {*l, *r};
}

term_ptr tower_term(const std::string& var, int deg, bool head) {
  term_ptr t = t_var(var);
  for (int i = 0; i < deg; ++i) t = t_shift(t);
  return head ? t_head(t) : t;
}

}  // namespace

homogeneous_premises homogeneous_premises::from_identities(
    const std::vector<identity>& ids) {
  homogeneous_premises p;
  for (const auto& id : ids) {
    auto [l, r] = split_homogeneous(id);
    (l.head ? p.head_ids : p.shift_ids).push_back(to_hid(l, r));
  }
  return p;
}

std::vector<identity> homogeneous_premises::to_identities() const {
  std::vector<identity> out;
  for (const auto& i : shift_ids)
    out.push_back(make_eq(tower_term(i.x, i.n, false), tower_term(i.y, i.k, false)));
  for (const auto& i : head_ids)
    out.push_back(make_eq(tower_term(i.x, i.n, true), tower_term(i.y, i.k, true)));
  return out;
}

int homogeneous_premises::count() const {
  return static_cast<int>(shift_ids.size() + head_ids.size());
}

int homogeneous_premises::max_degree() const {
  int d = 0;
  for (const auto* ids : {&shift_ids, &head_ids})
    for (const auto& i : *ids) d = std::max({d, i.n, i.k});
  return d;
}

std::vector<std::string> homogeneous_premises::vars() const {
  std::set<std::string> vs;
  for (const auto* ids : {&shift_ids, &head_ids})
    for (const auto& i : *ids) {
      vs.insert(i.x);
      vs.insert(i.y);
    }
  return {vs.begin(), vs.end()};
}

homogeneous_query homogeneous_query::of(const identity& id) {
  auto [l, r] = split_homogeneous(id);
  homogeneous_query q;
  q.head = l.head;
  q.x = l.var;
  q.n = l.deg;
  q.y = r.var;
  q.k = r.deg;
  return q;
}

int default_bound(const homogeneous_premises& p, int query_max_degree) {
  int d = p.max_degree();
  return d + query_max_degree + p.count() * (d + 1);
}

namespace {

int uf_find(std::vector<int>& parent, int a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

void uf_union(std::vector<int>& parent, int a, int b) {
  parent[uf_find(parent, a)] = uf_find(parent, b);
}

}  // namespace

proof_graph::proof_graph(const homogeneous_premises& p,
                         std::vector<std::string> vars, int bound)
    : bound_(bound) {
  if (bound < 0) throw error("BoundTooSmall", "graph bound must be non-negative");
  for (const auto& v : p.vars()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  vars_ = std::move(vars);

  const int width = bound_ + 1;
  const int nodes = static_cast<int>(vars_.size()) * width;
  std::vector<int> strong(nodes), any(nodes);
  for (int i = 0; i < nodes; ++i) strong[i] = any[i] = i;

  auto idx = [&](const std::string& v, int deg) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    return static_cast<int>(it - vars_.begin()) * width + deg;
  };

  // strong edges: every shift of a shift identity that stays within bound
  for (const auto& i : p.shift_ids)
    for (int j = 0; i.n + j <= bound_ && i.k + j <= bound_; ++j) {
      uf_union(strong, idx(i.x, i.n + j), idx(i.y, i.k + j));
      ++strong_edges_;
    }
  // weak edges: exactly at the head identities' indices
  for (int i = 0; i < nodes; ++i) any[i] = uf_find(strong, i);
  for (const auto& i : p.head_ids) {
    if (i.n > bound_ || i.k > bound_) continue;
    uf_union(any, idx(i.x, i.n), idx(i.y, i.k));
    ++weak_edges_;
  }

  strong_root_.resize(nodes);
  any_root_.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    strong_root_[i] = uf_find(strong, i);
    any_root_[i] = uf_find(any, i);
  }
}

int proof_graph::node(const std::string& v, int deg) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v)
    throw error("UnknownElement", "variable '" + v + "' is not a graph node");
  if (deg < 0 || deg > bound_)
    throw error("BoundTooSmall", "degree " + std::to_string(deg) +
                                     " exceeds the graph bound " +
                                     std::to_string(bound_));
  return static_cast<int>(it - vars_.begin()) * (bound_ + 1) + deg;
}

bool proof_graph::strong_path(const std::string& x, int n, const std::string& y,
                              int k) const {
  return strong_root_[node(x, n)] == strong_root_[node(y, k)];
}

bool proof_graph::any_path(const std::string& x, int n, const std::string& y,
                           int k) const {
  return any_root_[node(x, n)] == any_root_[node(y, k)];
}

namespace {

decision decide_impl(const homogeneous_premises& p, const std::string& x, int n,
                     const std::string& y, int k, int bound, bool head) {
  if (bound < 0) bound = default_bound(p, std::max(n, k));
  if (n > bound || k > bound)
    throw error("BoundTooSmall", "query degree exceeds the bound " +
                                     std::to_string(bound));
  proof_graph g(p, {x, y}, bound);
  bool connected = head ? g.any_path(x, n, y, k) : g.strong_path(x, n, y, k);
  return connected ? decision::provable : decision::unknown;
}

}  // namespace

decision decide_shift(const homogeneous_premises& p, const std::string& x, int n,
                      const std::string& y, int k, int bound) {
  return decide_impl(p, x, n, y, k, bound, false);
}

decision decide_head(const homogeneous_premises& p, const std::string& x, int n,
                     const std::string& y, int k, int bound) {
  return decide_impl(p, x, n, y, k, bound, true);
}

decision decide(const homogeneous_premises& p, const identity& goal, int bound) {
  homogeneous_query q = homogeneous_query::of(goal);
  return q.head ? decide_head(p, q.x, q.n, q.y, q.k, bound)
                : decide_shift(p, q.x, q.n, q.y, q.k, bound);
}

// ---------------------------------------------------------------------------
// Bounded proof-search oracle: congruence closure over a finite term
// universe, leveled by schema applications.

namespace {

struct term_universe {
  std::vector<std::string> vars;                      // var index -> name
  std::vector<std::pair<int, std::string>> terms;     // id -> (var, word)
  std::map<std::pair<int, std::string>, int> index;   // (var, word) -> id
  std::vector<int> hd_of, sh_of;                      // image ids or -1
  size_t cap = 0;

  int var_index(const std::string& v) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    return it != vars.end() && *it == v ? static_cast<int>(it - vars.begin()) : -1;
  }
  int lookup(int var, const std::string& word) const {
    auto it = index.find({var, word});
    return it == index.end() ? -1 : it->second;
  }
  int add(int var, const std::string& word) {
    auto [it, fresh] = index.try_emplace({var, word},
                                         static_cast<int>(terms.size()));
    if (fresh) terms.emplace_back(var, word);
    return it->second;
  }
  void finish_images() {
    hd_of.assign(terms.size(), -1);
    sh_of.assign(terms.size(), -1);
    for (size_t t = 0; t < terms.size(); ++t) {
      const auto& [v, w] = terms[t];
      if (w.size() + 1 > cap) continue;
      hd_of[t] = lookup(v, "h" + w);
      sh_of[t] = lookup(v, "s" + w);
    }
  }
};

// Union-find with per-class member lists and image samples; merging two
// classes queues the merge of their hd- and sh-images, so saturating the
// queue computes the congruence closure of the pending identities.
struct closure {
  const term_universe& U;
  std::vector<int> parent;
  std::vector<std::vector<int>> members;
  std::vector<int> hd_sample, sh_sample;

  explicit closure(const term_universe& u)
      : U(u),
        parent(u.terms.size()),
        members(u.terms.size()),
        hd_sample(u.terms.size(), -1),
        sh_sample(u.terms.size(), -1) {
    for (size_t t = 0; t < u.terms.size(); ++t) {
      parent[t] = static_cast<int>(t);
      members[t] = {static_cast<int>(t)};
      if (u.hd_of[t] != -1) hd_sample[t] = static_cast<int>(t);
      if (u.sh_of[t] != -1) sh_sample[t] = static_cast<int>(t);
    }
  }

  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  bool unite(int a, int b, std::vector<std::pair<int, int>>& queue) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (members[a].size() < members[b].size()) std::swap(a, b);
    // keep the class images congruent: images of the absorbed class must
    // join the images of the absorbing one
    if (hd_sample[b] != -1) {
      if (hd_sample[a] == -1)
        hd_sample[a] = hd_sample[b];
      else
        queue.emplace_back(U.hd_of[hd_sample[a]], U.hd_of[hd_sample[b]]);
    }
    if (sh_sample[b] != -1) {
      if (sh_sample[a] == -1)
        sh_sample[a] = sh_sample[b];
      else
        queue.emplace_back(U.sh_of[sh_sample[a]], U.sh_of[sh_sample[b]]);
    }
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    members[b].shrink_to_fit();
    parent[b] = a;
    return true;
  }

  bool saturate(std::vector<std::pair<int, int>> queue) {
    bool changed = false;
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      changed |= unite(u, v, queue);
    }
    return changed;
  }

  // one representative per class: the shortest member keeps its hd/sh images
  // inside the universe whenever any member does
  std::vector<int> class_reps() {
    std::map<int, int> best;
    for (size_t t = 0; t < U.terms.size(); ++t) {
      int r = find(static_cast<int>(t));
      auto [it, fresh] = best.try_emplace(r, static_cast<int>(t));
      if (!fresh &&
          U.terms[t].second.size() < U.terms[static_cast<size_t>(it->second)].second.size())
        it->second = static_cast<int>(t);
    }
    std::vector<int> reps;
    reps.reserve(best.size());
    for (const auto& [root, rep] : best) reps.push_back(rep);
    return reps;
  }
};

// Instantiation of a quasiequation schema: schema variables range over the
// term universe (one representative per congruence class suffices, because
// the closure invariant already identifies the images of equal terms).
struct schema_engine {
  const term_universe& U;
  closure& C;
  std::vector<std::pair<int, int>>& pending;
  std::vector<int> reps;

  // schema term = word applied to a schema variable
  struct part {
    std::string word;
    std::string var;
  };
  static part split(const term_ptr& t) {
    auto w = discrete_word(t);
    if (!w)
      throw error("InvalidSpec",
                  "schema terms must stay in the hd/sh signature: " + print_term(t));
    return part{w->first, w->second};
  }

  int eval(const part& p, const std::map<std::string, int>& sigma) const {
    int base = sigma.at(p.var);
    const auto& [v, w] = U.terms[static_cast<size_t>(base)];
    if (p.word.size() + w.size() > U.cap) return -1;
    return U.lookup(v, p.word + w);
  }

  bool assigned(const part& p, const std::map<std::string, int>& sigma) const {
    return sigma.count(p.var) != 0;
  }

  void run(const quasiequation& q) {
    std::vector<std::pair<part, part>> prem;
    prem.reserve(q.premises.size());
    for (const auto& p : q.premises)
      prem.emplace_back(split(p.lhs), split(p.rhs));
    std::set<std::string> vars;
    for (const auto& [l, r] : prem) {
      vars.insert(l.var);
      vars.insert(r.var);
    }
    part cl = split(q.conclusion.lhs), cr = split(q.conclusion.rhs);
    vars.insert(cl.var);
    vars.insert(cr.var);
    std::map<std::string, int> sigma;
    extend(prem, cl, cr, vars, sigma);
  }

  void extend(const std::vector<std::pair<part, part>>& prem, const part& cl,
              const part& cr, const std::set<std::string>& vars,
              std::map<std::string, int>& sigma) {
    // check premises whose variables are fully assigned; fail fast
    std::vector<size_t> open;
    for (size_t i = 0; i < prem.size(); ++i) {
      const auto& [l, r] = prem[i];
      if (assigned(l, sigma) && assigned(r, sigma)) {
        int a = eval(l, sigma), b = eval(r, sigma);
        if (a == -1 || b == -1 || C.find(a) != C.find(b)) return;
      } else {
        open.push_back(i);
      }
    }

    if (sigma.size() == vars.size()) {
      int a = eval(cl, sigma), b = eval(cr, sigma);
      if (a != -1 && b != -1 && C.find(a) != C.find(b)) pending.emplace_back(a, b);
      return;
    }

    // prefer a premise with one side assigned: the other side's variable is
    // then forced into the matching congruence class
    for (size_t i : open) {
      const auto& [l, r] = prem[i];
      for (const auto& halves : {std::array<const part*, 2>{&l, &r},
                                 std::array<const part*, 2>{&r, &l}}) {
        const part &known = *halves[0], &wanted = *halves[1];
        if (!assigned(known, sigma) || assigned(wanted, sigma)) continue;
        int u = eval(known, sigma);
        if (u == -1) return;  // this instance leaves the universe
        // one candidate per congruence class, the shortest, so its own
        // images stay inside the universe whenever any choice's would
        std::map<int, int> by_class;
        for (int m : C.members[static_cast<size_t>(C.find(u))]) {
          const auto& [v, w] = U.terms[static_cast<size_t>(m)];
          if (w.compare(0, wanted.word.size(), wanted.word) != 0) continue;
          int cand = U.lookup(v, w.substr(wanted.word.size()));
          if (cand == -1) continue;
          auto [it, fresh] = by_class.try_emplace(C.find(cand), cand);
          if (!fresh && U.terms[static_cast<size_t>(cand)].second.size() <
                            U.terms[static_cast<size_t>(it->second)].second.size())
            it->second = cand;
        }
        for (const auto& [root, cand] : by_class) {
          sigma[wanted.var] = cand;
          extend(prem, cl, cr, vars, sigma);
          sigma.erase(wanted.var);
        }
        return;
      }
    }

    // otherwise branch the first unassigned variable over class reps
    for (const auto& v : vars) {
      if (sigma.count(v)) continue;
      for (int rep : reps) {
        sigma[v] = rep;
        extend(prem, cl, cr, vars, sigma);
        sigma.erase(v);
      }
      return;
    }
  }
};

}  // namespace

oracle_result proof_search_oracle(const std::vector<identity>& premises,
                                  const identity& goal, int depth,
                                  const std::vector<quasiequation>& schemas,
                                  int size_cap) {
  if (depth < 1) throw error("InvalidSpec", "oracle depth must be at least 1");

  // parse the inputs and decide the universe shape
  std::vector<std::pair<std::pair<std::string, std::string>,
                        std::pair<std::string, std::string>>> prem_words;
  auto word_of = [](const term_ptr& t) {
    auto w = discrete_word(t);
    if (!w)
      throw error("InvalidSpec",
                  "oracle terms must stay in the hd/sh signature: " + print_term(t));
    return *w;
  };
  std::set<std::string> var_names;
  size_t max_len = 0;
  bool towers = schemas.empty();
  auto note = [&](const std::pair<std::string, std::string>& w) {
    var_names.insert(w.second);
    max_len = std::max(max_len, w.first.size());
    towers = towers && is_tower(w.first);
  };
  for (const auto& p : premises) {
    prem_words.emplace_back(word_of(p.lhs), word_of(p.rhs));
    note(prem_words.back().first);
    note(prem_words.back().second);
  }
  auto gl = word_of(goal.lhs), gr = word_of(goal.rhs);
  note(gl);
  note(gr);
  if (goal.shape != id_shape::equation ||
      std::any_of(premises.begin(), premises.end(),
                  [](const identity& i) { return i.shape != id_shape::equation; }))
    throw error("InvalidSpec", "the discrete oracle handles equations only");

  term_universe U;
  U.vars.assign(var_names.begin(), var_names.end());

  size_t cap;
  if (size_cap > 0) {
    cap = static_cast<size_t>(size_cap);
  } else if (towers) {
    // mirror the graph's default bound: premise count and degrees, plus one
    // for the head wrapper
    size_t maxdeg = 0;
    for (const auto& [l, r] : prem_words)
      for (const auto* w : {&l, &r})
        maxdeg = std::max(maxdeg,
                          static_cast<size_t>(std::count(w->first.begin(),
                                                         w->first.end(), 's')));
    size_t qdeg = std::max(gl.first.size(), gr.first.size());
    cap = maxdeg + qdeg + prem_words.size() * (maxdeg + 1) + 1;
  } else {
    cap = max_len + 4;
  }
  cap = std::max(cap, max_len);
  U.cap = cap;

  for (int v = 0; v < static_cast<int>(U.vars.size()); ++v) {
    if (towers) {
      std::string word;
      for (size_t d = 0; d <= cap; ++d, word.push_back('s')) {
        U.add(v, word);                          // sh^d
        if (word.size() + 1 <= cap) U.add(v, "h" + word);  // hd sh^d
      }
    } else {
      // every hd/sh word up to the length cap, built by length
      std::vector<std::string> layer = {""};
      U.add(v, "");
      for (size_t l = 1; l <= cap; ++l) {
        std::vector<std::string> next;
        next.reserve(layer.size() * 2);
        for (const auto& w : layer)
          for (char c : {'h', 's'}) {
            next.push_back(c + w);
            U.add(v, next.back());
          }
        layer = std::move(next);
      }
    }
  }
  U.finish_images();

  closure C(U);
  auto id_of = [&](const std::pair<std::string, std::string>& w) {
    return U.lookup(U.var_index(w.second), w.first);
  };
  const int goal_l = id_of(gl), goal_r = id_of(gr);

  std::vector<std::pair<int, int>> initial;
  for (const auto& [l, r] : prem_words) initial.emplace_back(id_of(l), id_of(r));

  oracle_result result;
  for (int level = 1; level <= depth; ++level) {
    result.depth_used = level;
    bool changed = C.saturate(std::move(initial));
    initial = {};
    if (!schemas.empty()) {
      std::vector<std::pair<int, int>> pending;
      schema_engine eng{U, C, pending, C.class_reps()};
      for (const auto& q : schemas) eng.run(q);
      changed |= C.saturate(std::move(pending));
    }
    if (C.find(goal_l) == C.find(goal_r)) {
      result.outcome = decision::provable;
      return result;
    }
    if (!changed) {
      result.saturated = true;
      return result;
    }
  }
  return result;
}

const std::vector<quasiequation>& theta_axioms() {
  static const std::vector<quasiequation> axioms = [] {
    term_ptr x = t_var("x"), y = t_var("y");
    std::vector<quasiequation> out;
    out.push_back({{}, make_eq(t_head(x), t_head(t_head(x)))});
    out.push_back({{}, make_eq(t_shift(t_head(x)), t_head(x))});
    out.push_back({{make_eq(x, t_head(y))}, make_eq(t_head(x), t_head(y))});
    out.push_back({{make_eq(x, t_head(y))}, make_eq(t_shift(x), x)});
    return out;
  }();
  return axioms;
}

}  // namespace aic
