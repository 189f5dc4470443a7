#include "aic/kernel.hpp"

#include <algorithm>

namespace aic {

deriv_ptr make_leaf(int index, identity concl) {
  auto d = std::make_shared<derivation>();
  d->conclusion = std::move(concl);
  d->leaf = true;
  d->leaf_index = index;
  return d;
}

deriv_ptr make_step(std::string rule, identity concl, std::vector<deriv_ptr> children,
                    std::map<std::string, term_ptr> with,
                    std::optional<context_data> ctx) {
  auto d = std::make_shared<derivation>();
  d->conclusion = std::move(concl);
  d->rule = std::move(rule);
  d->children = std::move(children);
  d->with = std::move(with);
  d->ctx = std::move(ctx);
  return d;
}

bool deriv_eq(const derivation& a, const derivation& b) {
  if (a.leaf != b.leaf) return false;
  if (!identity_eq(a.conclusion, b.conclusion)) return false;
  if (a.leaf) return a.leaf_index == b.leaf_index;
  if (a.rule != b.rule) return false;
  if (a.with.size() != b.with.size()) return false;
  for (const auto& [k, v] : a.with) {
    auto it = b.with.find(k);
    if (it == b.with.end() || !term_eq(v, it->second)) return false;
  }
  if (a.ctx.has_value() != b.ctx.has_value()) return false;
  if (a.ctx) {
    const auto& x = *a.ctx;
    const auto& y = *b.ctx;
    if (x.hole != y.hole || !term_eq(x.s, y.s) || !term_eq(x.t, y.t) ||
        !term_eq(x.u, y.u) || !term_eq(x.w, y.w))
      return false;
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!deriv_eq(*a.children[i], *b.children[i])) return false;
  return true;
}

bool match_term(const term_ptr& pattern, const term_ptr& target,
                std::map<std::string, term_ptr>& binding) {
  if (!pattern || !target) return pattern == target;
  if (pattern->kind == term_kind::var) {
    auto it = binding.find(pattern->name);
    if (it != binding.end()) return term_eq(it->second, target);
    binding.emplace(pattern->name, target);
    return true;
  }
  if (pattern->kind != target->kind || pattern->name != target->name) return false;
  return match_term(pattern->a, target->a, binding) &&
         match_term(pattern->b, target->b, binding);
}

bool match_identity(const identity& pattern, const identity& target,
                    std::map<std::string, term_ptr>& binding) {
  identity p = desugar(pattern), t = desugar(target);
  return match_term(p.lhs, t.lhs, binding) && match_term(p.rhs, t.rhs, binding);
}

namespace {

class checker {
 public:
  checker(const quasiequation& q, const rule_set& rs) : q_(q), rs_(rs) {}

  check_result run(const derivation& d) {
    if (!identity_eq_desugared(d.conclusion, q_.conclusion)) {
      return {false,
              check_error{"ConclusionMismatch",
                          {},
                          "root concludes " + print_identity(d.conclusion) +
                              " but the goal is " + print_identity(q_.conclusion)}};
    }
    std::vector<int> path;
    if (!visit(d, path)) return {false, err_};
    return {true, std::nullopt};
  }

 private:
  bool fail(std::string cls, const std::vector<int>& path, std::string detail) {
    err_ = check_error{std::move(cls), path, std::move(detail)};
    return false;
  }

  bool visit(const derivation& d, std::vector<int>& path) {
    if (d.leaf) {
      if (!d.children.empty()) return fail("BadLeaf", path, "leaf nodes take no subproofs");
      if (d.leaf_index < 0 || d.leaf_index >= static_cast<int>(q_.premises.size()))
        return fail("BadLeaf", path,
                    "premise index " + std::to_string(d.leaf_index) + " out of range");
      if (!identity_eq_desugared(d.conclusion, q_.premises[d.leaf_index]))
        return fail("BadLeaf", path,
                    "leaf states " + print_identity(d.conclusion) + " but premise " +
                        std::to_string(d.leaf_index) + " is " +
                        print_identity(q_.premises[d.leaf_index]));
      return true;
    }

    const rule* r = rs_.find(d.rule);
    if (!r) return fail("RuleNotFound", path, "no rule named '" + d.rule + "'");
    if (r->kind == rule_kind::aicw_infinitary)
      return fail("InfinitaryRule", path,
                  "'" + d.rule + "' has infinitely many premises and cannot be cited " +
                      "in a finite derivation; it is validated semantically instead");
    if (r->kind == rule_kind::context_schema) return visit_indiscern(d, path);
    if (d.ctx) return fail("ContextMismatch", path, "rule '" + d.rule + "' takes no context");
    if (d.children.size() != r->premises.size())
      return fail("ArityMismatch", path,
                  "'" + d.rule + "' needs " + std::to_string(r->premises.size()) +
                      " subproofs, found " + std::to_string(d.children.size()));

    std::map<std::string, term_ptr> binding = d.with;
    if (!match_identity(r->conclusion, d.conclusion, binding))
      return fail("MatchFail", path,
                  "conclusion " + print_identity(d.conclusion) +
                      " is not an instance of '" + d.rule +
                      "': " + print_identity(r->conclusion));
    for (size_t i = 0; i < d.children.size(); ++i) {
      if (!match_identity(r->premises[i], d.children[i]->conclusion, binding))
        return fail("MatchFail", path,
                    "subproof " + std::to_string(i) + " concludes " +
                        print_identity(d.children[i]->conclusion) +
                        " which does not fit premise " +
                        print_identity(r->premises[i]) + " of '" + d.rule + "'");
    }
    std::set<std::string> rule_vars = free_vars(r->conclusion);
    for (const auto& p : r->premises) {
      auto v = free_vars(p);
      rule_vars.insert(v.begin(), v.end());
    }
    for (const auto& v : rule_vars)
      if (!binding.count(v))
        return fail("UnboundPatternVar", path,
                    "variable '" + v + "' of '" + d.rule + "' is not determined");

    for (size_t i = 0; i < d.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      if (!visit(*d.children[i], path)) return false;
      path.pop_back();
    }
    return true;
  }

  bool visit_indiscern(const derivation& d, std::vector<int>& path) {
    if (!d.ctx || !d.ctx->s || !d.ctx->t || !d.ctx->u || !d.ctx->w || d.ctx->hole.empty())
      return fail("MissingContext", path,
                  "indiscernibility steps need ctx hole:=x, s:=..., t:=..., u:=..., w:=...");
    if (d.children.size() != 2)
      return fail("ArityMismatch", path, "indiscernibility steps take exactly 2 subproofs");
    const context_data& c = *d.ctx;
    const identity base = desugar(make_le(c.s, c.t));
    const identity before = substitute(base, {{c.hole, c.u}});
    const identity after = substitute(base, {{c.hole, c.w}});
    if (!identity_eq_desugared(d.children[0]->conclusion, before))
      return fail("ContextMismatch", path,
                  "first subproof concludes " + print_identity(d.children[0]->conclusion) +
                      " but the context instantiated at u is " + print_identity(before));
    if (!identity_eq_desugared(d.children[1]->conclusion, make_eq(c.u, c.w)))
      return fail("ContextMismatch", path,
                  "second subproof concludes " + print_identity(d.children[1]->conclusion) +
                      " but the cited equation is " + print_identity(make_eq(c.u, c.w)));
    if (!identity_eq_desugared(d.conclusion, after))
      return fail("ContextMismatch", path,
                  "step concludes " + print_identity(d.conclusion) +
                      " but the context instantiated at w is " + print_identity(after));
    for (size_t i = 0; i < 2; ++i) {
      path.push_back(static_cast<int>(i));
      if (!visit(*d.children[i], path)) return false;
      path.pop_back();
    }
    return true;
  }

  const quasiequation& q_;
  const rule_set& rs_;
  check_error err_;
};

}  // namespace

check_result check(const derivation& d, const quasiequation& q, const rule_set& rs) {
  return checker(q, rs).run(d);
}

rule_set register_derived(const rule_set& rs, const std::string& name,
                          const quasiequation& q, const deriv_ptr& d) {
  check_result res = check(*d, q, rs);
  if (!res.ok)
    throw error(res.err->cls, "cannot register '" + name + "': " + res.err->detail);
  rule r;
  r.name = name;
  r.kind = rule_kind::derived;
  r.premises = q.premises;
  r.conclusion = q.conclusion;
  r.provenance = d;
  rule_set out = rs;
  out.add(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// inlining

namespace {

void collect_tree_vars(const derivation& d, std::set<std::string>& out) {
  auto add_term = [&](const term_ptr& t) {
    if (!t) return;
    auto v = free_vars(t);
    out.insert(v.begin(), v.end());
  };
  add_term(d.conclusion.lhs);
  add_term(d.conclusion.rhs);
  for (const auto& [k, v] : d.with) add_term(v);
  if (d.ctx) {
    add_term(d.ctx->s);
    add_term(d.ctx->t);
    add_term(d.ctx->u);
    add_term(d.ctx->w);
    out.insert(d.ctx->hole);
  }
  for (const auto& c : d.children) collect_tree_vars(*c, out);
}

struct splicer {
  const std::vector<deriv_ptr>& plugs;
  int& fresh_counter;

  deriv_ptr walk(const derivation& n, const std::map<std::string, term_ptr>& sub) {
    if (n.leaf) return plugs.at(static_cast<size_t>(n.leaf_index));
    auto out = std::make_shared<derivation>();
    out->conclusion = substitute(n.conclusion, sub);
    out->rule = n.rule;
    for (const auto& [k, v] : n.with) out->with.emplace(k, substitute(v, sub));
    if (n.ctx) {
      // the hole is bound within the context: rename it fresh so the
      // substitution can neither capture it nor be blocked by it
      std::string fresh = "v$" + std::to_string(fresh_counter++);
      std::map<std::string, term_ptr> hole_rename = {{n.ctx->hole, t_var(fresh)}};
      context_data c;
      c.hole = fresh;
      c.s = substitute(substitute(n.ctx->s, hole_rename), sub);
      c.t = substitute(substitute(n.ctx->t, hole_rename), sub);
      c.u = substitute(n.ctx->u, sub);
      c.w = substitute(n.ctx->w, sub);
      out->ctx = std::move(c);
    }
    for (const auto& ch : n.children) out->children.push_back(walk(*ch, sub));
    return out;
  }
};

deriv_ptr inline_rec(const deriv_ptr& d, const rule_set& rs, int& fresh_counter) {
  std::vector<deriv_ptr> kids;
  kids.reserve(d->children.size());
  for (const auto& c : d->children) kids.push_back(inline_rec(c, rs, fresh_counter));

  const rule* r = d->leaf ? nullptr : rs.find(d->rule);
  if (r && r->kind == rule_kind::derived && r->provenance) {
    // recover the instantiation of the derived rule at this node
    std::map<std::string, term_ptr> sigma = d->with;
    bool ok = match_identity(r->conclusion, d->conclusion, sigma);
    for (size_t i = 0; ok && i < kids.size(); ++i)
      ok = match_identity(r->premises[i], kids[i]->conclusion, sigma);
    if (!ok || kids.size() != r->premises.size())
      throw error("MatchFail", "cannot re-instantiate derived rule '" + d->rule +
                                   "' while inlining");
    // auxiliary variables of the registered derivation (anything beyond the
    // rule statement) must not collide with the instance: rename them fresh
    std::set<std::string> stmt_vars = free_vars(r->conclusion);
    for (const auto& p : r->premises) {
      auto v = free_vars(p);
      stmt_vars.insert(v.begin(), v.end());
    }
    std::set<std::string> tree_vars;
    collect_tree_vars(*r->provenance, tree_vars);
    for (const auto& v : tree_vars)
      if (!stmt_vars.count(v))
        sigma.emplace(v, t_var("v$" + std::to_string(fresh_counter++)));

    splicer sp{kids, fresh_counter};
    deriv_ptr body = sp.walk(*r->provenance, sigma);
    // the spliced body may itself cite derived rules
    return inline_rec(body, rs, fresh_counter);
  }

  if (d->leaf) return d;
  auto out = std::make_shared<derivation>();
  out->conclusion = d->conclusion;
  out->rule = d->rule;
  out->with = d->with;
  out->ctx = d->ctx;
  out->children = std::move(kids);
  return out;
}

}  // namespace

deriv_ptr inline_derived(const deriv_ptr& d, const rule_set& rs) {
  int fresh_counter = 0;
  return inline_rec(d, rs, fresh_counter);
}

}  // namespace aic
