#include "aic/corpus.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aic/errors.hpp"
#include "aic/kernel.hpp"

namespace aic {

namespace {

bool statement_agrees(const rule& r, const quasiequation& q) {
  if (r.premises.size() != q.premises.size()) return false;
  for (size_t i = 0; i < r.premises.size(); ++i)
    if (!identity_eq(r.premises[i], q.premises[i])) return false;
  return identity_eq(r.conclusion, q.conclusion);
}

rule rule_of(const proof_script& ps) {
  rule r;
  r.name = ps.name;
  r.kind = rule_kind::derived;
  r.premises = ps.statement.premises;
  r.conclusion = ps.statement.conclusion;
  r.provenance = ps.tree;
  return r;
}

std::string describe(const check_error& e) {
  std::string s = e.cls;
  s += " at [";
  for (size_t i = 0; i < e.path.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(e.path[i]);
  }
  s += "]: ";
  s += e.detail;
  return s;
}

// Registers ps.uses (and their transitive uses, depth first) as derived rules
// in rs.  A dependency whose name rs already resolves is skipped when the
// statements agree -- the present rule subsumes it -- and rejected otherwise,
// so a lemma proved in a weak context is usable verbatim in a stronger one
// that has the same fact (or some of the lemma's own scaffolding) built in.
void register_uses(rule_set& rs, const proof_script& ps,
                   const std::map<std::string, const proof_script*>& universe,
                   std::set<std::string>& active) {
  for (const auto& dep_name : ps.uses) {
    auto it = universe.find(dep_name);
    if (it == universe.end())
      throw error("RuleNotFound",
                  "proof '" + ps.name + "' uses unknown proof '" + dep_name + "'");
    const proof_script& dep = *it->second;
    if (const rule* present = rs.find(dep_name)) {
      if (!statement_agrees(*present, dep.statement))
        throw error("DuplicateName", "dependency '" + dep_name + "' of '" + ps.name +
                                         "' clashes with a different rule of that name");
      continue;
    }
    if (!active.insert(dep_name).second)
      throw error("DependencyCycle", "proof '" + dep_name + "' depends on itself");
    register_uses(rs, dep, universe, active);
    active.erase(dep_name);
    rs = register_derived(rs, dep_name, dep.statement, dep.tree);
  }
}

}  // namespace

const corpus& corpus::embedded() {
  static const corpus instance = from_documents(embedded_corpus());
  return instance;
}

corpus corpus::from_documents(
    const std::vector<std::pair<std::string, std::string>>& docs) {
  corpus c;
  // Registry of already-parsed entries so later documents' rw steps can cite
  // them; map nodes are pointer-stable.
  std::map<std::string, rule> seen;
  rule_lookup lookup = [&seen](const std::string& n) -> const rule* {
    auto it = seen.find(n);
    return it == seen.end() ? nullptr : &it->second;
  };
  for (const auto& [doc_name, text] : docs) {
    std::vector<proof_script> doc;
    try {
      doc = parse_proof_document(text, lookup);
    } catch (const error& e) {
      throw error(e.cls(), doc_name + ": " + e.what());
    }
    for (auto& ps : doc) {
      if (c.index_.count(ps.name))
        throw error("DuplicateName",
                    doc_name + ": proof '" + ps.name + "' is already defined");
      seen.emplace(ps.name, rule_of(ps));
      c.index_.emplace(ps.name, c.entries_.size());
      c.entries_.push_back(std::move(ps));
    }
  }
  return c;
}

const proof_script* corpus::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::map<std::string, const proof_script*> corpus::universe() const {
  std::map<std::string, const proof_script*> u;
  for (const auto& ps : entries_) u.emplace(ps.name, &ps);
  return u;
}

rule_set corpus::build_rules(
    const proof_script& ps,
    const std::map<std::string, const proof_script*>& universe) const {
  rule_set rs = rule_set::builtin(ps.ruleset_spec, ps.funcs);
  std::set<std::string> active{ps.name};
  register_uses(rs, ps, universe, active);
  return rs;
}

rule_set corpus::rules_for(const proof_script& ps) const {
  return build_rules(ps, universe());
}

check_result corpus::check_entry(const proof_script& ps) const {
  try {
    rule_set rs = rules_for(ps);
    return check(*ps.tree, ps.statement, rs);
  } catch (const error& e) {
    check_result r;
    r.ok = false;
    r.err = check_error{e.cls(), {}, e.what()};
    return r;
  }
}

std::vector<corpus::report> corpus::check_all() const {
  std::vector<report> out;
  out.reserve(entries_.size());
  for (const auto& ps : entries_) {
    check_result r = check_entry(ps);
    report rep;
    rep.name = ps.name;
    rep.ok = r.ok;
    if (!r.ok && r.err) rep.detail = describe(*r.err);
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<proof_script> corpus::parse_document(const std::string& text) const {
  std::map<std::string, rule> cache;
  rule_lookup lookup = [this, &cache](const std::string& n) -> const rule* {
    auto it = cache.find(n);
    if (it != cache.end()) return &it->second;
    const proof_script* ps = find(n);
    if (!ps) return nullptr;
    return &cache.emplace(n, rule_of(*ps)).first->second;
  };
  return parse_proof_document(text, lookup);
}

std::vector<corpus::report> corpus::check_document(
    const std::vector<proof_script>& doc) const {
  auto u = universe();
  for (const auto& ps : doc) u[ps.name] = &ps;  // document entries shadow
  std::vector<report> out;
  out.reserve(doc.size());
  for (const auto& ps : doc) {
    report rep;
    rep.name = ps.name;
    try {
      rule_set rs = build_rules(ps, u);
      check_result r = check(*ps.tree, ps.statement, rs);
      rep.ok = r.ok;
      if (!r.ok && r.err) rep.detail = describe(*r.err);
    } catch (const error& e) {
      rep.ok = false;
      rep.detail = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------
// k-induction bundle
// ---------------------------------------------------------------------------

namespace {

using bind_map = std::map<std::string, term_ptr>;

term_ptr fF(const term_ptr& t) { return t_apply("F", t); }

// P^0(b) = b,  P^(j+1)(b) = F P^j(b) /\ b
term_ptr phi(int j) {
  term_ptr t = t_var("b");
  for (int i = 0; i < j; ++i) t = t_meet(fF(t), t_var("b"));
  return t;
}

std::string nm(const char* stem, int j) { return std::string(stem) + std::to_string(j); }

proof_script script(std::string name, std::vector<std::string> uses,
                    quasiequation stmt, deriv_ptr tree) {
  proof_script ps;
  ps.name = std::move(name);
  ps.funcs = {"F"};
  ps.ruleset_spec = "AIC1";
  ps.uses = std::move(uses);
  ps.statement = std::move(stmt);
  ps.tree = std::move(tree);
  return ps;
}

// Replacement node as the rw shorthand expands it: the equation u = w cited
// left to right under context s <= t.
deriv_ptr replace_fwd(identity concl, deriv_ptr body, const std::string& ax,
                      bind_map sigma, term_ptr s, term_ptr t, term_ptr u, term_ptr w) {
  deriv_ptr cite = make_step(ax, make_eq(u, w), {}, std::move(sigma));
  context_data ctx{std::move(s), std::move(t), "h", u, w};
  return make_step("indiscern", std::move(concl), {std::move(body), std::move(cite)}, {},
                   std::move(ctx));
}

// The same with the equation cited right to left (the axiom instance states
// w = u and is wrapped in symm).
deriv_ptr replace_bwd(identity concl, deriv_ptr body, const std::string& ax,
                      bind_map sigma, term_ptr s, term_ptr t, term_ptr u, term_ptr w) {
  deriv_ptr cite = make_step(ax, make_eq(w, u), {}, std::move(sigma));
  deriv_ptr flipped = make_step("symm", make_eq(u, w), {std::move(cite)});
  context_data ctx{std::move(s), std::move(t), "h", u, w};
  return make_step("indiscern", std::move(concl), {std::move(body), std::move(flipped)}, {},
                   std::move(ctx));
}

proof_script gen_kind_desc(int j) {
  term_ptr b = t_var("b");
  if (j == 0) {
    // |- F b /\ b <= b
    auto tree = make_step("meet-intro-l", make_le(t_meet(fF(b), b), b),
                          {make_step("reflex", make_le(b, b), {})});
    return script("kind-desc-0", {}, {{}, make_le(phi(1), phi(0))}, tree);
  }
  // |- P^(j+1) <= P^j, from F-monotonicity of the previous descent
  term_ptr pj = phi(j), pjm1 = phi(j - 1);
  auto prev = make_step(nm("kind-desc-", j - 1), make_le(pj, pjm1), {});
  auto fmono = make_step("F-mono", make_le(fF(pj), fF(pjm1)), {std::move(prev)});
  auto left = make_step("meet-intro-l", make_le(t_meet(b, fF(pj)), fF(pjm1)),
                        {std::move(fmono)});
  auto swapped = replace_fwd(make_le(t_meet(fF(pj), b), fF(pjm1)), std::move(left),
                             "meet-comm", {{"a", b}, {"b", fF(pj)}}, t_var("h"), fF(pjm1),
                             t_meet(b, fF(pj)), t_meet(fF(pj), b));
  auto right = make_step("meet-intro-l", make_le(t_meet(fF(pj), b), b),
                         {make_step("reflex", make_le(b, b), {})});
  auto tree = make_step("meet-intro-r", make_le(phi(j + 1), pj),
                        {std::move(swapped), std::move(right)});
  return script(nm("kind-desc-", j), {nm("kind-desc-", j - 1)},
                {{}, make_le(phi(j + 1), pj)}, tree);
}

proof_script gen_kind_descb(int j) {
  term_ptr b = t_var("b");
  if (j == 0)
    return script("kind-descb-0", {}, {{}, make_le(b, b)},
                  make_step("reflex", make_le(b, b), {}));
  auto tree = make_step(
      "trans", make_le(phi(j), b),
      {make_step(nm("kind-desc-", j - 1), make_le(phi(j), phi(j - 1)), {}),
       make_step(nm("kind-descb-", j - 1), make_le(phi(j - 1), b), {})});
  return script(nm("kind-descb-", j), {nm("kind-desc-", j - 1), nm("kind-descb-", j - 1)},
                {{}, make_le(phi(j), b)}, tree);
}

proof_script gen_kind_asc_pres(int j) {
  term_ptr b = t_var("b");
  identity premise = make_le(t_shift(b), b);
  if (j == 0)
    return script("kind-asc-pres-0", {}, {{premise}, premise}, make_leaf(0, premise));
  term_ptr pjm1 = phi(j - 1), pj = phi(j);
  term_ptr sfp = t_shift(fF(pjm1));            // sh F P^(j-1)
  term_ptr lhs = t_meet(sfp, t_shift(b));      // sh F P^(j-1) /\ sh b
  auto prev = make_step(nm("kind-asc-pres-", j - 1), make_le(t_shift(pjm1), pjm1),
                        {make_leaf(0, premise)});
  auto fmono = make_step("F-mono", make_le(fF(t_shift(pjm1)), fF(pjm1)), {std::move(prev)});
  auto shf = replace_bwd(make_le(sfp, fF(pjm1)), std::move(fmono), "F-sh-comm",
                         {{"a", pjm1}}, t_var("h"), fF(pjm1), fF(t_shift(pjm1)), sfp);
  auto lower = make_step("meet-lower-l", make_le(lhs, sfp), {});
  auto left = make_step("trans", make_le(lhs, fF(pjm1)), {std::move(lower), std::move(shf)});
  auto right = make_step("meet-intro-l", make_le(lhs, b), {make_leaf(0, premise)});
  auto body = make_step("meet-intro-r", make_le(lhs, pj), {std::move(left), std::move(right)});
  auto tree = replace_bwd(make_le(t_shift(pj), pj), std::move(body), "sh-over-meet",
                          {{"a", fF(pjm1)}, {"b", b}}, t_var("h"), pj, lhs, t_shift(pj));
  return script(nm("kind-asc-pres-", j), {nm("kind-asc-pres-", j - 1), "meet-lower-l"},
                {{premise}, make_le(t_shift(pj), pj)}, tree);
}

proof_script gen_kind_park(int k) {
  term_ptr b = t_var("b");
  term_ptr pk = phi(k);
  identity premise = make_le(fF(pk), b);
  if (k == 0)
    return script("kind-park-0", {}, {{premise}, premise}, make_leaf(0, premise));
  term_ptr pkm1 = phi(k - 1);
  auto fmono = make_step("F-mono", make_le(fF(pk), fF(pkm1)),
                         {make_step(nm("kind-desc-", k - 1), make_le(pk, pkm1), {})});
  auto tree = make_step("meet-intro-r", make_le(fF(pk), pk),
                        {std::move(fmono), make_leaf(0, premise)});
  return script(nm("kind-park-", k), {nm("kind-desc-", k - 1)}, {{premise}, make_le(fF(pk), pk)},
                tree);
}

proof_script gen_k_ind(int k) {
  term_ptr b = t_var("b");
  term_ptr pk = phi(k);
  term_ptr goal_lhs = t_dia(t_orbit("F", t_bot()));
  identity prem_f = make_le(fF(pk), b);
  identity prem_sh = make_le(t_shift(b), b);
  quasiequation stmt{{prem_f, prem_sh}, make_le(goal_lhs, b)};
  if (k == 0) {
    auto tree = make_step("tkp-least", make_le(goal_lhs, b),
                          {make_step("bot", make_le(t_bot(), b), {}),
                           make_leaf(0, prem_f), make_leaf(1, prem_sh)});
    return script("k-ind-0", {"tkp-least"}, stmt, tree);
  }
  auto least = make_step(
      "tkp-least", make_le(goal_lhs, pk),
      {make_step("bot", make_le(t_bot(), pk), {}),
       make_step(nm("kind-park-", k), make_le(fF(pk), pk), {make_leaf(0, prem_f)}),
       make_step(nm("kind-asc-pres-", k), make_le(t_shift(pk), pk),
                 {make_leaf(1, prem_sh)})});
  auto tree = make_step("trans", make_le(goal_lhs, b),
                        {std::move(least),
                         make_step(nm("kind-descb-", k), make_le(pk, b), {})});
  return script(nm("k-ind-", k),
                {"tkp-least", nm("kind-park-", k), nm("kind-asc-pres-", k),
                 nm("kind-descb-", k)},
                stmt, tree);
}

}  // namespace

std::vector<proof_script> gen_kind_proof(int k) {
  if (k < 0) throw error("InvalidSpec", "induction depth must be nonnegative");
  std::vector<proof_script> doc;
  if (k == 0) {
    doc.push_back(gen_k_ind(0));
    return doc;
  }
  for (int j = 0; j < k; ++j) doc.push_back(gen_kind_desc(j));
  for (int j = 0; j <= k; ++j) doc.push_back(gen_kind_descb(j));
  for (int j = 0; j <= k; ++j) doc.push_back(gen_kind_asc_pres(j));
  doc.push_back(gen_kind_park(k));
  doc.push_back(gen_k_ind(k));
  return doc;
}

}  // namespace aic
