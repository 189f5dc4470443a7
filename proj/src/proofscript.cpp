#include "aic/proofscript.hpp"

#include <sstream>

#include "aic/errors.hpp"
#include "aic/text.hpp"

namespace aic {

namespace {

using text::split_top;
using text::trim;

struct raw_line {
  int no;      // 1-based position in the document
  int indent;  // leading spaces
  std::string body;
};

[[noreturn]] void fail_at(int no, const std::string& msg) {
  throw error("ParseError", "line " + std::to_string(no) + ": " + msg);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

std::vector<raw_line> lex_lines(const std::string& doc) {
  std::vector<raw_line> out;
  std::istringstream in(doc);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find('\t') != std::string::npos)
      fail_at(no, "tabs are not allowed; indent with spaces");
    size_t i = 0;
    while (i < line.size() && line[i] == ' ') ++i;
    std::string body = line.substr(i);
    if (body.empty() || body[0] == '#') continue;
    out.push_back({no, static_cast<int>(i), std::move(body)});
  }
  return out;
}

// first occurrence of `needle` outside parentheses
size_t find_top(const std::string& s, const std::string& needle) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s.compare(i, needle.size(), needle) == 0) return i;
  }
  return std::string::npos;
}

term_ptr parse_term_at(const std::string& s, const std::set<std::string>& funcs, int no) {
  try {
    return parse_term(s, funcs);
  } catch (const error& e) {
    fail_at(no, e.what());
  }
}

identity parse_identity_at(const std::string& s, const std::set<std::string>& funcs, int no) {
  try {
    return parse_identity(s, funcs);
  } catch (const error& e) {
    fail_at(no, e.what());
  }
}

std::map<std::string, term_ptr> parse_bindings(const std::string& src,
                                               const std::set<std::string>& funcs, int no) {
  std::map<std::string, term_ptr> out;
  for (const std::string& raw : split_top(src, ',')) {
    const std::string part = trim(raw);
    if (part.empty()) fail_at(no, "empty binding in '" + src + "'");
    size_t pos = part.find(":=");
    if (pos == std::string::npos)
      fail_at(no, "a binding looks like name:=term, got '" + part + "'");
    std::string key = trim(part.substr(0, pos));
    std::string val = trim(part.substr(pos + 2));
    if (key.empty() || val.empty()) fail_at(no, "incomplete binding '" + part + "'");
    if (out.count(key)) fail_at(no, "duplicate binding for '" + key + "'");
    out.emplace(key, parse_term_at(val, funcs, no));
  }
  return out;
}

context_data parse_ctx(const std::string& src, const std::set<std::string>& funcs, int no) {
  context_data c;
  for (const std::string& raw : split_top(src, ',')) {
    const std::string part = trim(raw);
    size_t pos = part.find(":=");
    if (pos == std::string::npos)
      fail_at(no, "a ctx field looks like name:=term, got '" + part + "'");
    std::string key = trim(part.substr(0, pos));
    std::string val = trim(part.substr(pos + 2));
    if (key == "hole") {
      term_ptr h = parse_term_at(val, funcs, no);
      if (h->kind != term_kind::var) fail_at(no, "ctx hole must be a variable");
      if (!c.hole.empty()) fail_at(no, "duplicate ctx field 'hole'");
      c.hole = h->name;
    } else if (key == "s" || key == "t" || key == "u" || key == "w") {
      term_ptr& slot = key == "s" ? c.s : key == "t" ? c.t : key == "u" ? c.u : c.w;
      if (slot) fail_at(no, "duplicate ctx field '" + key + "'");
      slot = parse_term_at(val, funcs, no);
    } else {
      fail_at(no, "unknown ctx field '" + key + "' (expected hole, s, t, u, w)");
    }
  }
  return c;
}

// the parsed pieces of one `step` line, before shorthand expansion
struct step_head {
  std::string rule;  // plain name, "cuts", or empty for rw forms
  bool is_rw = false;
  bool rw_backwards = false;
  std::string rw_ax;
  std::map<std::string, term_ptr> rw_sigma;
  std::map<std::string, term_ptr> with;
  std::optional<context_data> ctx;
};

step_head parse_step_head(const std::string& head, const std::set<std::string>& funcs,
                          int no) {
  step_head out;
  std::string clauses;
  if (starts_with(head, "rw[") || starts_with(head, "rw~[")) {
    out.is_rw = true;
    out.rw_backwards = head[2] == '~';
    size_t open = out.rw_backwards ? 4 : 3;
    size_t close = head.find(']');
    if (close == std::string::npos) fail_at(no, "unterminated rw[...] citation");
    std::string inner = trim(head.substr(open, close - open));
    size_t wpos = find_top(inner, " with ");
    if (wpos == std::string::npos) {
      out.rw_ax = inner;
    } else {
      out.rw_ax = trim(inner.substr(0, wpos));
      out.rw_sigma = parse_bindings(inner.substr(wpos + 6), funcs, no);
    }
    if (out.rw_ax.empty() || out.rw_ax.find(' ') != std::string::npos)
      fail_at(no, "rw cites a single rule name");
    clauses = trim(head.substr(close + 1));
  } else {
    size_t sp = head.find(' ');
    out.rule = sp == std::string::npos ? head : head.substr(0, sp);
    clauses = sp == std::string::npos ? "" : trim(head.substr(sp + 1));
  }
  if (out.rule.empty() && !out.is_rw) fail_at(no, "missing rule name");

  if (!clauses.empty()) {
    std::string with_text, ctx_text;
    if (starts_with(clauses, "with ")) {
      size_t cpos = find_top(clauses, " ctx ");
      if (cpos == std::string::npos) {
        with_text = clauses.substr(5);
      } else {
        with_text = clauses.substr(5, cpos - 5);
        ctx_text = clauses.substr(cpos + 5);
      }
    } else if (starts_with(clauses, "ctx ")) {
      ctx_text = clauses.substr(4);
    } else {
      fail_at(no, "expected a with or ctx clause before '::', got '" + clauses + "'");
    }
    if (!with_text.empty()) out.with = parse_bindings(with_text, funcs, no);
    if (!ctx_text.empty()) out.ctx = parse_ctx(ctx_text, funcs, no);
  }
  return out;
}

deriv_ptr expand_cuts(const identity& goal, std::vector<deriv_ptr> kids, int no) {
  if (kids.size() < 2) fail_at(no, "cuts takes at least two subproofs");
  deriv_ptr acc = kids.back();
  for (size_t i = kids.size() - 1; i-- > 1;) {
    identity mid = make_le(kids[i]->conclusion.lhs, goal.rhs);
    acc = make_step("trans", std::move(mid), {kids[i], acc});
  }
  return make_step("trans", goal, {kids[0], acc});
}

using rule_finder = std::function<const rule*(const std::string&)>;

deriv_ptr expand_rw(const step_head& h, const identity& goal, std::vector<deriv_ptr> kids,
                    const rule_finder& find_rule, int no) {
  if (kids.size() != 1) fail_at(no, "rw takes exactly one subproof");
  if (!h.with.empty()) fail_at(no, "rw bindings go inside the brackets");
  if (!h.ctx || !h.ctx->s || !h.ctx->t || h.ctx->hole.empty())
    fail_at(no, "rw needs ctx hole:=..., s:=..., t:=...");
  context_data cx = *h.ctx;
  if (static_cast<bool>(cx.u) != static_cast<bool>(cx.w))
    fail_at(no, "ctx u and w must be given together");

  if (!cx.u) {
    const rule* ax = find_rule(h.rw_ax);
    if (!ax)
      throw error("RuleNotFound",
                  "line " + std::to_string(no) + ": rw cites unknown rule '" + h.rw_ax + "'");
    if (ax->conclusion.shape != id_shape::equation)
      fail_at(no, "rw cites '" + h.rw_ax + "', which is not an equation");
    for (const std::string& v : free_vars(ax->conclusion))
      if (!h.rw_sigma.count(v))
        throw error("UnboundPatternVar",
                    "line " + std::to_string(no) + ": variable '" + v + "' of '" + h.rw_ax +
                        "' is not determined; bind it inside rw[... with " + v + ":=...]");
    term_ptr l = substitute(ax->conclusion.lhs, h.rw_sigma);
    term_ptr r = substitute(ax->conclusion.rhs, h.rw_sigma);
    cx.u = h.rw_backwards ? r : l;
    cx.w = h.rw_backwards ? l : r;
  }

  deriv_ptr eq_child;
  if (h.rw_backwards) {
    auto inner = make_step(h.rw_ax, make_eq(cx.w, cx.u), {}, h.rw_sigma);
    eq_child = make_step("symm", make_eq(cx.u, cx.w), {inner});
  } else {
    eq_child = make_step(h.rw_ax, make_eq(cx.u, cx.w), {}, h.rw_sigma);
  }
  return make_step("indiscern", goal, {std::move(kids[0]), std::move(eq_child)}, {}, cx);
}

struct tree_builder {
  const std::vector<raw_line>& lines;
  size_t& idx;
  const std::set<std::string>& funcs;
  const rule_finder& find_rule;

  deriv_ptr node(int indent) {
    const raw_line& ln = lines[idx];
    ++idx;

    size_t sep = ln.body.find(" :: ");
    if (sep == std::string::npos)
      fail_at(ln.no, "a tree line needs ' :: ' before its identity");
    std::string head = trim(ln.body.substr(0, sep));
    identity concl = parse_identity_at(trim(ln.body.substr(sep + 4)), funcs, ln.no);

    if (starts_with(head, "leaf ") || head == "leaf") {
      std::string num = trim(head.substr(4));
      if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
        fail_at(ln.no, "leaf needs a premise index");
      auto d = make_leaf(std::stoi(num), std::move(concl));
      if (idx < lines.size() && lines[idx].indent > indent)
        fail_at(lines[idx].no, "leaf nodes take no subproofs");
      return d;
    }
    if (!starts_with(head, "step ")) fail_at(ln.no, "expected 'step' or 'leaf'");
    step_head sh = parse_step_head(trim(head.substr(5)), funcs, ln.no);

    std::vector<deriv_ptr> kids;
    while (idx < lines.size() && lines[idx].indent > indent) {
      if (lines[idx].indent != indent + 2)
        fail_at(lines[idx].no, "bad indentation: children are indented two extra spaces");
      kids.push_back(node(indent + 2));
    }

    if (sh.is_rw) return expand_rw(sh, concl, std::move(kids), find_rule, ln.no);
    if (sh.rule == "cuts") {
      if (!sh.with.empty() || sh.ctx) fail_at(ln.no, "cuts takes no with or ctx clause");
      return expand_cuts(concl, std::move(kids), ln.no);
    }
    return make_step(sh.rule, std::move(concl), std::move(kids), std::move(sh.with),
                     std::move(sh.ctx));
  }
};

}  // namespace

std::vector<proof_script> parse_proof_document(const std::string& doc,
                                               const rule_lookup& extra) {
  const std::vector<raw_line> lines = lex_lines(doc);
  if (lines.empty()) throw error("ParseError", "empty proof document");

  std::vector<proof_script> out;
  std::map<std::string, rule> local;  // earlier proofs of this document

  size_t idx = 0;
  while (idx < lines.size()) {
    const raw_line& first = lines[idx];
    if (first.indent != 0 || !starts_with(first.body, "proof "))
      fail_at(first.no, "expected 'proof <name>'");

    proof_script ps;
    ps.name = trim(first.body.substr(6));
    if (ps.name.empty() || ps.name.find(' ') != std::string::npos)
      fail_at(first.no, "proof names are single tokens");
    if (local.count(ps.name)) fail_at(first.no, "duplicate proof name '" + ps.name + "'");
    ++idx;

    // headers; identities are parsed once funcs is known in full
    std::vector<std::pair<int, std::string>> assume_raw;
    std::pair<int, std::string> show_raw{0, ""};
    bool have_show = false;
    while (idx < lines.size() && lines[idx].indent == 0 &&
           !starts_with(lines[idx].body, "proof ")) {
      const raw_line& ln = lines[idx];
      size_t sp = ln.body.find(' ');
      std::string key = sp == std::string::npos ? ln.body : ln.body.substr(0, sp);
      std::string rest = sp == std::string::npos ? "" : trim(ln.body.substr(sp + 1));
      if (key == "funcs") {
        if (!ps.funcs.empty()) fail_at(ln.no, "duplicate funcs line");
        for (const std::string& f : split_top(rest, ',')) {
          if (f.empty() || f.find(' ') != std::string::npos)
            fail_at(ln.no, "bad function symbol '" + f + "'");
          ps.funcs.push_back(f);
        }
      } else if (key == "ruleset") {
        if (!ps.ruleset_spec.empty()) fail_at(ln.no, "duplicate ruleset line");
        if (rest.empty()) fail_at(ln.no, "empty ruleset");
        ps.ruleset_spec = rest;
      } else if (key == "uses") {
        if (rest.empty() || rest.find(' ') != std::string::npos)
          fail_at(ln.no, "uses takes one proof name");
        ps.uses.push_back(rest);
      } else if (key == "assume") {
        assume_raw.emplace_back(ln.no, rest);
      } else if (key == "show") {
        if (have_show) fail_at(ln.no, "duplicate show line");
        show_raw = {ln.no, rest};
        have_show = true;
      } else if (key == "note") {
        ps.notes.push_back(rest);
      } else {
        fail_at(ln.no, "unknown header '" + key + "'");
      }
      ++idx;
    }
    if (ps.ruleset_spec.empty()) fail_at(first.no, "proof '" + ps.name + "' has no ruleset");
    if (!have_show) fail_at(first.no, "proof '" + ps.name + "' has no show line");

    const std::set<std::string> funcs(ps.funcs.begin(), ps.funcs.end());
    for (const auto& [no, text_] : assume_raw)
      ps.statement.premises.push_back(parse_identity_at(text_, funcs, no));
    ps.statement.conclusion = parse_identity_at(show_raw.second, funcs, show_raw.first);

    // rule names visible to rw citations
    const rule_set rs = rule_set::builtin(ps.ruleset_spec, ps.funcs);
    rule_finder find_rule = [&](const std::string& n) -> const rule* {
      if (const rule* r = rs.find(n)) return r;
      if (auto it = local.find(n); it != local.end()) return &it->second;
      return extra ? extra(n) : nullptr;
    };

    if (idx >= lines.size() || lines[idx].indent == 0)
      fail_at(first.no, "proof '" + ps.name + "' has no derivation tree");
    if (lines[idx].indent != 2)
      fail_at(lines[idx].no, "the root step is indented two spaces");
    tree_builder tb{lines, idx, funcs, find_rule};
    ps.tree = tb.node(2);
    if (idx < lines.size() && lines[idx].indent != 0)
      fail_at(lines[idx].no, "a proof has exactly one root step");

    rule as_rule;
    as_rule.name = ps.name;
    as_rule.kind = rule_kind::derived;
    as_rule.premises = ps.statement.premises;
    as_rule.conclusion = ps.statement.conclusion;
    local.emplace(ps.name, std::move(as_rule));
    out.push_back(std::move(ps));
  }
  return out;
}

namespace {

void emit_node(std::ostringstream& out, const derivation& d, int indent) {
  out << std::string(static_cast<size_t>(indent), ' ');
  if (d.leaf) {
    out << "leaf " << d.leaf_index << " :: " << print_identity(d.conclusion) << "\n";
    return;
  }
  out << "step " << d.rule;
  if (!d.with.empty()) {
    out << " with ";
    bool fst = true;
    for (const auto& [k, v] : d.with) {
      if (!fst) out << ", ";
      fst = false;
      out << k << ":=" << print_term(v);
    }
  }
  if (d.ctx) {
    out << " ctx hole:=" << d.ctx->hole << ", s:=" << print_term(d.ctx->s)
        << ", t:=" << print_term(d.ctx->t);
    if (d.ctx->u) out << ", u:=" << print_term(d.ctx->u);
    if (d.ctx->w) out << ", w:=" << print_term(d.ctx->w);
  }
  out << " :: " << print_identity(d.conclusion) << "\n";
  for (const auto& c : d.children) emit_node(out, *c, indent + 2);
}

}  // namespace

std::string emit_proof_script(const proof_script& ps) {
  std::ostringstream out;
  out << "proof " << ps.name << "\n";
  if (!ps.funcs.empty()) {
    out << "funcs ";
    for (size_t i = 0; i < ps.funcs.size(); ++i) out << (i ? "," : "") << ps.funcs[i];
    out << "\n";
  }
  out << "ruleset " << ps.ruleset_spec << "\n";
  for (const std::string& u : ps.uses) out << "uses " << u << "\n";
  for (const std::string& n : ps.notes) out << "note " << n << "\n";
  for (const identity& p : ps.statement.premises) out << "assume " << print_identity(p) << "\n";
  out << "show " << print_identity(ps.statement.conclusion) << "\n\n";
  if (ps.tree) emit_node(out, *ps.tree, 2);
  return out.str();
}

std::string emit_proof_document(const std::vector<proof_script>& doc) {
  std::string out;
  for (size_t i = 0; i < doc.size(); ++i) {
    if (i) out += "\n";
    out += emit_proof_script(doc[i]);
  }
  return out;
}

}  // namespace aic
