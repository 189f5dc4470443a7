#include "aic/rules.hpp"

#include <algorithm>

#include "aic/text.hpp"

namespace aic {

namespace {

struct tpl {
  const char* name;
  rule_kind kind;
  std::vector<const char*> premises;
  const char* conclusion;
};

// '@' in names and identity texts stands for the function symbol.

const std::vector<tpl>& eq_plain() {
  static const std::vector<tpl> v = {
      {"eq-reflex", rule_kind::equational, {}, "a = a"},
      {"symm", rule_kind::equational, {"a = b"}, "b = a"},
      {"eq-trans", rule_kind::equational, {"a = b", "b = c"}, "a = c"},
      {"cong-join", rule_kind::equational, {"a = b", "c = d"}, "a \\/ c = b \\/ d"},
      {"cong-meet", rule_kind::equational, {"a = b", "c = d"}, "a /\\ c = b /\\ d"},
      {"cong-hd", rule_kind::equational, {"a = b"}, "hd a = hd b"},
      {"cong-sh", rule_kind::equational, {"a = b"}, "sh a = sh b"},
      {"cong-dia", rule_kind::equational, {"a = b"}, "dia a = dia b"},
      {"cong-box", rule_kind::equational, {"a = b"}, "box a = box b"},
  };
  return v;
}

const std::vector<tpl>& eq_fsym() {
  static const std::vector<tpl> v = {
      {"cong-@", rule_kind::equational, {"a = b"}, "@ a = @ b"},
      {"cong-@*", rule_kind::equational, {"a = b"}, "@* a = @* b"},
  };
  return v;
}

const std::vector<tpl>& aic0_plain() {
  static const std::vector<tpl> v = {
      {"bot", rule_kind::aic0, {}, "bot <= a"},
      {"top", rule_kind::aic0, {}, "a <= top"},
      {"join-comm", rule_kind::aic0, {}, "a \\/ b = b \\/ a"},
      {"meet-comm", rule_kind::aic0, {}, "a /\\ b = b /\\ a"},
      {"join-absorb", rule_kind::aic0, {}, "a \\/ (a /\\ b) = a"},
      {"meet-absorb", rule_kind::aic0, {}, "a /\\ (a \\/ b) = a"},
      {"join-assoc", rule_kind::aic0, {}, "a \\/ (b \\/ c) = (a \\/ b) \\/ c"},
      {"meet-assoc", rule_kind::aic0, {}, "a /\\ (b /\\ c) = (a /\\ b) /\\ c"},
      {"dia-inflate", rule_kind::aic0, {}, "a <= dia a"},
      {"box-deflate", rule_kind::aic0, {}, "box a <= a"},
      {"dia-idem", rule_kind::aic0, {}, "dia dia a = dia a"},
      {"box-idem", rule_kind::aic0, {}, "box box a = box a"},
      {"dia-mono", rule_kind::aic0, {"a <= b"}, "dia a <= dia b"},
      {"box-mono", rule_kind::aic0, {"a <= b"}, "box a <= box b"},
      {"sh-dia-comm", rule_kind::aic0, {}, "sh dia a = dia sh a"},
      {"sh-box-comm", rule_kind::aic0, {}, "sh box a = box sh a"},
      {"dia-ind-fwd", rule_kind::aic0, {"sh a <= a"}, "dia a <= a"},
      {"dia-ind-bwd", rule_kind::aic0, {"dia a <= a"}, "sh a <= a"},
      {"box-coind-fwd", rule_kind::aic0, {"a <= sh a"}, "a <= box a"},
      {"box-coind-bwd", rule_kind::aic0, {"a <= box a"}, "a <= sh a"},
      {"sh-mono", rule_kind::aic0, {"a <= b"}, "sh a <= sh b"},
      {"sh-of-bot", rule_kind::aic0, {}, "sh bot <= bot"},
      {"sh-of-top", rule_kind::aic0, {}, "top <= sh top"},
      {"sh-over-join", rule_kind::aic0, {}, "sh (a \\/ b) = sh a \\/ sh b"},
      {"sh-over-meet", rule_kind::aic0, {}, "sh (a /\\ b) = sh a /\\ sh b"},
  };
  return v;
}

const std::vector<tpl>& aic0_fsym() {
  static const std::vector<tpl> v = {
      {"@-mono", rule_kind::aic0, {"a <= b"}, "@ a <= @ b"},
      {"@*-mono", rule_kind::aic0, {"a <= b"}, "@* a <= @* b"},
      {"@-sh-comm", rule_kind::aic0, {}, "sh @ a = @ sh a"},
      {"@@*-comm", rule_kind::aic0, {}, "@ @* a = @* @ a"},
      {"iter-@", rule_kind::aic0, {}, "sh @* a = @ @* sh a"},
      {"@-ind", rule_kind::aic0, {"@ a <= a"}, "@* a <= a"},
      {"@-coind", rule_kind::aic0, {"a <= @ a"}, "a <= @* a"},
  };
  return v;
}

const std::vector<tpl>& aic1_plain() {
  static const std::vector<tpl> v = {
      {"reflex", rule_kind::aic1, {}, "a <= a"},
      {"trans", rule_kind::aic1, {"a <= b", "b <= c"}, "a <= c"},
      {"antisymm", rule_kind::aic1, {"a <= b", "b <= a"}, "a = b"},
      {"weaken-l", rule_kind::aic1, {"a = b"}, "a <= b"},
      {"weaken-r", rule_kind::aic1, {"a = b"}, "b <= a"},
      {"join-idem", rule_kind::aic1, {}, "a \\/ a = a"},
      {"meet-idem", rule_kind::aic1, {}, "a /\\ a = a"},
      {"join-intro-l", rule_kind::aic1, {"a <= c", "b <= c"}, "a \\/ b <= c"},
      {"join-intro-r", rule_kind::aic1, {"a <= b"}, "a <= b \\/ c"},
      {"join-elim", rule_kind::aic1, {"a \\/ b <= c"}, "b <= c"},
      {"meet-intro-r", rule_kind::aic1, {"a <= b", "a <= c"}, "a <= b /\\ c"},
      {"meet-intro-l", rule_kind::aic1, {"b <= c"}, "a /\\ b <= c"},
      {"meet-elim", rule_kind::aic1, {"a <= b /\\ c"}, "a <= b"},
      {"dia-intro-r", rule_kind::aic1, {"a <= b"}, "a <= dia b"},
      {"dia-intro-l", rule_kind::aic1, {"a <= b", "sh b <= b"}, "dia a <= b"},
      {"dia-elim", rule_kind::aic1, {"dia a <= b"}, "a <= b"},
      {"box-intro-l", rule_kind::aic1, {"a <= b"}, "box a <= b"},
      {"box-intro-r", rule_kind::aic1, {"a <= sh a", "a <= b"}, "a <= box b"},
      {"box-elim", rule_kind::aic1, {"a <= box b"}, "a <= b"},
      {"dia-exp", rule_kind::aic1, {}, "dia a = a \\/ sh dia a"},
      {"box-exp", rule_kind::aic1, {}, "box a = a /\\ sh box a"},
      {"dia-desc", rule_kind::aic1, {}, "sh dia a <= dia a"},
      {"box-asc", rule_kind::aic1, {}, "box a <= sh box a"},
  };
  return v;
}

const std::vector<tpl>& aic1_fsym() {
  static const std::vector<tpl> v = {
      {"semi-cont-@", rule_kind::aic1, {}, "dia @ a <= @ dia a"},
      {"semi-cocont-@", rule_kind::aic1, {}, "@ box a <= box @ a"},
      {"asc-iter-@", rule_kind::aic1, {"a <= sh a"}, "@ @* a <= sh @* a"},
      {"desc-iter-@", rule_kind::aic1, {"sh a <= a"}, "sh @* a <= @ @* a"},
      {"orbit-asc-@", rule_kind::aic1, {"a <= @ a", "a <= sh a"}, "@* a <= sh @* a"},
      {"orbit-desc-@", rule_kind::aic1, {"sh a <= a", "@ a <= a"}, "sh @* a <= @* a"},
      {"@*-intro-l", rule_kind::aic1, {"a <= b", "@ b <= b"}, "@* a <= b"},
      {"@*-intro-r", rule_kind::aic1, {"a <= @ a", "a <= b"}, "a <= @* b"},
  };
  return v;
}

const std::vector<tpl>& continuity_fsym() {
  static const std::vector<tpl> v = {
      {"wcont-@", rule_kind::continuity, {"a <= sh a"}, "@ dia a <= dia @ a"},
      {"wcocont-@", rule_kind::continuity, {"sh a <= a"}, "box @ a <= @ box a"},
      {"ccont-@", rule_kind::continuity, {}, "@ dia a <= dia @ a"},
      {"ccocont-@", rule_kind::continuity, {}, "box @ a <= @ box a"},
  };
  return v;
}

const std::vector<tpl>& heads_plain() {
  static const std::vector<tpl> v = {
      {"hd-bot", rule_kind::aicw_finitary, {}, "hd bot = bot"},
      {"hd-top", rule_kind::aicw_finitary, {}, "hd top = top"},
      {"hd-over-meet", rule_kind::aicw_finitary, {}, "hd (a /\\ b) = hd a /\\ hd b"},
      {"hd-over-join", rule_kind::aicw_finitary, {}, "hd (a \\/ b) = hd a \\/ hd b"},
      {"sh-hd", rule_kind::aicw_finitary, {}, "sh hd a = hd a"},
      {"dia-hd", rule_kind::aicw_finitary, {}, "dia hd a = hd a"},
      {"box-hd", rule_kind::aicw_finitary, {}, "box hd a = hd a"},
      {"hd-hd", rule_kind::aicw_finitary, {}, "hd hd a = hd a"},
  };
  return v;
}

const std::vector<tpl>& heads_fsym() {
  static const std::vector<tpl> v = {
      {"hd-@-comm", rule_kind::aicw_finitary, {}, "hd @ a = @ hd a"},
      {"hd-orbit-@", rule_kind::aicw_finitary, {}, "hd @* a = hd a"},
  };
  return v;
}

const std::vector<tpl>& aicw_shift_eqs() {
  static const std::vector<tpl> v = {
      {"sh-bot-eq", rule_kind::aicw_finitary, {}, "sh bot = bot"},
      {"sh-top-eq", rule_kind::aicw_finitary, {}, "sh top = top"},
  };
  return v;
}

std::string expand_at(const std::string& s, const std::string& sym) {
  std::string out;
  for (char c : s)
    if (c == '@')
      out += sym;
    else
      out.push_back(c);
  return out;
}

rule instantiate(const tpl& t, const std::string& sym) {
  rule r;
  r.name = expand_at(t.name, sym);
  r.kind = t.kind;
  r.fsym = sym;
  std::set<std::string> funcs;
  if (!sym.empty()) funcs.insert(sym);
  for (const char* p : t.premises)
    r.premises.push_back(parse_identity(expand_at(p, sym), funcs));
  r.conclusion = parse_identity(expand_at(t.conclusion, sym), funcs);
  return r;
}

rule indiscern_rule() {
  rule r;
  r.name = "indiscern";
  r.kind = rule_kind::context_schema;
  r.conclusion = parse_identity("a = a", {});
  return r;
}

std::vector<rule> seq_rules() {
  // infinitary rules: listed for inventory and semantic validation; the
  // kernel refuses derivation steps that cite them
  std::vector<rule> out;
  rule d;
  d.name = "seq-dia";
  d.kind = rule_kind::aicw_infinitary;
  d.conclusion = parse_identity("hd dia a <= b", {});
  out.push_back(d);
  rule b;
  b.name = "seq-box";
  b.kind = rule_kind::aicw_infinitary;
  b.conclusion = parse_identity("b <= hd box a", {});
  out.push_back(b);
  rule e;
  e.name = "seq-ext";
  e.kind = rule_kind::aicw_infinitary;
  e.conclusion = parse_identity("a = b", {});
  out.push_back(e);
  return out;
}

bool same_rule(const rule& a, const rule& b) {
  if (a.name != b.name || a.premises.size() != b.premises.size()) return false;
  for (size_t i = 0; i < a.premises.size(); ++i)
    if (!identity_eq(a.premises[i], b.premises[i])) return false;
  return identity_eq(a.conclusion, b.conclusion);
}

bool valid_fsym(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  static const std::set<std::string> reserved = {"bot", "top", "hd", "sh", "dia", "box"};
  return !reserved.count(s);
}

class set_builder {
 public:
  explicit set_builder(const std::vector<std::string>& funcs) : funcs_(funcs) {}

  void merge(rule r) {
    for (const auto& existing : rules_)
      if (existing.name == r.name) {
        if (!same_rule(existing, r))
          throw error("DuplicateName", "conflicting definitions for rule " + r.name);
        return;
      }
    rules_.push_back(std::move(r));
  }

  void merge_plain(const std::vector<tpl>& tpls) {
    for (const auto& t : tpls) merge(instantiate(t, ""));
  }

  void merge_fsym(const std::vector<tpl>& tpls) {
    for (const auto& f : funcs_)
      for (const auto& t : tpls) merge(instantiate(t, f));
  }

  void add_eq() {
    merge_plain(eq_plain());
    merge_fsym(eq_fsym());
    merge(indiscern_rule());
  }

  void add_aic0() {
    merge_plain(aic0_plain());
    merge_fsym(aic0_fsym());
  }

  void add_aic1() {
    merge_plain(aic1_plain());
    merge_fsym(aic1_fsym());
  }

  void add_heads() {
    merge_plain(heads_plain());
    merge_fsym(heads_fsym());
  }

  void add_aicw() {
    // lattice row
    for (const char* n : {"bot", "top", "join-comm", "meet-comm", "join-absorb",
                          "meet-absorb", "join-assoc", "meet-assoc"})
      merge_named(aic0_plain(), n, "");
    merge_named_fsym(aic0_fsym(), "@-mono");
    // heads row
    add_heads();
    // shifts row
    merge_plain(aicw_shift_eqs());
    merge_named(aic0_plain(), "sh-over-join", "");
    merge_named(aic0_plain(), "sh-over-meet", "");
    merge_named_fsym(aic0_fsym(), "@-sh-comm");
    merge_named_fsym(aic0_fsym(), "iter-@");
    merge_named(aic0_plain(), "sh-dia-comm", "");
    merge_named(aic0_plain(), "sh-box-comm", "");
    // running sup/inf row
    for (const char* n : {"dia-inflate", "box-deflate", "dia-idem", "box-idem",
                          "dia-ind-fwd", "dia-ind-bwd", "box-coind-fwd", "box-coind-bwd"})
      merge_named(aic0_plain(), n, "");
    // sequence row
    for (auto& r : seq_rules()) merge(std::move(r));
  }

  std::vector<rule> universe() {
    // everything nameable for '+<rule>' additions
    add_eq();
    add_aic0();
    add_aic1();
    add_heads();
    merge_plain(aicw_shift_eqs());
    for (auto& r : seq_rules()) merge(std::move(r));
    merge_fsym(continuity_fsym());
    return std::move(rules_);
  }

  std::vector<rule> take() { return std::move(rules_); }

 private:
  void merge_named(const std::vector<tpl>& tpls, const std::string& name,
                   const std::string& sym) {
    for (const auto& t : tpls)
      if (name == t.name) {
        merge(instantiate(t, sym));
        return;
      }
    throw error("Internal", "no template named " + name);
  }

  void merge_named_fsym(const std::vector<tpl>& tpls, const std::string& name) {
    for (const auto& t : tpls)
      if (name == t.name) {
        for (const auto& f : funcs_) merge(instantiate(t, f));
        return;
      }
    throw error("Internal", "no template named " + name);
  }

  const std::vector<std::string>& funcs_;
  std::vector<rule> rules_;
};

}  // namespace

rule_set rule_set::builtin(const std::string& spec,
                           const std::vector<std::string>& funcs) {
  for (const auto& f : funcs) {
    if (!valid_fsym(f))
      throw error("InvalidSpec", "bad function symbol name '" + f + "'");
    if (std::count(funcs.begin(), funcs.end(), f) != 1)
      throw error("InvalidSpec", "duplicate function symbol '" + f + "'");
  }

  auto parts = text::split_top(spec, '+');
  const std::string base = parts.at(0);

  set_builder sb(funcs);
  if (base == "EQ") {
    sb.add_eq();
  } else if (base == "AIC0") {
    sb.add_eq();
    sb.add_aic0();
  } else if (base == "AIC1") {
    sb.add_eq();
    sb.add_aic0();
    sb.add_aic1();
  } else if (base == "AICw" || base == "AICW" || base == "AICω") {
    sb.add_eq();
    sb.add_aicw();
  } else {
    throw error("InvalidSpec", "unknown base system '" + base + "'");
  }

  for (size_t i = 1; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    bool handled = false;
    for (const char* flavor : {"wcont", "wcocont", "ccont", "ccocont"}) {
      const std::string head = std::string(flavor) + "(";
      if (p.rfind(head, 0) == 0 && p.back() == ')') {
        const std::string sym = text::trim(p.substr(head.size(), p.size() - head.size() - 1));
        if (std::find(funcs.begin(), funcs.end(), sym) == funcs.end())
          throw error("InvalidSpec",
                      "'" + p + "' names undeclared function symbol '" + sym + "'");
        for (const auto& t : continuity_fsym())
          if (std::string(t.name) == std::string(flavor) + "-@")
            sb.merge(instantiate(t, sym));
        handled = true;
        break;
      }
    }
    if (handled) continue;
    if (p == "aicw-heads") {
      sb.add_heads();
      continue;
    }
    // a bare rule name from the full inventory
    set_builder ub(funcs);
    bool found = false;
    for (auto& r : ub.universe())
      if (r.name == p) {
        sb.merge(std::move(r));
        found = true;
        break;
      }
    if (!found) throw error("RuleNotFound", "no rule named '" + p + "' to add");
  }

  rule_set rs;
  rs.spec_ = text::trim(spec);
  rs.funcs_ = funcs;
  rs.rules_ = sb.take();
  return rs;
}

const rule* rule_set::find(const std::string& name) const {
  for (const auto& r : rules_)
    if (r.name == name) return &r;
  return nullptr;
}

void rule_set::add(rule r) {
  if (has(r.name)) throw error("DuplicateName", "rule '" + r.name + "' already exists");
  rules_.push_back(std::move(r));
}

}  // namespace aic
