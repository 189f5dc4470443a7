#include "aic/semantics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "aic/text.hpp"

namespace aic {

namespace {

lasso eval_rec(const term_ptr& t, const interpretation& I,
               std::map<const term*, lasso>& memo) {
  auto it = memo.find(t.get());
  if (it != memo.end()) return it->second;
  const auto& lat = I.m.lat;
  auto result = [&]() -> lasso {
    switch (t->kind) {
      case term_kind::bot: return op_bot(lat);
      case term_kind::top: return op_top(lat);
      case term_kind::var: {
        auto v = I.vars.find(t->name);
        if (v == I.vars.end())
          throw error("UnboundVariable", "no binding for variable '" + t->name + "'");
        return v->second;
      }
      case term_kind::join:
        return op_join(eval_rec(t->a, I, memo), eval_rec(t->b, I, memo));
      case term_kind::meet:
        return op_meet(eval_rec(t->a, I, memo), eval_rec(t->b, I, memo));
      case term_kind::head: return op_head(eval_rec(t->a, I, memo));
      case term_kind::shift: return op_shift(eval_rec(t->a, I, memo));
      case term_kind::majorum: return op_majorum(eval_rec(t->a, I, memo));
      case term_kind::minorum: return op_minorum(eval_rec(t->a, I, memo));
      case term_kind::apply:
      case term_kind::orbit: {
        auto f = I.m.funcs.find(t->name);
        if (f == I.m.funcs.end())
          throw error("UnknownFunctionSymbol",
                      "no interpretation for function symbol '" + t->name + "'");
        lasso arg = eval_rec(t->a, I, memo);
        return t->kind == term_kind::apply ? op_apply(f->second, arg)
                                           : op_orbit(f->second, arg);
      }
    }
    throw error("Internal", "unhandled term kind");
  }();
  memo.emplace(t.get(), result);
  return result;
}

}  // namespace

lasso eval(const term_ptr& t, const interpretation& I) {
  if (!I.m.lat) throw error("Internal", "interpretation has no lattice");
  std::map<const term*, lasso> memo;
  return eval_rec(t, I, memo);
}

bool satisfies(const identity& id, const interpretation& I) {
  lasso l = eval(id.lhs, I), r = eval(id.rhs, I);
  return id.shape == id_shape::equation ? lasso_eq(l, r) : lasso_leq(l, r);
}

bool satisfies(const quasiequation& q, const interpretation& I) {
  for (const auto& p : q.premises)
    if (!satisfies(p, I)) return true;
  return satisfies(q.conclusion, I);
}

namespace {

size_t own_window(const lasso& a) { return a.prefix().size() + a.period().size(); }

size_t joint_window(const lasso& a, const lasso& b) {
  return std::max(a.prefix().size(), b.prefix().size()) +
         std::lcm(a.period().size(), b.period().size());
}

}  // namespace

bool seq_schema_premises_hold(const std::string& name, const lasso& a, const lasso& b) {
  if (name == "seq-dia" || name == "seq-box") {
    lasso cur = a;
    for (size_t n = 0; n < own_window(a); ++n) {
      lasso head = op_head(cur);
      if (name == "seq-dia" ? !lasso_leq(head, b) : !lasso_leq(b, head)) return false;
      cur = op_shift(cur);
    }
    return true;
  }
  if (name == "seq-ext") {
    lasso ca = a, cb = b;
    for (size_t n = 0; n < joint_window(a, b); ++n) {
      if (!lasso_eq(op_head(ca), op_head(cb))) return false;
      ca = op_shift(ca);
      cb = op_shift(cb);
    }
    return true;
  }
  throw error("RuleNotFound", "unknown sequence schema '" + name + "'");
}

bool seq_schema_conclusion_holds(const std::string& name, const lasso& a, const lasso& b) {
  if (name == "seq-dia") return lasso_leq(op_head(op_majorum(a)), b);
  if (name == "seq-box") return lasso_leq(b, op_head(op_minorum(a)));
  if (name == "seq-ext") return lasso_eq(a, b);
  throw error("RuleNotFound", "unknown sequence schema '" + name + "'");
}

bool satisfies_seq_schema(const std::string& name, const lasso& a, const lasso& b) {
  return !seq_schema_premises_hold(name, a, b) || seq_schema_conclusion_holds(name, a, b);
}

monotone_map parse_table(const lattice_ptr& lat, const std::string& input,
                         const std::string& name) {
  std::string s = text::trim(input);
  if (s.rfind("table", 0) != 0)
    throw error("ParseError", name + ": function tables start with 'table{': " + input);
  s = text::trim(s.substr(5));
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw error("ParseError", name + ": expected table{...}: " + input);
  std::vector<elem> table(lat->size(), -1);
  const std::string body = s.substr(1, s.size() - 2);
  if (!text::trim(body).empty()) {
    for (const auto& entry : text::split_top(body, ',')) {
      size_t arrow = entry.find("->");
      if (arrow == std::string::npos)
        throw error("ParseError", name + ": table entries look like x->y: " + entry);
      elem from = lat->require_elem(text::trim(entry.substr(0, arrow)));
      elem to = lat->require_elem(text::trim(entry.substr(arrow + 2)));
      if (table[from] != -1)
        throw error("ParseError", name + ": duplicate table entry for " +
                                      lat->elem_name(from));
      table[from] = to;
    }
  }
  for (elem x = 0; x < lat->size(); ++x)
    if (table[x] == -1)
      throw error("ParseError", name + ": table misses element " + lat->elem_name(x));
  return monotone_map(lat, std::move(table), name);
}

std::string print_table(const monotone_map& f) {
  std::string out = "table{";
  const auto& lat = *f.lat();
  for (elem x = 0; x < lat.size(); ++x) {
    if (x) out += ",";
    out += lat.elem_name(x) + "->" + lat.elem_name(f(x));
  }
  out += "}";
  return out;
}

interpretation parse_interpretation(const std::string& input) {
  lattice_ptr lat;
  std::map<std::string, monotone_map> funcs;
  std::map<std::string, lasso> vars;
  std::istringstream in(input);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    line = text::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (line.rfind("lattice", 0) == 0 &&
        (line.size() == 7 || std::isspace(static_cast<unsigned char>(line[7])))) {
      if (lat) throw error("ParseError", where + ": duplicate lattice declaration");
      lat = build_lattice(text::trim(line.substr(7)));
      continue;
    }
    if (line.rfind("let", 0) == 0 &&
        (line.size() > 3 && std::isspace(static_cast<unsigned char>(line[3])))) {
      if (!lat)
        throw error("ParseError", where + ": 'lattice <spec>' must come before 'let'");
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw error("ParseError", where + ": expected 'let <name> = <value>'");
      std::string name = text::trim(line.substr(3, eq - 3));
      std::string rhs = text::trim(line.substr(eq + 1));
      if (name.empty())
        throw error("ParseError", where + ": missing name in let");
      if (funcs.count(name) || vars.count(name))
        throw error("DuplicateName", where + ": '" + name + "' is already bound");
      if (rhs.rfind("table", 0) == 0)
        funcs.emplace(name, parse_table(lat, rhs, name));
      else
        vars.emplace(name, lasso::parse(lat, rhs));
      continue;
    }
    throw error("ParseError", where + ": expected 'lattice <spec>' or 'let ... = ...'");
  }
  if (!lat) throw error("ParseError", "interpretation has no 'lattice <spec>' line");
  return interpretation{model{lat, std::move(funcs)}, std::move(vars)};
}

std::string print_interpretation(const interpretation& I) {
  std::string out = "lattice " + I.m.lat->key() + "\n";
  for (const auto& [name, f] : I.m.funcs) out += "let " + name + " = " + print_table(f) + "\n";
  for (const auto& [name, v] : I.vars) out += "let " + name + " = " + v.str() + "\n";
  return out;
}

}  // namespace aic
