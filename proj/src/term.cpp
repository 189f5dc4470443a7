#include "aic/term.hpp"

#include <algorithm>

namespace aic {

namespace {

term_ptr mk(term_kind k, std::string name, term_ptr a = nullptr, term_ptr b = nullptr) {
  auto t = std::make_shared<term>();
  t->kind = k;
  t->name = std::move(name);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

}  // namespace

term_ptr t_bot() {
  static const term_ptr v = mk(term_kind::bot, "");
  return v;
}
term_ptr t_top() {
  static const term_ptr v = mk(term_kind::top, "");
  return v;
}
term_ptr t_var(const std::string& name) { return mk(term_kind::var, name); }
term_ptr t_join(term_ptr a, term_ptr b) {
  return mk(term_kind::join, "", std::move(a), std::move(b));
}
term_ptr t_meet(term_ptr a, term_ptr b) {
  return mk(term_kind::meet, "", std::move(a), std::move(b));
}
term_ptr t_head(term_ptr a) { return mk(term_kind::head, "", std::move(a)); }
term_ptr t_shift(term_ptr a) { return mk(term_kind::shift, "", std::move(a)); }
term_ptr t_dia(term_ptr a) { return mk(term_kind::majorum, "", std::move(a)); }
term_ptr t_box(term_ptr a) { return mk(term_kind::minorum, "", std::move(a)); }
term_ptr t_apply(const std::string& fsym, term_ptr a) {
  return mk(term_kind::apply, fsym, std::move(a));
}
term_ptr t_orbit(const std::string& fsym, term_ptr a) {
  return mk(term_kind::orbit, fsym, std::move(a));
}

bool term_eq(const term_ptr& a, const term_ptr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return term_eq(a->a, b->a) && term_eq(a->b, b->b);
}

namespace {

void collect_vars(const term_ptr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == term_kind::var) out.insert(t->name);
  collect_vars(t->a, out);
  collect_vars(t->b, out);
}

void collect_fsyms(const term_ptr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == term_kind::apply || t->kind == term_kind::orbit) out.insert(t->name);
  collect_fsyms(t->a, out);
  collect_fsyms(t->b, out);
}

bool is_binop(const term_ptr& t) {
  return t->kind == term_kind::join || t->kind == term_kind::meet;
}

std::string unop_name(term_kind k, const std::string& fsym) {
  switch (k) {
    case term_kind::head: return "hd";
    case term_kind::shift: return "sh";
    case term_kind::majorum: return "dia";
    case term_kind::minorum: return "box";
    case term_kind::apply: return fsym;
    case term_kind::orbit: return fsym + "*";
    default: return "";
  }
}

void print_rec(const term_ptr& t, std::string& out) {
  switch (t->kind) {
    case term_kind::bot: out += "bot"; return;
    case term_kind::top: out += "top"; return;
    case term_kind::var: out += t->name; return;
    case term_kind::join:
    case term_kind::meet: {
      const char* op = t->kind == term_kind::join ? " \\/ " : " /\\ ";
      if (is_binop(t->a)) {
        out += "(";
        print_rec(t->a, out);
        out += ")";
      } else {
        print_rec(t->a, out);
      }
      out += op;
      // right chains of the same operator stay bare (right-associative)
      if (is_binop(t->b) && t->b->kind != t->kind) {
        out += "(";
        print_rec(t->b, out);
        out += ")";
      } else {
        print_rec(t->b, out);
      }
      return;
    }
    default: {
      out += unop_name(t->kind, t->name);
      out += " ";
      if (is_binop(t->a)) {
        out += "(";
        print_rec(t->a, out);
        out += ")";
      } else {
        print_rec(t->a, out);
      }
      return;
    }
  }
}

}  // namespace

std::string print_term(const term_ptr& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

std::set<std::string> free_vars(const term_ptr& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> fsyms_of(const term_ptr& t) {
  std::set<std::string> out;
  collect_fsyms(t, out);
  return out;
}

term_ptr substitute(const term_ptr& t, const std::map<std::string, term_ptr>& sub) {
  if (!t) return t;
  if (t->kind == term_kind::var) {
    auto it = sub.find(t->name);
    return it != sub.end() ? it->second : t;
  }
  term_ptr a = substitute(t->a, sub);
  term_ptr b = substitute(t->b, sub);
  if (a == t->a && b == t->b) return t;
  return mk(t->kind, t->name, std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// concrete syntax

namespace {

const std::vector<std::pair<const char*, const char*>>& unicode_aliases() {
  static const std::vector<std::pair<const char*, const char*>> table = {
      {"⊥", " bot "},   // bottom
      {"⊤", " top "},   // top
      {"⋎", " \\/ "},   // curly vee
      {"∨", " \\/ "},   // vee
      {"⋏", " /\\ "},   // curly wedge
      {"∧", " /\\ "},   // wedge
      {"⊖", " hd "},    // circled minus
      {"⊚", " sh "},    // circled ring
      {"◇", " dia "},   // white diamond
      {"◊", " dia "},   // lozenge
      {"□", " box "},   // white square
      {"⪯", " <= "},    // precedes or equal
      {"≤", " <= "},    // less or equal
  };
  return table;
}

std::string expand_unicode(const std::string& s) {
  std::string out = s;
  for (const auto& [from, to] : unicode_aliases()) {
    size_t pos = 0;
    const std::string f(from);
    while ((pos = out.find(f, pos)) != std::string::npos) {
      out.replace(pos, f.size(), to);
      pos += std::string(to).size();
    }
  }
  return out;
}

struct token {
  enum kind { ident, star_ident, op_join, op_meet, lpar, rpar, eq, le, end } k;
  std::string text;
  size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<token> lex(const std::string& raw) {
  const std::string s = expand_unicode(raw);
  std::vector<token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\\' && i + 1 < s.size() && s[i + 1] == '/') {
      out.push_back({token::op_join, "\\/", i});
      i += 2;
    } else if (c == '/' && i + 1 < s.size() && s[i + 1] == '\\') {
      out.push_back({token::op_meet, "/\\", i});
      i += 2;
    } else if (c == '(') {
      out.push_back({token::lpar, "(", i});
      ++i;
    } else if (c == ')') {
      out.push_back({token::rpar, ")", i});
      ++i;
    } else if (c == '=') {
      out.push_back({token::eq, "=", i});
      ++i;
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({token::le, "<=", i});
      i += 2;
    } else if (ident_start(c)) {
      size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string name = s.substr(i, j - i);
      if (j < s.size() && s[j] == '*') {
        out.push_back({token::star_ident, name, i});
        ++j;
      } else {
        out.push_back({token::ident, name, i});
      }
      i = j;
    } else {
      throw error("ParseError", "unexpected character '" + std::string(1, c) +
                                    "' at offset " + std::to_string(i) + " in: " + raw);
    }
  }
  out.push_back({token::end, "", s.size()});
  return out;
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {"bot", "top", "hd", "sh", "dia", "box"};
  return words;
}

class parser {
 public:
  parser(const std::string& text, const std::set<std::string>& funcs)
      : text_(text), funcs_(funcs), toks_(lex(text)) {
    for (const auto& f : funcs)
      if (reserved_words().count(f))
        throw error("ParseError", "'" + f + "' cannot be used as a function symbol");
  }

  term_ptr parse_term_all() {
    term_ptr t = parse_binary();
    expect(token::end, "end of input");
    return t;
  }

  identity parse_identity_all() {
    term_ptr l = parse_binary();
    const token& t = peek();
    identity id;
    if (t.k == token::eq) {
      ++pos_;
      id = make_eq(l, parse_binary());
    } else if (t.k == token::le) {
      ++pos_;
      id = make_le(l, parse_binary());
    } else {
      fail("expected '=' or '<='");
    }
    expect(token::end, "end of input");
    return id;
  }

 private:
  const token& peek() const { return toks_[pos_]; }
  void expect(token::kind k, const std::string& what) {
    if (toks_[pos_].k != k) fail("expected " + what);
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw error("ParseError", msg + " at offset " + std::to_string(toks_[pos_].pos) +
                                  " in: " + text_);
  }

  term_ptr parse_binary() {
    std::vector<term_ptr> items = {parse_unary()};
    token::kind op = token::end;
    while (peek().k == token::op_join || peek().k == token::op_meet) {
      if (op == token::end)
        op = peek().k;
      else if (op != peek().k)
        fail("mixing \\/ and /\\ requires parentheses");
      ++pos_;
      items.push_back(parse_unary());
    }
    term_ptr acc = items.back();
    for (size_t i = items.size() - 1; i-- > 0;)
      acc = op == token::op_join ? t_join(items[i], acc) : t_meet(items[i], acc);
    return acc;
  }

  term_ptr parse_unary() {
    const token& t = peek();
    if (t.k == token::star_ident) {
      if (!funcs_.count(t.text))
        fail("unknown function symbol '" + t.text + "'");
      ++pos_;
      return t_orbit(t.text, parse_unary());
    }
    if (t.k == token::ident) {
      const std::string& w = t.text;
      if (w == "hd") {
        ++pos_;
        return t_head(parse_unary());
      }
      if (w == "sh") {
        ++pos_;
        return t_shift(parse_unary());
      }
      if (w == "dia") {
        ++pos_;
        return t_dia(parse_unary());
      }
      if (w == "box") {
        ++pos_;
        return t_box(parse_unary());
      }
      if (funcs_.count(w)) {
        ++pos_;
        return t_apply(w, parse_unary());
      }
    }
    return parse_atom();
  }

  term_ptr parse_atom() {
    const token& t = peek();
    if (t.k == token::ident) {
      ++pos_;
      if (t.text == "bot") return t_bot();
      if (t.text == "top") return t_top();
      return t_var(t.text);
    }
    if (t.k == token::lpar) {
      ++pos_;
      term_ptr inner = parse_binary();
      expect(token::rpar, "')'");
      return inner;
    }
    fail("expected a term");
  }

  const std::string& text_;
  const std::set<std::string>& funcs_;
  std::vector<token> toks_;
  size_t pos_ = 0;
};

}  // namespace

term_ptr parse_term(const std::string& text, const std::set<std::string>& funcs) {
  return parser(text, funcs).parse_term_all();
}

identity parse_identity(const std::string& text, const std::set<std::string>& funcs) {
  return parser(text, funcs).parse_identity_all();
}

// ---------------------------------------------------------------------------
// identities

identity make_eq(term_ptr l, term_ptr r) {
  return identity{std::move(l), std::move(r), id_shape::equation};
}

identity make_le(term_ptr l, term_ptr r) {
  return identity{std::move(l), std::move(r), id_shape::inequality};
}

identity desugar(const identity& id) {
  if (id.shape == id_shape::equation) return id;
  return make_eq(t_join(id.lhs, id.rhs), id.rhs);
}

bool identity_eq(const identity& a, const identity& b) {
  return a.shape == b.shape && term_eq(a.lhs, b.lhs) && term_eq(a.rhs, b.rhs);
}

bool identity_eq_desugared(const identity& a, const identity& b) {
  return identity_eq(desugar(a), desugar(b));
}

std::string print_identity(const identity& id) {
  return print_term(id.lhs) + (id.shape == id_shape::equation ? " = " : " <= ") +
         print_term(id.rhs);
}

identity substitute(const identity& id, const std::map<std::string, term_ptr>& sub) {
  return identity{substitute(id.lhs, sub), substitute(id.rhs, sub), id.shape};
}

std::set<std::string> free_vars(const identity& id) {
  std::set<std::string> out = free_vars(id.lhs);
  auto r = free_vars(id.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

std::set<std::string> fsyms_of(const identity& id) {
  std::set<std::string> out = fsyms_of(id.lhs);
  auto r = fsyms_of(id.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

std::set<std::string> free_vars(const quasiequation& q) {
  std::set<std::string> out = free_vars(q.conclusion);
  for (const auto& p : q.premises) {
    auto v = free_vars(p);
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::set<std::string> fsyms_of(const quasiequation& q) {
  std::set<std::string> out = fsyms_of(q.conclusion);
  for (const auto& p : q.premises) {
    auto v = fsyms_of(p);
    out.insert(v.begin(), v.end());
  }
  return out;
}

}  // namespace aic
