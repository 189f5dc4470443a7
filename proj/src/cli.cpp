#include "aic/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aic/corpus.hpp"
#include "aic/discrete.hpp"
#include "aic/errors.hpp"
#include "aic/lattice.hpp"
#include "aic/proofscript.hpp"
#include "aic/rules.hpp"
#include "aic/search.hpp"
#include "aic/semantics.hpp"
#include "aic/term.hpp"
#include "json.hpp"

namespace aic::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "aic/1";

std::uint64_t env_seed() {
  if (const char* s = std::getenv("AIC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw error("InvalidConfig", std::string("AIC_SEED is not a number: ") + s);
    }
  }
  return 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("FileError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("FileError", "cannot write " + path);
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Clauses of the small line/semicolon-separated input formats: comments run
// from '#' to end of line, ';' and newlines both end a clause.
std::vector<std::string> clauses(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') {
      comment = false;
      c = ';';
    }
    if (comment) continue;
    if (c == '#') {
      comment = true;
      continue;
    }
    if (c == ';') {
      std::string t = trimmed(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  std::string t = trimmed(cur);
  if (!t.empty()) out.push_back(t);
  return out;
}

// Quasiequation files:  [funcs F,G;]  assume <id>; ...; show <id>
struct qe_file {
  quasiequation q;
  std::set<std::string> funcs{"F", "G"};
};

qe_file parse_qe(const std::string& text) {
  qe_file out;
  bool funcs_set = false, shown = false;
  for (const std::string& line : clauses(text)) {
    if (line.rfind("funcs ", 0) == 0) {
      if (funcs_set) throw error("ParseError", "duplicate funcs clause");
      auto list = split_list(line.substr(6));
      out.funcs = {list.begin(), list.end()};
      funcs_set = true;
    } else if (line.rfind("assume ", 0) == 0) {
      out.q.premises.push_back(parse_identity(line.substr(7), out.funcs));
    } else if (line.rfind("show ", 0) == 0) {
      if (shown) throw error("ParseError", "more than one show clause");
      out.q.conclusion = parse_identity(line.substr(5), out.funcs);
      shown = true;
    } else {
      throw error("ParseError", "expected funcs/assume/show, got: " + line);
    }
  }
  if (!shown) throw error("ParseError", "missing show clause");
  return out;
}

// Discrete premise files: one identity per clause, `assume` optional.
std::vector<identity> parse_premise_file(const std::string& text) {
  std::vector<identity> out;
  for (std::string line : clauses(text)) {
    if (line.rfind("assume ", 0) == 0) line = line.substr(7);
    out.push_back(parse_identity(line, {}));
  }
  return out;
}

const char* kind_name(rule_kind k) {
  switch (k) {
    case rule_kind::equational: return "equational";
    case rule_kind::context_schema: return "context-schema";
    case rule_kind::aic0: return "aic0";
    case rule_kind::aic1: return "aic1";
    case rule_kind::continuity: return "continuity";
    case rule_kind::aicw_finitary: return "aicw-finitary";
    case rule_kind::aicw_infinitary: return "aicw-infinitary";
    case rule_kind::derived: return "derived";
  }
  return "?";
}

std::string statement_text(const rule& r) {
  std::string s;
  for (size_t i = 0; i < r.premises.size(); ++i) {
    if (i) s += ";  ";
    s += print_identity(r.premises[i]);
  }
  if (!s.empty()) s += "  ";
  return s + "|-  " + print_identity(r.conclusion);
}

json cex_json(const counterexample& cex) {
  return json{{"trial", cex.trial},
              {"lattice", cex.I.m.lat->key()},
              {"interpretation", print_interpretation(cex.I)},
              {"violated", print_identity(cex.failed)},
              {"fail_index", cex.fail_index},
              {"window", cex.window}};
}

// ---- subcommand options ---------------------------------------------------

struct common_opts {
  bool json = false;
};

struct check_opts : common_opts {
  std::string file;
  std::string rules;  // optional ruleset override
};

struct eval_opts : common_opts {
  std::string lattice;
  std::vector<std::string> binds;
  std::string interp_file;
  std::string term;
};

struct refute_opts : common_opts {
  std::string file;
  int trials = 1000;
  std::uint64_t seed = 0;
  std::string lattices;
  int threads = 0;
  int max_prefix = 3;
  int max_period = 4;
};

struct fuzz_opts : common_opts {
  std::string rules = "AIC1";
  std::string funcs = "F";
  int trials = 1000;
  std::uint64_t seed = 0;
  std::string lattices;
  int threads = 0;
};

struct corpus_opts : common_opts {
  bool all = false;
  std::string name;
  std::string emit_what;
  int k = 0;
  std::string out_file;
};

struct discrete_opts : common_opts {
  std::string premises_file;
  std::string goal;
  int bound = -1;
  int oracle_depth = 8;
  bool compare = false;
};

struct rules_opts : common_opts {
  std::string set;
  std::string funcs = "F";
};

struct genkind_opts : common_opts {
  int k = 0;
  bool check = false;
  std::string out_file;
};

// ---- subcommand implementations -------------------------------------------

int report_document(const std::vector<corpus::report>& reports,
                    const std::string& command, json extra, bool as_json,
                    std::ostream& out) {
  int failures = 0;
  json proofs = json::array();
  for (const auto& r : reports) {
    failures += !r.ok;
    proofs.push_back({{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
    if (!as_json)
      out << (r.ok ? "ok " + r.name : "FAIL " + r.name + ": " + r.detail) << "\n";
  }
  extra["schema"] = kSchema;
  extra["command"] = command;
  extra["proofs"] = proofs;
  extra["ok"] = failures == 0;
  if (as_json) {
    out << extra.dump(2) << "\n";
  } else {
    out << "checked " << reports.size() << (reports.size() == 1 ? " proof" : " proofs");
    if (failures)
      out << ": " << failures << (failures == 1 ? " failure" : " failures") << "\n"
          << extra.dump() << "\n";  // machine-readable diagnostics on failure
    else
      out << ": all ok\n";
  }
  return failures == 0 ? 0 : 1;
}

int cmd_check(const check_opts& o, std::ostream& out) {
  const corpus& lib = corpus::embedded();
  std::vector<proof_script> doc = lib.parse_document(slurp(o.file));
  if (!o.rules.empty())
    for (auto& ps : doc) ps.ruleset_spec = o.rules;
  json extra{{"file", o.file}};
  if (!o.rules.empty()) extra["rules"] = o.rules;
  return report_document(lib.check_document(doc), "check", std::move(extra),
                         o.json, out);
}

int cmd_eval(const eval_opts& o, std::ostream& out) {
  std::string text;
  if (!o.interp_file.empty()) {
    text = slurp(o.interp_file);
  } else {
    if (o.lattice.empty())
      throw error("InvalidConfig", "eval needs --lattice or --interp");
    text = "lattice " + o.lattice + "\n";
    for (const auto& b : o.binds) {
      size_t eq = b.find('=');
      if (eq == std::string::npos)
        throw error("ParseError", "--bind expects name=value, got: " + b);
      text += "let " + trimmed(b.substr(0, eq)) + " = " + trimmed(b.substr(eq + 1)) + "\n";
    }
  }
  interpretation I = parse_interpretation(text);
  std::set<std::string> funcs;
  for (const auto& [name, f] : I.m.funcs) funcs.insert(name);
  lasso value = eval(parse_term(o.term, funcs), I);
  if (o.json)
    out << json{{"schema", kSchema},
                {"command", "eval"},
                {"lattice", I.m.lat->key()},
                {"term", o.term},
                {"value", value.str()}}
               .dump(2)
        << "\n";
  else
    out << value.str() << "\n";
  return 0;
}

search_config make_config(const std::string& lattices, int trials,
                          std::uint64_t seed, int threads) {
  search_config cfg;
  cfg.lattices = split_list(lattices);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.validate();
  return cfg;
}

int cmd_refute(const refute_opts& o, std::ostream& out) {
  qe_file qe = parse_qe(slurp(o.file));
  search_config cfg = make_config(o.lattices, o.trials, o.seed, o.threads);
  cfg.max_prefix = o.max_prefix;
  cfg.max_period = o.max_period;
  cfg.validate();
  refute_result res = refute(qe.q, cfg);
  if (o.json) {
    json j{{"schema", kSchema},
           {"command", "refute"},
           {"file", o.file},
           {"seed", cfg.seed},
           {"trials", cfg.trials},
           {"trials_run", res.trials_run},
           {"lattices", cfg.lattices.empty() ? lattice_catalogue() : cfg.lattices},
           {"found", res.found()},
           {"counterexample", res.found() ? cex_json(*res.cex) : json(nullptr)}};
    out << j.dump(2) << "\n";
  } else {
    out << "seed " << cfg.seed << "\n";
    if (res.found())
      out << res.cex->describe() << "\n";
    else
      out << "no counterexample in " << res.trials_run << " trials\n";
  }
  return res.found() ? 1 : 0;
}

int cmd_fuzz(const fuzz_opts& o, std::ostream& out) {
  rule_set rs = rule_set::builtin(o.rules, split_list(o.funcs));
  search_config cfg = make_config(o.lattices, o.trials, o.seed, o.threads);
  try {
    fuzz_report rep = fuzz_soundness(rs, cfg);
    if (o.json) {
      json entries = json::array();
      for (const auto& e : rep.entries)
        entries.push_back({{"rule", e.rule},
                           {"trials", e.trials},
                           {"skipped", e.skipped},
                           {"note", e.note}});
      out << json{{"schema", kSchema},    {"command", "fuzz"},
                  {"rules", rs.spec()},   {"seed", cfg.seed},
                  {"trials", cfg.trials}, {"entries", entries},
                  {"fuzzed", rep.rules_fuzzed}, {"skipped", rep.rules_skipped},
                  {"ok", true}}
                 .dump(2)
          << "\n";
    } else {
      out << "seed " << cfg.seed << "\n";
      out << "rules " << rs.spec() << " (" << rs.rules().size() << " rules)\n";
      for (const auto& e : rep.entries)
        if (e.skipped) out << "skipped " << e.rule << ": " << e.note << "\n";
      out << "fuzzed " << rep.rules_fuzzed << " rules x " << cfg.trials
          << " trials, skipped " << rep.rules_skipped << ": ok\n";
    }
    return 0;
  } catch (const error& e) {
    if (e.cls() != "SoundnessViolation") throw;
    if (o.json)
      out << json{{"schema", kSchema},
                  {"command", "fuzz"},
                  {"rules", rs.spec()},
                  {"seed", cfg.seed},
                  {"trials", cfg.trials},
                  {"ok", false},
                  {"violation", e.what()}}
                 .dump(2)
          << "\n";
    else
      out << "seed " << cfg.seed << "\n" << e.what() << "\n";
    return 1;
  }
}

int cmd_corpus(const corpus_opts& o, std::ostream& out) {
  const corpus& lib = corpus::embedded();
  if (!o.emit_what.empty()) {  // corpus emit k-ind --k N
    std::string text = emit_proof_document(gen_kind_proof(o.k));
    if (o.out_file.empty())
      out << text;
    else
      spill(o.out_file, text);
    return 0;
  }
  if (o.all)
    return report_document(lib.check_all(), "corpus-check", {}, o.json, out);
  const proof_script* ps = lib.find(o.name);
  if (!ps) throw error("UnknownProof", "corpus has no proof named " + o.name);
  return report_document({lib.check_entry(*ps).ok
                              ? corpus::report{o.name, true, ""}
                              : corpus::report{o.name, false,
                                               lib.check_entry(*ps).err->cls + ": " +
                                                   lib.check_entry(*ps).err->detail}},
                         "corpus-check", {}, o.json, out);
}

int cmd_discrete(const discrete_opts& o, std::ostream& out) {
  std::vector<identity> premise_ids =
      o.premises_file.empty() ? std::vector<identity>{}
                              : parse_premise_file(slurp(o.premises_file));
  homogeneous_premises p = homogeneous_premises::from_identities(premise_ids);
  identity goal = parse_identity(o.goal, {});
  homogeneous_query q = homogeneous_query::of(goal);
  int bound = o.bound >= 0 ? o.bound : default_bound(p, std::max(q.n, q.k));
  decision dec = decide(p, goal, bound);

  std::optional<oracle_result> oracle;
  if (o.compare)
    oracle = proof_search_oracle(premise_ids, goal, o.oracle_depth);
  bool agree = !oracle || oracle->outcome == dec;

  auto word = [](decision d) { return d == decision::provable ? "provable" : "unknown"; };
  if (o.json) {
    json j{{"schema", kSchema},
           {"command", "discrete-decide"},
           {"goal", print_identity(goal)},
           {"bound", bound},
           {"decision", word(dec)},
           {"oracle", nullptr},
           {"agree", nullptr}};
    if (oracle) {
      j["oracle"] = {{"decision", word(oracle->outcome)},
                     {"depth_used", oracle->depth_used},
                     {"saturated", oracle->saturated}};
      j["agree"] = agree;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "bound " << bound << "\n";
    out << "decision: " << word(dec) << "\n";
    if (oracle) {
      out << "oracle: " << word(oracle->outcome) << " (depth "
          << oracle->depth_used << (oracle->saturated ? ", saturated" : "")
          << ")\n";
      out << "agree: " << (agree ? "yes" : "NO") << "\n";
    }
  }
  if (!agree) return 1;
  return dec == decision::provable ? 0 : 1;
}

int cmd_rules(const rules_opts& o, std::ostream& out) {
  rule_set rs = rule_set::builtin(o.set, split_list(o.funcs));
  if (o.json) {
    json rules = json::array();
    for (const auto& r : rs.rules()) {
      json premises = json::array();
      for (const auto& p : r.premises) premises.push_back(print_identity(p));
      rules.push_back({{"name", r.name},
                       {"kind", kind_name(r.kind)},
                       {"fsym", r.fsym},
                       {"premises", premises},
                       {"conclusion", print_identity(r.conclusion)}});
    }
    out << json{{"schema", kSchema},
                {"command", "rules-list"},
                {"spec", rs.spec()},
                {"count", rs.rules().size()},
                {"rules", rules}}
               .dump(2)
        << "\n";
  } else {
    for (const auto& r : rs.rules()) {
      std::string name = r.name;
      if (name.size() < 18) name.resize(18, ' ');
      std::string kind = kind_name(r.kind);
      if (kind.size() < 16) kind.resize(16, ' ');
      out << name << kind << statement_text(r) << "\n";
    }
    out << rs.rules().size() << " rules\n";
  }
  return 0;
}

int cmd_genkind(const genkind_opts& o, std::ostream& out) {
  std::vector<proof_script> doc = gen_kind_proof(o.k);
  if (o.check) {
    const corpus& lib = corpus::embedded();
    return report_document(lib.check_document(doc), "gen-kind",
                           json{{"k", o.k}}, o.json, out);
  }
  std::string text = emit_proof_document(doc);
  if (o.out_file.empty())
    out << text;
  else
    spill(o.out_file, text);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact sequence-algebra toolkit: proof checking, evaluation, "
               "model search"};
  app.require_subcommand(1);

  check_opts co;
  auto* check = app.add_subcommand("check", "kernel-check a proof document");
  check->add_option("file", co.file, "proof document (.proof)")->required();
  check->add_option("--rules", co.rules, "override every script's ruleset spec");
  check->add_flag("--json", co.json, "machine-readable report");

  eval_opts eo;
  auto* ev = app.add_subcommand("eval", "evaluate a term in an interpretation");
  ev->add_option("--lattice", eo.lattice, "lattice spec, e.g. C3 or product(C2,B2)");
  ev->add_option("--bind", eo.binds,
                 "binding name=<lasso> or name=table{...}; repeatable");
  ev->add_option("--interp", eo.interp_file, "interpretation file instead of flags");
  ev->add_option("--term", eo.term, "term to evaluate")->required();
  ev->add_flag("--json", eo.json, "machine-readable report");

  refute_opts ro;
  ro.seed = env_seed();
  auto* ref = app.add_subcommand("refute", "search finite models for a counterexample");
  ref->add_option("file", ro.file, "quasiequation file (.qe)")->required();
  ref->add_option("--trials", ro.trials, "sampled interpretations");
  ref->add_option("--seed", ro.seed, "RNG seed (default: AIC_SEED or 0)");
  ref->add_option("--lattices", ro.lattices, "comma list; default: full catalogue");
  ref->add_option("--threads", ro.threads, "worker cap; 0 = hardware");
  ref->add_option("--max-prefix", ro.max_prefix, "sampled lasso prefix cap");
  ref->add_option("--max-period", ro.max_period, "sampled lasso period cap");
  ref->add_flag("--json", ro.json, "machine-readable report");

  fuzz_opts fo;
  fo.seed = env_seed();
  auto* fz = app.add_subcommand("fuzz", "soundness-fuzz every rule of a ruleset");
  fz->add_option("--rules", fo.rules, "ruleset spec (default AIC1)");
  fz->add_option("--funcs", fo.funcs, "function symbols (default F)");
  fz->add_option("--trials", fo.trials, "trials per rule");
  fz->add_option("--seed", fo.seed, "RNG seed (default: AIC_SEED or 0)");
  fz->add_option("--lattices", fo.lattices, "comma list; default: full catalogue");
  fz->add_option("--threads", fo.threads, "worker cap; 0 = hardware");
  fz->add_flag("--json", fo.json, "machine-readable report");

  corpus_opts po;
  auto* cp = app.add_subcommand("corpus", "the bundled proof library");
  auto* cpc = cp->add_subcommand("check", "check bundled proofs");
  cpc->add_option("name", po.name, "proof name");
  cpc->add_flag("--all", po.all, "check every bundled proof");
  cpc->add_flag("--json", po.json, "machine-readable report");
  auto* cpe = cp->add_subcommand("emit", "emit a generated proof document");
  cpe->add_option("what", po.emit_what, "generator name")
      ->required()
      ->check(CLI::IsMember({"k-ind"}));
  cpe->add_option("--k", po.k, "induction depth")->required();
  cpe->add_option("--out", po.out_file, "write to file instead of stdout");
  cp->require_subcommand(1);

  discrete_opts dopts;
  auto* ds = app.add_subcommand("discrete", "the hd/sh fragment");
  auto* dsd = ds->add_subcommand("decide", "graph-decide a homogeneous query");
  dsd->add_option("--premises", dopts.premises_file, "file of homogeneous identities");
  dsd->add_option("--goal", dopts.goal, "homogeneous identity to decide")->required();
  dsd->add_option("--bound", dopts.bound, "graph degree bound (default: derived)");
  dsd->add_option("--oracle-depth", dopts.oracle_depth, "closure depth for --compare");
  dsd->add_flag("--compare", dopts.compare, "also run the bounded search oracle");
  dsd->add_flag("--json", dopts.json, "machine-readable report");
  ds->require_subcommand(1);

  rules_opts ruo;
  auto* ru = app.add_subcommand("rules", "rule inventories");
  auto* rul = ru->add_subcommand("list", "list the rules of a ruleset spec");
  rul->add_option("set", ruo.set, "spec, e.g. AIC0 or AIC1+wcont(F)")->required();
  rul->add_option("--funcs", ruo.funcs, "function symbols (default F)");
  rul->add_flag("--json", ruo.json, "machine-readable report");
  ru->require_subcommand(1);

  genkind_opts go;
  auto* gk = app.add_subcommand("gen-kind", "generate the k-induction proof document");
  gk->add_option("--k", go.k, "induction depth")->required();
  gk->add_flag("--check", go.check, "kernel-check instead of emitting");
  gk->add_option("--out", go.out_file, "write to file instead of stdout");
  gk->add_flag("--json", go.json, "machine-readable report");

  std::vector<const char*> argv{"aic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(co, out);
    if (ev->parsed()) return cmd_eval(eo, out);
    if (ref->parsed()) return cmd_refute(ro, out);
    if (fz->parsed()) return cmd_fuzz(fo, out);
    if (cp->parsed()) {
      if (cpc->parsed() && !po.all && po.name.empty())
        throw error("InvalidConfig", "corpus check needs a name or --all");
      po.emit_what = cpe->parsed() ? po.emit_what : "";
      return cmd_corpus(po, out);
    }
    if (ds->parsed()) return cmd_discrete(dopts, out);
    if (ru->parsed()) return cmd_rules(ruo, out);
    if (gk->parsed()) return cmd_genkind(go, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace aic::cli
