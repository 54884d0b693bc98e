// twoside.cpp - command-line front end for evaluation, inference, verdicts, scheme checks and the kernel
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "twoside/constraints.hpp"
#include "twoside/eval.hpp"
#include "twoside/infer.hpp"
#include "twoside/json.hpp"
#include "twoside/kernel.hpp"
#include "twoside/parser.hpp"
#include "twoside/verdict.hpp"

namespace {

using namespace twoside;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Raised for bad input that is not a parse error; exits with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceModule load_module(const std::string& path) { return parse_module(read_file(path)); }

std::set<std::string> top_names(const SourceModule& src) {
  std::set<std::string> out;
  for (const auto& d : src.module.definitions()) out.insert(d.name);
  for (const auto& [name, schemes] : src.schemes) out.insert(name);
  return out;
}

Term parse_expr(const SourceModule& src, const std::string& text) {
  return parse_term(text, src.signature, top_names(src));
}

Json versioned(Json j) {
  j["version"] = kJsonVersion;
  return j;
}

void emit(const Json& j) { std::cout << dump_json(versioned(j)); }

// `x : T, y : U` over kernel types.
std::vector<kernel::Formula> parse_pcf_env(const std::string& text) {
  std::vector<kernel::Formula> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      throw UsageError("environment entry '" + item + "' needs the form x : T");
    }
    pcf::PcfTerm x = pcf::parse_pcf_term(item.substr(0, colon));
    if (x.kind() != pcf::PcfTermKind::Var) throw UsageError("environment entry '" + item + "' must type a variable");
    out.push_back(kernel::Formula{x, pcf::parse_pcf_type(item.substr(colon + 1))});
  }
  return out;
}

void print_tree(const kernel::Derivation& d, std::size_t indent) {
  std::cout << std::string(indent, ' ') << d->rule << "  " << kernel::print_sequent(d->conclusion) << "\n";
  for (const auto& p : d->premises) print_tree(p, indent + 2);
}

// ------------------------------------------------------------ subcommands

struct EvalArgs {
  std::string file;
  std::string expr;
  std::size_t fuel = 0;
};

int run_eval(const EvalArgs& a, bool json) {
  SourceModule src = load_module(a.file);
  Term m = Term::top("main");
  if (!a.expr.empty()) {
    m = parse_expr(src, a.expr);
  } else if (!src.module.lookup("main")) {
    throw UsageError("no --expr given and " + a.file + " defines no main");
  }
  EvalOutcome o = evaluate(m, src.module, a.fuel);
  if (json) {
    emit(Json{{"term", print_term(m)}, {"outcome", eval_outcome_to_json(o)}});
    return kOk;
  }
  switch (o.kind) {
    case EvalOutcome::Kind::Value: std::cout << "Value " << print_term(*o.term); break;
    case EvalOutcome::Kind::Stuck:
      std::cout << "Stuck (" << to_string(*o.reason) << ") " << print_term(*o.term);
      break;
    case EvalOutcome::Kind::OutOfFuel: std::cout << "OutOfFuel"; break;
  }
  std::cout << " after " << o.steps << " steps\n";
  return kOk;
}

struct InferArgs {
  std::string file;
  std::string term;
  std::string expr;
  std::string env;
  std::string delta;
  std::vector<std::string> schemes;
  bool left = false;
  std::size_t cap = kDefaultProductCap;
};

int run_infer(const InferArgs& a, bool json) {
  SourceModule src = load_module(a.file);
  for (const auto& entry : a.schemes) {
    auto colon = entry.find(':');
    if (colon == std::string::npos) throw UsageError("scheme '" + entry + "' needs the form f : S");
    std::string name = entry.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    src.schemes[name].push_back(parse_scheme(entry.substr(colon + 1), src.signature));
  }
  if (a.term.empty() == a.expr.empty()) throw UsageError("give exactly one of --term and --expr");
  if (!a.delta.empty() && !a.left) throw UsageError("--delta needs --left");
  Term m = Term::top(a.term);
  if (!a.term.empty()) {
    if (!top_names(src).count(a.term)) throw UsageError("unknown top-level identifier " + a.term);
  } else {
    m = parse_expr(src, a.expr);
  }
  std::map<std::string, Type> env;
  for (auto& [x, t] : parse_bindings(a.env, src.signature)) env.insert_or_assign(x, t);
  std::optional<std::pair<std::string, Type>> delta;
  if (!a.delta.empty()) {
    auto ds = parse_bindings(a.delta, src.signature);
    if (ds.size() != 1) throw UsageError("--delta takes a single variable typing");
    delta = ds.front();
  }
  InferOptions opts;
  opts.product_cap = a.cap;
  InferResult r = a.left ? infer_left(TypeEnv(env), m, delta, src.schemes, src.signature, opts)
                         : infer_right(TypeEnv(env), m, src.schemes, src.signature, opts);
  if (json) {
    Json js = Json::array();
    for (const auto& ij : r.judgements) {
      Json j = inferred_to_json(ij);
      j["consistent"] = is_consistent(ij.constraints);
      js.push_back(std::move(j));
    }
    emit(Json{{"mode", a.left ? "left" : "right"},
              {"term", print_term(m)},
              {"judgements", std::move(js)},
              {"truncated", r.truncated}});
    return kOk;
  }
  for (const auto& ij : r.judgements)
    std::cout << print_inferred(ij) << (is_consistent(ij.constraints) ? "" : "   [inconsistent]") << "\n";
  std::cout << r.judgements.size() << " judgement(s)" << (r.truncated ? ", truncated" : "") << "\n";
  return kOk;
}

struct VerdictArgs {
  std::string file;
  std::string expr;
  bool validate = false;
};

int run_verdict(const VerdictArgs& a, bool json) {
  SourceModule src = load_module(a.file);
  Term m = parse_expr(src, a.expr);
  VerdictOptions opts;
  opts.validate = a.validate;
  Verdict ill = ill_typed(src, m, opts);
  Verdict v = ill.kind == VerdictKind::IllTyped ? ill : well_typed(src, m, opts);
  if (json) {
    Json j = verdict_to_json(v);
    j["term"] = print_term(m);
    if (a.validate) j["invalid"] = v.invalid;
    emit(j);
  } else {
    std::cout << to_string(v.kind) << "\n";
    if (v.witness) std::cout << "witness: " << print_inferred(*v.witness) << "\n";
    if (v.kind != VerdictKind::Unknown) std::cout << "constraints: " << print_constraints(v.constraints) << "\n";
  }
  return a.validate && v.invalid > 0 ? kFailed : kOk;
}

struct ConstraintArgs {
  std::string file;
  std::vector<std::string> goals;
};

int run_constraints(const ConstraintArgs& a, bool json) {
  ConstraintSet c = parse_constraints(read_file(a.file));
  ClosureReport cl = close(c);
  std::optional<Constraint> witness = cl.witness;
  bool consistent = cl.consistent;
  std::vector<std::pair<Constraint, bool>> answers;
  Entailment ent(c);
  for (const auto& g : a.goals) {
    Constraint k = parse_constraint(g);
    answers.emplace_back(k, ent(k));
  }
  if (json) {
    Json es = Json::array();
    for (const auto& [k, yes] : answers) es.push_back(Json{{"goal", print_constraint(k)}, {"entailed", yes}});
    emit(Json{{"constraints", print_constraints(c)},
              {"closure", print_constraints(cl.closed)},
              {"consistent", consistent},
              {"witness", witness ? Json(print_constraint(*witness)) : Json(nullptr)},
              {"entailment", std::move(es)}});
    return kOk;
  }
  std::cout << "closure: " << print_constraints(cl.closed) << "\n";
  std::cout << (consistent ? "consistent" : "inconsistent: " + print_constraint(*witness)) << "\n";
  for (const auto& [k, yes] : answers) std::cout << print_constraint(k) << (yes ? " entailed" : " not entailed") << "\n";
  return kOk;
}

int run_check(const std::string& file, bool json) {
  SourceModule src = load_module(file);
  ModuleCheckReport r = check_toplevel(src);
  if (json) {
    Json vs = Json::array();
    for (const auto& v : r.verdicts) {
      const auto& schemes = src.schemes[v.name];
      vs.push_back(Json{{"name", v.name},
                        {"scheme", v.scheme_index < schemes.size() ? Json(print_scheme(schemes[v.scheme_index]))
                                                                   : Json(nullptr)},
                        {"accepted", v.accepted},
                        {"message", v.message}});
    }
    emit(Json{{"ok", r.ok}, {"schemes", std::move(vs)}});
  } else {
    for (const auto& v : r.verdicts) {
      const auto& schemes = src.schemes[v.name];
      std::cout << v.name;
      if (v.scheme_index < schemes.size()) std::cout << " : " << print_scheme(schemes[v.scheme_index]);
      std::cout << "  " << (v.accepted ? "accepted" : "rejected");
      if (!v.message.empty()) std::cout << " (" << v.message << ")";
      std::cout << "\n";
    }
  }
  return r.ok ? kOk : kFailed;
}

struct FuzzArgs {
  std::string file;
  FuzzConfig cfg;
  bool all = false;
};

int run_fuzz_cmd(FuzzArgs a, bool json) {
  SourceModule src = a.file.empty() ? SourceModule{} : load_module(a.file);
  if (a.cfg.max_size < a.cfg.min_size) a.cfg.min_size = a.cfg.max_size;
  FuzzSummary s = run_fuzz(src, a.cfg);
  bool bad = s.violations > 0 || s.exclusion_violations > 0 || s.invalid_judgements > 0;
  if (json) {
    Json reports = Json::array();
    for (const auto& r : s.reports)
      if (a.all || r.violation || r.exclusion_violation) reports.push_back(probe_to_json(r));
    emit(Json{{"count", a.cfg.count},
              {"seed", a.cfg.seed},
              {"fuel", a.cfg.fuel},
              {"outcomes", Json{{"Value", s.values}, {"Stuck", s.stuck}, {"OutOfFuel", s.out_of_fuel}}},
              {"well_typed", s.well_typed},
              {"ill_typed", s.ill_typed},
              {"violations", s.violations},
              {"exclusion_violations", s.exclusion_violations},
              {"invalid_judgements", s.invalid_judgements},
              {"reports", std::move(reports)}});
  } else {
    std::cout << a.cfg.count << " probes (seed " << a.cfg.seed << "): " << s.values << " values, " << s.stuck
              << " stuck, " << s.out_of_fuel << " out of fuel\n";
    std::cout << s.well_typed << " well-typed, " << s.ill_typed << " ill-typed\n";
    std::cout << s.violations << " violation(s), " << s.exclusion_violations << " exclusion violation(s), "
              << s.invalid_judgements << " invalid judgement(s)\n";
    for (const auto& r : s.reports)
      if (r.violation || r.exclusion_violation)
        std::cout << "  seed " << r.seed << ": " << print_term(r.term) << "\n";
  }
  return bad ? kFailed : kOk;
}

KernelDocument load_kernel(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return kernel_document_from_json(j);
}

struct KernelCheckArgs {
  std::string file;
  std::string system;
};

int run_kernel_check(const KernelCheckArgs& a, bool json) {
  KernelDocument doc = load_kernel(a.file);
  if (!a.system.empty()) {
    auto s = kernel::system_from_string(a.system);
    if (!s) throw UsageError("unknown system " + a.system);
    doc.system = *s;
  }
  kernel::KernelReport r = kernel::check(doc.derivation, doc.system);
  std::size_t nodes = kernel::node_count(doc.derivation);
  if (json) {
    emit(Json{{"system", std::string(kernel::to_string(doc.system))},
              {"ok", r.ok},
              {"nodes", nodes},
              {"node_index", r.ok ? Json(nullptr) : Json(r.node_index)},
              {"rule", r.ok ? Json(nullptr) : Json(r.rule)},
              {"message", r.ok ? Json(nullptr) : Json(r.message)}});
  } else if (r.ok) {
    std::cout << "ok: " << nodes << " nodes check in the " << kernel::to_string(doc.system) << " system\n";
  } else {
    std::cout << "node " << r.node_index << " (" << r.rule << "): " << r.message << "\n";
  }
  return r.ok ? kOk : kFailed;
}

int run_kernel_translate(const std::string& file, bool json) {
  KernelDocument doc = load_kernel(file);
  kernel::Derivation t;
  try {
    t = kernel::translate_to_one_sided(doc.derivation);
  } catch (const kernel::TranslationError& e) {
    std::cerr << e.what() << "\n";
    return kFailed;
  }
  if (json)
    std::cout << dump_json(kernel_document_to_json(KernelDocument{kernel::System::OneSided, t}));
  else
    print_tree(t, 0);
  return kOk;
}

struct KernelProveArgs {
  std::string expr;
  std::string type;
  std::string env;
  std::size_t depth = 8;
};

int run_kernel_prove(const KernelProveArgs& a, bool json) {
  auto d = kernel::prove_one_sided(parse_pcf_env(a.env), pcf::parse_pcf_term(a.expr), pcf::parse_pcf_type(a.type),
                                   a.depth);
  if (json) {
    if (d)
      std::cout << dump_json(kernel_document_to_json(KernelDocument{kernel::System::OneSided, *d}));
    else
      emit(Json{{"system", "one-sided"}, {"derivation", nullptr}});
  } else if (d) {
    print_tree(*d, 0);
  } else {
    std::cout << "no derivation within depth " << a.depth << "\n";
  }
  return d ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided type inference, verdicts and proof kernel"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::size_t fuel = default_fuel();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate main or an expression");
  eval_cmd->add_option("file", ev.file, "Module file")->required();
  eval_cmd->add_option("--expr", ev.expr, "Expression to evaluate instead of main");
  eval_cmd->add_option("--fuel", fuel, "Reduction budget (default TWOSIDE_FUEL or 100000)");

  InferArgs in;
  auto* infer_cmd = app.add_subcommand("infer", "Run InferR, or InferL with --left");
  infer_cmd->add_option("file", in.file, "Module file")->required();
  infer_cmd->add_option("--term", in.term, "Top-level identifier");
  infer_cmd->add_option("--expr", in.expr, "Expression");
  infer_cmd->add_option("--env", in.env, "Variable typings, e.g. \"f : [] ~> Ok\"");
  infer_cmd->add_option("--scheme", in.schemes, "Extra top-level scheme, e.g. \"f : [] ~> Ok\" (repeatable)");
  infer_cmd->add_flag("--left", in.left, "Infer on the left");
  infer_cmd->add_option("--delta", in.delta, "Variable typing on the right (with --left)");
  infer_cmd->add_option("--cap", in.cap, "Per-clause judgement cap");

  VerdictArgs ve;
  auto* verdict_cmd = app.add_subcommand("verdict", "Decide WellTyped, IllTyped or Unknown");
  verdict_cmd->add_option("file", ve.file, "Module file")->required();
  verdict_cmd->add_option("--expr", ve.expr, "Closed expression")->required();
  verdict_cmd->add_flag("--validate", ve.validate, "Re-validate every inferred judgement");

  ConstraintArgs co;
  auto* constraints_cmd = app.add_subcommand("constraints", "Close a constraint set and test consistency");
  constraints_cmd->add_option("file", co.file, "File holding a constraint set")->required();
  constraints_cmd->add_option("--entails", co.goals, "Goal A <= B to decide (repeatable)");

  std::string check_file;
  auto* check_cmd = app.add_subcommand("check", "Check top-level definitions against their schemes");
  check_cmd->add_option("file", check_file, "Module file")->required();

  FuzzArgs fz;
  fz.cfg.fuel = fuel;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Soundness probes on generated terms");
  fuzz_cmd->add_option("file", fz.file, "Module whose identifiers the generator may use");
  fuzz_cmd->add_option("--count", fz.cfg.count, "Number of probes");
  fuzz_cmd->add_option("--seed", fz.cfg.seed, "Run seed");
  fuzz_cmd->add_option("--size", fz.cfg.max_size, "Maximum term size");
  fuzz_cmd->add_option("--fuel", fz.cfg.fuel, "Reduction budget per probe");
  fuzz_cmd->add_option("--cap", fz.cfg.product_cap, "Per-clause judgement cap");
  fuzz_cmd->add_flag("--validate", fz.cfg.validate, "Re-validate every inferred judgement");
  fuzz_cmd->add_flag("--all", fz.all, "Report every probe, not only violations");

  auto* kernel_cmd = app.add_subcommand("kernel", "PCF proof kernel");
  kernel_cmd->require_subcommand(1);
  kernel_cmd->fallthrough();
  KernelCheckArgs kc;
  auto* kcheck = kernel_cmd->add_subcommand("check", "Check a derivation document");
  kcheck->add_option("file", kc.file, "Derivation JSON")->required();
  kcheck->add_option("--system", kc.system, "two-sided, two-sided-success or one-sided (default: from the file)");
  std::string translate_file;
  auto* ktrans = kernel_cmd->add_subcommand("translate", "Translate a two-sided derivation to the one-sided system");
  ktrans->add_option("file", translate_file, "Derivation JSON")->required();
  KernelProveArgs kp;
  auto* kprove = kernel_cmd->add_subcommand("prove", "Bounded one-sided proof search");
  kprove->add_option("--expr", kp.expr, "Term")->required();
  kprove->add_option("--type", kp.type, "Type")->required();
  kprove->add_option("--env", kp.env, "Variable typings, e.g. \"x : Nat, f : Nat -> Ok\"");
  kprove->add_option("--depth", kp.depth, "Search depth")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval_cmd) {
      ev.fuel = fuel;
      return run_eval(ev, json);
    }
    if (*infer_cmd) return run_infer(in, json);
    if (*verdict_cmd) return run_verdict(ve, json);
    if (*constraints_cmd) return run_constraints(co, json);
    if (*check_cmd) return run_check(check_file, json);
    if (*fuzz_cmd) return run_fuzz_cmd(fz, json);
    if (*kcheck) return run_kernel_check(kc, json);
    if (*ktrans) return run_kernel_translate(translate_file, json);
    if (*kprove) return run_kernel_prove(kp, json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
