#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lre/binary_lr.hpp"
#include "lre/eval.hpp"
#include "lre/inference.hpp"
#include "lre/meta.hpp"
#include "lre/proofs.hpp"
#include "lre/query.hpp"
#include "lre/typing.hpp"

using namespace lre;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = 2;

struct Options {
  std::string file;
  std::uint64_t fuel = 100000;
  int depth = 2;
  bool json = false;
  std::uint64_t seed = 0;
  std::size_t count = 1000;
  std::string type;  // check: optional ascription for a bare expression
  std::string kind;  // prove: refl | sym | trans
  std::string suite;
  bool serial = false;

  Bounds bounds() const { return {fuel, depth}; }
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(TriBool t) {
  switch (t) {
    case TriBool::Yes: return 0;
    case TriBool::No: return 1;
    case TriBool::Unknown: return 3;
  }
  return 3;
}

bool use_color() {
  const char* c = std::getenv("LRE_COLOR");
  if (c && std::string(c) == "0") return false;
  if (c && std::string(c) == "1") return true;
  return isatty(STDOUT_FILENO);
}

std::string verdict(TriBool t) {
  std::string s(to_string(t));
  if (!use_color()) return s;
  const char* code = t == TriBool::Yes ? "32" : t == TriBool::No ? "31" : "33";
  return std::string("\033[") + code + "m" + s + "\033[0m";
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output is either the human report or, with --json, one JSON object.
struct Report {
  std::ostringstream text;
  json record = json::object();
  TriBool result = TriBool::Yes;

  int emit(const Options& o) {
    record["result"] = std::string(to_string(result));
    if (o.json)
      std::cout << record.dump(2) << "\n";
    else
      std::cout << text.str() << "result: " << verdict(result) << "\n";
    return exit_code(result);
  }
};

std::string env_text(const Env& env) { return env.empty() ? "." : to_string(env); }

json error_json(const TypeError& e) {
  json j{{"kind", std::string(to_string(e.kind))}, {"message", e.message}};
  if (e.witness) j["witness"] = to_string(*e.witness);
  return j;
}

int run_check(const Options& o) {
  Query q = parse_query(read_file(o.file));
  Report r;
  r.record["command"] = "check";
  Bounds b = o.bounds();
  if (!o.type.empty()) {
    const Expr* e = std::get_if<Expr>(&q);
    if (!e) throw UsageError("--type needs a file holding a bare expression");
    q = Ascribe{{}, *e, parse_type(o.type)};
  }
  if (const auto* a = std::get_if<Ascribe>(&q)) {
    CheckResult c = check(a->env, a->expr, a->type, b);
    r.text << "judgment: " << env_text(a->env) << " |- " << to_string(a->expr) << " : " << to_string(a->type) << "\n";
    r.record["env"] = to_string(a->env);
    r.record["expr"] = to_string(a->expr);
    r.record["type"] = to_string(a->type);
    if (c.synthesized) {
      r.text << "synthesized: " << to_string(c.synthesized) << "\n";
      r.record["synthesized"] = to_string(c.synthesized);
    }
    if (c.error) {
      r.text << "error: " << to_string(*c.error) << "\n";
      r.record["error"] = error_json(*c.error);
    }
    r.result = c.result;
  } else if (const auto* e = std::get_if<Expr>(&q)) {
    SynthResult s = synth({}, *e, b);
    r.text << "expr: " << to_string(*e) << "\n";
    r.record["expr"] = to_string(*e);
    if (s.ok()) {
      r.text << "synthesized: " << to_string(s.type) << "\n";
      r.record["synthesized"] = to_string(s.type);
    } else {
      r.text << "error: " << to_string(*s.error) << "\n";
      r.record["error"] = error_json(*s.error);
    }
    r.result = s.status();
  } else if (const auto* t = std::get_if<Type>(&q)) {
    WfResult w = wf({}, *t, b);
    r.text << "type: " << to_string(*t) << "\n";
    r.record["type"] = to_string(*t);
    if (!w.reason.empty()) {
      r.text << "reason: " << w.reason << "\n";
      r.record["reason"] = w.reason;
    }
    r.result = w.result;
  } else {
    throw UsageError("check expects (ascribe ...), an expression or a type");
  }
  return r.emit(o);
}

int run_eval(const Options& o) {
  Query q = parse_query(read_file(o.file));
  const Expr* e = std::get_if<Expr>(&q);
  if (!e) throw UsageError("eval expects an expression");
  if (o.fuel == 0) throw UsageError("--fuel must be at least 1");
  EvalOutcome out = eval(*e, o.fuel);
  Report r;
  r.record["command"] = "eval";
  r.record["expr"] = to_string(*e);
  r.record["steps"] = out.steps;
  r.text << "expr: " << to_string(*e) << "\n";
  switch (out.kind) {
    case EvalOutcome::Kind::Value:
      r.text << "value: " << to_string(out.expr) << "\n";
      r.record["value"] = to_string(out.expr);
      r.result = TriBool::Yes;
      break;
    case EvalOutcome::Kind::Stuck:
      r.text << "stuck: " << to_string(out.expr) << "\n";
      r.record["stuck"] = to_string(out.expr);
      r.result = TriBool::No;
      break;
    case EvalOutcome::Kind::FuelExhausted:
      r.text << "fuel exhausted at: " << to_string(out.expr) << "\n";
      r.record["reached"] = to_string(out.expr);
      r.result = TriBool::Unknown;
      break;
  }
  r.text << "steps: " << out.steps << "\n";
  return r.emit(o);
}

int run_subtype(const Options& o) {
  std::vector<Query> qs = parse_queries(read_file(o.file));
  SubtypeQuery s;
  if (qs.size() == 1 && std::holds_alternative<SubtypeQuery>(qs[0])) {
    s = std::get<SubtypeQuery>(qs[0]);
  } else if (qs.size() == 2 && std::holds_alternative<Type>(qs[0]) && std::holds_alternative<Type>(qs[1])) {
    s = SubtypeQuery{{}, std::get<Type>(qs[0]), std::get<Type>(qs[1])};
  } else {
    throw UsageError("subtype expects (subtype-query ...) or two types");
  }
  SubtypeResult res = subtype(s.env, s.sub, s.super, o.bounds());
  Report r;
  r.record["command"] = "subtype";
  r.record["env"] = to_string(s.env);
  r.record["sub"] = to_string(s.sub);
  r.record["super"] = to_string(s.super);
  r.text << "query: " << env_text(s.env) << " |- " << to_string(s.sub) << " <: " << to_string(s.super) << "\n";
  if (!res.reason.empty()) {
    r.text << "reason: " << res.reason << "\n";
    r.record["reason"] = res.reason;
  }
  if (res.witness) {
    r.text << "witness: " << to_string(*res.witness) << "\n";
    r.record["witness"] = to_string(*res.witness);
  }
  r.result = res.result;
  return r.emit(o);
}

// Runs a premise proof to a value; the proof generators work on values.
Expr normalize(const Expr& p, const Bounds& b, Report& r, const char* label) {
  if (is_value(p)) return p;
  EvalOutcome out = eval(p, b.fuel);
  if (!out.is_value()) {
    r.result = out.kind == EvalOutcome::Kind::FuelExhausted ? TriBool::Unknown : TriBool::No;
    throw std::runtime_error(std::string(label) + " does not evaluate to a proof value");
  }
  r.text << label << " normalized: " << to_string(out.expr) << "\n";
  return out.expr;
}

bool premise(Report& r, const Env& env, const Expr& p, const Type& t, const Bounds& b, const char* label) {
  CheckResult c = check(env, p, t, b);
  r.text << label << ": " << to_string(p) << " : " << to_string(t) << " => " << to_string(c.result) << "\n";
  r.record["premises"].push_back({{"proof", to_string(p)}, {"type", to_string(t)}, {"result", to_string(c.result)}});
  if (c.result == TriBool::Yes) return true;
  if (c.error) r.text << "error: " << to_string(*c.error) << "\n";
  r.result = c.result;
  return false;
}

int run_prove(const Options& o) {
  Query q = parse_query(read_file(o.file));
  Bounds b = o.bounds();
  Report r;
  r.record["command"] = "prove";
  r.record["kind"] = o.kind;
  r.record["premises"] = json::array();
  Env env;
  Expr proof, left, right;
  Type t;
  try {
    if (o.kind == "refl") {
      const auto* a = std::get_if<Ascribe>(&q);
      if (!a) throw UsageError("prove refl expects (ascribe [env] e t)");
      env = a->env, t = a->type, left = right = a->expr;
      CheckResult c = check(env, left, t, b);
      r.text << "premise: " << to_string(left) << " : " << to_string(t) << " => " << to_string(c.result) << "\n";
      r.record["premises"].push_back({{"expr", to_string(left)}, {"type", to_string(t)}, {"result", to_string(c.result)}});
      if (c.result != TriBool::Yes) {
        r.result = c.result;
        return r.emit(o);
      }
      proof = prove_refl(env, left, t);
    } else if (o.kind == "sym") {
      const auto* s = std::get_if<SymQuery>(&q);
      if (!s) throw UsageError("prove sym expects (sym-query [env] p t e1 e2)");
      env = s->env, t = s->type, left = s->right, right = s->left;
      if (!premise(r, env, s->proof, mk::eqrt(t, s->left, s->right), b, "premise")) return r.emit(o);
      proof = prove_sym(env, normalize(s->proof, b, r, "premise"), t, s->left, s->right);
    } else if (o.kind == "trans") {
      const auto* s = std::get_if<TransQuery>(&q);
      if (!s) throw UsageError("prove trans expects (trans-query [env] p12 p23 t e1 e2 e3)");
      env = s->env, t = s->type, left = s->e1, right = s->e3;
      if (!premise(r, env, s->p12, mk::eqrt(t, s->e1, s->e2), b, "premise 1")) return r.emit(o);
      if (!premise(r, env, s->p23, mk::eqrt(t, s->e2, s->e3), b, "premise 2")) return r.emit(o);
      proof = prove_trans(env, normalize(s->p12, b, r, "premise 1"), normalize(s->p23, b, r, "premise 2"), t, s->e1,
                          s->e2, s->e3);
    } else {
      throw UsageError("prove kind must be refl, sym or trans");
    }
  } catch (const ProofError& e) {
    r.text << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    r.record["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    r.result = TriBool::No;
    return r.emit(o);
  } catch (const UsageError&) {
    throw;
  } catch (const std::runtime_error& e) {
    if (r.result == TriBool::Yes) throw;
    r.text << "error: " << e.what() << "\n";
    r.record["error"] = {{"message", e.what()}};
    return r.emit(o);
  }
  Type goal = mk::eqrt(t, left, right);
  CheckResult c = check(env, proof, goal, b);
  r.text << "proof: " << to_string(proof) << "\n";
  r.text << "type: " << to_string(goal) << "\n";
  r.record["proof"] = to_string(proof);
  r.record["type"] = to_string(goal);
  if (c.error) {
    r.text << "error: " << to_string(*c.error) << "\n";
    r.record["error"] = error_json(*c.error);
  }
  r.result = c.result;
  return r.emit(o);
}

int run_lr(const Options& o) {
  Query q = parse_query(read_file(o.file));
  const auto* l = std::get_if<LrQuery>(&q);
  if (!l) throw UsageError("lr expects (lr-query [env] e1 e2 t)");
  TriBool res = open_related(l->env, l->left, l->right, l->type, o.bounds());
  Report r;
  r.record["command"] = "lr";
  r.record["env"] = to_string(l->env);
  r.record["left"] = to_string(l->left);
  r.record["right"] = to_string(l->right);
  r.record["type"] = to_string(l->type);
  r.text << "query: " << env_text(l->env) << " |- " << to_string(l->left) << " ~ " << to_string(l->right) << " : "
         << to_string(l->type) << "\n";
  r.result = res;
  return r.emit(o);
}

int run_demo_cmd(const Options& o) {
  DemoReport d = run_demo(o.bounds());
  Report r;
  r.record["command"] = "demo";
  r.text << to_text(d);
  r.record["xeq_solution"] = to_string(d.xeq_solution);
  r.record["funext_solution"] = to_string(d.funext_solution);
  r.record["xeq_equivalent_to_domain"] = to_string(d.xeq_equiv_domain);
  r.record["proof"] = to_string(d.proof);
  r.record["check_narrow"] = to_string(d.check_narrow);
  r.record["check_wide"] = to_string(d.check_wide);
  r.record["coercion"] = to_string(d.coercion.result);
  if (d.coercion.witness) r.record["coercion_witness"] = to_string(*d.coercion.witness);
  bool expected = d.funext_solution.contains_false() && d.xeq_equiv_domain == TriBool::Yes &&
                  d.check_narrow == TriBool::Yes && d.check_wide == TriBool::No && d.coercion.result == TriBool::No;
  r.result = expected ? TriBool::Yes : TriBool::No;
  return r.emit(o);
}

int run_meta(const Options& o) {
  Bounds b = o.bounds();
  Exec exec = o.serial ? Exec::Serial : Exec::Parallel;
  SuiteReport s;
  if (o.suite == "constants") s = constants_suite(b);
  else if (o.suite == "determinism") s = determinism_suite(o.seed, o.count, b, exec);
  else if (o.suite == "fundamental") s = fundamental_suite(o.seed, o.count, b, exec);
  else if (o.suite == "simulation") s = simulation_suite(o.seed, o.count, b, exec);
  else if (o.suite == "cotermination") s = cotermination_suite(o.seed, o.count, b, exec);
  else if (o.suite == "congruence") s = congruence_suite(o.seed, o.count, b, exec);
  else if (o.suite == "selfify") s = selfify_suite(o.seed, o.count, b, exec);
  else if (o.suite == "subeq") s = subeq_rigidity_suite(o.seed, o.count, b, exec);
  else if (o.suite == "peq") s = peq_suite(b, exec);
  else throw UsageError("unknown suite " + o.suite);
  Report r;
  r.text << to_text(s);
  r.record["command"] = "meta";
  r.record["suite"] = s.name;
  r.record["seed"] = s.seed;
  r.record["cases"] = s.cases.size();
  r.record["exercised"] = s.exercised();
  r.record["yes"] = s.count(TriBool::Yes);
  r.record["no"] = s.count(TriBool::No);
  r.record["unknown"] = s.count(TriBool::Unknown);
  json failures = json::array();
  for (std::size_t i = 0; i < s.cases.size(); ++i)
    if (s.cases[i].result != TriBool::Yes)
      failures.push_back({{"case", i}, {"result", to_string(s.cases[i].result)}, {"detail", s.cases[i].detail}});
  r.record["failures"] = failures;
  r.result = s.overall();
  return r.emit(o);
}

void common(CLI::App* c, Options& o) {
  c->add_option("--fuel", o.fuel, "step budget per evaluation")->capture_default_str();
  c->add_option("--depth", o.depth, "nesting depth for enumerating functions")->capture_default_str();
  c->add_flag("--json", o.json, "print a JSON record instead of the text report");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"lre: refinement types with semantic subtyping and typed equality"};
  app.require_subcommand(1, 1);

  auto* check_cmd = app.add_subcommand("check", "type-check an ascription, synthesize, or check a type");
  check_cmd->add_option("file", o.file)->required();
  check_cmd->add_option("--type", o.type, "ascription for a bare expression");
  common(check_cmd, o);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a closed expression");
  eval_cmd->add_option("file", o.file)->required();
  common(eval_cmd, o);

  auto* sub_cmd = app.add_subcommand("subtype", "decide a subtyping query");
  sub_cmd->add_option("file", o.file)->required();
  common(sub_cmd, o);

  auto* prove_cmd = app.add_subcommand("prove", "build and recheck a refl, sym or trans proof");
  prove_cmd->add_option("kind", o.kind)->required()->check(CLI::IsMember({"refl", "sym", "trans"}));
  prove_cmd->add_option("file", o.file)->required();
  common(prove_cmd, o);

  auto* lr_cmd = app.add_subcommand("lr", "decide the binary logical relation");
  lr_cmd->add_option("file", o.file)->required();
  common(lr_cmd, o);

  auto* demo_cmd = app.add_subcommand("demo", "funext inconsistency demo");
  common(demo_cmd, o);

  auto* meta_cmd = app.add_subcommand("meta", "run a metatheory suite");
  meta_cmd->add_option("suite", o.suite)
      ->required()
      ->check(CLI::IsMember(
          {"constants", "determinism", "fundamental", "simulation", "cotermination", "congruence", "selfify", "subeq", "peq"}));
  meta_cmd->add_option("--seed", o.seed)->capture_default_str();
  meta_cmd->add_option("--count", o.count)->capture_default_str();
  meta_cmd->add_flag("--serial", o.serial, "run cases on one thread");
  common(meta_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check_cmd) return run_check(o);
    if (*eval_cmd) return run_eval(o);
    if (*sub_cmd) return run_subtype(o);
    if (*prove_cmd) return run_prove(o);
    if (*lr_cmd) return run_lr(o);
    if (*demo_cmd) return run_demo_cmd(o);
    if (*meta_cmd) return run_meta(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
