// Command-line front end: compatibility checking, instance inference,
// call-by-value rewriting, runtime-complexity measurement, step embedding
// and descending-chain lengths, over system description files.

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poestar/infer.hpp"
#include "poestar/parse.hpp"
#include "poestar/poe.hpp"
#include "poestar/poel.hpp"
#include "poestar/report.hpp"
#include "poestar/rewrite.hpp"
#include "poestar/term.hpp"
#include "poestar/trs.hpp"

namespace {

using namespace poestar;

// Exit codes: 0 success/compatible, 1 incompatible or violated property,
// 2 usage or parse error, 3 budget or guard exceeded.
constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::optional<ParsedFile> loadSystem(const std::string& path) {
  ParsedFile pf = parseTrsFile(path);
  if (!pf.ok()) {
    for (const auto& e : pf.errors)
      std::cerr << path << ": " << e.str() << "\n";
    return std::nullopt;
  }
  return pf;
}

std::optional<Term> loadTerm(const Signature& sig, const std::string& text,
                             bool require_ground) {
  ParsedTerm pt = parseTerm(sig, text);
  if (!pt.term) {
    for (const auto& e : pt.errors) std::cerr << "term: " << e.str() << "\n";
    return std::nullopt;
  }
  if (require_ground && !pt.term->isGround()) {
    std::cerr << "term: must be ground, variables cannot be rewritten\n";
    return std::nullopt;
  }
  return pt.term;
}

std::string separationText(const std::vector<ArgKind>& kinds) {
  if (kinds.empty()) return "(no arguments)";
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) out += ' ';
    out += kinds[i] == ArgKind::Normal ? "normal" : "safe";
  }
  return out;
}

std::string precedenceText(const Precedence& p) {
  if (p.ranks().empty()) return "(empty)";
  std::map<int, std::vector<std::string>, std::greater<>> groups;
  for (const auto& [name, rank] : p.ranks()) groups[rank].push_back(name);
  std::string out;
  for (const auto& [rank, names] : groups) {
    (void)rank;
    if (!out.empty()) out += " > ";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += " = ";
      out += names[i];
    }
  }
  return out;
}

void printInstance(const PoeInstance& inst) {
  for (const auto& [name, kinds] : inst.separation)
    std::cout << "  separation " << name << " : " << separationText(kinds)
              << "\n";
  std::cout << "  precedence " << precedenceText(inst.precedence) << "\n";
}

std::string pathText(const std::vector<std::size_t>& path0) {
  if (path0.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path0.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path0[i] + 1);
  }
  return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int runCheck(const std::string& path, bool allow_incomplete, bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  WellFormedReport wf = checkWellFormed(
      pf->trs, {.require_complete_definitions = !allow_incomplete});
  CompatReport compat = checkTrs(pf->instance(), pf->trs);
  bool ok = wf.ok() && compat.compatible;
  if (json) {
    Json j;
    j["command"] = "check";
    j["file"] = path;
    j["well_formed"] = wellFormedJson(wf);
    j["compatibility"] = compatJson(compat);
    j["ok"] = ok;
    emit(j);
    return ok ? kOk : kViolated;
  }
  for (const auto& issue : wf.issues) {
    std::cerr << (issue.severity == IssueSeverity::Error ? "error" : "warning")
              << " [" << issue.category << "]";
    if (issue.rule_number) std::cerr << " rule " << *issue.rule_number;
    std::cerr << ": " << issue.message << "\n";
  }
  for (const auto& rc : compat.rules) {
    std::cout << "rule " << rc.rule_number << ": " << rc.rule.str() << "\n";
    if (rc.outcome.greater())
      std::cout << "  oriented by clause " << rc.outcome.cert->clause << "\n";
    else
      std::cout << "  NOT oriented: " << rc.outcome.failure.reason << "\n";
  }
  std::cout << (ok ? "COMPATIBLE" : "INCOMPATIBLE") << "\n";
  return ok ? kOk : kViolated;
}

int runInfer(const std::string& path, std::size_t max_instances, bool no_prune,
             bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  InferResult res =
      infer(pf->trs, {.max_instances = max_instances, .prune = !no_prune});
  if (json) {
    Json j;
    j["command"] = "infer";
    j["file"] = path;
    j["result"] = inferJson(res);
    emit(j);
  } else if (res.found) {
    std::cout << "COMPATIBLE under\n";
    printInstance(*res.instance);
  } else if (res.budget_exhausted) {
    std::cout << "UNKNOWN: search budget exhausted after "
              << res.stats.instances_tried + res.stats.instances_pruned
              << " candidates\n";
  } else {
    std::cout << "INCOMPATIBLE (exhaustive)\n";
    for (const auto& ob : res.obstructions)
      std::cout << "  rule " << ob.rule_number << " unorientable under "
                << ob.infeasible_separations
                << " separations, e.g.: " << ob.sample_reason << "\n";
  }
  if (res.found) return kOk;
  return res.budget_exhausted ? kBudget : kViolated;
}

int runRewrite(const std::string& path, const std::string& term_text,
               std::size_t budget, bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  auto t = loadTerm(pf->trs.signature, term_text, true);
  if (!t) return kUsage;
  EvalResult r = evaluate(pf->trs, *t, budget);
  if (json) {
    Json j;
    j["command"] = "rewrite";
    j["file"] = path;
    j["input"] = t->str();
    j["result"] = r.result.str();
    j["steps"] = r.steps;
    j["completed"] = r.completed;
    emit(j);
  } else {
    std::cout << r.result.str() << "\n";
    if (r.completed)
      std::cout << "normal form after " << r.steps << " steps\n";
    else
      std::cout << "budget of " << budget << " steps exhausted\n";
  }
  return r.completed ? kOk : kBudget;
}

int runTrace(const std::string& path, const std::string& term_text,
             std::size_t budget, bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  auto t = loadTerm(pf->trs.signature, term_text, true);
  if (!t) return kUsage;
  Derivation d = traceDerivation(pf->trs, *t, budget);
  if (json) {
    Json j;
    j["command"] = "trace";
    j["file"] = path;
    j["derivation"] = derivationJson(d);
    emit(j);
  } else {
    std::cout << d.start.str() << "\n";
    for (const auto& s : d.steps)
      std::cout << "  ->[rule " << s.rule_number << " at " << pathText(s.path0)
                << "] " << s.result.str() << "\n";
    if (d.completed)
      std::cout << "normal form after " << d.steps.size() << " steps\n";
    else
      std::cout << "budget of " << budget << " steps exhausted\n";
  }
  return d.completed ? kOk : kBudget;
}

int runRc(const std::string& path, std::size_t max_size, std::size_t budget,
          bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  std::vector<RcSample> samples;
  try {
    for (std::size_t n = 1; n <= max_size; ++n)
      samples.push_back(measureRc(pf->trs, n, budget));
  } catch (const BudgetExceeded& e) {
    std::cerr << "rc: " << e.what() << "\n";
    return kBudget;
  }
  std::vector<std::pair<double, double>> points;
  for (const auto& s : samples)
    if (s.max_steps >= 1)
      points.push_back({static_cast<double>(s.input_size),
                        std::log2(static_cast<double>(s.max_steps))});
  std::optional<double> slope;
  if (points.size() >= 2) slope = leastSquaresSlope(points);
  if (json) {
    Json j;
    j["command"] = "rc";
    j["file"] = path;
    j["samples"] = rcSamplesJson(samples);
    j["log2_slope"] = slope ? Json(*slope) : Json(nullptr);
    emit(j);
  } else {
    std::cout << "  n  max steps  witness\n";
    for (const auto& s : samples) {
      std::cout << "  " << s.input_size << "  " << s.max_steps << "  "
                << (s.witness ? s.witness->str() : "-") << "\n";
    }
    if (slope)
      std::cout << "log2 growth slope: " << *slope << "\n";
    else
      std::cout << "log2 growth slope: n/a\n";
  }
  return kOk;
}

int runEmbed(const std::string& path, const std::string& term_text,
             std::size_t budget, bool certs, bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  auto t = loadTerm(pf->trs.signature, term_text, true);
  if (!t) return kUsage;
  EmbeddingVerifier verifier(pf->trs, pf->precedence);
  Derivation d = traceDerivation(pf->trs, *t, budget);
  EmbeddingReport rep = verifier.verifyDerivation(d);
  if (json) {
    Json j;
    j["command"] = "embed";
    j["file"] = path;
    j["derivation"] = derivationJson(d);
    j["embedding"] = embeddingJson(rep, certs);
    emit(j);
  } else {
    std::cout << "interpreting steps at length bound " << rep.ell << "\n";
    for (const auto& s : rep.steps) {
      std::cout << "step " << s.step_index << ": "
                << PoelItem::sequence(s.pint_before).str() << " > "
                << PoelItem::sequence(s.pint_after).str() << " : ";
      if (s.ok())
        std::cout << "ok\n";
      else if (!s.decreases)
        std::cout << "NO DECREASE: " << s.failure << "\n";
      else
        std::cout << "NORMAL ARGUMENTS NOT VALUES\n";
    }
    std::cout << (rep.ok() ? "all steps descend" : "embedding violated")
              << "\n";
  }
  if (!rep.ok()) return kViolated;
  return d.completed ? kOk : kBudget;
}

int runSlow(const std::string& path, const std::string& term_text,
            std::size_t ell, bool json) {
  auto pf = loadSystem(path);
  if (!pf) return kUsage;
  PoelInstance inst = liftInstance(pf->trs, pf->precedence);
  if (ell > 0) inst.ell = ell;
  auto t = loadTerm(inst.universe, term_text, false);
  if (!t) return kUsage;
  SlowCalculator calc(inst);
  try {
    calc.validateInput(PoelItem::term(*t));
    std::uint64_t value = calc.slow(PoelItem::term(*t));
    SlowBoundCheck bc = checkSlowBound(calc, *t);
    if (json) {
      Json j;
      j["command"] = "slow";
      j["file"] = path;
      j["term"] = t->str();
      j["ell"] = inst.ell;
      j["slow"] = value;
      j["bound"] = slowBoundJson(bc);
      emit(j);
    } else {
      std::cout << "slow(" << t->str() << ") = " << value << " at length bound "
                << inst.ell << "\n";
      if (bc.applicable) {
        std::cout << "closed-form cap " << bc.bound
                  << (bc.saturated ? " (saturated)" : "") << " at rank "
                  << bc.rank << ": "
                  << (bc.holds ? "holds" : "VIOLATED") << "\n";
      } else {
        std::cout << "closed-form cap not applicable: " << bc.reason << "\n";
      }
    }
    return kOk;
  } catch (const GuardExceeded& e) {
    std::cerr << "slow: " << e.what() << "\n";
    return kBudget;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compatibility checker, instance search and runtime-complexity "
      "workbench for call-by-value constructor rewrite systems"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "emit one JSON report on stdout");
  std::uint64_t seed = 0;
  app.add_option("--seed", seed,
                 "accepted for interface stability; every command is "
                 "deterministic");

  std::string check_file;
  bool allow_incomplete = false;
  auto* check = app.add_subcommand(
      "check", "verify compatibility under the file's declared instance");
  check->add_option("file", check_file, "system description")->required();
  check->add_flag("--allow-incomplete", allow_incomplete,
                  "report missing value coverage as a warning only");

  std::string infer_file;
  std::size_t max_instances = 1'000'000;
  bool no_prune = false;
  auto* inf = app.add_subcommand(
      "infer", "search all separations and precedences for an instance");
  inf->add_option("file", infer_file, "system description")->required();
  inf->add_option("--max-instances", max_instances,
                  "candidate budget, skipped candidates included");
  inf->add_flag("--no-prune", no_prune, "disable constraint pruning");

  std::string rw_file, rw_term;
  std::size_t rw_budget = 100'000;
  auto* rw = app.add_subcommand("rewrite",
                                "evaluate a term to normal form");
  rw->add_option("file", rw_file, "system description")->required();
  rw->add_option("term", rw_term, "ground term")->required();
  rw->add_option("--budget", rw_budget, "maximum number of steps");

  std::string tr_file, tr_term;
  std::size_t tr_budget = 100'000;
  auto* tr = app.add_subcommand("trace", "evaluate and print every step");
  tr->add_option("file", tr_file, "system description")->required();
  tr->add_option("term", tr_term, "ground term")->required();
  tr->add_option("--budget", tr_budget, "maximum number of steps");

  std::string rc_file;
  std::size_t rc_max_size = 0;
  std::size_t rc_budget = 1'000'000;
  auto* rc = app.add_subcommand(
      "rc", "longest derivations from basic terms up to a size");
  rc->add_option("file", rc_file, "system description")->required();
  rc->add_option("--max-size", rc_max_size, "largest input size")->required();
  rc->add_option("--budget", rc_budget, "per-term derivation budget");

  std::string em_file, em_term;
  std::size_t em_budget = 10'000;
  bool em_certs = false;
  auto* em = app.add_subcommand(
      "embed", "verify that interpreted steps descend in the support order");
  em->add_option("file", em_file, "system description")->required();
  em->add_option("term", em_term, "ground starting term")->required();
  em->add_option("--budget", em_budget, "maximum number of steps");
  em->add_flag("--certs", em_certs, "include full certificates in JSON");

  std::string sl_file, sl_term;
  std::size_t sl_ell = 0;
  auto* sl = app.add_subcommand(
      "slow", "longest descending chain below a term in the support order");
  sl->add_option("file", sl_file, "system description")->required();
  sl->add_option("--term", sl_term, "term over the lifted signature")
      ->required();
  sl->add_option("--ell", sl_ell,
                 "length bound; defaults to the lifted instance's bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  if (check->parsed()) return runCheck(check_file, allow_incomplete, json);
  if (inf->parsed()) return runInfer(infer_file, max_instances, no_prune, json);
  if (rw->parsed()) return runRewrite(rw_file, rw_term, rw_budget, json);
  if (tr->parsed()) return runTrace(tr_file, tr_term, tr_budget, json);
  if (rc->parsed()) return runRc(rc_file, rc_max_size, rc_budget, json);
  if (em->parsed()) return runEmbed(em_file, em_term, em_budget, em_certs, json);
  if (sl->parsed()) return runSlow(sl_file, sl_term, sl_ell, json);
  return kUsage;
}
