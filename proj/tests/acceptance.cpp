// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit code equal
// to the number of failures.  Every check is deterministic; random suites
// run from fixed seeds.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "poestar/infer.hpp"
#include "poestar/parse.hpp"
#include "poestar/poe.hpp"
#include "poestar/poel.hpp"
#include "poestar/report.hpp"
#include "poestar/rewrite.hpp"
#include "poestar/trs.hpp"

using namespace poestar;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

ParsedFile loadFixture(const char* name) {
  std::string path = std::string(POESTAR_FIXTURE_DIR) + "/" + name;
  ParsedFile pf = parseTrsFile(path);
  if (!pf.ok()) {
    for (const auto& e : pf.errors)
      std::fprintf(stderr, "%s: %s\n", path.c_str(), e.str().c_str());
    std::exit(99);
  }
  return pf;
}

Term mk(const Signature& sig, const std::string& name, std::vector<Term> args) {
  const FunctionSymbol* f = sig.find(name);
  if (!f) {
    std::fprintf(stderr, "fixture lacks symbol %s\n", name.c_str());
    std::exit(99);
  }
  std::vector<Term> normal(args.begin(), args.begin() + f->normal_arity);
  std::vector<Term> safe(args.begin() + f->normal_arity, args.end());
  return Term::app(*f, std::move(normal), std::move(safe));
}

Term nat(const Signature& sig, int n) {
  Term t = mk(sig, "Z", {});
  for (int i = 0; i < n; ++i) t = mk(sig, "s", {t});
  return t;
}

// Toy constructor universe for the chain-length and order-law suites:
// one minimal constant, a unary and a binary symbol one precedence step up.
PoelInstance tinyUniverse(std::size_t ell) {
  PoelInstance inst;
  inst.ell = ell;
  inst.universe.add({"c", SymbolKind::Constructor, 0, 0});
  inst.universe.add({"f", SymbolKind::Constructor, 0, 1});
  inst.universe.add({"g", SymbolKind::Constructor, 0, 2});
  inst.precedence = Precedence({{"c", 0}, {"f", 1}, {"g", 1}});
  return inst;
}

// All ground terms over the toy universe, grouped by size.
std::vector<std::vector<Term>> tinyTermsBySize(const Signature& sig,
                                               std::size_t maxSize) {
  const FunctionSymbol& c = *sig.find("c");
  const FunctionSymbol& f = *sig.find("f");
  const FunctionSymbol& g = *sig.find("g");
  std::vector<std::vector<Term>> by(maxSize + 1);
  if (maxSize >= 1) by[1].push_back(Term::app(c, {}, {}));
  for (std::size_t n = 2; n <= maxSize; ++n) {
    for (const auto& t : by[n - 1]) by[n].push_back(Term::app(f, {}, {t}));
    for (std::size_t i = 1; i + 1 < n; ++i)
      for (const auto& a : by[i])
        for (const auto& b : by[n - 1 - i])
          by[n].push_back(Term::app(g, {}, {a, b}));
  }
  return by;
}

Term randomTinyTerm(std::mt19937_64& rng, const Signature& sig, int depth) {
  const FunctionSymbol& c = *sig.find("c");
  const FunctionSymbol& f = *sig.find("f");
  const FunctionSymbol& g = *sig.find("g");
  if (depth == 0) return Term::app(c, {}, {});
  switch (rng() % 3) {
    case 0:
      return Term::app(c, {}, {});
    case 1:
      return Term::app(f, {}, {randomTinyTerm(rng, sig, depth - 1)});
    default:
      return Term::app(g, {}, {randomTinyTerm(rng, sig, depth - 1),
                               randomTinyTerm(rng, sig, depth - 1)});
  }
}

Term randomNatTerm(std::mt19937_64& rng, const Signature& sig, int depth) {
  if (depth == 0) return nat(sig, 0);
  switch (rng() % 3) {
    case 0:
      return nat(sig, 0);
    case 1:
      return mk(sig, "s", {randomNatTerm(rng, sig, depth - 1)});
    default:
      return mk(sig, "add", {randomNatTerm(rng, sig, depth - 1),
                             randomNatTerm(rng, sig, depth - 1)});
  }
}

// --- criterion 1: shipped example verdicts ------------------------------

void exampleVerdicts(const ParsedFile& add, const ParsedFile& exp,
                     const ParsedFile& fac) {
  auto start = Clock::now();
  bool addOk = checkTrs(add.instance(), add.trs).compatible;
  bool expOk = checkTrs(exp.instance(), exp.trs).compatible;
  InferResult fr = infer(fac.trs);
  double t = secondsSince(start);
  bool ok = addOk && expOk && !fr.found && !fr.budget_exhausted && t < 10.0;
  std::ostringstream d;
  d << "add " << (addOk ? "compatible" : "NOT compatible") << ", exp "
    << (expOk ? "compatible" : "NOT compatible") << ", fac "
    << (fr.found ? "unexpectedly compatible"
                 : fr.budget_exhausted ? "search not exhausted"
                                       : "incompatible (exhaustive)")
    << " over " << fr.stats.separations_tried << " separations, "
    << fmt(t) << "s";
  report("example-verdicts", ok, d.str());
}

// --- criterion 2: doubling gadget ---------------------------------------

void doublingGadget(const ParsedFile& gadget) {
  auto start = Clock::now();
  bool oriented = checkTrs(gadget.instance(), gadget.trs).compatible;
  const Signature& sig = gadget.trs.signature;
  std::size_t words = 0, mismatches = 0;
  for (const Term& w : enumerateValues(sig, 7)) {  // dyadic words, <= 6 digits
    ++words;
    std::size_t digits = w.size() - 1;
    Term startTerm = mk(sig, "f1", {w, mk(sig, "eps", {})});
    EvalResult ev = evaluate(gadget.trs, startTerm, 100'000);
    Term expected = mk(sig, "eps", {});
    for (std::uint64_t i = 0; i < (1ULL << digits); ++i)
      expected = mk(sig, "0", {expected});
    if (!ev.completed || ev.result != expected) ++mismatches;
  }
  double t = secondsSince(start);
  bool ok = oriented && words == 127 && mismatches == 0;
  std::ostringstream d;
  d << (oriented ? "oriented" : "NOT oriented") << "; iteration exact on "
    << (words - mismatches) << "/" << words << " words, " << fmt(t) << "s";
  report("doubling-gadget", ok, d.str());
}

// --- criterion 3: exponential step counts -------------------------------

void expStepCounts(const ParsedFile& exp) {
  auto start = Clock::now();
  const Signature& sig = exp.trs.signature;
  std::size_t bad = 0;
  for (int n = 0; n <= 12; ++n) {
    Term t = mk(sig, "exp", {nat(sig, n), nat(sig, 0)});
    EvalResult ev = evaluate(exp.trs, t, 100'000);
    std::size_t want = (std::size_t{1} << (n + 1)) - 1;
    if (!ev.completed || ev.steps != want) ++bad;
    if (n <= 4 && maxDerivationLength(exp.trs, t, 100'000) != want) ++bad;
  }
  double t = secondsSince(start);
  bool ok = bad == 0 && t < 5.0;
  std::ostringstream d;
  d << "steps match 2^(n+1)-1 for n=0..12"
    << (bad ? " with " + std::to_string(bad) + " mismatches" : "")
    << ", exhaustive cross-check n<=4, " << fmt(t) << "s";
  report("exp-step-counts", ok, d.str());
}

// --- criterion 4: growth-rate slopes ------------------------------------

void growthSlopes(const ParsedFile& add, const ParsedFile& exp) {
  auto start = Clock::now();
  std::vector<std::pair<double, double>> expPts, addPts;
  bool measured = true;
  for (std::size_t n = 4; n <= 12; ++n) {
    RcSample e = measureRc(exp.trs, n, 10'000'000);
    RcSample a = measureRc(add.trs, n, 10'000'000);
    if (e.max_steps == 0 || a.max_steps == 0) {
      measured = false;
      continue;
    }
    expPts.push_back({double(n), std::log2(double(e.max_steps))});
    addPts.push_back({double(n), double(a.max_steps)});
  }
  double expSlope = leastSquaresSlope(expPts);
  double addSlope = leastSquaresSlope(addPts);
  double t = secondsSince(start);
  bool ok = measured && expSlope >= 0.8 && expSlope <= 1.2 &&
            addSlope >= 0.4 && addSlope <= 1.1;
  std::ostringstream d;
  d << "exp log2-steps slope " << fmt(expSlope)
    << " (want 0.8..1.2), add steps slope " << fmt(addSlope)
    << " (want 0.4..1.1), n=4..12, " << fmt(t) << "s";
  report("growth-slopes", ok, d.str());
}

// --- criterion 5: step embedding ----------------------------------------

void stepEmbedding(const ParsedFile& add, const ParsedFile& exp) {
  auto start = Clock::now();
  std::size_t steps = 0, violations = 0, derivations = 0;
  for (const ParsedFile* pf : {&add, &exp}) {
    EmbeddingVerifier verifier(pf->trs, pf->precedence);
    for (const Term& t : enumerateBasicTerms(pf->trs.signature, 8)) {
      Derivation d = traceDerivation(pf->trs, t, 10'000);
      EmbeddingReport r = verifier.verifyDerivation(d);
      ++derivations;
      steps += r.steps.size();
      if (!d.completed || !r.ok()) ++violations;
      for (const auto& s : r.steps)
        if (!s.ok()) ++violations;
    }
  }
  double t = secondsSince(start);
  bool ok = violations == 0 && derivations > 0 && t < 60.0;
  std::ostringstream d;
  d << steps << " steps over " << derivations
    << " derivations all descend with Tn preserved, " << violations
    << " violations, " << fmt(t) << "s";
  report("step-embedding", ok, d.str());
}

// --- criterion 6: chain-length laws -------------------------------------

void chainLengthLaws() {
  auto start = Clock::now();
  PoelInstance tiny2 = tinyUniverse(2);

  // Additivity: enumerated sequence chains equal elementwise sums.
  SlowCalculator sumCalc(tiny2);
  std::vector<Term> pool{
      mk(tiny2.universe, "c", {}),
      mk(tiny2.universe, "f", {mk(tiny2.universe, "c", {})}),
      mk(tiny2.universe, "g",
         {mk(tiny2.universe, "c", {}), mk(tiny2.universe, "c", {})})};
  std::size_t sums = 0, sumBad = 0;
  for (std::size_t len = 0; len <= 4; ++len) {
    std::vector<std::size_t> pick(len, 0);
    while (true) {
      std::vector<Term> ts;
      for (std::size_t i : pick) ts.push_back(pool[i]);
      ++sums;
      if (!checkSlowSum(sumCalc, ts).equal) ++sumBad;
      std::size_t i = 0;
      while (i < len && ++pick[i] == pool.size()) pick[i++] = 0;
      if (i == len) break;
    }
  }

  // Closed-form cap on every term within the size guard, each bound.
  std::size_t bounds = 0, boundBad = 0, inapplicable = 0;
  for (std::size_t ell : {1u, 2u, 3u}) {
    SlowCalculator calc(tinyUniverse(ell));
    auto by = tinyTermsBySize(calc.instance().universe, 6);
    for (const auto& group : by)
      for (const Term& t : group) {
        SlowBoundCheck c = checkSlowBound(calc, t);
        if (!c.applicable) {
          ++inapplicable;  // arity above the bound parameter
          continue;
        }
        ++bounds;
        if (!c.holds) ++boundBad;
      }
  }

  // Strict decrease along every enumerated successor edge.
  SlowCalculator edgeCalc(tiny2);
  std::vector<PoelItem> corpus;
  auto by = tinyTermsBySize(tiny2.universe, 4);
  for (const auto& group : by)
    for (const Term& t : group) corpus.push_back(PoelItem::term(t));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j)
      corpus.push_back(PoelItem::sequence({pool[i], pool[j]}));
  std::size_t edges = 0, edgeBad = 0;
  for (const auto& a : corpus)
    for (const auto& b : edgeCalc.successors(a)) {
      ++edges;
      if (edgeCalc.slow(a) <= edgeCalc.slow(b)) ++edgeBad;
    }

  double t = secondsSince(start);
  bool ok = sums == 121 && sumBad == 0 && boundBad == 0 && bounds > 0 &&
            edgeBad == 0 && t < 120.0;
  std::ostringstream d;
  d << "additivity " << (sums - sumBad) << "/" << sums << ", cap holds on "
    << (bounds - boundBad) << "/" << bounds << " terms (bounds 1..3, "
    << inapplicable << " above arity), strict decrease on " << edges
    << " edges with " << edgeBad << " violations, " << fmt(t) << "s";
  report("chain-length-laws", ok, d.str());
}

// --- criterion 7: order laws --------------------------------------------

void orderLaws(const ParsedFile& add, const ParsedFile& exp,
               const ParsedFile& gadget) {
  auto start = Clock::now();
  std::mt19937_64 rng(0x5eed);

  // Irreflexivity on random ground terms.
  PoeInstance addInst = add.instance();
  std::size_t reflexive = 0;
  for (int i = 0; i < 10'000; ++i) {
    Term t = randomNatTerm(rng, add.trs.signature, 3);
    if (poeGt(addInst, t, t).greater()) ++reflexive;
  }

  // Certified pairs: replay, bound monotonicity, concatenation contexts.
  PoelInstance tiny2 = tinyUniverse(2);
  PoelInstance tiny3 = tinyUniverse(3);
  SlowCalculator calc(tiny2);
  const Term cTerm = mk(tiny2.universe, "c", {});
  const Term fc = mk(tiny2.universe, "f", {cTerm});
  std::size_t pairBad = 0;
  for (int i = 0; i < 1'000; ++i) {
    PoelItem a = PoelItem::term(randomTinyTerm(rng, tiny2.universe, 2));
    std::vector<PoelItem> succ = calc.successors(a);
    PoelItem b = succ[rng() % succ.size()];
    PoelOutcome o = poelGt(tiny2, a, b);
    bool good = o.greater() && replayPoelCertificate(tiny2, *o.cert).valid &&
                poelGt(tiny3, a, b).greater();
    auto randomContext = [&] {
      std::vector<Term> ts;
      for (std::size_t n = rng() % 3; n > 0; --n)
        ts.push_back(rng() % 2 ? fc : cTerm);
      return PoelItem::sequence(std::move(ts));
    };
    PoelItem c1 = randomContext(), c2 = randomContext();
    good = good && poelGt(tiny2, concat(c1, concat(a, c2)),
                          concat(c1, concat(b, c2)))
                       .greater();
    if (!good) ++pairBad;
  }

  // Serialization round-trip of every shipped compatibility certificate.
  std::size_t certs = 0, certBad = 0;
  for (const ParsedFile* pf : {&add, &exp, &gadget}) {
    PoeInstance inst = pf->instance();
    CompatReport rep = checkTrs(inst, pf->trs);
    Trs sep = applySeparation(pf->trs, inst.separation);
    for (const auto& rc : rep.rules) {
      ++certs;
      if (!rc.outcome.greater()) {
        ++certBad;
        continue;
      }
      CertParse back =
          poeCertFromJson(sep.signature, poeCertJson(*rc.outcome.cert));
      if (!back.ok() || !replayCertificate(inst, *back.cert).valid)
        ++certBad;
    }
  }

  double t = secondsSince(start);
  bool ok = reflexive == 0 && pairBad == 0 && certs > 0 && certBad == 0;
  std::ostringstream d;
  d << "irreflexive on 10000 terms (" << reflexive
    << " violations), 1000 certified pairs replay/monotone/context ("
    << pairBad << " bad), " << certs << " rule certificates round-trip ("
    << certBad << " bad), " << fmt(t) << "s";
  report("order-laws", ok, d.str());
}

// --- criterion 8: report determinism ------------------------------------

void reportDeterminism(const ParsedFile& add, const ParsedFile& exp,
                       const ParsedFile& fac, const ParsedFile& gadget) {
  auto start = Clock::now();
  auto build = [&] {
    Json j;
    j["well_formed"] = wellFormedJson(checkWellFormed(add.trs));
    j["add"] = compatJson(checkTrs(add.instance(), add.trs));
    j["exp"] = compatJson(checkTrs(exp.instance(), exp.trs));
    j["gadget"] = compatJson(checkTrs(gadget.instance(), gadget.trs));
    j["fac"] = inferJson(infer(fac.trs));
    Term sample = mk(exp.trs.signature, "exp",
                     {nat(exp.trs.signature, 2), nat(exp.trs.signature, 0)});
    Derivation d = traceDerivation(exp.trs, sample, 1'000);
    j["trace"] = derivationJson(d);
    std::vector<RcSample> rc;
    for (std::size_t n = 1; n <= 6; ++n)
      rc.push_back(measureRc(add.trs, n, 100'000));
    j["rc"] = rcSamplesJson(rc);
    EmbeddingVerifier verifier(exp.trs, exp.precedence);
    j["embedding"] = embeddingJson(verifier.verifyDerivation(d), true);
    SlowCalculator calc(liftInstance(add.trs, add.precedence));
    Term lifted = mk(calc.instance().universe, "add^n",
                     {mk(calc.instance().universe, "Z", {})});
    j["slow"] = slowBoundJson(checkSlowBound(calc, lifted));
    return j.dump(2);
  };
  std::string first = build();
  std::string second = build();
  double t = secondsSince(start);
  bool ok = !first.empty() && first == second;
  std::ostringstream d;
  d << "two runs of the full report set byte-identical ("
    << first.size() << " bytes), " << fmt(t) << "s";
  report("report-determinism", ok, d.str());
}

}  // namespace

int main() {
  ParsedFile add = loadFixture("add.trs");
  ParsedFile exp = loadFixture("exp.trs");
  ParsedFile fac = loadFixture("fac.trs");
  ParsedFile gadget = loadFixture("gadget_k2.trs");

  exampleVerdicts(add, exp, fac);
  doublingGadget(gadget);
  expStepCounts(exp);
  growthSlopes(add, exp);
  stepEmbedding(add, exp);
  chainLengthLaws();
  orderLaws(add, exp, gadget);
  reportDeterminism(add, exp, fac, gadget);

  if (failures == 0)
    std::printf("all 8 criteria satisfied\n");
  else
    std::printf("%d criteria failed\n", failures);
  return failures;
}
