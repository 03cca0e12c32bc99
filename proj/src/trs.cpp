#include "poestar/trs.hpp"

#include <algorithm>
#include <set>

namespace poestar {

namespace {

bool isConstructorPattern(const Term& t) {
  if (t.isVariable()) return true;
  if (!t.symbol().isConstructor()) return false;
  for (const auto& a : t.args())
    if (!isConstructorPattern(a)) return false;
  return true;
}

// Two linear constructor patterns overlap iff no position holds two
// distinct constructors; a common instance then exists.
bool patternsOverlap(const Term& p, const Term& q) {
  if (p.isVariable() || q.isVariable()) return true;
  if (!(p.symbol() == q.symbol())) return false;
  for (std::size_t i = 0; i < p.args().size(); ++i)
    if (!patternsOverlap(p.args()[i], q.args()[i])) return false;
  return true;
}

bool tupleOverlap(std::span<const Term> ps, std::span<const Term> qs) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!patternsOverlap(ps[i], qs[i])) return false;
  return true;
}

// Pattern generalizes the abstract tuple entry: matching where abstract
// variables stand for arbitrary values.
bool generalizes(const Term& pattern, const Term& abstract) {
  if (pattern.isVariable()) return true;
  if (abstract.isVariable()) return false;
  if (!(pattern.symbol() == abstract.symbol())) return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!generalizes(pattern.args()[i], abstract.args()[i])) return false;
  return true;
}

bool tupleGeneralizes(std::span<const Term> ps, std::span<const Term> as) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!generalizes(ps[i], as[i])) return false;
  return true;
}

std::string printBlanked(const Term& t) {
  if (t.isVariable()) return "_";
  const auto& sym = t.symbol();
  if (t.args().empty()) return sym.name;
  std::string out = sym.name + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ", ";
    out += printBlanked(t.args()[i]);
  }
  return out + ")";
}

struct CoverageContext {
  const std::vector<const Rule*>& rules;
  const std::vector<FunctionSymbol>& constructors;
  std::size_t fresh = 0;
  std::optional<std::vector<Term>> missing;  // first uncovered tuple

  Term freshVar() { return Term::variable("_" + std::to_string(fresh++)); }

  // Leftmost position where abstract holds a variable but some compatible
  // rule demands a constructor.  Empty path means no such position.
  static bool findSplit(const Term& abstract, const Term& pattern,
                        std::vector<std::size_t>& path) {
    if (pattern.isVariable()) return false;
    if (abstract.isVariable()) return true;
    for (std::size_t i = 0; i < pattern.args().size(); ++i) {
      path.push_back(i);
      if (findSplit(abstract.args()[i], pattern.args()[i], path)) return true;
      path.pop_back();
    }
    return false;
  }

  static Term replaceAt(const Term& t, std::span<const std::size_t> path,
                        const Term& repl) {
    if (path.empty()) return repl;
    const auto& sym = t.symbol();
    std::vector<Term> normal(t.normalArgs().begin(), t.normalArgs().end());
    std::vector<Term> safe(t.safeArgs().begin(), t.safeArgs().end());
    std::size_t i = path[0];
    Term child = replaceAt(t.args()[i], path.subspan(1), repl);
    if (i < normal.size())
      normal[i] = child;
    else
      safe[i - normal.size()] = child;
    return Term::app(sym, std::move(normal), std::move(safe));
  }

  void explore(std::vector<Term> abstract) {
    if (missing) return;
    std::vector<const Rule*> compat;
    for (const Rule* r : rules) {
      auto args = r->lhs.args();
      if (tupleOverlap({args.data(), args.size()},
                       {abstract.data(), abstract.size()}))
        compat.push_back(r);
    }
    if (compat.empty()) {
      missing = abstract;
      return;
    }
    for (const Rule* r : compat) {
      auto args = r->lhs.args();
      if (tupleGeneralizes({args.data(), args.size()},
                           {abstract.data(), abstract.size()}))
        return;  // covered
    }
    // Some compatible rule constrains a position we still hold abstract.
    for (std::size_t i = 0; i < abstract.size(); ++i) {
      for (const Rule* r : compat) {
        std::vector<std::size_t> path;
        if (findSplit(abstract[i], r->lhs.args()[i], path)) {
          for (const auto& c : constructors) {
            std::vector<Term> normal, safe;
            for (int j = 0; j < c.safe_arity; ++j) safe.push_back(freshVar());
            Term expanded = replaceAt(abstract[i], path,
                                      Term::app(c, std::move(normal),
                                                std::move(safe)));
            auto next = abstract;
            next[i] = expanded;
            explore(std::move(next));
            if (missing) return;
          }
          return;
        }
      }
    }
    // Unreachable: a compatible, non-generalizing rule always constrains
    // some abstract position.
    throw std::logic_error("coverage expansion found no split position");
  }
};

}  // namespace

WellFormedReport checkWellFormed(const Trs& trs, WellFormedOptions opts) {
  WellFormedReport report;
  auto issue = [&](IssueSeverity sev, std::string cat, std::string msg,
                   std::optional<std::size_t> rule = std::nullopt) {
    report.issues.push_back({sev, std::move(cat), std::move(msg), rule});
  };

  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& r = trs.rules[i];
    std::size_t num = i + 1;
    if (r.lhs.isVariable()) {
      issue(IssueSeverity::Error, "lhs-variable",
            "left-hand side is a variable", num);
      continue;
    }
    if (!r.lhs.symbol().isDefined())
      issue(IssueSeverity::Error, "lhs-root-not-defined",
            "left-hand side root " + r.lhs.symbol().name +
                " is not a defined symbol",
            num);
    for (const auto& a : r.lhs.args())
      if (!isConstructorPattern(a)) {
        issue(IssueSeverity::Error, "lhs-argument-not-constructor",
              "left-hand side argument " + a.str() +
                  " contains a defined symbol",
              num);
        break;
      }
    auto vars = r.lhs.variables();
    std::set<std::string> seen;
    for (const auto& v : vars)
      if (!seen.insert(v).second) {
        issue(IssueSeverity::Error, "lhs-nonlinear",
              "variable " + v + " occurs twice in the left-hand side", num);
        break;
      }
    for (const auto& v : r.rhs.variables())
      if (!seen.count(v)) {
        issue(IssueSeverity::Error, "rhs-extra-variable",
              "right-hand side variable " + v +
                  " does not occur in the left-hand side",
              num);
        break;
      }
  }

  // Orthogonality: no two left-hand sides may have a common instance.
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& a = trs.rules[i];
    if (a.lhs.isVariable()) continue;
    for (std::size_t j = i + 1; j < trs.rules.size(); ++j) {
      const Rule& b = trs.rules[j];
      if (b.lhs.isVariable()) continue;
      if (!(a.lhs.symbol() == b.lhs.symbol())) continue;
      auto aa = a.lhs.args();
      auto ba = b.lhs.args();
      if (tupleOverlap({aa.data(), aa.size()}, {ba.data(), ba.size()}))
        issue(IssueSeverity::Error, "overlapping-rules",
              "rules " + std::to_string(i + 1) + " and " +
                  std::to_string(j + 1) + " overlap on " +
                  a.lhs.symbol().name,
              j + 1);
    }
  }

  // Complete definedness.  Without a nullary constructor no values exist
  // and every definition is vacuously complete.
  if (trs.signature.hasNullaryConstructor()) {
    auto constructors = trs.signature.constructors();
    for (const auto& f : trs.signature.definedSymbols()) {
      std::vector<const Rule*> own;
      bool usable = true;
      for (const auto& r : trs.rules) {
        if (r.lhs.isVariable() || !(r.lhs.symbol() == f)) continue;
        for (const auto& a : r.lhs.args())
          if (!isConstructorPattern(a)) usable = false;
        own.push_back(&r);
      }
      if (!usable) continue;  // already reported above
      CoverageContext ctx{own, constructors};
      std::vector<Term> start;
      for (int i = 0; i < f.arity(); ++i) start.push_back(ctx.freshVar());
      ctx.explore(std::move(start));
      if (ctx.missing) {
        std::string tuple;
        for (std::size_t i = 0; i < ctx.missing->size(); ++i) {
          if (i > 0) tuple += ", ";
          tuple += printBlanked((*ctx.missing)[i]);
        }
        issue(opts.require_complete_definitions ? IssueSeverity::Error
                                                : IssueSeverity::Warning,
              "incomplete-definition",
              "no rule covers " + f.name + "(" + tuple + ")");
      }
    }
  }

  return report;
}

}  // namespace poestar
