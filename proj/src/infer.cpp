#include "poestar/infer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace poestar {

namespace {

bool isConstructorPattern(const Term& t) {
  if (t.isVariable()) return true;
  if (!t.symbol().isConstructor()) return false;
  for (const auto& a : t.args())
    if (!isConstructorPattern(a)) return false;
  return true;
}

std::string tupleStr(std::span<const Term> ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) out += ", ";
    out += ts[i].str();
  }
  return out;
}

// One obligation s > t with s fixed to the rule's left-hand side.  Clause 1
// applies iff t sits below some argument of s (arguments are constructor
// patterns, so descent never needs the precedence); otherwise the root
// symbols force clause 2 or clause 3.
void require(const Term& s, const Term& t, RuleConstraint& out) {
  if (!out.feasible) return;
  auto fail = [&](std::string why) {
    out.feasible = false;
    out.reason = std::move(why);
  };

  for (const auto& a : s.args())
    if (a.contains(t)) return;

  if (t.isVariable()) {
    fail("variable " + t.str() + " is not under any argument of " + s.str());
    return;
  }
  const FunctionSymbol& f = s.symbol();
  const FunctionSymbol& g = t.symbol();

  if (f == g) {
    auto sn = s.normalArgs();
    auto tn = t.normalArgs();
    bool strict = false;
    for (std::size_t i = 0; i < sn.size(); ++i) {
      if (sn[i] == tn[i]) continue;
      if (!strictSuperterm(sn[i], tn[i])) {
        fail("clause 3 product failure on <" + tupleStr(sn) + "> vs <" +
             tupleStr(tn) + ">");
        return;
      }
      strict = true;
    }
    if (!strict) {
      fail("clause 3 product failure on <" + tupleStr(sn) + "> vs <" +
           tupleStr(tn) + ">: no strict decrease");
      return;
    }
    for (const auto& tj : t.safeArgs()) require(s, tj, out);
    return;
  }

  out.pairs.insert({f.name, g.name});
  for (const auto& tj : t.normalArgs()) {
    if (!normalStrictSuperterm(s, tj)) {
      fail("normal argument " + tj.str() + " of " + t.str() +
           " is not under a normal argument of " + s.str());
      return;
    }
  }
  for (const auto& tj : t.safeArgs()) require(s, tj, out);
}

}  // namespace

RuleConstraint analyzeRuleConstraints(const Rule& rule) {
  RuleConstraint out;
  if (rule.lhs.isVariable()) {
    out.feasible = false;
    out.reason = "left-hand side is a variable";
    return out;
  }
  for (const auto& a : rule.lhs.args()) {
    if (!isConstructorPattern(a)) return out;  // stay conservative
  }
  require(rule.lhs, rule.rhs, out);
  return out;
}

namespace {

std::size_t saturatingFactorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<std::size_t>::max() / i)
      return std::numeric_limits<std::size_t>::max();
    f *= i;
  }
  return f;
}

}  // namespace

InferResult infer(const Trs& trs, const SearchLimits& limits) {
  InferResult out;

  std::vector<std::string> names;
  for (const auto& s : trs.signature.symbols()) names.push_back(s.name);
  const std::size_t nsym = names.size();
  const std::size_t perms_per_sep = saturatingFactorial(nsym);

  auto defined = trs.signature.definedSymbols();
  std::vector<unsigned> mask(defined.size(), 0);

  std::vector<std::size_t> infeasible_count(trs.rules.size(), 0);
  std::vector<std::string> sample_reason(trs.rules.size());

  std::size_t examined = 0;
  auto overBudget = [&] { return examined >= limits.max_instances; };

  bool more = true;
  while (more && !out.budget_exhausted) {
    ++out.stats.separations_tried;
    Separation sep;
    for (std::size_t i = 0; i < defined.size(); ++i) {
      std::vector<ArgKind> kinds(defined[i].arity(), ArgKind::Safe);
      for (int p = 0; p < defined[i].arity(); ++p)
        if (mask[i] & (1u << p)) kinds[p] = ArgKind::Normal;
      sep[defined[i].name] = std::move(kinds);
    }

    Trs separated = applySeparation(trs, sep);
    bool sep_feasible = true;
    std::set<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < separated.rules.size(); ++i) {
      RuleConstraint c = analyzeRuleConstraints(separated.rules[i]);
      if (!c.feasible) {
        sep_feasible = false;
        ++infeasible_count[i];
        if (sample_reason[i].empty()) sample_reason[i] = c.reason;
      } else {
        pairs.insert(c.pairs.begin(), c.pairs.end());
      }
    }

    if (limits.prune && !sep_feasible) {
      ++out.stats.separations_pruned;
      out.stats.instances_pruned += perms_per_sep;
      examined += perms_per_sep < limits.max_instances - examined
                      ? perms_per_sep
                      : limits.max_instances - examined;
      if (overBudget()) out.budget_exhausted = true;
    } else {
      std::vector<std::size_t> perm(nsym);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        if (overBudget()) {
          out.budget_exhausted = true;
          break;
        }
        ++examined;
        std::map<std::string, int> ranks;
        for (std::size_t i = 0; i < nsym; ++i)
          ranks[names[perm[i]]] = static_cast<int>(nsym - 1 - i);
        Precedence prec(std::move(ranks));

        if (limits.prune) {
          bool satisfied = true;
          for (const auto& [a, b] : pairs) {
            if (!prec.greater(a, b)) {
              satisfied = false;
              break;
            }
          }
          if (!satisfied) {
            ++out.stats.instances_pruned;
            continue;
          }
        }

        ++out.stats.instances_tried;
        PoeInstance inst{std::move(prec), sep};
        CompatReport report = checkTrs(inst, trs);
        if (report.compatible) {
          out.found = true;
          out.instance = inst;
          out.report = std::move(report);
          return out;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }

    // Advance the separation odometer; the last defined symbol cycles
    // fastest, so the first declared symbol is most significant.
    more = false;
    for (std::size_t i = defined.size(); i-- > 0;) {
      ++mask[i];
      if (mask[i] < (1u << defined[i].arity())) {
        more = true;
        break;
      }
      mask[i] = 0;
    }
    if (defined.empty()) more = false;
  }

  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    if (infeasible_count[i] > 0)
      out.obstructions.push_back(
          {i + 1, infeasible_count[i], sample_reason[i]});
  }
  return out;
}

}  // namespace poestar
