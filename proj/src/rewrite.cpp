#include "poestar/rewrite.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace poestar {

std::optional<Substitution> matchRule(const Rule& rule, const Term& t) {
  if (!t.isGround())
    throw std::invalid_argument("matchRule: subject is not ground");
  auto sigma = Substitution::match(rule.lhs, t);
  if (!sigma) return std::nullopt;
  if (!sigma->isValueSubstitution()) return std::nullopt;
  return sigma;
}

namespace {

Term replaceArg(const Term& t, std::size_t i, const Term& repl) {
  const auto& sym = t.symbol();
  std::vector<Term> normal(t.normalArgs().begin(), t.normalArgs().end());
  std::vector<Term> safe(t.safeArgs().begin(), t.safeArgs().end());
  if (i < normal.size())
    normal[i] = repl;
  else
    safe[i - normal.size()] = repl;
  return Term::app(sym, std::move(normal), std::move(safe));
}

std::optional<StepInfo> rootStep(const Trs& trs, const Term& t) {
  if (t.isVariable() || !t.symbol().isDefined()) return std::nullopt;
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& r = trs.rules[i];
    if (r.lhs.isVariable() || !(r.lhs.symbol() == t.symbol())) continue;
    if (auto sigma = matchRule(r, t))
      return StepInfo{{}, i + 1, *sigma, sigma->apply(r.rhs)};
  }
  return std::nullopt;
}

std::optional<StepInfo> stepAt(const Trs& trs, const Term& t) {
  if (t.isVariable()) return std::nullopt;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (auto inner = stepAt(trs, t.args()[i])) {
      inner->path0.insert(inner->path0.begin(), i);
      inner->result = replaceArg(t, i, inner->result);
      return inner;
    }
  }
  return rootStep(trs, t);
}

}  // namespace

std::optional<StepInfo> stepLeftmostInnermost(const Trs& trs, const Term& t) {
  if (!t.isGround())
    throw std::invalid_argument("stepLeftmostInnermost: term is not ground");
  return stepAt(trs, t);
}

EvalResult evaluate(const Trs& trs, const Term& t, std::size_t budget) {
  EvalResult out{t, 0, false};
  while (out.steps < budget) {
    auto s = stepLeftmostInnermost(trs, out.result);
    if (!s) {
      out.completed = true;
      return out;
    }
    out.result = std::move(s->result);
    ++out.steps;
  }
  out.completed = !stepLeftmostInnermost(trs, out.result).has_value();
  return out;
}

Derivation traceDerivation(const Trs& trs, const Term& t,
                           std::size_t budget) {
  Derivation d{t, {}, false};
  Term cur = t;
  while (d.steps.size() < budget) {
    auto s = stepLeftmostInnermost(trs, cur);
    if (!s) {
      d.completed = true;
      return d;
    }
    cur = s->result;
    d.steps.push_back(std::move(*s));
  }
  d.completed = !stepLeftmostInnermost(trs, cur).has_value();
  return d;
}

namespace {

void collectSuccessors(const Trs& trs, const Term& root, const Term& sub,
                       std::vector<std::size_t>& path,
                       std::set<Term, TermCanonicalLess>& out) {
  for (std::size_t i = 0; i < sub.args().size(); ++i) {
    path.push_back(i);
    collectSuccessors(trs, root, sub.args()[i], path, out);
    path.pop_back();
  }
  if (auto step = rootStep(trs, sub)) {
    // Rebuild the full term along the recorded path.
    Term rebuilt = step->result;
    for (std::size_t d = path.size(); d-- > 0;) {
      const Term* ctx = &root;
      for (std::size_t k = 0; k < d; ++k) ctx = &ctx->args()[path[k]];
      rebuilt = replaceArg(*ctx, path[d], rebuilt);
    }
    out.insert(rebuilt);
  }
}

}  // namespace

std::vector<Term> oneStepSuccessors(const Trs& trs, const Term& t) {
  if (!t.isGround())
    throw std::invalid_argument("oneStepSuccessors: term is not ground");
  std::set<Term, TermCanonicalLess> out;
  std::vector<std::size_t> path;
  collectSuccessors(trs, t, t, path, out);
  return {out.begin(), out.end()};
}

namespace {

struct MaxDerivSearch {
  const Trs& trs;
  std::unordered_map<Term, std::size_t, TermHash> memo;

  std::size_t run(const Term& t, std::size_t remaining) {
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    auto succs = oneStepSuccessors(trs, t);
    if (succs.empty()) {
      memo.emplace(t, 0);
      return 0;
    }
    if (remaining == 0)
      throw BudgetExceeded("maxDerivationLength budget exhausted at " +
                           t.str());
    std::size_t best = 0;
    for (const auto& s : succs)
      best = std::max(best, 1 + run(s, remaining - 1));
    memo.emplace(t, best);
    return best;
  }
};

}  // namespace

std::size_t maxDerivationLength(const Trs& trs, const Term& t,
                                std::size_t budget) {
  MaxDerivSearch search{trs, {}};
  return search.run(t, budget);
}

std::vector<Term> enumerateValues(const Signature& sig, std::size_t maxSize) {
  auto constructors = sig.constructors();
  std::sort(constructors.begin(), constructors.end(),
            [](const FunctionSymbol& a, const FunctionSymbol& b) {
              return a.name < b.name;
            });
  // bySize[s]: values of size exactly s, canonically sorted.
  std::vector<std::vector<Term>> bySize(maxSize + 1);
  for (std::size_t s = 1; s <= maxSize; ++s) {
    for (const auto& c : constructors) {
      std::size_t n = static_cast<std::size_t>(c.arity());
      if (n == 0) {
        if (s == 1) bySize[s].push_back(Term::app(c, {}, {}));
        continue;
      }
      if (s < 1 + n) continue;
      // Distribute s-1 nodes over n arguments, each at least 1.
      std::vector<Term> acc;
      auto rec = [&](auto&& self, std::size_t arg, std::size_t left) -> void {
        if (arg == n) {
          if (left == 0) {
            auto args = acc;
            bySize[s].push_back(Term::app(c, {}, std::move(args)));
          }
          return;
        }
        std::size_t remainingMin = n - arg - 1;
        for (std::size_t k = 1; k + remainingMin <= left; ++k) {
          for (const auto& v : bySize[k]) {
            acc.push_back(v);
            self(self, arg + 1, left - k);
            acc.pop_back();
          }
        }
      };
      rec(rec, 0, s - 1);
    }
    std::sort(bySize[s].begin(), bySize[s].end(), TermCanonicalLess{});
  }
  std::vector<Term> out;
  for (auto& bucket : bySize)
    out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::vector<Term> enumerateBasicTerms(const Signature& sig,
                                      std::size_t maxSize) {
  std::vector<Term> values = enumerateValues(sig, maxSize);
  // valuesBySize[s]: canonical order within each size.
  std::vector<std::vector<Term>> valuesBySize(maxSize + 1);
  for (const auto& v : values) valuesBySize[v.size()].push_back(v);

  std::vector<Term> out;
  for (std::size_t s = 1; s <= maxSize; ++s) {
    std::vector<Term> bucket;
    for (const auto& f : sig.definedSymbols()) {
      std::size_t n = static_cast<std::size_t>(f.arity());
      if (n == 0) {
        if (s == 1) bucket.push_back(Term::app(f, {}, {}));
        continue;
      }
      if (s < 1 + n) continue;
      std::vector<Term> acc;
      auto rec = [&](auto&& self, std::size_t arg, std::size_t left) -> void {
        if (arg == n) {
          if (left == 0) {
            std::vector<Term> normal(acc.begin(),
                                     acc.begin() + f.normal_arity);
            std::vector<Term> safe(acc.begin() + f.normal_arity, acc.end());
            bucket.push_back(
                Term::app(f, std::move(normal), std::move(safe)));
          }
          return;
        }
        std::size_t remainingMin = n - arg - 1;
        for (std::size_t k = 1; k + remainingMin <= left; ++k) {
          for (const auto& v : valuesBySize[k]) {
            acc.push_back(v);
            self(self, arg + 1, left - k);
            acc.pop_back();
          }
        }
      };
      rec(rec, 0, s - 1);
    }
    std::sort(bucket.begin(), bucket.end(), TermCanonicalLess{});
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  return out;
}

RcSample measureRc(const Trs& trs, std::size_t n, std::size_t budget) {
  RcSample sample{n, 0, std::nullopt};
  for (const auto& t : enumerateBasicTerms(trs.signature, n)) {
    std::size_t len = maxDerivationLength(trs, t, budget);
    if (!sample.witness || len > sample.max_steps) {
      sample.max_steps = len;
      sample.witness = t;
    }
  }
  return sample;
}

}  // namespace poestar
