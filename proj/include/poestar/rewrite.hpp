#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "poestar/trs.hpp"

namespace poestar {

// Thrown when an exhaustive search would exceed its step budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

// Call-by-value matching: the rule fires only when every variable binds a
// value.  Subject must be ground.
std::optional<Substitution> matchRule(const Rule& rule, const Term& t);

struct StepInfo {
  std::vector<std::size_t> path0;  // 0-based argument indices from the root
  std::size_t rule_number = 0;     // 1-based rule position
  Substitution subst;
  Term result;  // the whole term after the step
};

// One step under the leftmost-innermost strategy, arguments visited in
// written order.  Empty result means t is a normal form.
std::optional<StepInfo> stepLeftmostInnermost(const Trs& trs, const Term& t);

struct EvalResult {
  Term result;         // normal form, or last term when the budget ran out
  std::size_t steps = 0;
  bool completed = false;
};

EvalResult evaluate(const Trs& trs, const Term& t, std::size_t budget);

struct Derivation {
  Term start;
  std::vector<StepInfo> steps;
  bool completed = false;
  const Term& final() const {
    return steps.empty() ? start : steps.back().result;
  }
};

Derivation traceDerivation(const Trs& trs, const Term& t, std::size_t budget);

// Every term reachable in one step, contracting any redex at any position.
// Deduplicated, canonical order.
std::vector<Term> oneStepSuccessors(const Trs& trs, const Term& t);

// Length of the longest derivation from t over all strategies, by
// memoized exhaustive search.  Throws BudgetExceeded when some derivation
// gets longer than the budget.
std::size_t maxDerivationLength(const Trs& trs, const Term& t,
                                std::size_t budget);

// All values over the signature's constructors with size at most maxSize,
// in canonical order.
std::vector<Term> enumerateValues(const Signature& sig, std::size_t maxSize);

// All terms f(v1,...,vn) with f defined and vi values, size at most
// maxSize, in canonical order grouped by size.
std::vector<Term> enumerateBasicTerms(const Signature& sig,
                                      std::size_t maxSize);

struct RcSample {
  std::size_t input_size = 0;  // the bound n
  std::size_t max_steps = 0;
  std::optional<Term> witness;
};

// Runtime complexity at n: the longest derivation from any basic term of
// size at most n.  Witness is the first maximizer in enumeration order.
RcSample measureRc(const Trs& trs, std::size_t n, std::size_t budget);

}  // namespace poestar
