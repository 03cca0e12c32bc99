#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "poestar/poe.hpp"

namespace poestar {

struct SearchLimits {
  // Cap on candidates examined, skipped ones included, so pruned and
  // unpruned searches walk the same space.
  std::size_t max_instances = 1'000'000;
  bool prune = true;
};

struct SearchStats {
  std::size_t separations_tried = 0;
  std::size_t separations_pruned = 0;  // every rule check skipped
  std::size_t instances_tried = 0;     // full compatibility checks run
  std::size_t instances_pruned = 0;    // candidates skipped by constraints
};

// Per-rule search post-mortem: under how many separations the rule could
// not be oriented by any precedence at all.
struct RuleObstruction {
  std::size_t rule_number = 0;  // 1-based
  std::size_t infeasible_separations = 0;
  std::string sample_reason;  // from the first separation that failed
};

struct InferResult {
  bool found = false;
  // True when the search stopped at max_instances; found == false then
  // means "unknown", not "incompatible".
  bool budget_exhausted = false;
  std::optional<PoeInstance> instance;
  std::optional<CompatReport> report;
  SearchStats stats;
  std::vector<RuleObstruction> obstructions;  // rule order, failing rules only
};

// Rule-local constraints extracted before any precedence is fixed.  With
// constructor left-hand argument patterns the clause choice per obligation
// is forced, so the constraints are exact: the rule is orientable under a
// precedence iff it is feasible and every required pair holds.
struct RuleConstraint {
  bool feasible = true;
  std::string reason;  // when infeasible
  std::set<std::pair<std::string, std::string>> pairs;  // required f > g
};

// Analyzes a rule whose separation has already been applied.  When some
// left-hand argument is not a constructor pattern the analysis stays
// conservative: feasible with no required pairs.
RuleConstraint analyzeRuleConstraints(const Rule& rule);

// Searches for a compatible instance.  Separations are enumerated per
// defined symbol in declaration order (first symbol most significant, all
// argument subsets); for each separation all rank permutations of the
// declared symbols are enumerated, identity first.  The first compatible
// candidate wins, so results are deterministic and independent of pruning.
InferResult infer(const Trs& trs, const SearchLimits& limits = {});

}  // namespace poestar
