#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poestar/term.hpp"

namespace poestar {

// A rewrite rule l -> r.  Well-formedness (defined root, constructor
// patterns, linearity, variable containment) is checked separately so that
// violations can be reported rather than rejected at construction.
struct Rule {
  Term lhs;
  Term rhs;

  const FunctionSymbol& rootSymbol() const { return lhs.symbol(); }
  std::string str() const { return lhs.str() + " -> " + rhs.str(); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Trs {
  Signature signature;
  std::vector<Rule> rules;
};

enum class IssueSeverity { Error, Warning };

struct WellFormedIssue {
  IssueSeverity severity = IssueSeverity::Error;
  std::string category;  // stable identifier, e.g. "incomplete-definition"
  std::string message;
  std::optional<std::size_t> rule_number;  // 1-based position in the file
};

struct WellFormedReport {
  std::vector<WellFormedIssue> issues;
  bool ok() const {
    for (const auto& i : issues)
      if (i.severity == IssueSeverity::Error) return false;
    return true;
  }
};

struct WellFormedOptions {
  // When false, missing value coverage is reported as a warning instead of
  // an error.  Everything else stays an error.
  bool require_complete_definitions = true;
};

// Checks: lhs rooted in a defined symbol, lhs arguments constructor terms,
// left-linearity, Var(rhs) within Var(lhs), pairwise non-overlapping lhss,
// and every defined symbol covering all value tuples (by expanding a
// pattern tree over the constructors).
WellFormedReport checkWellFormed(const Trs& trs, WellFormedOptions opts = {});

}  // namespace poestar
