#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "poestar/trs.hpp"

namespace poestar {

// Strict precedence stored as a rank map.  Symbols missing from the map
// rank 0, so unranked symbols are minimal and mutually incomparable while
// ranked symbols form a total preorder.  Ranks are normalized to a dense
// range on construction.
class Precedence {
 public:
  Precedence() = default;
  explicit Precedence(std::map<std::string, int> ranks);

  // Build from strict constraints a > b.  Throws on a cycle.
  static Precedence fromConstraints(
      const std::vector<std::pair<std::string, std::string>>& above);

  int rankOf(const std::string& name) const;
  bool greater(const std::string& a, const std::string& b) const {
    return rankOf(a) > rankOf(b);
  }
  const std::map<std::string, int>& ranks() const { return ranks_; }
  bool empty() const { return ranks_.empty(); }

 private:
  std::map<std::string, int> ranks_;
};

enum class ArgKind { Normal, Safe };

// Argument kinds per defined symbol, one entry per written position.
// Constructors are implicitly all-safe.
using Separation = std::map<std::string, std::vector<ArgKind>>;

Separation declaredSeparation(const Signature& sig);

struct PoeInstance {
  Precedence precedence;
  Separation separation;
};

// Rebuilds symbols and terms so that each defined symbol's normal/safe
// split matches the given separation.  Argument positions keep their
// written order; marked-normal positions move to the normal block.
Trs applySeparation(const Trs& trs, const Separation& sep);
Term applySeparation(const Term& t, const Separation& sep);

// Proof tree for s > t.  Clause 1 descends into an argument of s, clause 2
// steps down the precedence, clause 3 compares same-symbol applications by
// the product extension on normal arguments.
struct PoeCert;
using PoeCertPtr = std::shared_ptr<const PoeCert>;

struct PoeCert {
  int clause = 0;  // 1, 2 or 3
  Term lhs;
  Term rhs;

  // Clause 1: lhs argument arg_index (1-based over all arguments) is equal
  // to rhs or greater than it.
  std::size_t arg_index = 0;
  bool via_equal = false;
  PoeCertPtr arg_cert;

  // Clause 3 product entries, one per normal position.
  struct ProductEntry {
    bool equal = false;
    PoeCertPtr cert;  // set when not equal
  };
  std::vector<ProductEntry> product;

  // Clauses 2 and 3: one certificate per safe argument of rhs.
  std::vector<PoeCertPtr> safe_certs;

  PoeCert(int c, Term l, Term r) : clause(c), lhs(std::move(l)), rhs(std::move(r)) {}
};

struct PoeFailure {
  int depth = -1;
  std::string reason;
};

struct PoeOutcome {
  PoeCertPtr cert;      // null when not greater
  PoeFailure failure;   // decisive obligation noted last, for diagnostics
  bool greater() const { return cert != nullptr; }
};

// Decides s > t under the instance.  Terms are re-split to the instance's
// separation first, so certificates mention the re-split terms.
PoeOutcome poeGt(const PoeInstance& inst, const Term& s, const Term& t);

struct RuleCheck {
  std::size_t rule_number = 0;  // 1-based
  Rule rule;                    // separation applied
  PoeOutcome outcome;
};

struct CompatReport {
  bool compatible = false;
  std::vector<RuleCheck> rules;
  PoeInstance instance;
};

RuleCheck checkRule(const PoeInstance& inst, const Rule& rule,
                    std::size_t rule_number = 0);
CompatReport checkTrs(const PoeInstance& inst, const Trs& trs);

struct ReplayResult {
  bool valid = false;
  std::string reason;  // first violated side condition when invalid
};

// Validates a certificate against the clause side conditions only; never
// calls the decision procedure.
ReplayResult replayCertificate(const PoeInstance& inst, const PoeCert& cert);

}  // namespace poestar
