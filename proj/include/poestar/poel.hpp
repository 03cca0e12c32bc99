#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "poestar/poe.hpp"
#include "poestar/rewrite.hpp"
#include "poestar/trs.hpp"

namespace poestar {

// Operand of the length-bounded auxiliary order: either a single term or a
// flat sequence of terms.  Sequences never nest.
class PoelItem {
 public:
  static PoelItem term(Term t);
  static PoelItem sequence(std::vector<Term> items);

  bool isTerm() const { return is_term_; }
  bool isSequence() const { return !is_term_; }
  const Term& asTerm() const;
  std::span<const Term> items() const;

  // Terms render as themselves, sequences as [t1 t2 ... tn].
  std::string str() const;
  std::size_t hash() const;

  bool operator==(const PoelItem& other) const;
  bool operator!=(const PoelItem& other) const { return !(*this == other); }

 private:
  bool is_term_ = true;
  std::vector<Term> items_;  // exactly one entry for terms
};

// Terms before sequences; terms canonically, sequences by length then
// elementwise.
int compareItems(const PoelItem& a, const PoelItem& b);

struct PoelItemLess {
  bool operator()(const PoelItem& a, const PoelItem& b) const {
    return compareItems(a, b) < 0;
  }
};

struct PoelItemHash {
  std::size_t operator()(const PoelItem& a) const { return a.hash(); }
};

// Concatenation; terms count as singleton sequences.  Always a sequence.
PoelItem concat(const PoelItem& a, const PoelItem& b);

// The auxiliary order is parameterized by a precedence, a length bound ell
// and the signature over which descent may introduce fresh symbols.
struct PoelInstance {
  Precedence precedence;
  std::size_t ell = 1;
  Signature universe;
};

// Proof tree for a > b in the auxiliary order.
//
//   clause 1  precedence step: terms f(...) > g(t1..tl), f above g, every
//             tj a proper subterm of the left side, l <= ell
//   clause 2  same symbol: componentwise proper-subterm product
//   clause 3  term vs sequence: the term dominates every element,
//             length <= ell
//   clause 4  sequence vs sequence: split the right side into one block
//             per left element; equal blocks are single equal terms,
//             strict blocks are runs dominated via clause 3
//
// Clauses 1 and 2 have purely structural side conditions, so their nodes
// carry no children.
struct PoelCert;
using PoelCertPtr = std::shared_ptr<const PoelCert>;

struct PoelCert {
  int clause = 0;
  PoelItem lhs;
  PoelItem rhs;

  std::vector<PoelCertPtr> items;  // clause 3: one per right-side element

  struct Block {
    std::size_t take = 0;  // elements of the right side consumed
    bool equal = false;    // take == 1 and the element equals the left one
    PoelCertPtr cert;      // strict blocks: left element > consumed run
  };
  std::vector<Block> blocks;  // clause 4: one per left-side element

  PoelCert(int c, PoelItem l, PoelItem r)
      : clause(c), lhs(std::move(l)), rhs(std::move(r)) {}
};

struct PoelOutcome {
  PoelCertPtr cert;
  std::string failure;  // top-level reason when not greater
  bool greater() const { return cert != nullptr; }
};

PoelOutcome poelGt(const PoelInstance& inst, const PoelItem& a,
                   const PoelItem& b);

// Side-condition validation of a certificate; never re-runs the decision
// procedure.
ReplayResult replayPoelCertificate(const PoelInstance& inst,
                                   const PoelCert& cert);

// --- predicative interpretation ---------------------------------------

// Fresh symbol holding exactly the normal arguments of f.  Rendered
// constructor-style as name^n(...); '^' cannot occur in parsed names.
FunctionSymbol normalizedSymbol(const FunctionSymbol& f);

// Values erase to the empty sequence; any other application contributes
// its normalized root and the interpretation of its safe arguments.
// Defined on ground terms.
std::vector<Term> pint(const Term& t);

// Terms whose normal argument positions hold values, everywhere.
bool inTn(const Term& t);

// Instance for verifying rewrite steps of a system: precedence ranks are
// copied to the normalized symbols, the universe joins the signature with
// its normalized copies, and ell is large enough both for the step
// embedding (max right-hand side size) and for the chain-length bound
// (max arity).
PoelInstance liftInstance(const Trs& trs, const Precedence& prec);

// --- longest descending chains ----------------------------------------

class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

// Exhaustive chain search is exponential in general; these caps turn the
// hopeless cases into GuardExceeded instead of runaway computation.  The
// size caps apply to externally supplied inputs, the two counters to the
// whole computation.
struct SlowGuards {
  std::size_t max_term_size = 6;
  std::size_t max_seq_length = 4;
  std::size_t max_successors = 200'000;  // per enumerated item
  std::size_t max_visited = 500'000;     // distinct items per calculator
};

// Exact one-step images and longest-chain lengths in the auxiliary order.
// Successor sets are complete over the instance's universe, so a chain
// length is the true maximum, not an estimate.
class SlowCalculator {
 public:
  explicit SlowCalculator(PoelInstance inst, SlowGuards guards = {});

  const PoelInstance& instance() const { return inst_; }
  const SlowGuards& guards() const { return guards_; }

  // Throws GuardExceeded when the item violates the input size caps.
  void validateInput(const PoelItem& a) const;

  // All b with a > b, deduplicated, canonical order.
  std::vector<PoelItem> successors(const PoelItem& a);

  // Length of the longest descending chain from a.  Chains from a
  // sequence interleave chains of its elements, so their lengths add;
  // slow exploits that instead of materializing sequence successor sets,
  // which blow up once elements dominate anything.  checkSlowSum
  // cross-validates the shortcut against slowEnumerated.  Memoized;
  // throws GuardExceeded when a counter cap is hit.
  std::uint64_t slow(const PoelItem& a);

  // The same length with no additivity shortcut: every successor set is
  // materialized, at every level.  Exponential; for cross-checks on tiny
  // items only.
  std::uint64_t slowEnumerated(const PoelItem& a);

  std::size_t visitedCount() const { return visited_; }

 private:
  std::vector<Term> termSuccessors(const Term& a);

  PoelInstance inst_;
  SlowGuards guards_;
  std::unordered_map<PoelItem, std::uint64_t, PoelItemHash> memo_;
  std::unordered_map<PoelItem, std::uint64_t, PoelItemHash> memo_enum_;
  std::size_t visited_ = 0;
};

// Enumerated chain length of a sequence vs the sum over its elements; the
// two always agree, which checkSlowSum verifies instance by instance and
// slow relies on.
struct SlowSumCheck {
  std::vector<std::uint64_t> element_slows;
  std::uint64_t sequence_slow = 0;
  std::uint64_t sum = 0;
  bool equal = false;
};

SlowSumCheck checkSlowSum(SlowCalculator& calc, const std::vector<Term>& ts);

// Chain length of f(t1..tn) against the closed-form cap
// (ell+1)^((ell+1)^rank(f) * sum slow(ti)).  Arithmetic saturates; a
// saturated cap trivially holds.
struct SlowBoundCheck {
  bool applicable = false;  // application with arity <= ell
  std::string reason;       // when not applicable
  std::uint64_t slow_value = 0;
  std::vector<std::uint64_t> arg_slows;
  int rank = 0;
  std::uint64_t bound = 0;
  bool saturated = false;
  bool holds = false;
};

SlowBoundCheck checkSlowBound(SlowCalculator& calc, const Term& t);

// --- step embedding ----------------------------------------------------

struct StepEmbedding {
  std::size_t step_index = 0;  // 1-based
  Term before;
  Term after;
  bool before_in_tn = false;
  bool after_in_tn = false;
  std::vector<Term> pint_before;
  std::vector<Term> pint_after;
  bool decreases = false;
  PoelCertPtr cert;
  std::string failure;
  bool ok() const { return decreases && before_in_tn && after_in_tn; }
};

struct EmbeddingReport {
  std::size_t ell = 0;
  std::vector<StepEmbedding> steps;
  bool all_steps_decrease = true;
  bool tn_preserved = true;
  bool ok() const { return all_steps_decrease && tn_preserved; }
};

struct RootEmbeddingCheck {
  std::size_t rule_number = 0;
  std::size_t ell = 0;  // right-hand side size of the rule
  bool value_substitution = false;
  bool holds = false;
  PoelCertPtr cert;
  std::string failure;
};

// Verifies that interpreted rewrite steps descend in the auxiliary order.
// The system must already carry the separation the precedence refers to.
class EmbeddingVerifier {
 public:
  EmbeddingVerifier(Trs trs, const Precedence& prec);

  const PoelInstance& instance() const { return inst_; }
  const Trs& trs() const { return trs_; }

  StepEmbedding verifyStep(const Term& before, const Term& after,
                           std::size_t step_index = 0) const;
  EmbeddingReport verifyDerivation(const Derivation& d) const;

  // Root-step law: under any value substitution the interpreted rule
  // sides descend already at ell = size of the right-hand side.
  RootEmbeddingCheck verifyRootEmbedding(const Rule& rule,
                                         const Substitution& sigma,
                                         std::size_t rule_number = 0) const;

 private:
  Trs trs_;
  PoelInstance inst_;
};

}  // namespace poestar
