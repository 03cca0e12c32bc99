#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace poestar {

enum class SymbolKind { Constructor, Defined };

// A function symbol together with its argument separation.  Arguments are
// split into normal and safe positions; constructors carry safe arguments
// only, so normal_arity is always 0 for them.
struct FunctionSymbol {
  std::string name;
  SymbolKind kind = SymbolKind::Constructor;
  int normal_arity = 0;
  int safe_arity = 0;

  int arity() const { return normal_arity + safe_arity; }
  bool isConstructor() const { return kind == SymbolKind::Constructor; }
  bool isDefined() const { return kind == SymbolKind::Defined; }

  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

// Symbol table preserving declaration order.  Names are unique.
class Signature {
 public:
  const FunctionSymbol& add(FunctionSymbol sym);
  const FunctionSymbol* find(const std::string& name) const;
  const std::vector<FunctionSymbol>& symbols() const { return symbols_; }
  std::vector<FunctionSymbol> constructors() const;
  std::vector<FunctionSymbol> definedSymbols() const;
  bool hasNullaryConstructor() const;

 private:
  std::vector<FunctionSymbol> symbols_;
  std::map<std::string, std::size_t> index_;
};

// First-order terms over a separated signature.  Immutable; copies share
// structure.  An application stores its arguments in one vector, normal
// positions first, mirroring the written order f(n1,...,nk; s1,...,sl).
class Term {
 public:
  static Term variable(std::string name);
  static Term app(FunctionSymbol sym, std::vector<Term> normal,
                  std::vector<Term> safe);

  bool isVariable() const { return node_->is_var; }
  bool isApplication() const { return !node_->is_var; }
  const std::string& variableName() const;
  const FunctionSymbol& symbol() const;

  std::span<const Term> args() const;
  std::span<const Term> normalArgs() const;
  std::span<const Term> safeArgs() const;

  // Node count, variables included.
  std::size_t size() const { return node_->size; }
  bool isGround() const { return node_->ground; }
  // Ground constructor term.
  bool isValue() const { return node_->value; }
  std::size_t hash() const { return node_->hash; }

  // True iff t occurs in this term (equality included).
  bool contains(const Term& t) const;
  void collectVariables(std::vector<std::string>& out) const;
  std::vector<std::string> variables() const;

  // Canonical rendering: defined symbols always print the semicolon,
  // constructors never do, nullary symbols print bare.
  std::string str() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  struct Node {
    bool is_var = false;
    std::string var_name;
    FunctionSymbol sym;
    std::vector<Term> args;  // normal args first, then safe args
    std::size_t size = 1;
    std::size_t hash = 0;
    bool ground = true;
    bool value = false;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Total order used wherever deterministic enumeration or witness selection
// matters: by size, then variables before applications, then root name,
// then arities, then arguments left to right.
int compareCanonical(const Term& a, const Term& b);

struct TermCanonicalLess {
  bool operator()(const Term& a, const Term& b) const {
    return compareCanonical(a, b) < 0;
  }
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// t is a proper subterm of s.
bool strictSuperterm(const Term& s, const Term& t);

// t is a subterm of some normal argument of s.  s must be an application.
bool normalStrictSuperterm(const Term& s, const Term& t);

// All subterms of t, t included, deduplicated, in canonical order.
std::vector<Term> subterms(const Term& t);
// Subterms without t itself.
std::vector<Term> properSubterms(const Term& t);

// Product extension of a strict order: componentwise equal-or-greater with
// at least one strictly greater component.  Throws on length mismatch.
template <class Gt>
bool productExtension(Gt&& gt, std::span<const Term> as,
                      std::span<const Term> bs) {
  if (as.size() != bs.size())
    throw std::invalid_argument("productExtension: tuple length mismatch");
  bool one_strict = false;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i] == bs[i]) continue;
    if (!gt(as[i], bs[i])) return false;
    one_strict = true;
  }
  return one_strict;
}

// Finite map from variable names to terms; apply is the homomorphic
// extension, with unmapped variables left in place.
class Substitution {
 public:
  void bind(const std::string& var, Term t);
  const Term* lookup(const std::string& var) const;
  Term apply(const Term& t) const;
  bool isValueSubstitution() const;
  bool empty() const { return map_.empty(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  // Syntactic matching: find sigma with pattern*sigma == subject.  Repeated
  // variables must bind consistently.
  static std::optional<Substitution> match(const Term& pattern,
                                           const Term& subject);

 private:
  std::map<std::string, Term> map_;
};

}  // namespace poestar
