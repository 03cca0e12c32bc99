#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poestar/poe.hpp"
#include "poestar/trs.hpp"

namespace poestar {

struct ParseError {
  std::size_t line = 0;  // 1-based
  std::size_t col = 0;   // 1-based
  std::string message;
  std::string str() const;
};

// Result of reading a system description.  Grammar, one item per line:
//
//   defined NAME K L          declare a defined symbol, K normal, L safe
//   constructor NAME L        declare a constructor, L safe arguments
//   rule LHS -> RHS           terms f(n1,...,nk; s1,...,sl) for defined
//                             symbols (semicolon mandatory), c(a1,...,al)
//                             for constructors, bare names when nullary
//   precedence A > B > C      strict precedence chain; lines merge
//   # ...                     comment
//
// Identifiers are alphanumeric (underscore allowed).  Undeclared names in
// term position are variables.
struct ParsedFile {
  Trs trs;
  Precedence precedence;
  bool has_precedence = false;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }

  PoeInstance instance() const {
    return {precedence, declaredSeparation(trs.signature)};
  }
};

ParsedFile parseTrsText(const std::string& text);
ParsedFile parseTrsFile(const std::string& path);

// Parses one term against an existing signature; errors positions are
// relative to the given text.
struct ParsedTerm {
  std::optional<Term> term;
  std::vector<ParseError> errors;
};
ParsedTerm parseTerm(const Signature& sig, const std::string& text);

// Canonical rendering of a system; parsing it back yields the same
// signature, rules and precedence relation.
std::string printTrs(const Trs& trs, const Precedence* prec = nullptr);

}  // namespace poestar
