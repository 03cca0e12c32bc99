#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "poestar/parse.hpp"
#include "poestar/poel.hpp"

using namespace poestar;
using testutil::T;

TEST_CASE("add fixture parses to the expected system") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  CHECK(pf.trs.signature.symbols().size() == 3);
  REQUIRE(pf.trs.rules.size() == 2);
  CHECK(pf.trs.rules[0].str() == "add(Z; y) -> y");
  CHECK(pf.trs.rules[1].str() == "add(s(x); y) -> s(add(x; y))");
  CHECK(pf.has_precedence);
  CHECK(pf.precedence.greater("add", "s"));
  CHECK_FALSE(pf.precedence.greater("s", "add"));

  const FunctionSymbol* add = pf.trs.signature.find("add");
  REQUIRE(add != nullptr);
  CHECK(add->normal_arity == 1);
  CHECK(add->safe_arity == 1);
}

TEST_CASE("all fixtures survive a print/parse round-trip") {
  for (const char* name : {"add.trs", "exp.trs", "fac.trs", "gadget_k2.trs"}) {
    CAPTURE(name);
    ParsedFile pf = testutil::requireFixture(name);
    std::string printed = printTrs(pf.trs, pf.has_precedence ? &pf.precedence
                                                             : nullptr);
    ParsedFile back = testutil::requireParse(printed);
    CHECK(back.trs.signature.symbols() == pf.trs.signature.symbols());
    CHECK(back.trs.rules == pf.trs.rules);
    CHECK(back.has_precedence == pf.has_precedence);
    CHECK(back.precedence.ranks() == pf.precedence.ranks());
  }
}

TEST_CASE("parse errors carry positions and do not abort the file") {
  ParsedFile pf = parseTrsText(
      "defined add 1 1\n"
      "constructor Z 0\n"
      "rule add(Z) -> Z\n"         // arity/shape error: missing semicolon part
      "rule add(Z; Z) -> Z\n");    // fine
  CHECK_FALSE(pf.ok());
  REQUIRE_FALSE(pf.errors.empty());
  CHECK(pf.errors[0].line == 3);
  CHECK(pf.trs.rules.size() == 1);  // the good rule still parsed
}

TEST_CASE("declarations reject reserved and duplicate names") {
  ParsedFile caret = parseTrsText("constructor f^n 0\n");
  CHECK_FALSE(caret.ok());

  ParsedFile dup = parseTrsText(
      "constructor Z 0\n"
      "constructor Z 0\n");
  CHECK_FALSE(dup.ok());

  ParsedFile negative = parseTrsText("defined f 1 x\n");
  CHECK_FALSE(negative.ok());
}

TEST_CASE("undeclared names are variables, applied ones are errors") {
  ParsedFile pf = testutil::requireParse(
      "defined add 1 1\n"
      "constructor Z 0\n"
      "constructor s 1\n");
  Term t = T(pf.trs.signature, "add(s(x); y)");
  CHECK(t.variables() == std::vector<std::string>{"x", "y"});

  ParsedTerm bad = parseTerm(pf.trs.signature, "add(mystery(x); y)");
  CHECK_FALSE(bad.term.has_value());

  ParsedTerm wrong = parseTerm(pf.trs.signature, "add(Z)");
  CHECK_FALSE(wrong.term.has_value());
}

TEST_CASE("empty normal blocks and nullary defined symbols parse") {
  ParsedFile pf = testutil::requireParse(
      "defined d 0 1\n"
      "constructor eps 0\n"
      "rule d(; u) -> u\n");
  CHECK(pf.trs.rules[0].lhs.str() == "d(; u)");
  Term t = T(pf.trs.signature, "d(; eps)");
  CHECK(t.symbol().name == "d");
  CHECK(t.safeArgs().size() == 1);
}

TEST_CASE("caret names parse in term position against a lifted universe") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  PoelInstance inst = liftInstance(pf.trs, pf.precedence);
  Term t = T(inst.universe, "add^n(Z)");
  CHECK(t.symbol().name == "add^n");
  CHECK(t.str() == "add^n(Z)");
  CHECK(t.isGround());
}

TEST_CASE("precedence lines merge and cycles are rejected") {
  ParsedFile pf = testutil::requireParse(
      "defined f 1 0\n"
      "defined g 1 0\n"
      "constructor c 0\n"
      "precedence f > g\n"
      "precedence g > c\n");
  CHECK(pf.precedence.greater("f", "c"));

  ParsedFile cyc = parseTrsText(
      "defined f 1 0\n"
      "defined g 1 0\n"
      "precedence f > g\n"
      "precedence g > f\n");
  CHECK_FALSE(cyc.ok());
}
