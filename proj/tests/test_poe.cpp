#include <doctest.h>

#include "helpers.hpp"
#include "poestar/parse.hpp"
#include "poestar/poe.hpp"
#include "poestar/trs.hpp"

using namespace poestar;
using testutil::T;

TEST_CASE("precedence ranks are dense and cycle-free") {
  Precedence p = Precedence::fromConstraints({{"a", "b"}, {"b", "c"}});
  CHECK(p.rankOf("a") == 2);
  CHECK(p.rankOf("b") == 1);
  CHECK(p.rankOf("c") == 0);
  CHECK(p.rankOf("unranked") == 0);
  CHECK(p.greater("a", "c"));
  CHECK_FALSE(p.greater("c", "c"));
  CHECK_FALSE(p.greater("unranked", "c"));
  CHECK_THROWS(Precedence::fromConstraints({{"a", "b"}, {"b", "a"}}));
}

TEST_CASE("declared separation mirrors the signature") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  Separation sep = declaredSeparation(pf.trs.signature);
  REQUIRE(sep.count("add") == 1);
  CHECK(sep.at("add") ==
        std::vector<ArgKind>{ArgKind::Normal, ArgKind::Safe});
  CHECK(sep.count("s") == 0);  // constructors are implicitly all-safe
}

TEST_CASE("re-splitting terms moves marked positions to the normal block") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  Term t = T(pf.trs.signature, "add(s(Z); Z)");

  Separation allSafe{{"add", {ArgKind::Safe, ArgKind::Safe}}};
  Term resplit = applySeparation(t, allSafe);
  CHECK(resplit.str() == "add(; s(Z), Z)");
  CHECK(resplit.symbol().normal_arity == 0);

  Separation swapped{{"add", {ArgKind::Safe, ArgKind::Normal}}};
  CHECK(applySeparation(t, swapped).str() == "add(Z; s(Z))");

  Trs moved = applySeparation(pf.trs, allSafe);
  CHECK(moved.rules[1].lhs.str() == "add(; s(x), y)");
}

TEST_CASE("well-formedness accepts the fixtures") {
  for (const char* name : {"add.trs", "exp.trs", "fac.trs", "gadget_k2.trs"}) {
    CAPTURE(name);
    ParsedFile pf = testutil::requireFixture(name);
    WellFormedReport wf = checkWellFormed(pf.trs);
    for (const auto& i : wf.issues) MESSAGE(i.category, ": ", i.message);
    CHECK(wf.ok());
  }
}

TEST_CASE("well-formedness rejects structural violations") {
  auto issuesOf = [](const std::string& text, WellFormedOptions opts = {}) {
    ParsedFile pf = parseTrsText(text);
    REQUIRE(pf.ok());
    return checkWellFormed(pf.trs, opts);
  };

  // Defined symbol inside a left-hand argument.
  WellFormedReport r1 = issuesOf(
      "defined f 1 0\nconstructor c 0\n"
      "rule f(f(c;);) -> c\nrule f(c;) -> c\n");
  CHECK_FALSE(r1.ok());
  CHECK(r1.issues[0].category == "lhs-argument-not-constructor");

  // Nonlinear left-hand side.
  WellFormedReport r2 = issuesOf(
      "defined g 2 0\nconstructor c 0\nconstructor d 1\n"
      "rule g(x, x;) -> c\nrule g(d(x), y;) -> c\nrule g(c, d(y);) -> c\n"
      "rule g(c, c;) -> c\n");
  CHECK_FALSE(r2.ok());

  // Right-hand variable not bound on the left.
  WellFormedReport r3 = issuesOf(
      "defined f 1 0\nconstructor c 0\nconstructor d 1\n"
      "rule f(c;) -> q\nrule f(d(x);) -> c\n");
  CHECK_FALSE(r3.ok());

  // Overlapping left-hand sides.
  WellFormedReport r4 = issuesOf(
      "defined f 1 0\nconstructor c 0\nconstructor d 1\n"
      "rule f(x;) -> c\nrule f(c;) -> c\n");
  CHECK_FALSE(r4.ok());

  // Missing coverage: error by default, warning when allowed.
  std::string partial =
      "defined f 1 0\nconstructor c 0\nconstructor d 1\n"
      "rule f(c;) -> c\n";
  CHECK_FALSE(issuesOf(partial).ok());
  CHECK(issuesOf(partial, {.require_complete_definitions = false}).ok());
}

TEST_CASE("rule orientation produces the expected clause shapes") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  PoeInstance inst = pf.instance();

  // add(Z; y) > y: the safe argument is equal to the right side.
  PoeOutcome r1 = poeGt(inst, pf.trs.rules[0].lhs, pf.trs.rules[0].rhs);
  REQUIRE(r1.greater());
  CHECK(r1.cert->clause == 1);
  CHECK(r1.cert->via_equal);
  CHECK(r1.cert->arg_index == 2);

  // add(s(x); y) > s(add(x; y)): precedence step, then a same-symbol
  // product on the safe argument.
  PoeOutcome r2 = poeGt(inst, pf.trs.rules[1].lhs, pf.trs.rules[1].rhs);
  REQUIRE(r2.greater());
  CHECK(r2.cert->clause == 2);
  REQUIRE(r2.cert->safe_certs.size() == 1);
  const PoeCert& inner = *r2.cert->safe_certs[0];
  CHECK(inner.clause == 3);
  REQUIRE(inner.product.size() == 1);
  CHECK_FALSE(inner.product[0].equal);
  REQUIRE(inner.safe_certs.size() == 1);
  CHECK(inner.safe_certs[0]->via_equal);
}

TEST_CASE("whole-system checks match the fixture verdicts") {
  for (const char* name : {"add.trs", "exp.trs", "gadget_k2.trs"}) {
    CAPTURE(name);
    ParsedFile pf = testutil::requireFixture(name);
    CompatReport rep = checkTrs(pf.instance(), pf.trs);
    CHECK(rep.compatible);
    for (const auto& rc : rep.rules) CHECK(rc.outcome.greater());
  }

  // The two-recursive-argument rule resists its declared separation under
  // any precedence; spot-check one instance.
  ParsedFile fac = testutil::requireFixture("fac.trs");
  PoeInstance inst{Precedence::fromConstraints({{"fac", "add"}, {"add", "s"}}),
                   declaredSeparation(fac.trs.signature)};
  CompatReport rep = checkTrs(inst, fac.trs);
  CHECK_FALSE(rep.compatible);
  CHECK(rep.rules[4].outcome.failure.reason.find(
            "does not dominate safe argument") != std::string::npos);
}

TEST_CASE("the strict order is irreflexive on sample terms") {
  ParsedFile pf = testutil::requireFixture("exp.trs");
  PoeInstance inst = pf.instance();
  for (const char* s :
       {"Z", "s(Z)", "exp(Z; Z)", "exp(s(Z); s(Z))", "s(exp(Z; Z))"}) {
    CAPTURE(s);
    Term t = T(pf.trs.signature, s);
    CHECK_FALSE(poeGt(inst, t, t).greater());
  }
}

TEST_CASE("certificates replay and tampering is caught") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  PoeInstance inst = pf.instance();
  PoeOutcome out = poeGt(inst, pf.trs.rules[1].lhs, pf.trs.rules[1].rhs);
  REQUIRE(out.greater());
  CHECK(replayCertificate(inst, *out.cert).valid);

  PoeCert forged = *out.cert;
  forged.clause = 3;  // same shape, wrong clause
  ReplayResult bad = replayCertificate(inst, forged);
  CHECK_FALSE(bad.valid);
  CHECK_FALSE(bad.reason.empty());

  // A certificate is also rejected under an instance that cannot support
  // its precedence steps.
  PoeInstance stripped{Precedence{}, inst.separation};
  CHECK_FALSE(replayCertificate(stripped, *out.cert).valid);
}
