#include <doctest.h>

#include "helpers.hpp"
#include "poestar/infer.hpp"
#include "poestar/parse.hpp"
#include "poestar/report.hpp"
#include "poestar/rewrite.hpp"

using namespace poestar;
using testutil::T;

TEST_CASE("compatibility reports serialize verdicts and certificates") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  CompatReport rep = checkTrs(pf.instance(), pf.trs);
  Json j = compatJson(rep);
  CHECK(j["compatible"] == true);
  REQUIRE(j["rules"].size() == 2);
  CHECK(j["rules"][0]["rule"] == 1);
  CHECK(j["rules"][0]["oriented"] == true);
  CHECK(j["rules"][0]["certificate"]["clause"] == 1);
  CHECK(j["instance"]["precedence"]["add"] == 1);
}

TEST_CASE("serialized certificates parse back and replay") {
  ParsedFile pf = testutil::requireFixture("exp.trs");
  PoeInstance inst = pf.instance();
  CompatReport rep = checkTrs(inst, pf.trs);
  Trs sep = applySeparation(pf.trs, inst.separation);
  for (const auto& rc : rep.rules) {
    CAPTURE(rc.rule_number);
    REQUIRE(rc.outcome.greater());
    Json j = poeCertJson(*rc.outcome.cert);
    CertParse back = poeCertFromJson(sep.signature, j);
    REQUIRE(back.ok());
    CHECK(replayCertificate(inst, *back.cert).valid);
    // Round-trip is loss-free.
    CHECK(poeCertJson(*back.cert) == j);
  }

  Json broken = poeCertJson(*rep.rules[0].outcome.cert);
  broken["clause"] = 9;
  CHECK_FALSE(poeCertFromJson(sep.signature, broken).ok());
}

TEST_CASE("derivations serialize with 1-based positions") {
  ParsedFile pf = testutil::requireFixture("add.trs");
  Derivation d =
      traceDerivation(pf.trs, T(pf.trs.signature, "add(s(Z); Z)"), 100);
  Json j = derivationJson(d);
  CHECK(j["start"] == "add(s(Z); Z)");
  CHECK(j["completed"] == true);
  CHECK(j["length"] == 2);
  REQUIRE(j["steps"].size() == 2);
  CHECK(j["steps"][0]["position"].empty());
  CHECK(j["steps"][0]["rule"] == 2);
  CHECK(j["steps"][1]["position"] == Json::array({1}));
  CHECK(j["steps"][1]["substitution"]["y"] == "Z");
}

TEST_CASE("search reports carry statistics and obstructions") {
  ParsedFile pf = testutil::requireFixture("fac.trs");
  Json j = inferJson(infer(pf.trs));
  CHECK(j["found"] == false);
  CHECK(j["budget_exhausted"] == false);
  CHECK(j["stats"]["separations_tried"] == 32);
  bool saw5 = false;
  for (const auto& ob : j["obstructions"])
    if (ob["rule"] == 5) saw5 = (ob["infeasible_separations"] == 32);
  CHECK(saw5);
}

TEST_CASE("fitted slopes recover exact linear data") {
  CHECK(leastSquaresSlope({{1, 1}, {2, 2}, {3, 3}}) == doctest::Approx(1.0));
  CHECK(leastSquaresSlope({{0, 5}, {1, 3}, {2, 1}}) == doctest::Approx(-2.0));
  CHECK(leastSquaresSlope({{1, 1}}) == doctest::Approx(0.0));  // degenerate
}

TEST_CASE("reports are byte-stable across repeated construction") {
  ParsedFile pf = testutil::requireFixture("exp.trs");
  auto build = [&] {
    Json j;
    j["compat"] = compatJson(checkTrs(pf.instance(), pf.trs));
    j["infer"] = inferJson(infer(pf.trs));
    j["trace"] = derivationJson(
        traceDerivation(pf.trs, T(pf.trs.signature, "exp(s(Z); Z)"), 1000));
    return j.dump(2);
  };
  CHECK(build() == build());
}
