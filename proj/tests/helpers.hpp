#pragma once

#include <string>

#include <doctest.h>

#include "poestar/parse.hpp"

namespace testutil {

inline std::string fixturePath(const std::string& name) {
  return std::string(POESTAR_FIXTURE_DIR) + "/" + name;
}

inline poestar::ParsedFile requireParse(const std::string& text) {
  poestar::ParsedFile pf = poestar::parseTrsText(text);
  if (!pf.ok()) {
    for (const auto& e : pf.errors) MESSAGE(e.str());
  }
  REQUIRE(pf.ok());
  return pf;
}

inline poestar::ParsedFile requireFixture(const std::string& name) {
  poestar::ParsedFile pf = poestar::parseTrsFile(fixturePath(name));
  if (!pf.ok()) {
    for (const auto& e : pf.errors) MESSAGE(e.str());
  }
  REQUIRE(pf.ok());
  return pf;
}

inline poestar::Term T(const poestar::Signature& sig, const std::string& text) {
  poestar::ParsedTerm pt = poestar::parseTerm(sig, text);
  if (!pt.term) {
    for (const auto& e : pt.errors) MESSAGE(e.str());
  }
  REQUIRE(pt.term.has_value());
  return *pt.term;
}

}  // namespace testutil
