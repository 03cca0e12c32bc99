#include <doctest.h>

#include <algorithm>

#include "poestar/term.hpp"

using namespace poestar;

namespace {

const FunctionSymbol kZ{"Z", SymbolKind::Constructor, 0, 0};
const FunctionSymbol kS{"s", SymbolKind::Constructor, 0, 1};
const FunctionSymbol kAdd{"add", SymbolKind::Defined, 1, 1};
const FunctionSymbol kD{"d", SymbolKind::Defined, 0, 1};

Term z() { return Term::app(kZ, {}, {}); }
Term sOf(Term t) { return Term::app(kS, {}, {std::move(t)}); }
Term addOf(Term n, Term s) {
  return Term::app(kAdd, {std::move(n)}, {std::move(s)});
}

}  // namespace

TEST_CASE("signature declaration order and validation") {
  Signature sig;
  sig.add(kZ);
  sig.add(kS);
  sig.add(kAdd);
  CHECK(sig.symbols().size() == 3);
  CHECK(sig.symbols()[0].name == "Z");
  CHECK(sig.find("add")->isDefined());
  CHECK(sig.find("s")->isConstructor());
  CHECK(sig.find("nope") == nullptr);
  CHECK(sig.hasNullaryConstructor());
  CHECK(sig.constructors().size() == 2);
  CHECK(sig.definedSymbols().size() == 1);
  CHECK_THROWS(sig.add(kZ));                                        // duplicate
  CHECK_THROWS(sig.add({"bad", SymbolKind::Constructor, 1, 0}));    // normal args
  CHECK_THROWS(sig.add({"neg", SymbolKind::Defined, -1, 0}));       // negative
}

TEST_CASE("term construction, rendering and precomputed attributes") {
  Term y = Term::variable("y");
  Term t = addOf(sOf(z()), y);
  CHECK(t.str() == "add(s(Z); y)");
  CHECK(t.size() == 4);
  CHECK_FALSE(t.isGround());
  CHECK_FALSE(t.isValue());
  CHECK(t.normalArgs().size() == 1);
  CHECK(t.safeArgs().size() == 1);
  CHECK(t.args().size() == 2);
  CHECK(t.normalArgs()[0] == sOf(z()));
  CHECK(t.safeArgs()[0] == y);

  CHECK(z().isValue());
  CHECK(sOf(z()).isValue());
  CHECK(sOf(sOf(z())).str() == "s(s(Z))");
  CHECK(Term::app(kD, {}, {z()}).str() == "d(; Z)");

  Term t2 = addOf(sOf(z()), Term::variable("y"));
  CHECK(t == t2);
  CHECK(t.hash() == t2.hash());
  CHECK(t != addOf(sOf(z()), z()));

  CHECK(t.contains(y));
  CHECK(t.contains(sOf(z())));
  CHECK_FALSE(t.contains(sOf(y)));
  CHECK(t.variables() == std::vector<std::string>{"y"});

  CHECK_THROWS(Term::app(kAdd, {z()}, {}));  // wrong arity
}

TEST_CASE("canonical order sorts by size, then variables first") {
  Term a = z();
  Term b = Term::variable("x");
  Term c = sOf(z());
  CHECK(compareCanonical(a, a) == 0);
  CHECK(compareCanonical(b, a) < 0);   // same size, variable first
  CHECK(compareCanonical(a, c) < 0);   // smaller first
  CHECK(compareCanonical(c, addOf(z(), z())) < 0);

  std::vector<Term> ts{c, a, b};
  std::sort(ts.begin(), ts.end(), TermCanonicalLess{});
  CHECK(ts[0] == b);
  CHECK(ts[1] == a);
  CHECK(ts[2] == c);
}

TEST_CASE("subterm enumeration and superterm relations") {
  Term t = addOf(sOf(z()), z());
  auto all = subterms(t);
  // Z, s(Z), add(s(Z); Z), deduplicated.
  CHECK(all.size() == 3);
  auto proper = properSubterms(t);
  CHECK(proper.size() == 2);
  CHECK(strictSuperterm(t, z()));
  CHECK(strictSuperterm(t, sOf(z())));
  CHECK_FALSE(strictSuperterm(t, t));
  CHECK_FALSE(strictSuperterm(z(), t));

  // Normal-argument subterm containment.
  CHECK(normalStrictSuperterm(t, sOf(z())));
  CHECK(normalStrictSuperterm(t, z()));
  CHECK_FALSE(normalStrictSuperterm(sOf(z()), z()));  // safe argument only
  CHECK_THROWS(normalStrictSuperterm(Term::variable("x"), z()));
}

TEST_CASE("product extension needs one strict component") {
  auto gt = [](const Term& a, const Term& b) { return strictSuperterm(a, b); };
  std::vector<Term> as{sOf(z()), z()};
  std::vector<Term> bs{z(), z()};
  CHECK(productExtension(gt, as, as) == false);  // all equal
  CHECK(productExtension(gt, as, bs) == true);
  CHECK(productExtension(gt, bs, as) == false);
  std::vector<Term> shorter{z()};
  CHECK_THROWS(productExtension(gt, as, shorter));
}

TEST_CASE("substitution matching binds repeated variables consistently") {
  Term x = Term::variable("x");
  Term pattern = addOf(sOf(x), x);
  Term good = addOf(sOf(z()), z());
  Term bad = addOf(sOf(z()), sOf(z()));

  auto sigma = Substitution::match(pattern, good);
  REQUIRE(sigma.has_value());
  CHECK(*sigma->lookup("x") == z());
  CHECK(sigma->apply(pattern) == good);
  CHECK(sigma->isValueSubstitution());

  CHECK_FALSE(Substitution::match(pattern, bad).has_value());
  CHECK_FALSE(Substitution::match(sOf(x), z()).has_value());

  Substitution tau;
  tau.bind("x", addOf(z(), z()));
  CHECK_FALSE(tau.isValueSubstitution());
  CHECK(tau.apply(Term::variable("q")) == Term::variable("q"));
}
