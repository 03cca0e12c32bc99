#include "poestar/poe.hpp"

#include <algorithm>
#include <unordered_map>

namespace poestar {

Precedence::Precedence(std::map<std::string, int> ranks) {
  // Normalize to dense ranks 0..m preserving the strict relation.
  std::set<int> used;
  for (const auto& [n, r] : ranks) used.insert(r);
  std::map<int, int> dense;
  int next = 0;
  for (int r : used) dense[r] = next++;
  for (auto& [n, r] : ranks) r = dense[r];
  ranks_ = std::move(ranks);
}

Precedence Precedence::fromConstraints(
    const std::vector<std::pair<std::string, std::string>>& above) {
  std::map<std::string, std::vector<std::string>> below;
  std::set<std::string> names;
  for (const auto& [a, b] : above) {
    below[a].push_back(b);
    names.insert(a);
    names.insert(b);
  }
  // Longest-path height; a cycle makes the constraints unsatisfiable.
  std::map<std::string, int> height;
  std::set<std::string> onstack;
  auto rank = [&](auto&& self, const std::string& n) -> int {
    if (auto it = height.find(n); it != height.end()) return it->second;
    if (!onstack.insert(n).second)
      throw std::invalid_argument("precedence cycle through " + n);
    int h = 0;
    if (auto it = below.find(n); it != below.end())
      for (const auto& m : it->second) h = std::max(h, self(self, m) + 1);
    onstack.erase(n);
    height[n] = h;
    return h;
  };
  std::map<std::string, int> ranks;
  for (const auto& n : names) ranks[n] = rank(rank, n);
  return Precedence(std::move(ranks));
}

int Precedence::rankOf(const std::string& name) const {
  auto it = ranks_.find(name);
  return it == ranks_.end() ? 0 : it->second;
}

Separation declaredSeparation(const Signature& sig) {
  Separation sep;
  for (const auto& s : sig.symbols()) {
    if (!s.isDefined()) continue;
    std::vector<ArgKind> kinds(s.arity(), ArgKind::Safe);
    for (int i = 0; i < s.normal_arity; ++i) kinds[i] = ArgKind::Normal;
    sep[s.name] = std::move(kinds);
  }
  return sep;
}

namespace {

FunctionSymbol resplitSymbol(const FunctionSymbol& sym, const Separation& sep) {
  if (!sym.isDefined()) return sym;
  auto it = sep.find(sym.name);
  if (it == sep.end()) return sym;
  const auto& kinds = it->second;
  if (static_cast<int>(kinds.size()) != sym.arity())
    throw std::invalid_argument("separation arity mismatch for " + sym.name);
  FunctionSymbol out = sym;
  out.normal_arity = static_cast<int>(
      std::count(kinds.begin(), kinds.end(), ArgKind::Normal));
  out.safe_arity = sym.arity() - out.normal_arity;
  return out;
}

}  // namespace

Term applySeparation(const Term& t, const Separation& sep) {
  if (t.isVariable()) return t;
  const auto& sym = t.symbol();
  std::vector<Term> mapped;
  mapped.reserve(t.args().size());
  for (const auto& a : t.args()) mapped.push_back(applySeparation(a, sep));
  auto it = sym.isDefined() ? sep.find(sym.name) : sep.end();
  if (it == sep.end()) {
    std::vector<Term> normal(mapped.begin(),
                             mapped.begin() + sym.normal_arity);
    std::vector<Term> safe(mapped.begin() + sym.normal_arity, mapped.end());
    return Term::app(sym, std::move(normal), std::move(safe));
  }
  const auto& kinds = it->second;
  FunctionSymbol nsym = resplitSymbol(sym, sep);
  std::vector<Term> normal, safe;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    (kinds[i] == ArgKind::Normal ? normal : safe).push_back(mapped[i]);
  return Term::app(nsym, std::move(normal), std::move(safe));
}

Trs applySeparation(const Trs& trs, const Separation& sep) {
  Trs out;
  for (const auto& s : trs.signature.symbols())
    out.signature.add(resplitSymbol(s, sep));
  for (const auto& r : trs.rules)
    out.rules.push_back({applySeparation(r.lhs, sep),
                         applySeparation(r.rhs, sep)});
  return out;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Term, Term>& p) const {
    return p.first.hash() * 0x9e3779b97f4a7c15ULL + p.second.hash();
  }
};
struct PairEq {
  bool operator()(const std::pair<Term, Term>& a,
                  const std::pair<Term, Term>& b) const {
    return a.first == b.first && a.second == b.second;
  }
};

class PoeQuery {
 public:
  explicit PoeQuery(const Precedence& prec) : prec_(prec) {}

  PoeCertPtr gt(const Term& s, const Term& t, int depth) {
    auto key = std::make_pair(s, t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    PoeCertPtr cert = decide(s, t, depth);
    memo_.emplace(std::move(key), cert);
    return cert;
  }

  PoeFailure failure;

 private:
  void noteFailure(int depth, const std::string& reason) {
    // Failing decisions note exploratory probes first and their own summary
    // last, so the most recent note names the decisive obstruction.
    failure = {depth, reason};
  }

  // Equal or greater.
  bool geq(const Term& s, const Term& t, int depth) {
    return s == t || gt(s, t, depth) != nullptr;
  }

  PoeCertPtr decide(const Term& s, const Term& t, int depth) {
    if (s.isVariable()) {
      noteFailure(depth, "left side " + s.str() + " is a variable");
      return nullptr;
    }
    const FunctionSymbol& f = s.symbol();

    // Clause 1: some argument of s is equal to t or greater than it.
    for (std::size_t i = 0; i < s.args().size(); ++i) {
      const Term& si = s.args()[i];
      if (si == t) {
        auto c = std::make_shared<PoeCert>(1, s, t);
        c->arg_index = i + 1;
        c->via_equal = true;
        return c;
      }
      if (auto sub = gt(si, t, depth + 1)) {
        auto c = std::make_shared<PoeCert>(1, s, t);
        c->arg_index = i + 1;
        c->via_equal = false;
        c->arg_cert = sub;
        return c;
      }
    }

    if (t.isVariable()) {
      noteFailure(depth, "no argument of " + s.str() + " reaches variable " +
                             t.str());
      return nullptr;
    }
    const FunctionSymbol& g = t.symbol();

    if (!f.isDefined()) {
      noteFailure(depth, "root " + f.name +
                             " is a constructor; only argument descent applies");
      return nullptr;
    }

    // Clause 2: precedence step below f.
    if (!(f == g)) {
      if (!prec_.greater(f.name, g.name)) {
        noteFailure(depth, "precedence does not order " + f.name + " above " +
                               g.name);
        return nullptr;
      }
      auto c = std::make_shared<PoeCert>(2, s, t);
      for (const Term& tj : t.normalArgs()) {
        if (!normalStrictSuperterm(s, tj)) {
          noteFailure(depth + 1, "normal argument " + tj.str() + " of " +
                                     t.str() +
                                     " is not under a normal argument of " +
                                     s.str());
          return nullptr;
        }
      }
      for (const Term& tj : t.safeArgs()) {
        auto sub = gt(s, tj, depth + 1);
        if (!sub) {
          noteFailure(depth + 1, s.str() + " does not dominate safe argument " +
                                     tj.str());
          return nullptr;
        }
        c->safe_certs.push_back(sub);
      }
      return c;
    }

    // Clause 3: same defined symbol; product extension on normal tuples.
    auto sn = s.normalArgs();
    auto tn = t.normalArgs();
    auto c = std::make_shared<PoeCert>(3, s, t);
    bool one_strict = false;
    for (std::size_t i = 0; i < sn.size(); ++i) {
      if (sn[i] == tn[i]) {
        c->product.push_back({true, nullptr});
        continue;
      }
      auto sub = gt(sn[i], tn[i], depth + 1);
      if (!sub) {
        noteFailure(depth, "clause 3 product failure on <" + tupleStr(sn) +
                               "> vs <" + tupleStr(tn) + ">");
        return nullptr;
      }
      c->product.push_back({false, sub});
      one_strict = true;
    }
    if (!one_strict) {
      noteFailure(depth, "clause 3 product failure on <" + tupleStr(sn) +
                             "> vs <" + tupleStr(tn) +
                             ">: no strict decrease");
      return nullptr;
    }
    for (const Term& tj : t.safeArgs()) {
      auto sub = gt(s, tj, depth + 1);
      if (!sub) {
        noteFailure(depth + 1, s.str() + " does not dominate safe argument " +
                                   tj.str());
        return nullptr;
      }
      c->safe_certs.push_back(sub);
    }
    return c;
  }

  static std::string tupleStr(std::span<const Term> ts) {
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i > 0) out += ", ";
      out += ts[i].str();
    }
    return out;
  }

  const Precedence& prec_;
  std::unordered_map<std::pair<Term, Term>, PoeCertPtr, PairHash, PairEq>
      memo_;
};

}  // namespace

PoeOutcome poeGt(const PoeInstance& inst, const Term& s, const Term& t) {
  Term rs = applySeparation(s, inst.separation);
  Term rt = applySeparation(t, inst.separation);
  PoeQuery q(inst.precedence);
  PoeOutcome out;
  out.cert = q.gt(rs, rt, 0);
  if (!out.cert) out.failure = q.failure;
  return out;
}

RuleCheck checkRule(const PoeInstance& inst, const Rule& rule,
                    std::size_t rule_number) {
  Rule r{applySeparation(rule.lhs, inst.separation),
         applySeparation(rule.rhs, inst.separation)};
  PoeQuery q(inst.precedence);
  PoeOutcome out;
  out.cert = q.gt(r.lhs, r.rhs, 0);
  if (!out.cert) out.failure = q.failure;
  return {rule_number, std::move(r), std::move(out)};
}

CompatReport checkTrs(const PoeInstance& inst, const Trs& trs) {
  CompatReport report;
  report.instance = inst;
  report.compatible = true;
  for (std::size_t i = 0; i < trs.rules.size(); ++i) {
    RuleCheck rc = checkRule(inst, trs.rules[i], i + 1);
    report.compatible = report.compatible && rc.outcome.greater();
    report.rules.push_back(std::move(rc));
  }
  return report;
}

namespace {

bool replayNode(const Precedence& prec, const PoeCert& c, std::string& why) {
  auto fail = [&](const std::string& msg) {
    if (why.empty()) why = msg;
    return false;
  };
  if (c.lhs.isVariable()) return fail("lhs of a certificate node is a variable");
  const FunctionSymbol& f = c.lhs.symbol();

  switch (c.clause) {
    case 1: {
      auto args = c.lhs.args();
      if (c.arg_index < 1 || c.arg_index > args.size())
        return fail("clause 1 argument index out of range");
      const Term& si = args[c.arg_index - 1];
      if (c.via_equal) {
        if (!(si == c.rhs)) return fail("clause 1 equality does not hold");
        return true;
      }
      if (!c.arg_cert) return fail("clause 1 missing sub-certificate");
      if (!(c.arg_cert->lhs == si) || !(c.arg_cert->rhs == c.rhs))
        return fail("clause 1 sub-certificate endpoints mismatch");
      return replayNode(prec, *c.arg_cert, why);
    }
    case 2: {
      if (!f.isDefined()) return fail("clause 2 lhs root is not defined");
      if (c.rhs.isVariable()) return fail("clause 2 rhs is a variable");
      const FunctionSymbol& g = c.rhs.symbol();
      if (f == g) return fail("clause 2 used on identical root symbols");
      if (!prec.greater(f.name, g.name))
        return fail("clause 2 precedence fact " + f.name + " > " + g.name +
                    " does not hold");
      for (const Term& tj : c.rhs.normalArgs())
        if (!normalStrictSuperterm(c.lhs, tj))
          return fail("clause 2 normal-subterm condition fails for " +
                      tj.str());
      auto safe = c.rhs.safeArgs();
      if (c.safe_certs.size() != safe.size())
        return fail("clause 2 wrong number of safe sub-certificates");
      for (std::size_t j = 0; j < safe.size(); ++j) {
        const auto& sub = c.safe_certs[j];
        if (!sub) return fail("clause 2 missing safe sub-certificate");
        if (!(sub->lhs == c.lhs) || !(sub->rhs == safe[j]))
          return fail("clause 2 safe sub-certificate endpoints mismatch");
        if (!replayNode(prec, *sub, why)) return false;
      }
      return true;
    }
    case 3: {
      if (!f.isDefined()) return fail("clause 3 lhs root is not defined");
      if (c.rhs.isVariable()) return fail("clause 3 rhs is a variable");
      if (!(f == c.rhs.symbol()))
        return fail("clause 3 requires identical root symbols");
      auto sn = c.lhs.normalArgs();
      auto tn = c.rhs.normalArgs();
      if (c.product.size() != sn.size())
        return fail("clause 3 product arity mismatch");
      bool strict = false;
      for (std::size_t i = 0; i < sn.size(); ++i) {
        const auto& e = c.product[i];
        if (e.equal) {
          if (!(sn[i] == tn[i]))
            return fail("clause 3 product equality does not hold at position " +
                        std::to_string(i + 1));
          continue;
        }
        if (!e.cert) return fail("clause 3 missing product sub-certificate");
        if (!(e.cert->lhs == sn[i]) || !(e.cert->rhs == tn[i]))
          return fail("clause 3 product sub-certificate endpoints mismatch");
        if (!replayNode(prec, *e.cert, why)) return false;
        strict = true;
      }
      if (!strict) return fail("clause 3 product has no strict component");
      auto safe = c.rhs.safeArgs();
      if (c.safe_certs.size() != safe.size())
        return fail("clause 3 wrong number of safe sub-certificates");
      for (std::size_t j = 0; j < safe.size(); ++j) {
        const auto& sub = c.safe_certs[j];
        if (!sub) return fail("clause 3 missing safe sub-certificate");
        if (!(sub->lhs == c.lhs) || !(sub->rhs == safe[j]))
          return fail("clause 3 safe sub-certificate endpoints mismatch");
        if (!replayNode(prec, *sub, why)) return false;
      }
      return true;
    }
    default:
      return fail("unknown clause tag " + std::to_string(c.clause));
  }
}

}  // namespace

ReplayResult replayCertificate(const PoeInstance& inst, const PoeCert& cert) {
  std::string why;
  bool ok = replayNode(inst.precedence, cert, why);
  return {ok, why};
}

}  // namespace poestar
