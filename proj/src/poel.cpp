#include "poestar/poel.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace poestar {

// --- items --------------------------------------------------------------

PoelItem PoelItem::term(Term t) {
  PoelItem out;
  out.is_term_ = true;
  out.items_.push_back(std::move(t));
  return out;
}

PoelItem PoelItem::sequence(std::vector<Term> items) {
  PoelItem out;
  out.is_term_ = false;
  out.items_ = std::move(items);
  return out;
}

const Term& PoelItem::asTerm() const {
  if (!is_term_) throw std::logic_error("asTerm on a sequence");
  return items_.front();
}

std::span<const Term> PoelItem::items() const {
  if (is_term_) throw std::logic_error("items on a term");
  return items_;
}

std::string PoelItem::str() const {
  if (is_term_) return items_.front().str();
  std::string out = "[";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i > 0) out += ' ';
    out += items_[i].str();
  }
  return out + "]";
}

std::size_t PoelItem::hash() const {
  std::size_t h = is_term_ ? 0x517cc1b727220a95ULL : 0x2545f4914f6cdd1dULL;
  for (const auto& t : items_)
    h = h * 0x9e3779b97f4a7c15ULL + t.hash();
  return h;
}

bool PoelItem::operator==(const PoelItem& other) const {
  if (is_term_ != other.is_term_) return false;
  if (items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i] != other.items_[i]) return false;
  return true;
}

int compareItems(const PoelItem& a, const PoelItem& b) {
  if (a.isTerm() != b.isTerm()) return a.isTerm() ? -1 : 1;
  if (a.isTerm()) return compareCanonical(a.asTerm(), b.asTerm());
  auto xs = a.items(), ys = b.items();
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (int c = compareCanonical(xs[i], ys[i])) return c;
  return 0;
}

PoelItem concat(const PoelItem& a, const PoelItem& b) {
  std::vector<Term> items;
  auto push = [&](const PoelItem& x) {
    if (x.isTerm())
      items.push_back(x.asTerm());
    else
      items.insert(items.end(), x.items().begin(), x.items().end());
  };
  push(a);
  push(b);
  return PoelItem::sequence(std::move(items));
}

// --- decision procedure -------------------------------------------------

namespace {

struct TermPairHash {
  std::size_t operator()(const std::pair<Term, Term>& p) const {
    return p.first.hash() * 0x9e3779b97f4a7c15ULL + p.second.hash();
  }
};
struct TermPairEq {
  bool operator()(const std::pair<Term, Term>& a,
                  const std::pair<Term, Term>& b) const {
    return a.first == b.first && a.second == b.second;
  }
};

class PoelQuery {
 public:
  PoelQuery(const Precedence& prec, std::size_t ell)
      : prec_(prec), ell_(ell) {}

  std::string failure;

  PoelCertPtr gt(const PoelItem& a, const PoelItem& b) {
    if (a.isTerm() && b.isTerm()) return gtTermTerm(a.asTerm(), b.asTerm());
    if (a.isTerm()) return gtTermSeq(a.asTerm(), b.items());
    if (b.isTerm()) {
      failure = "a sequence is never above a single term";
      return nullptr;
    }
    return gtSeqSeq(a.items(), b.items());
  }

  PoelCertPtr gtTermTerm(const Term& s, const Term& t) {
    auto key = std::make_pair(s, t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    PoelCertPtr cert = decideTermTerm(s, t);
    memo_.emplace(std::move(key), cert);
    return cert;
  }

  PoelCertPtr gtTermSeq(const Term& s, std::span<const Term> ts) {
    if (ts.size() > ell_) {
      failure = "sequence length " + std::to_string(ts.size()) +
                " exceeds the bound " + std::to_string(ell_);
      return nullptr;
    }
    auto cert = std::make_shared<PoelCert>(
        3, PoelItem::term(s),
        PoelItem::sequence({ts.begin(), ts.end()}));
    for (const auto& t : ts) {
      auto sub = gtTermTerm(s, t);
      if (!sub) {
        failure = s.str() + " does not dominate element " + t.str();
        return nullptr;
      }
      cert->items.push_back(sub);
    }
    return cert;
  }

  PoelCertPtr gtSeqSeq(std::span<const Term> ss, std::span<const Term> ts);

 private:
  PoelCertPtr decideTermTerm(const Term& s, const Term& t) {
    if (s.isVariable() || t.isVariable()) {
      failure = "variables are minimal in the order";
      return nullptr;
    }
    const FunctionSymbol& f = s.symbol();
    const FunctionSymbol& g = t.symbol();
    if (f == g) {
      // Same symbol: componentwise proper-subterm product.
      auto sa = s.args(), ta = t.args();
      bool strict = false;
      for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] == ta[i]) continue;
        if (!strictSuperterm(sa[i], ta[i])) {
          failure = "argument " + ta[i].str() +
                    " is not a proper subterm of " + sa[i].str();
          return nullptr;
        }
        strict = true;
      }
      if (!strict) {
        failure = "no strict argument decrease between " + s.str() +
                  " and " + t.str();
        return nullptr;
      }
      return std::make_shared<PoelCert>(2, PoelItem::term(s),
                                        PoelItem::term(t));
    }
    if (!prec_.greater(f.name, g.name)) {
      failure = "precedence does not order " + f.name + " above " + g.name;
      return nullptr;
    }
    if (t.args().size() > ell_) {
      failure = "arity of " + t.str() + " exceeds the bound " +
                std::to_string(ell_);
      return nullptr;
    }
    for (const auto& tj : t.args()) {
      if (!strictSuperterm(s, tj)) {
        failure = tj.str() + " is not a proper subterm of " + s.str();
        return nullptr;
      }
    }
    return std::make_shared<PoelCert>(1, PoelItem::term(s),
                                      PoelItem::term(t));
  }

  const Precedence& prec_;
  std::size_t ell_;
  std::unordered_map<std::pair<Term, Term>, PoelCertPtr, TermPairHash,
                     TermPairEq>
      memo_;
};

PoelCertPtr PoelQuery::gtSeqSeq(std::span<const Term> ss,
                                std::span<const Term> ts) {
  const std::size_t k = ss.size(), l = ts.size();
  // Split the right side into one block per left element: an equal block
  // consumes one equal term, a strict block consumes a dominated run of
  // up to ell elements.  Reachability over (left index, right index,
  // strict block seen).
  struct From {
    bool set = false;
    std::size_t j = 0;
    bool st = false;
    std::size_t take = 0;
    bool equal = false;
  };
  auto idx = [&](std::size_t i, std::size_t j, bool st) {
    return (i * (l + 1) + j) * 2 + (st ? 1 : 0);
  };
  std::vector<From> from((k + 1) * (l + 1) * 2);
  std::vector<char> reach((k + 1) * (l + 1) * 2, 0);
  reach[idx(0, 0, false)] = 1;

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= l; ++j) {
      for (bool st : {false, true}) {
        if (!reach[idx(i, j, st)]) continue;
        auto record = [&](std::size_t nj, bool nst, std::size_t take,
                          bool equal) {
          std::size_t id = idx(i + 1, nj, nst);
          if (reach[id]) return;
          reach[id] = 1;
          from[id] = {true, j, st, take, equal};
        };
        if (j < l && ss[i] == ts[j]) record(j + 1, st, 1, true);
        // Dominated runs, the empty run included.
        record(j, true, 0, false);
        for (std::size_t r = 1; r <= ell_ && j + r <= l; ++r) {
          if (!gtTermTerm(ss[i], ts[j + r - 1])) break;
          record(j + r, true, r, false);
        }
      }
    }
  }

  if (!reach[idx(k, l, true)]) {
    failure = "no block split of [" +
              PoelItem::sequence({ts.begin(), ts.end()}).str() +
              "] descends from [" +
              PoelItem::sequence({ss.begin(), ss.end()}).str() + "]";
    return nullptr;
  }

  // Walk the parents back to the start to recover the blocks.
  std::vector<PoelCert::Block> blocks(k);
  std::size_t j = l;
  bool st = true;
  for (std::size_t i = k; i-- > 0;) {
    const From& f = from[idx(i + 1, j, st)];
    PoelCert::Block b;
    b.take = f.take;
    b.equal = f.equal;
    if (!f.equal) {
      std::vector<Term> run(ts.begin() + (f.j), ts.begin() + (f.j + f.take));
      b.cert = gtTermSeq(ss[i], run);
    }
    blocks[i] = std::move(b);
    j = f.j;
    st = f.st;
  }

  auto cert = std::make_shared<PoelCert>(
      4, PoelItem::sequence({ss.begin(), ss.end()}),
      PoelItem::sequence({ts.begin(), ts.end()}));
  cert->blocks = std::move(blocks);
  return cert;
}

}  // namespace

PoelOutcome poelGt(const PoelInstance& inst, const PoelItem& a,
                   const PoelItem& b) {
  PoelQuery q(inst.precedence, inst.ell);
  PoelOutcome out;
  out.cert = q.gt(a, b);
  if (!out.cert) out.failure = q.failure;
  return out;
}

// --- certificate replay -------------------------------------------------

namespace {

bool replayPoelNode(const PoelInstance& inst, const PoelCert& c,
                    std::string& why) {
  auto fail = [&](const std::string& msg) {
    if (why.empty()) why = msg;
    return false;
  };
  switch (c.clause) {
    case 1: {
      if (!c.lhs.isTerm() || !c.rhs.isTerm())
        return fail("clause 1 expects terms on both sides");
      const Term& s = c.lhs.asTerm();
      const Term& t = c.rhs.asTerm();
      if (s.isVariable() || t.isVariable())
        return fail("clause 1 on a variable");
      if (!inst.precedence.greater(s.symbol().name, t.symbol().name))
        return fail("clause 1 precedence fact " + s.symbol().name + " > " +
                    t.symbol().name + " does not hold");
      if (t.args().size() > inst.ell)
        return fail("clause 1 arity exceeds the bound");
      for (const auto& tj : t.args())
        if (!strictSuperterm(s, tj))
          return fail("clause 1 argument " + tj.str() +
                      " is not a proper subterm of " + s.str());
      return true;
    }
    case 2: {
      if (!c.lhs.isTerm() || !c.rhs.isTerm())
        return fail("clause 2 expects terms on both sides");
      const Term& s = c.lhs.asTerm();
      const Term& t = c.rhs.asTerm();
      if (s.isVariable() || t.isVariable())
        return fail("clause 2 on a variable");
      if (!(s.symbol() == t.symbol()))
        return fail("clause 2 requires identical root symbols");
      bool strict = false;
      for (std::size_t i = 0; i < s.args().size(); ++i) {
        if (s.args()[i] == t.args()[i]) continue;
        if (!strictSuperterm(s.args()[i], t.args()[i]))
          return fail("clause 2 argument " + t.args()[i].str() +
                      " is not a proper subterm of " + s.args()[i].str());
        strict = true;
      }
      if (!strict) return fail("clause 2 product has no strict component");
      return true;
    }
    case 3: {
      if (!c.lhs.isTerm() || !c.rhs.isSequence())
        return fail("clause 3 expects a term and a sequence");
      auto ts = c.rhs.items();
      if (ts.size() > inst.ell)
        return fail("clause 3 sequence length exceeds the bound");
      if (c.items.size() != ts.size())
        return fail("clause 3 wrong number of sub-certificates");
      for (std::size_t j = 0; j < ts.size(); ++j) {
        const auto& sub = c.items[j];
        if (!sub) return fail("clause 3 missing sub-certificate");
        if (!(sub->lhs == c.lhs) ||
            !(sub->rhs == PoelItem::term(ts[j])))
          return fail("clause 3 sub-certificate endpoints mismatch");
        if (!replayPoelNode(inst, *sub, why)) return false;
      }
      return true;
    }
    case 4: {
      if (!c.lhs.isSequence() || !c.rhs.isSequence())
        return fail("clause 4 expects sequences on both sides");
      auto ss = c.lhs.items();
      auto ts = c.rhs.items();
      if (c.blocks.size() != ss.size())
        return fail("clause 4 needs one block per left element");
      std::size_t j = 0;
      bool strict = false;
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const auto& b = c.blocks[i];
        if (j + b.take > ts.size())
          return fail("clause 4 blocks overrun the right side");
        if (b.equal) {
          if (b.take != 1)
            return fail("clause 4 equal block must consume one element");
          if (!(ss[i] == ts[j]))
            return fail("clause 4 equal block mismatch at element " +
                        std::to_string(i + 1));
        } else {
          strict = true;
          if (!b.cert) return fail("clause 4 missing block certificate");
          std::vector<Term> run(ts.begin() + j, ts.begin() + j + b.take);
          if (!(b.cert->lhs == PoelItem::term(ss[i])) ||
              !(b.cert->rhs == PoelItem::sequence(run)))
            return fail("clause 4 block certificate endpoints mismatch");
          if (!replayPoelNode(inst, *b.cert, why)) return false;
        }
        j += b.take;
      }
      if (j != ts.size())
        return fail("clause 4 blocks do not cover the right side");
      if (!strict) return fail("clause 4 has no strict block");
      return true;
    }
    default:
      return fail("unknown clause tag " + std::to_string(c.clause));
  }
}

}  // namespace

ReplayResult replayPoelCertificate(const PoelInstance& inst,
                                   const PoelCert& cert) {
  std::string why;
  bool ok = replayPoelNode(inst, cert, why);
  return {ok, why};
}

// --- predicative interpretation -----------------------------------------

FunctionSymbol normalizedSymbol(const FunctionSymbol& f) {
  return {f.name + "^n", SymbolKind::Constructor, 0, f.normal_arity};
}

std::vector<Term> pint(const Term& t) {
  if (!t.isGround())
    throw std::invalid_argument("pint is defined on ground terms");
  if (t.isValue()) return {};
  std::vector<Term> out;
  std::vector<Term> normals(t.normalArgs().begin(), t.normalArgs().end());
  out.push_back(Term::app(normalizedSymbol(t.symbol()), {}, std::move(normals)));
  for (const auto& safe : t.safeArgs()) {
    auto rest = pint(safe);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

bool inTn(const Term& t) {
  if (t.isValue()) return true;
  if (t.isVariable()) return false;
  for (const auto& v : t.normalArgs())
    if (!v.isValue()) return false;
  for (const auto& s : t.safeArgs())
    if (!inTn(s)) return false;
  return true;
}

PoelInstance liftInstance(const Trs& trs, const Precedence& prec) {
  PoelInstance inst;
  std::size_t ell = 1;
  for (const auto& r : trs.rules) ell = std::max(ell, r.rhs.size());
  for (const auto& f : trs.signature.symbols())
    ell = std::max(ell, static_cast<std::size_t>(f.arity()));
  inst.ell = ell;
  for (const auto& f : trs.signature.symbols()) {
    inst.universe.add(f);
    inst.universe.add(normalizedSymbol(f));
  }
  std::map<std::string, int> ranks = prec.ranks();
  for (const auto& [name, rank] : prec.ranks()) ranks[name + "^n"] = rank;
  inst.precedence = Precedence(std::move(ranks));
  return inst;
}

// --- longest descending chains ------------------------------------------

SlowCalculator::SlowCalculator(PoelInstance inst, SlowGuards guards)
    : inst_(std::move(inst)), guards_(guards) {}

void SlowCalculator::validateInput(const PoelItem& a) const {
  if (a.isTerm()) {
    if (a.asTerm().size() > guards_.max_term_size)
      throw GuardExceeded("term size " + std::to_string(a.asTerm().size()) +
                          " exceeds the input cap " +
                          std::to_string(guards_.max_term_size));
    return;
  }
  if (a.items().size() > guards_.max_seq_length)
    throw GuardExceeded("sequence length " +
                        std::to_string(a.items().size()) +
                        " exceeds the input cap " +
                        std::to_string(guards_.max_seq_length));
  for (const auto& t : a.items())
    validateInput(PoelItem::term(t));
}

std::vector<Term> SlowCalculator::termSuccessors(const Term& a) {
  std::set<Term, TermCanonicalLess> out;
  if (a.isVariable()) return {};
  const FunctionSymbol& f = a.symbol();
  std::vector<Term> ps = properSubterms(a);
  std::size_t produced = 0;
  auto note = [&](Term t) {
    if (++produced > guards_.max_successors)
      throw GuardExceeded("successor set of " + a.str() + " exceeds " +
                          std::to_string(guards_.max_successors));
    out.insert(std::move(t));
  };

  // Precedence steps: any lower symbol applied to proper subterms.
  for (const auto& g : inst_.universe.symbols()) {
    if (!inst_.precedence.greater(f.name, g.name)) continue;
    std::size_t n = static_cast<std::size_t>(g.arity());
    if (n > inst_.ell) continue;
    if (n > 0 && ps.empty()) continue;
    std::vector<Term> acc;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (pos == n) {
        std::vector<Term> normal(acc.begin(), acc.begin() + g.normal_arity);
        std::vector<Term> safe(acc.begin() + g.normal_arity, acc.end());
        note(Term::app(g, std::move(normal), std::move(safe)));
        return;
      }
      for (const auto& p : ps) {
        acc.push_back(p);
        self(self, pos + 1);
        acc.pop_back();
      }
    };
    rec(rec, 0);
  }

  // Same-symbol product: each argument stays or drops to a proper subterm,
  // at least one drops.
  std::vector<std::vector<Term>> options;
  for (const auto& arg : a.args()) {
    std::vector<Term> opts{arg};
    auto sub = properSubterms(arg);
    opts.insert(opts.end(), sub.begin(), sub.end());
    options.push_back(std::move(opts));
  }
  std::vector<Term> acc;
  auto rec = [&](auto&& self, std::size_t pos, bool strict) -> void {
    if (pos == options.size()) {
      if (!strict) return;
      std::vector<Term> normal(acc.begin(),
                               acc.begin() + f.normal_arity);
      std::vector<Term> safe(acc.begin() + f.normal_arity, acc.end());
      note(Term::app(f, std::move(normal), std::move(safe)));
      return;
    }
    for (std::size_t oi = 0; oi < options[pos].size(); ++oi) {
      acc.push_back(options[pos][oi]);
      self(self, pos + 1, strict || oi > 0);
      acc.pop_back();
    }
  };
  if (!a.args().empty()) rec(rec, 0, false);

  return {out.begin(), out.end()};
}

std::vector<PoelItem> SlowCalculator::successors(const PoelItem& a) {
  std::set<PoelItem, PoelItemLess> out;
  std::size_t produced = 0;
  auto note = [&](PoelItem b) {
    if (++produced > guards_.max_successors)
      throw GuardExceeded("successor set of " + a.str() + " exceeds " +
                          std::to_string(guards_.max_successors));
    out.insert(std::move(b));
  };

  if (a.isTerm()) {
    std::vector<Term> dominated = termSuccessors(a.asTerm());
    for (const auto& t : dominated) note(PoelItem::term(t));
    // Dominated sequences of every length up to the bound.  Any term is
    // above the empty sequence, variables included.
    std::vector<Term> acc;
    auto rec = [&](auto&& self, std::size_t len) -> void {
      note(PoelItem::sequence(acc));
      if (len == inst_.ell) return;
      for (const auto& t : dominated) {
        acc.push_back(t);
        self(self, len + 1);
        acc.pop_back();
      }
    };
    rec(rec, 0);
    return {out.begin(), out.end()};
  }

  // Sequence: per element keep it or replace it with anything it
  // dominates, at least one replacement; flatten the concatenation.
  auto elems = a.items();
  std::vector<std::vector<PoelItem>> options;
  for (const auto& s : elems) {
    std::vector<PoelItem> opts{PoelItem::term(s)};
    auto succ = successors(PoelItem::term(s));
    opts.insert(opts.end(), succ.begin(), succ.end());
    options.push_back(std::move(opts));
  }
  std::vector<Term> acc;
  auto rec = [&](auto&& self, std::size_t pos, bool strict) -> void {
    if (pos == options.size()) {
      if (strict) note(PoelItem::sequence(acc));
      return;
    }
    for (std::size_t oi = 0; oi < options[pos].size(); ++oi) {
      const PoelItem& choice = options[pos][oi];
      std::size_t before = acc.size();
      if (choice.isTerm())
        acc.push_back(choice.asTerm());
      else
        acc.insert(acc.end(), choice.items().begin(), choice.items().end());
      self(self, pos + 1, strict || oi > 0);
      acc.erase(acc.begin() + before, acc.end());
    }
  };
  if (!elems.empty()) rec(rec, 0, false);
  return {out.begin(), out.end()};
}

std::uint64_t SlowCalculator::slow(const PoelItem& a) {
  if (auto it = memo_.find(a); it != memo_.end()) return it->second;
  if (++visited_ > guards_.max_visited)
    throw GuardExceeded("visited more than " +
                        std::to_string(guards_.max_visited) +
                        " distinct items");
  std::uint64_t best = 0;
  if (a.isSequence()) {
    // Chains interleave elementwise, so the lengths add.
    for (const auto& t : a.items()) best += slow(PoelItem::term(t));
  } else {
    for (const auto& b : successors(a)) best = std::max(best, 1 + slow(b));
  }
  memo_.emplace(a, best);
  return best;
}

std::uint64_t SlowCalculator::slowEnumerated(const PoelItem& a) {
  if (auto it = memo_enum_.find(a); it != memo_enum_.end()) return it->second;
  if (++visited_ > guards_.max_visited)
    throw GuardExceeded("visited more than " +
                        std::to_string(guards_.max_visited) +
                        " distinct items");
  std::uint64_t best = 0;
  for (const auto& b : successors(a))
    best = std::max(best, 1 + slowEnumerated(b));
  memo_enum_.emplace(a, best);
  return best;
}

SlowSumCheck checkSlowSum(SlowCalculator& calc, const std::vector<Term>& ts) {
  PoelItem seq = PoelItem::sequence(ts);
  calc.validateInput(seq);
  SlowSumCheck out;
  out.sequence_slow = calc.slowEnumerated(seq);
  for (const auto& t : ts) {
    out.element_slows.push_back(calc.slow(PoelItem::term(t)));
    out.sum += out.element_slows.back();
  }
  out.equal = out.sequence_slow == out.sum;
  return out;
}

namespace {

std::uint64_t satMul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t satPow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    out = satMul(out, base);
    if (out == std::numeric_limits<std::uint64_t>::max()) return out;
  }
  return out;
}

}  // namespace

SlowBoundCheck checkSlowBound(SlowCalculator& calc, const Term& t) {
  SlowBoundCheck out;
  if (t.isVariable()) {
    out.reason = "the bound applies to applications";
    return out;
  }
  const std::size_t ell = calc.instance().ell;
  if (t.args().size() > ell) {
    out.reason = "arity " + std::to_string(t.args().size()) +
                 " exceeds the bound parameter " + std::to_string(ell);
    return out;
  }
  calc.validateInput(PoelItem::term(t));
  out.applicable = true;
  out.rank = calc.instance().precedence.rankOf(t.symbol().name);
  out.slow_value = calc.slow(PoelItem::term(t));
  std::uint64_t sum = 0;
  for (const auto& arg : t.args()) {
    out.arg_slows.push_back(calc.slow(PoelItem::term(arg)));
    sum += out.arg_slows.back();
  }
  std::uint64_t exponent =
      satMul(satPow(ell + 1, static_cast<std::uint64_t>(out.rank)), sum);
  out.bound = satPow(ell + 1, exponent);
  out.saturated = out.bound == std::numeric_limits<std::uint64_t>::max();
  out.holds = out.slow_value <= out.bound;
  return out;
}

// --- step embedding -----------------------------------------------------

EmbeddingVerifier::EmbeddingVerifier(Trs trs, const Precedence& prec)
    : trs_(std::move(trs)), inst_(liftInstance(trs_, prec)) {}

StepEmbedding EmbeddingVerifier::verifyStep(const Term& before,
                                            const Term& after,
                                            std::size_t step_index) const {
  StepEmbedding out{step_index, before, after};
  out.before_in_tn = inTn(before);
  out.after_in_tn = inTn(after);
  out.pint_before = pint(before);
  out.pint_after = pint(after);
  PoelOutcome o = poelGt(inst_, PoelItem::sequence(out.pint_before),
                         PoelItem::sequence(out.pint_after));
  out.decreases = o.greater();
  out.cert = o.cert;
  out.failure = o.failure;
  return out;
}

EmbeddingReport EmbeddingVerifier::verifyDerivation(const Derivation& d) const {
  EmbeddingReport out;
  out.ell = inst_.ell;
  Term cur = d.start;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    StepEmbedding step = verifyStep(cur, d.steps[i].result, i + 1);
    out.all_steps_decrease = out.all_steps_decrease && step.decreases;
    out.tn_preserved =
        out.tn_preserved && step.before_in_tn && step.after_in_tn;
    cur = d.steps[i].result;
    out.steps.push_back(std::move(step));
  }
  return out;
}

RootEmbeddingCheck EmbeddingVerifier::verifyRootEmbedding(
    const Rule& rule, const Substitution& sigma,
    std::size_t rule_number) const {
  RootEmbeddingCheck out;
  out.rule_number = rule_number;
  out.ell = std::max<std::size_t>(1, rule.rhs.size());
  out.value_substitution = sigma.isValueSubstitution();
  if (!out.value_substitution) {
    out.failure = "substitution does not map every variable to a value";
    return out;
  }
  Term ls = sigma.apply(rule.lhs);
  Term rs = sigma.apply(rule.rhs);
  if (!ls.isGround() || !rs.isGround()) {
    out.failure = "substitution does not cover all rule variables";
    return out;
  }
  PoelInstance local = inst_;
  local.ell = out.ell;
  PoelOutcome o = poelGt(local, PoelItem::sequence(pint(ls)),
                         PoelItem::sequence(pint(rs)));
  out.holds = o.greater();
  out.cert = o.cert;
  out.failure = o.failure;
  return out;
}

}  // namespace poestar
