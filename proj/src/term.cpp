#include "poestar/term.hpp"

#include <algorithm>
#include <set>

namespace poestar {

namespace {

std::size_t hashCombine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hashString(const std::string& s) {
  return std::hash<std::string>{}(s);
}

}  // namespace

const FunctionSymbol& Signature::add(FunctionSymbol sym) {
  if (index_.count(sym.name))
    throw std::invalid_argument("duplicate symbol: " + sym.name);
  if (sym.isConstructor() && sym.normal_arity != 0)
    throw std::invalid_argument("constructor with normal arguments: " +
                                sym.name);
  if (sym.normal_arity < 0 || sym.safe_arity < 0)
    throw std::invalid_argument("negative arity: " + sym.name);
  index_[sym.name] = symbols_.size();
  symbols_.push_back(std::move(sym));
  return symbols_.back();
}

const FunctionSymbol* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

std::vector<FunctionSymbol> Signature::constructors() const {
  std::vector<FunctionSymbol> out;
  for (const auto& s : symbols_)
    if (s.isConstructor()) out.push_back(s);
  return out;
}

std::vector<FunctionSymbol> Signature::definedSymbols() const {
  std::vector<FunctionSymbol> out;
  for (const auto& s : symbols_)
    if (s.isDefined()) out.push_back(s);
  return out;
}

bool Signature::hasNullaryConstructor() const {
  for (const auto& s : symbols_)
    if (s.isConstructor() && s.arity() == 0) return true;
  return false;
}

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->var_name = std::move(name);
  n->size = 1;
  n->ground = false;
  n->value = false;
  n->hash = hashCombine(0x5aul, hashString(n->var_name));
  return Term(std::move(n));
}

Term Term::app(FunctionSymbol sym, std::vector<Term> normal,
               std::vector<Term> safe) {
  if (static_cast<int>(normal.size()) != sym.normal_arity ||
      static_cast<int>(safe.size()) != sym.safe_arity)
    throw std::invalid_argument("arity mismatch building " + sym.name);
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->sym = std::move(sym);
  n->args = std::move(normal);
  n->args.insert(n->args.end(), std::make_move_iterator(safe.begin()),
                 std::make_move_iterator(safe.end()));
  n->size = 1;
  n->ground = true;
  bool args_value = true;
  std::size_t h = hashCombine(0xa9ul, hashString(n->sym.name));
  h = hashCombine(h, static_cast<std::size_t>(n->sym.normal_arity));
  for (const auto& a : n->args) {
    n->size += a.size();
    n->ground = n->ground && a.isGround();
    args_value = args_value && a.isValue();
    h = hashCombine(h, a.hash());
  }
  n->value = n->sym.isConstructor() && n->ground && args_value;
  n->hash = h;
  return Term(std::move(n));
}

const std::string& Term::variableName() const {
  if (!node_->is_var) throw std::logic_error("variableName on application");
  return node_->var_name;
}

const FunctionSymbol& Term::symbol() const {
  if (node_->is_var) throw std::logic_error("symbol of a variable");
  return node_->sym;
}

std::span<const Term> Term::args() const {
  if (node_->is_var) return {};
  return {node_->args.data(), node_->args.size()};
}

std::span<const Term> Term::normalArgs() const {
  if (node_->is_var) return {};
  return {node_->args.data(),
          static_cast<std::size_t>(node_->sym.normal_arity)};
}

std::span<const Term> Term::safeArgs() const {
  if (node_->is_var) return {};
  return {node_->args.data() + node_->sym.normal_arity,
          static_cast<std::size_t>(node_->sym.safe_arity)};
}

bool Term::contains(const Term& t) const {
  if (*this == t) return true;
  for (const auto& a : args())
    if (a.contains(t)) return true;
  return false;
}

void Term::collectVariables(std::vector<std::string>& out) const {
  if (node_->is_var) {
    out.push_back(node_->var_name);
    return;
  }
  for (const auto& a : args()) a.collectVariables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collectVariables(out);
  return out;
}

std::string Term::str() const {
  if (node_->is_var) return node_->var_name;
  const auto& sym = node_->sym;
  std::string out = sym.name;
  if (sym.isConstructor()) {
    if (sym.arity() == 0) return out;
    out += "(";
    for (int i = 0; i < sym.arity(); ++i) {
      if (i > 0) out += ", ";
      out += node_->args[i].str();
    }
    out += ")";
    return out;
  }
  out += "(";
  for (int i = 0; i < sym.normal_arity; ++i) {
    if (i > 0) out += ", ";
    out += node_->args[i].str();
  }
  out += ";";
  for (int i = 0; i < sym.safe_arity; ++i) {
    out += i == 0 ? " " : ", ";
    out += node_->args[sym.normal_arity + i].str();
  }
  out += ")";
  return out;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  if (node_->is_var != other.node_->is_var) return false;
  if (node_->is_var) return node_->var_name == other.node_->var_name;
  if (!(node_->sym == other.node_->sym)) return false;
  if (node_->args.size() != other.node_->args.size()) return false;
  for (std::size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == other.node_->args[i])) return false;
  return true;
}

int compareCanonical(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.isVariable() != b.isVariable()) return a.isVariable() ? -1 : 1;
  if (a.isVariable()) return a.variableName().compare(b.variableName());
  if (int c = a.symbol().name.compare(b.symbol().name)) return c;
  if (a.symbol().normal_arity != b.symbol().normal_arity)
    return a.symbol().normal_arity < b.symbol().normal_arity ? -1 : 1;
  if (a.args().size() != b.args().size())
    return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compareCanonical(a.args()[i], b.args()[i])) return c;
  return 0;
}

bool strictSuperterm(const Term& s, const Term& t) {
  for (const auto& a : s.args())
    if (a.contains(t)) return true;
  return false;
}

bool normalStrictSuperterm(const Term& s, const Term& t) {
  if (s.isVariable())
    throw std::invalid_argument("normalStrictSuperterm: variable subject");
  for (const auto& a : s.normalArgs())
    if (a.contains(t)) return true;
  return false;
}

namespace {
void collectSubterms(const Term& t, std::set<Term, TermCanonicalLess>& out) {
  out.insert(t);
  for (const auto& a : t.args()) collectSubterms(a, out);
}
}  // namespace

std::vector<Term> subterms(const Term& t) {
  std::set<Term, TermCanonicalLess> s;
  collectSubterms(t, s);
  return {s.begin(), s.end()};
}

std::vector<Term> properSubterms(const Term& t) {
  std::set<Term, TermCanonicalLess> s;
  for (const auto& a : t.args()) collectSubterms(a, s);
  s.erase(t);
  return {s.begin(), s.end()};
}

void Substitution::bind(const std::string& var, Term t) {
  map_.insert_or_assign(var, std::move(t));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.isVariable()) {
    if (const Term* bound = lookup(t.variableName())) return *bound;
    return t;
  }
  const auto& sym = t.symbol();
  std::vector<Term> normal, safe;
  normal.reserve(sym.normal_arity);
  safe.reserve(sym.safe_arity);
  for (const auto& a : t.normalArgs()) normal.push_back(apply(a));
  for (const auto& a : t.safeArgs()) safe.push_back(apply(a));
  return Term::app(sym, std::move(normal), std::move(safe));
}

bool Substitution::isValueSubstitution() const {
  for (const auto& [v, t] : map_)
    if (!t.isValue()) return false;
  return true;
}

std::optional<Substitution> Substitution::match(const Term& pattern,
                                                const Term& subject) {
  Substitution sigma;
  struct Frame {
    const Term* p;
    const Term* s;
  };
  std::vector<Frame> stack{{&pattern, &subject}};
  while (!stack.empty()) {
    auto [p, s] = stack.back();
    stack.pop_back();
    if (p->isVariable()) {
      if (const Term* bound = sigma.lookup(p->variableName())) {
        if (!(*bound == *s)) return std::nullopt;
      } else {
        sigma.bind(p->variableName(), *s);
      }
      continue;
    }
    if (s->isVariable()) return std::nullopt;
    if (!(p->symbol() == s->symbol())) return std::nullopt;
    for (std::size_t i = 0; i < p->args().size(); ++i)
      stack.push_back({&p->args()[i], &s->args()[i]});
  }
  return sigma;
}

}  // namespace poestar
