#include "poestar/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace poestar {

std::string ParseError::str() const {
  return "line " + std::to_string(line) + ", col " + std::to_string(col) +
         ": " + message;
}

namespace {

// '^' is allowed so normalized names like f^n can be written in term
// position; declarations reject it, keeping those names reserved.
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^';
}

// Cursor over one line of input.
struct Cursor {
  const std::string& text;
  std::size_t line;
  std::size_t pos = 0;
  std::vector<ParseError>& errors;

  void skipWs() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool atEnd() {
    skipWs();
    return pos >= text.size();
  }
  char peek() {
    skipWs();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skipWs();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skipWs();
    std::size_t start = pos;
    while (pos < text.size() && identChar(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
  void error(const std::string& msg) {
    errors.push_back({line, pos + 1, msg});
  }
};

std::optional<Term> parseTermAt(Cursor& cur, const Signature& sig);

std::optional<std::vector<Term>> parseTermList(Cursor& cur,
                                               const Signature& sig,
                                               char stop1, char stop2) {
  std::vector<Term> out;
  if (cur.peek() == stop1 || cur.peek() == stop2) return out;
  while (true) {
    auto t = parseTermAt(cur, sig);
    if (!t) return std::nullopt;
    out.push_back(std::move(*t));
    if (cur.consume(',')) continue;
    return out;
  }
}

std::optional<Term> parseTermAt(Cursor& cur, const Signature& sig) {
  cur.skipWs();
  std::string name = cur.ident();
  if (name.empty()) {
    cur.error("expected a term");
    return std::nullopt;
  }
  const FunctionSymbol* sym = sig.find(name);
  if (cur.peek() != '(') {
    if (sym) {
      if (sym->arity() != 0) {
        cur.error(name + " takes " + std::to_string(sym->arity()) +
                  " arguments");
        return std::nullopt;
      }
      return Term::app(*sym, {}, {});
    }
    return Term::variable(name);
  }
  cur.consume('(');
  if (!sym) {
    cur.error("unknown symbol " + name);
    return std::nullopt;
  }
  if (sym->isDefined()) {
    auto normal = parseTermList(cur, sig, ';', ')');
    if (!normal) return std::nullopt;
    if (!cur.consume(';')) {
      cur.error("defined symbol " + name +
                " needs a semicolon between normal and safe arguments");
      return std::nullopt;
    }
    auto safe = parseTermList(cur, sig, ')', ')');
    if (!safe) return std::nullopt;
    if (!cur.consume(')')) {
      cur.error("expected ) closing " + name);
      return std::nullopt;
    }
    if (static_cast<int>(normal->size()) != sym->normal_arity ||
        static_cast<int>(safe->size()) != sym->safe_arity) {
      cur.error(name + " expects " + std::to_string(sym->normal_arity) +
                " normal and " + std::to_string(sym->safe_arity) +
                " safe arguments, got " + std::to_string(normal->size()) +
                " and " + std::to_string(safe->size()));
      return std::nullopt;
    }
    return Term::app(*sym, std::move(*normal), std::move(*safe));
  }
  auto args = parseTermList(cur, sig, ')', ')');
  if (!args) return std::nullopt;
  if (cur.peek() == ';') {
    cur.error("constructor " + name + " takes no normal arguments");
    return std::nullopt;
  }
  if (!cur.consume(')')) {
    cur.error("expected ) closing " + name);
    return std::nullopt;
  }
  if (static_cast<int>(args->size()) != sym->safe_arity) {
    cur.error(name + " expects " + std::to_string(sym->safe_arity) +
              " arguments, got " + std::to_string(args->size()));
    return std::nullopt;
  }
  return Term::app(*sym, {}, std::move(*args));
}

std::optional<int> parseCount(Cursor& cur, const std::string& what) {
  std::string word = cur.ident();
  if (word.empty() || !std::all_of(word.begin(), word.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    cur.error("expected " + what);
    return std::nullopt;
  }
  return std::stoi(word);
}

}  // namespace

ParsedFile parseTrsText(const std::string& text) {
  ParsedFile out;
  std::vector<std::pair<std::string, std::string>> prec_edges;
  std::vector<std::pair<std::size_t, std::string>> pending_rules;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw = raw.substr(0, hash);
    Cursor cur{raw, lineno, 0, out.errors};
    if (cur.atEnd()) continue;
    std::string head = cur.ident();
    if (head == "defined" || head == "constructor") {
      std::string name = cur.ident();
      if (name.empty()) {
        cur.error("expected a symbol name");
        continue;
      }
      if (name.find('^') != std::string::npos) {
        cur.error("symbol names may not contain '^'");
        continue;
      }
      FunctionSymbol sym;
      sym.name = name;
      if (head == "defined") {
        sym.kind = SymbolKind::Defined;
        auto k = parseCount(cur, "normal arity");
        auto l = parseCount(cur, "safe arity");
        if (!k || !l) continue;
        sym.normal_arity = *k;
        sym.safe_arity = *l;
      } else {
        sym.kind = SymbolKind::Constructor;
        auto l = parseCount(cur, "arity");
        if (!l) continue;
        sym.safe_arity = *l;
      }
      if (!cur.atEnd()) {
        cur.error("trailing input after declaration");
        continue;
      }
      try {
        out.trs.signature.add(std::move(sym));
      } catch (const std::invalid_argument& e) {
        cur.error(e.what());
      }
    } else if (head == "rule") {
      pending_rules.emplace_back(lineno, raw.substr(cur.pos));
    } else if (head == "precedence") {
      std::string prev = cur.ident();
      if (prev.empty()) {
        cur.error("expected a symbol name");
        continue;
      }
      bool okline = true;
      while (!cur.atEnd()) {
        if (!cur.consume('>')) {
          cur.error("expected > in precedence chain");
          okline = false;
          break;
        }
        std::string next = cur.ident();
        if (next.empty()) {
          cur.error("expected a symbol name after >");
          okline = false;
          break;
        }
        prec_edges.emplace_back(prev, next);
        prev = next;
      }
      if (okline) out.has_precedence = true;
    } else {
      cur.pos = 0;
      cur.error("unknown directive " + head);
    }
  }

  // Rules are parsed after all declarations so the layout of the file does
  // not matter.
  for (auto& [rline, body] : pending_rules) {
    Cursor cur{body, rline, 0, out.errors};
    auto lhs = parseTermAt(cur, out.trs.signature);
    if (!lhs) continue;
    if (!(cur.consume('-') && cur.consume('>'))) {
      cur.error("expected -> between rule sides");
      continue;
    }
    auto rhs = parseTermAt(cur, out.trs.signature);
    if (!rhs) continue;
    if (!cur.atEnd()) {
      cur.error("trailing input after rule");
      continue;
    }
    out.trs.rules.push_back({std::move(*lhs), std::move(*rhs)});
  }

  for (const auto& [a, b] : prec_edges) {
    for (const auto& n : {a, b})
      if (!out.trs.signature.find(n))
        out.errors.push_back(
            {0, 0, "precedence mentions undeclared symbol " + n});
  }
  if (out.errors.empty() && !prec_edges.empty()) {
    try {
      out.precedence = Precedence::fromConstraints(prec_edges);
    } catch (const std::invalid_argument& e) {
      out.errors.push_back({0, 0, e.what()});
    }
  }
  return out;
}

ParsedFile parseTrsFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParsedFile out;
    out.errors.push_back({0, 0, "cannot open " + path});
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseTrsText(buf.str());
}

ParsedTerm parseTerm(const Signature& sig, const std::string& text) {
  ParsedTerm out;
  Cursor cur{text, 1, 0, out.errors};
  auto t = parseTermAt(cur, sig);
  if (t && !cur.atEnd()) {
    cur.error("trailing input after term");
    return out;
  }
  if (t) out.term = std::move(*t);
  return out;
}

std::string printTrs(const Trs& trs, const Precedence* prec) {
  std::ostringstream out;
  for (const auto& s : trs.signature.symbols()) {
    if (s.isDefined())
      out << "defined " << s.name << " " << s.normal_arity << " "
          << s.safe_arity << "\n";
    else
      out << "constructor " << s.name << " " << s.safe_arity << "\n";
  }
  if (!trs.rules.empty()) out << "\n";
  for (const auto& r : trs.rules) out << "rule " << r.str() << "\n";
  if (prec && !prec->empty()) {
    out << "\n";
    // One pair per line reproduces the relation without inventing ties.
    for (const auto& [a, ra] : prec->ranks())
      for (const auto& [b, rb] : prec->ranks())
        if (ra > rb) out << "precedence " << a << " > " << b << "\n";
  }
  return out.str();
}

}  // namespace poestar
