#include "inet/core.hpp"

#include <sstream>
#include <unordered_map>

namespace inet {

// ---- diagnostics ------------------------------------------------------------

bool hasErrors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.isError()) return true;
  return false;
}

static std::string location(const std::string& path, const SourceSpan& s) {
  std::ostringstream out;
  out << path;
  if (s.known()) out << ':' << s.startLine << ':' << s.startCol;
  return out.str();
}

std::string formatDiagnostic(const Diagnostic& d, const std::string& path) {
  std::ostringstream out;
  out << location(path, d.span) << ": " << (d.isError() ? "error" : "warning") << '['
      << d.code << "]: " << d.message;
  if (d.relatedSpan) out << '\n' << location(path, *d.relatedSpan) << ": note: related rule here";
  return out.str();
}

Error::Error(Diagnostic d) : Error(std::vector<Diagnostic>{std::move(d)}) {}

Error::Error(std::vector<Diagnostic> ds)
    : std::runtime_error(ds.empty() ? std::string("error") : ds.front().message),
      diagnostics_(std::move(ds)) {
  if (diagnostics_.empty()) diagnostics_.push_back({Severity::Error, "ERROR", "error", {}, {}});
}

// ---- terms ------------------------------------------------------------------

Term Term::variable(std::string name) { return Term(Kind::Variable, std::move(name), {}); }

Term Term::agent(std::string name, std::vector<Term> args) {
  return Term(Kind::Agent, std::move(name), std::move(args));
}

bool Term::hasNestedAgent() const {
  for (const auto& a : args_)
    if (a.isAgent()) return true;
  return false;
}

std::size_t Term::nestedAgentCount() const {
  std::size_t n = 0;
  for (const auto& a : args_)
    if (a.isAgent()) n += 1 + a.nestedAgentCount();
  return n;
}

bool Position::isPrefixOf(const Position& other) const {
  if (path.size() > other.path.size()) return false;
  for (std::size_t i = 0; i < path.size(); ++i)
    if (path[i] != other.path[i]) return false;
  return true;
}

std::string toString(const Position& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.path[i]);
  }
  return s + "]";
}

const Term* RulePattern::at(const Position& p) const {
  if (p.path.empty() || p.path[0] < 1 || p.path[0] > 2) return nullptr;
  const Term* t = p.path[0] == 1 ? &left : &right;
  for (std::size_t i = 1; i < p.path.size(); ++i) {
    auto k = p.path[i];
    if (!t->isAgent() || k < 1 || k > t->arity()) return nullptr;
    t = &t->args()[k - 1];
  }
  return t;
}

// ---- symbols ----------------------------------------------------------------

bool SymbolTable::declare(const std::string& name, std::size_t arity) {
  auto [it, inserted] = arities_.emplace(name, arity);
  return inserted || it->second == arity;
}

std::optional<std::size_t> SymbolTable::arity(const std::string& name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

std::vector<AgentSymbol> SymbolTable::symbols() const {
  std::vector<AgentSymbol> out;
  for (const auto& [n, a] : arities_) out.push_back({n, a});
  return out;
}

// ---- variables --------------------------------------------------------------

void countVariables(const Term& t, std::map<std::string, int>& counts) {
  if (t.isVariable()) {
    ++counts[t.name()];
    return;
  }
  for (const auto& a : t.args()) countVariables(a, counts);
}

std::map<std::string, int> variableOccurrences(const Net& net) {
  std::map<std::string, int> counts;
  for (const auto& eq : net.equations) {
    countVariables(eq.left, counts);
    countVariables(eq.right, counts);
  }
  return counts;
}

std::set<std::string> freeVariables(const Net& net) {
  std::set<std::string> out;
  for (const auto& [name, n] : variableOccurrences(net))
    if (n == 1) out.insert(name);
  return out;
}

static void collectVariables(const Term& t, std::vector<std::string>& out) {
  if (t.isVariable()) {
    out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collectVariables(a, out);
}

std::vector<std::string> patternVariables(const RulePattern& p) {
  std::vector<std::string> out;
  collectVariables(p.left, out);
  collectVariables(p.right, out);
  return out;
}

std::optional<LinearityError> checkLinearity(const Net& net) {
  for (const auto& [name, n] : variableOccurrences(net))
    if (n > 2) return LinearityError{name, n};
  return std::nullopt;
}

// ---- alpha equivalence ------------------------------------------------------

namespace {

// Bijective renaming built up while walking two structures in lockstep.
class Renaming {
 public:
  bool bind(const std::string& a, const std::string& b) {
    auto fa = forward_.find(a);
    auto bb = backward_.find(b);
    if (fa == forward_.end() && bb == backward_.end()) {
      forward_.emplace(a, b);
      backward_.emplace(b, a);
      return true;
    }
    return fa != forward_.end() && bb != backward_.end() && fa->second == b && bb->second == a;
  }

 private:
  std::unordered_map<std::string, std::string> forward_;
  std::unordered_map<std::string, std::string> backward_;
};

bool sameShape(const Term& a, const Term& b, Renaming& ren) {
  if (a.kind() != b.kind()) return false;
  if (a.isVariable()) return ren.bind(a.name(), b.name());
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!sameShape(a.args()[i], b.args()[i], ren)) return false;
  return true;
}

bool sameRule(const RulePattern& lhsB, const Rule& a, const Rule& b) {
  Renaming ren;
  if (!sameShape(a.lhs.left, lhsB.left, ren) || !sameShape(a.lhs.right, lhsB.right, ren))
    return false;
  if (a.rhs.equations.size() != b.rhs.equations.size()) return false;
  for (std::size_t i = 0; i < a.rhs.equations.size(); ++i) {
    const auto& ea = a.rhs.equations[i];
    const auto& eb = b.rhs.equations[i];
    if (!sameShape(ea.left, eb.left, ren) || !sameShape(ea.right, eb.right, ren)) return false;
  }
  return true;
}

}  // namespace

bool alphaEquivalent(const RulePattern& a, const RulePattern& b) {
  {
    Renaming ren;
    if (sameShape(a.left, b.left, ren) && sameShape(a.right, b.right, ren)) return true;
  }
  Renaming ren;
  return sameShape(a.left, b.right, ren) && sameShape(a.right, b.left, ren);
}

bool alphaEquivalentRules(const Rule& a, const Rule& b) {
  return sameRule(b.lhs, a, b) || sameRule(b.lhs.flipped(), a, b);
}

// ---- printing ---------------------------------------------------------------

static void print(const Term& t, std::string& out) {
  out += t.name();
  if (t.isVariable() || t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print(t.args()[i], out);
  }
  out += ')';
}

std::string toString(const Term& t) {
  std::string s;
  print(t, s);
  return s;
}

std::string toString(const Equation& e) { return toString(e.left) + "~" + toString(e.right); }

std::string toString(const Net& n) {
  std::string s;
  for (std::size_t i = 0; i < n.equations.size(); ++i) {
    if (i) s += ", ";
    s += toString(n.equations[i]);
  }
  return s;
}

std::string toString(const RulePattern& p) { return toString(p.left) + " >< " + toString(p.right); }

std::string toString(const Rule& r) {
  std::string s = toString(r.lhs);
  if (!r.rhs.empty()) s += " => " + toString(r.rhs);
  return s;
}

std::string NameSupply::next() {
  for (;;) {
    std::size_t n = counter_++;
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('a' + n % 26));
      n /= 26;
    } while (n-- > 0);
    if (!avoid_.count(s)) return s;
  }
}

namespace {

Term renamed(const Term& t, std::map<std::string, std::string>& names, NameSupply& supply) {
  if (t.isVariable()) {
    auto it = names.find(t.name());
    if (it == names.end()) it = names.emplace(t.name(), supply.next()).first;
    return Term::variable(it->second);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(renamed(a, names, supply));
  return Term::agent(t.name(), std::move(args));
}

}  // namespace

std::string formatRule(const Rule& r) {
  std::map<std::string, std::string> names;
  NameSupply supply;
  Rule c;
  c.lhs.left = renamed(r.lhs.left, names, supply);
  c.lhs.right = renamed(r.lhs.right, names, supply);
  for (const auto& eq : r.rhs.equations) {
    Term l = renamed(eq.left, names, supply);
    Term rr = renamed(eq.right, names, supply);
    c.rhs.equations.push_back({std::move(l), std::move(rr)});
  }
  std::string s = toString(c.lhs);
  // An INP rule always needs the arrow: without it, lhs nesting reads as folded rhs.
  if (!c.rhs.empty())
    s += " => " + toString(c.rhs);
  else if (c.lhs.isInp())
    s += " =>";
  return s;
}

}  // namespace inet
