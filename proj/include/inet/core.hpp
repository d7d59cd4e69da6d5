#pragma once

// Core syntax of interaction nets: terms, equations, nets, rule patterns
// and rules, plus the structural operations shared by every later stage.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "inet/diagnostic.hpp"

namespace inet {

struct AgentSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const AgentSymbol&, const AgentSymbol&) = default;
};

/// A variable (port name) or an agent applied to its auxiliary-port arguments.
class Term {
 public:
  enum class Kind { Variable, Agent };

  Term() = default;
  static Term variable(std::string name);
  static Term agent(std::string name, std::vector<Term> args = {});

  Kind kind() const { return kind_; }
  bool isVariable() const { return kind_ == Kind::Variable; }
  bool isAgent() const { return kind_ == Kind::Agent; }

  /// Variable name or agent symbol name.
  const std::string& name() const { return name_; }
  std::size_t arity() const { return args_.size(); }
  const std::vector<Term>& args() const { return args_; }
  std::vector<Term>& args() { return args_; }

  /// True when some argument, at any depth, is an agent.
  bool hasNestedAgent() const;
  /// Number of agents strictly below this term's root.
  std::size_t nestedAgentCount() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind k, std::string n, std::vector<Term> a)
      : kind_(k), name_(std::move(n)), args_(std::move(a)) {}

  Kind kind_ = Kind::Variable;
  std::string name_;
  std::vector<Term> args_;
};

struct Equation {
  Term left;
  Term right;

  bool isActivePair() const { return left.isAgent() && right.isAgent(); }
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct Net {
  std::vector<Equation> equations;

  bool empty() const { return equations.empty(); }
  friend bool operator==(const Net&, const Net&) = default;
};

/// Path to an agent inside a rule pattern: the first element picks the left
/// (1) or right (2) root agent, the rest are 1-based argument indices.
struct Position {
  std::vector<std::uint32_t> path;

  std::size_t depth() const { return path.size(); }
  bool isPrefixOf(const Position& other) const;

  friend auto operator<=>(const Position&, const Position&) = default;
  friend bool operator==(const Position&, const Position&) = default;
};

std::string toString(const Position& p);

/// The left-hand side of a rule: two agents joined at their principal ports,
/// possibly with further agents nested in argument positions.
struct RulePattern {
  Term left;
  Term right;

  /// Ordinary pattern: every argument of both roots is a variable.
  bool isOrn() const { return !left.hasNestedAgent() && !right.hasNestedAgent(); }
  bool isInp() const { return !isOrn(); }
  std::size_t nestedAgentCount() const {
    return left.nestedAgentCount() + right.nestedAgentCount();
  }
  /// The same pattern with its two roots swapped.
  RulePattern flipped() const { return {right, left}; }
  /// Subterm at `p` (nullptr if the path leaves the pattern).
  const Term* at(const Position& p) const;

  friend bool operator==(const RulePattern&, const RulePattern&) = default;
};

struct Rule {
  RulePattern lhs;
  Net rhs;
  SourceSpan span;
  /// Human readable origin, e.g. "rule 2" or "auxiliary rule from rule 1".
  std::string label;
};

/// Symbol table with arity bookkeeping.
class SymbolTable {
 public:
  /// Registers `name`; returns false if it is already known with another arity.
  bool declare(const std::string& name, std::size_t arity);
  bool contains(const std::string& name) const { return arities_.count(name) != 0; }
  std::optional<std::size_t> arity(const std::string& name) const;
  /// Symbols in name order.
  std::vector<AgentSymbol> symbols() const;
  std::size_t size() const { return arities_.size(); }

 private:
  std::map<std::string, std::size_t> arities_;
};

// ---- variables and linearity ----------------------------------------------

/// Variable occurrence counts over a net.
std::map<std::string, int> variableOccurrences(const Net& net);
void countVariables(const Term& t, std::map<std::string, int>& counts);

/// Variables occurring exactly once in `net`: its interface.
std::set<std::string> freeVariables(const Net& net);

/// Variables of a pattern in left-to-right, depth-first order (with repeats).
std::vector<std::string> patternVariables(const RulePattern& p);

struct LinearityError {
  std::string variable;
  int count = 0;
};

/// Fails when some variable occurs three or more times.
std::optional<LinearityError> checkLinearity(const Net& net);

// ---- alpha equivalence ----------------------------------------------------

/// Structural identity of two patterns up to renaming of variables. The roots
/// are matched in either orientation (`A >< B` and `B >< A` are one pattern).
bool alphaEquivalent(const RulePattern& a, const RulePattern& b);

/// Two rules with alpha-equivalent left sides whose right sides coincide
/// equation by equation under the same renaming.
bool alphaEquivalentRules(const Rule& a, const Rule& b);

// ---- printing -------------------------------------------------------------

std::string toString(const Term& t);
std::string toString(const Equation& e);
std::string toString(const Net& n);
std::string toString(const RulePattern& p);
std::string toString(const Rule& r);

/// Canonical form of a rule: variables renamed a, b, c, ... in order of
/// first occurrence (left side, then right side); equations in stored order.
std::string formatRule(const Rule& r);

/// Name generator producing a, b, ..., z, aa, ab, ... (skipping `avoid`).
class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}
  std::string next();

 private:
  std::set<std::string> avoid_;
  std::size_t counter_ = 0;
};

}  // namespace inet
