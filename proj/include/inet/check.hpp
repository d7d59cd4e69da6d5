#pragma once

// Well-formedness verification for rule sets with nested patterns: position
// sets, the subnet relation between left-hand sides, and the pairwise
// sequential-set test. The checker only falsifies; it never builds a witness
// sequential set.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "inet/core.hpp"

namespace inet {

/// Position -> agent symbol name. Keys are unique by construction.
using PosSymSet = std::map<Position, std::string>;

/// Position sets following the defining recursion literally: variables give
/// nothing, an agent whose arguments are all variables records itself, and an
/// agent with a non-variable argument records only what its arguments record.
PosSymSet posSym(const RulePattern& lhs);
std::set<Position> pos(const RulePattern& lhs);

/// Every nested agent with its position, intermediate agents included.
PosSymSet nestedAgentPositions(const RulePattern& lhs);

/// `q` re-oriented so its roots line up with `p`'s roots. Empty when the active
/// pairs differ; two entries when both roots carry the same symbol.
std::vector<RulePattern> alignTo(const RulePattern& q, const RulePattern& p);

bool sameActivePair(const RulePattern& p, const RulePattern& q);

/// True iff `q` is `p` with zero or more variables replaced by agent terms
/// (matching roots, variable names ignored).
bool isSubnet(const RulePattern& p, const RulePattern& q);

/// The pairwise sequential-set test on literal position sets. Patterns with
/// different active pairs are trivially compatible.
bool sequentialCompatible(const RulePattern& p, const RulePattern& q);

/// The same test on full position sets (intermediate agents recorded).
bool sequentialCompatibleFull(const RulePattern& p, const RulePattern& q);

struct StoredPattern {
  RulePattern pattern;
  SourceSpan span;
  std::string label;
};

struct CheckStores {
  std::vector<StoredPattern> all;     // every accepted left-hand side
  std::vector<StoredPattern> nested;  // accepted INP left-hand sides

  std::size_t population() const { return all.size() + nested.size(); }
};

/// Incremental checker: rules are admitted one at a time against the patterns
/// accepted so far.
class WellFormednessChecker {
 public:
  /// Checks `rule` against the stores. Returns every violation (errors) and
  /// literal-vs-full position set disagreements (warnings). The rule's
  /// left-hand side is stored only if no error was found.
  std::vector<Diagnostic> admit(const Rule& rule);

  const CheckStores& stores() const { return stores_; }

 private:
  CheckStores stores_;
};

struct CheckReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !hasErrors(diagnostics); }
  /// First error in processing order, if any.
  const Diagnostic* firstError() const;
};

/// Processes `rules` in order through a fresh checker and collects all diagnostics.
CheckReport verifyWellFormed(const std::vector<Rule>& rules);

}  // namespace inet
