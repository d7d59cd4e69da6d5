#pragma once

// Rewrites rules with nested patterns into ordinary interaction rules. One
// nested agent is resolved per step: the rule's active pair is emitted with an
// auxiliary agent waiting on the resolved port, and an auxiliary rule carrying
// the remaining match obligations is queued for processing next.

#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "inet/check.hpp"
#include "inet/core.hpp"

namespace inet {

/// Lexicographically least nested-agent position of `lhs` (always an argument
/// slot of a root agent). Throws std::invalid_argument if `lhs` is ORN.
Position firstNestedPosition(const RulePattern& lhs);

/// Argument slots of the two roots ([s,i]) holding agents, in order.
std::vector<Position> nestedArgumentSlots(const RulePattern& lhs);

/// Position resolved first when translating `lhs`, given the INP patterns that
/// share its active pair. All rules of a group must resolve the same slot for
/// their first steps to coincide, so this is the least slot nested in every
/// member, falling back to firstNestedPosition when there is none.
Position choosePosition(const RulePattern& lhs, const std::vector<RulePattern>& group);

struct TranslationState {
  std::deque<Rule> pending;
  std::vector<Rule> output;  // ORN only, before deduplication
  WellFormednessChecker checker;
  std::size_t freshCounter = 0;

  /// (left root, right root, resolved slot) -> auxiliary agent.
  std::map<std::tuple<std::string, std::string, Position>, AgentSymbol> auxNames;

  /// Unordered active pair -> name of the root written on the left.
  std::map<std::pair<std::string, std::string>, std::string> orientation;
  /// Unordered active pair -> INP left-hand sides (in registered orientation).
  std::map<std::pair<std::string, std::string>, std::vector<RulePattern>> groups;
  /// Every agent name in use, user and generated.
  std::set<std::string> agentNames;

  std::vector<Diagnostic> warnings;
  std::size_t peakStorePopulation = 0;

  static TranslationState start(const std::vector<Rule>& rules);

  /// Rules still to process plus nested agents over them. Strictly decreases
  /// with every step.
  std::size_t measure() const;
};

/// Processes one dequeued rule: runs both well-formedness checks against the
/// stores (throws inet::Error on a violation), then passes an ORN rule through
/// or splits an INP rule. Returns the rules appended to `state.output`.
std::vector<Rule> translateStep(Rule rule, TranslationState& state);

struct TranslationResult {
  std::vector<Rule> rules;            // deduplicated ORN rules, emission order
  std::size_t discarded = 0;          // alpha-equivalent duplicates dropped
  std::vector<std::size_t> measures;  // measure before each step, then the final one
  std::size_t steps = 0;
  std::size_t peakStorePopulation = 0;
  std::vector<AgentSymbol> auxiliaryAgents;
  std::vector<Diagnostic> warnings;
};

/// Translates a rule list to ORN rules. Throws inet::Error (SUBNET, SEQUENTIAL,
/// DUPLICATE or CONFLICT) when the rules are not well-formed or two surviving
/// rules share a left-hand side with different right-hand sides. Throws
/// std::logic_error if the termination measure ever fails to decrease.
TranslationResult translateProgram(const std::vector<Rule>& rules);

}  // namespace inet
