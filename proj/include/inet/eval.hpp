#pragma once

// Reduction engine: a port graph with an arena of agent nodes, rule
// application for ordinary rules and (in direct mode) nested patterns,
// strategy-driven reduction to normal form, and canonical readback.

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "inet/core.hpp"

namespace inet {

/// One end of a wire. `node == kInterface` means `slot` indexes the interface;
/// otherwise slot 0 is the principal port and 1..arity the auxiliary ports.
struct PortRef {
  static constexpr std::uint32_t kInterface = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kNone = kInterface - 1;

  std::uint32_t node = kNone;
  std::uint32_t slot = 0;

  bool isInterface() const { return node == kInterface; }
  bool isPrincipal() const { return node < kNone && slot == 0; }
  bool isNone() const { return node == kNone; }
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

struct RuntimeNode {
  std::string symbol;
  std::vector<PortRef> ports;  // ports[0] principal
  std::uint32_t generation = 0;
  bool alive = false;

  std::size_t arity() const { return ports.size() - 1; }
};

struct ActivePair {
  std::uint32_t a = 0, b = 0;
  std::uint32_t genA = 0, genB = 0;
};

class RuntimeNet {
 public:
  std::uint32_t addNode(const std::string& symbol, std::size_t arity);
  void removeNode(std::uint32_t id);
  /// Joins two ports; a principal-principal join is recorded as a new active pair.
  void connect(PortRef a, PortRef b);
  PortRef peer(PortRef p) const;

  std::uint32_t addInterface(const std::string& name);
  const std::vector<std::string>& interfaceNames() const { return interfaceNames_; }
  std::optional<std::uint32_t> interfaceIndex(const std::string& name) const;

  const RuntimeNode& node(std::uint32_t id) const { return nodes_[id]; }
  std::size_t capacity() const { return nodes_.size(); }
  std::size_t nodeCount() const { return live_; }
  bool alive(std::uint32_t id) const { return id < nodes_.size() && nodes_[id].alive; }
  bool stillActive(const ActivePair& p) const;

  /// Every principal-principal connection, by a full sweep.
  std::vector<ActivePair> activePairs() const;
  /// Active pairs created by connect() since the last call.
  std::vector<ActivePair> takeNewActivePairs();

  /// Port discipline sweep: every port linked to exactly one other port,
  /// symmetrically. Returns a description of each violation.
  std::vector<std::string> validate() const;

 private:
  std::vector<RuntimeNode> nodes_;
  std::vector<std::uint32_t> free_;
  std::vector<std::string> interfaceNames_;
  std::vector<PortRef> interfaceLinks_;
  std::vector<ActivePair> newActive_;
  std::size_t live_ = 0;
};

/// Builds the graph of a linear net: one node per agent occurrence, variables
/// used twice become wires and variables used once become interface ports.
/// Throws std::invalid_argument if a variable occurs more than twice.
RuntimeNet instantiate(const Net& net);

/// A successful match of a rule left side against an active pair.
struct Match {
  std::size_t rule = 0;
  bool flipped = false;                     // lhs.left matched node b
  std::vector<std::uint32_t> nodes;         // matched agents, roots first
  std::vector<std::pair<std::string, PortRef>> bindings;  // variable -> matched auxiliary port
};

class MatchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matches `rule.lhs` against the pair (a, b), following principal ports for
/// nested agents. Tries both orientations.
std::optional<Match> matchRule(const RuntimeNet& net, std::uint32_t a, std::uint32_t b, const Rule& rule,
                               std::size_t ruleIndex = 0);

/// Replaces the matched agents by a fresh copy of the rule's right side.
void applyMatch(RuntimeNet& net, const Match& m, const Rule& rule);

/// matchRule followed by applyMatch. Throws MatchFailure when the pair does
/// not satisfy the left side.
void applyRule(RuntimeNet& net, std::uint32_t a, std::uint32_t b, const Rule& rule);

enum class Mode { Orn, InpDirect };

struct Strategy {
  enum class Kind { Fifo, Lifo, Random };
  Kind kind = Kind::Fifo;
  std::uint64_t seed = 0;

  static Strategy fifo() { return {Kind::Fifo, 0}; }
  static Strategy lifo() { return {Kind::Lifo, 0}; }
  static Strategy random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

inline constexpr std::size_t kDefaultMaxSteps = 1'000'000;

struct ReduceOptions {
  Mode mode = Mode::Orn;
  Strategy strategy;
  std::size_t maxSteps = kDefaultMaxSteps;
  bool recordSteps = true;
  /// Run the port discipline sweep after every step (throws std::logic_error).
  bool validateEachStep = false;
};

struct TraceStep {
  std::size_t index = 0;  // from 1
  std::size_t rule = 0;   // 0-based index into the rule list
  std::string left, right;
};

enum class Outcome { Normal, StepLimit };

struct Trace {
  std::vector<TraceStep> steps;  // empty unless recordSteps
  std::size_t stepCount = 0;
  Outcome outcome = Outcome::Normal;
  std::size_t blocked = 0;  // active pairs left without an applicable rule
  std::string finalNet;     // canonical readback text

  /// `step <i>: rule<k> on <A> >< <B>` lines, then the closing line(s).
  std::vector<std::string> lines() const;
};

/// Reduces `net` in place. Mode Orn requires ORN rules (std::invalid_argument
/// otherwise). Pairs with no applicable rule are left in the net and counted
/// as blocked. Throws std::runtime_error if two rules match one pair.
Trace reduce(RuntimeNet& net, const std::vector<Rule>& rules, const ReduceOptions& options = {});

/// Canonical textual form: interface names kept, internal wires named a, b,
/// c, ... (skipping interface names) in order of first use. Two graphs are
/// isomorphic (preserving interface names) iff their readbacks are equal.
Net readback(const RuntimeNet& net);
std::string readbackText(const RuntimeNet& net);

/// Alpha equivalence of nets, decided on their graphs.
bool equivalentNets(const Net& a, const Net& b);

/// Rules with alpha-equivalent left sides whose right sides are the same net
/// once the left-side variables are identified. Equation order and the
/// arrangement of the right side into equations do not matter.
bool rulesEquivalent(const Rule& a, const Rule& b);

}  // namespace inet
