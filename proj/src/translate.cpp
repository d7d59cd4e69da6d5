#include "inet/translate.hpp"

#include <algorithm>
#include <stdexcept>

namespace inet {

namespace {

std::pair<std::string, std::string> pairKey(const RulePattern& p) {
  return std::minmax(p.left.name(), p.right.name());
}

std::size_t totalArity(const RulePattern& p) { return p.left.arity() + p.right.arity(); }

const Term& slot(const RulePattern& p, const Position& at) { return *p.at(at); }

std::vector<Position> argumentSlots(const RulePattern& p) {
  std::vector<Position> out;
  for (std::uint32_t i = 0; i < p.left.arity(); ++i) out.push_back({{1, i + 1}});
  for (std::uint32_t i = 0; i < p.right.arity(); ++i) out.push_back({{2, i + 1}});
  return out;
}

void collectNames(const Term& t, std::set<std::string>& vars, std::set<std::string>& agents) {
  if (t.isVariable()) {
    vars.insert(t.name());
    return;
  }
  agents.insert(t.name());
  for (const auto& a : t.args()) collectNames(a, vars, agents);
}

RulePattern oriented(const RulePattern& p, const TranslationState& st) {
  auto it = st.orientation.find(pairKey(p));
  if (it != st.orientation.end() && p.left.name() != it->second) return p.flipped();
  return p;
}

// The pattern built from `p` by keeping its roots and filling argument slot `s`
// with `fill(s)`.
template <typename F>
RulePattern rebuild(const RulePattern& p, F&& fill) {
  std::vector<Term> l, r;
  for (const auto& s : argumentSlots(p)) (s.path[0] == 1 ? l : r).push_back(fill(s));
  return {Term::agent(p.left.name(), std::move(l)), Term::agent(p.right.name(), std::move(r))};
}

std::string auxiliaryName(const RulePattern& p, TranslationState& st) {
  std::string base = p.left.name() + "_" + p.right.name();
  if (!st.agentNames.count(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!st.agentNames.count(candidate)) return candidate;
  }
}

// Residual of `member` once slot `at` is resolved: PX(remaining args) >< A.
RulePattern residual(const RulePattern& member, const Position& at, const std::string& aux) {
  std::vector<Term> args;
  for (const auto& s : argumentSlots(member))
    if (s != at) args.push_back(slot(member, s));
  return {Term::agent(aux, std::move(args)), slot(member, at)};
}

const AgentSymbol& auxiliaryAgent(const RulePattern& p, const Position& at, TranslationState& st) {
  auto key = std::make_tuple(p.left.name(), p.right.name(), at);
  if (auto it = st.auxNames.find(key); it != st.auxNames.end()) return it->second;

  AgentSymbol sym{auxiliaryName(p, st), totalArity(p) - 1};
  st.agentNames.insert(sym.name);

  // Register the groups of the auxiliary rules this agent will take part in,
  // so each of them can pick a slot consistent with its siblings.
  auto groupIt = st.groups.find(pairKey(p));
  if (groupIt != st.groups.end()) {
    const auto group = groupIt->second;
    for (const auto& member : group) {
      const Term* t = member.at(at);
      if (!t || !t->isAgent() || choosePosition(member, group) != at) continue;
      RulePattern res = residual(member, at, sym.name);
      st.orientation.emplace(pairKey(res), res.left.name());
      if (res.isInp()) st.groups[pairKey(res)].push_back(res);
    }
  }
  return st.auxNames.emplace(key, sym).first->second;
}

}  // namespace

std::vector<Position> nestedArgumentSlots(const RulePattern& lhs) {
  std::vector<Position> out;
  for (const auto& s : argumentSlots(lhs))
    if (slot(lhs, s).isAgent()) out.push_back(s);
  return out;
}

Position firstNestedPosition(const RulePattern& lhs) {
  auto slots = nestedArgumentSlots(lhs);
  if (slots.empty()) throw std::invalid_argument("pattern " + toString(lhs) + " has no nested agent");
  return slots.front();
}

Position choosePosition(const RulePattern& lhs, const std::vector<RulePattern>& group) {
  auto candidates = nestedArgumentSlots(lhs);
  if (candidates.empty()) throw std::invalid_argument("pattern " + toString(lhs) + " has no nested agent");
  std::erase_if(candidates, [&](const Position& s) {
    for (const auto& member : group) {
      for (const auto& aligned : alignTo(member, lhs)) {
        const Term* t = aligned.at(s);
        if (aligned.isInp() && (!t || !t->isAgent())) return true;
      }
    }
    return false;
  });
  return candidates.empty() ? firstNestedPosition(lhs) : candidates.front();
}

TranslationState TranslationState::start(const std::vector<Rule>& rules) {
  TranslationState st;
  for (const auto& r : rules) {
    std::set<std::string> vars;
    collectNames(r.lhs.left, vars, st.agentNames);
    collectNames(r.lhs.right, vars, st.agentNames);
    for (const auto& eq : r.rhs.equations) {
      collectNames(eq.left, vars, st.agentNames);
      collectNames(eq.right, vars, st.agentNames);
    }
    st.orientation.emplace(pairKey(r.lhs), r.lhs.left.name());
  }
  for (const auto& r : rules)
    if (r.lhs.isInp()) st.groups[pairKey(r.lhs)].push_back(oriented(r.lhs, st));
  st.pending.assign(rules.begin(), rules.end());
  return st;
}

std::size_t TranslationState::measure() const {
  std::size_t m = pending.size();
  for (const auto& r : pending) m += r.lhs.nestedAgentCount();
  return m;
}

std::vector<Rule> translateStep(Rule rule, TranslationState& st) {
  auto diags = st.checker.admit(rule);
  st.peakStorePopulation = std::max(st.peakStorePopulation, st.checker.stores().population());
  std::vector<Diagnostic> errors;
  for (auto& d : diags) (d.isError() ? errors : st.warnings).push_back(std::move(d));
  if (!errors.empty()) throw Error(std::move(errors));

  if (rule.lhs.isOrn()) {
    st.output.push_back(rule);
    return {rule};
  }

  const RulePattern lhs = oriented(rule.lhs, st);
  const auto& group = st.groups[pairKey(lhs)];
  const Position at = choosePosition(lhs, group);
  const AgentSymbol aux = auxiliaryAgent(lhs, at, st);

  std::set<std::string> used;
  for (const auto& v : patternVariables(lhs)) used.insert(v);
  auto fresh = [&] {
    for (;;) {
      std::string n = "var" + std::to_string(st.freshCounter++);
      if (!used.count(n)) return Term::variable(n);
    }
  };

  // P': every nested agent replaced by a fresh variable.
  std::map<Position, Term> vars;
  for (const auto& s : argumentSlots(lhs)) {
    const Term& t = slot(lhs, s);
    vars.emplace(s, t.isVariable() ? t : fresh());
  }
  RulePattern flat = rebuild(lhs, [&](const Position& s) { return vars.at(s); });

  std::vector<Term> waiting;
  for (const auto& s : argumentSlots(lhs))
    if (s != at) waiting.push_back(vars.at(s));
  Rule emitted{flat, Net{{Equation{Term::agent(aux.name, std::move(waiting)), vars.at(at)}}}, rule.span,
               rule.label};

  Rule next{residual(lhs, at, aux.name), std::move(rule.rhs), rule.span,
            "auxiliary rule " + aux.name + " >< " + slot(lhs, at).name() + " (from " + rule.label + ")"};

  st.output.push_back(emitted);
  st.pending.push_front(std::move(next));
  return {emitted};
}

TranslationResult translateProgram(const std::vector<Rule>& rules) {
  TranslationState st = TranslationState::start(rules);
  TranslationResult result;

  while (!st.pending.empty()) {
    std::size_t before = st.measure();
    result.measures.push_back(before);
    Rule r = std::move(st.pending.front());
    st.pending.pop_front();
    translateStep(std::move(r), st);
    ++result.steps;
    if (st.measure() >= before)
      throw std::logic_error("translation measure did not decrease: " + std::to_string(before) + " -> " +
                             std::to_string(st.measure()));
  }
  result.measures.push_back(st.measure());

  for (auto& r : st.output) {
    bool keep = true;
    for (const auto& kept : result.rules) {
      if (!sameActivePair(kept.lhs, r.lhs)) continue;
      if (alphaEquivalentRules(kept, r)) {
        keep = false;
        ++result.discarded;
        break;
      }
      if (alphaEquivalent(kept.lhs, r.lhs))
        throw Error(Diagnostic{Severity::Error, code::Conflict,
                               "translated rules for " + toString(r.lhs) + " have different right-hand sides (" +
                                   kept.label + " and " + r.label + ")",
                               r.span, kept.span});
    }
    if (keep) result.rules.push_back(std::move(r));
  }

  for (const auto& [key, sym] : st.auxNames) result.auxiliaryAgents.push_back(sym);
  result.peakStorePopulation = st.peakStorePopulation;
  result.warnings = std::move(st.warnings);
  return result;
}

}  // namespace inet
