#include "inet/check.hpp"

#include <algorithm>

namespace inet {

namespace {

void posSymTerm(const Position& at, const Term& t, PosSymSet& out) {
  if (t.isVariable()) return;
  if (!t.hasNestedAgent()) {
    out.emplace(at, t.name());
    return;
  }
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    Position child = at;
    child.path.push_back(i + 1);
    posSymTerm(child, t.args()[i], out);
  }
}

void allNested(const Position& at, const Term& t, PosSymSet& out) {
  if (t.isVariable()) return;
  out.emplace(at, t.name());
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    Position child = at;
    child.path.push_back(i + 1);
    allNested(child, t.args()[i], out);
  }
}

template <typename F>
PosSymSet overArguments(const RulePattern& lhs, F&& f) {
  PosSymSet out;
  const Term* roots[2] = {&lhs.left, &lhs.right};
  for (std::uint32_t side = 0; side < 2; ++side)
    for (std::uint32_t i = 0; i < roots[side]->arity(); ++i)
      f(Position{{side + 1, i + 1}}, roots[side]->args()[i], out);
  return out;
}

bool embeds(const Term& p, const Term& q) {
  if (p.isVariable()) return true;
  if (!q.isAgent() || p.name() != q.name() || p.arity() != q.arity()) return false;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (!embeds(p.args()[i], q.args()[i])) return false;
  return true;
}

std::set<Position> keys(const PosSymSet& s) {
  std::set<Position> out;
  for (const auto& [k, v] : s) out.insert(k);
  return out;
}

bool compatibleOn(const PosSymSet& ps, const PosSymSet& qs) {
  auto p = keys(ps);
  auto q = keys(qs);
  if (std::includes(p.begin(), p.end(), q.begin(), q.end()) ||
      std::includes(q.begin(), q.end(), p.begin(), p.end()))
    return true;
  for (const auto& at : p)
    if (q.count(at) && ps.at(at) != qs.at(at)) return true;
  // Every common position carries the same agent: the two patterns extend a
  // common nested pair at different ports.
  return false;
}

template <typename PosFn>
bool compatibleWith(const RulePattern& p, const RulePattern& q, PosFn&& positions) {
  auto aligned = alignTo(q, p);
  if (aligned.empty()) return true;
  auto ps = positions(p);
  for (const auto& a : aligned)
    if (compatibleOn(ps, positions(a))) return true;
  return false;
}

Diagnostic violation(const char* c, std::string message, const Rule& rule, const StoredPattern& other) {
  return Diagnostic{Severity::Error, c, std::move(message), rule.span, other.span};
}

}  // namespace

PosSymSet posSym(const RulePattern& lhs) { return overArguments(lhs, posSymTerm); }

std::set<Position> pos(const RulePattern& lhs) { return keys(posSym(lhs)); }

PosSymSet nestedAgentPositions(const RulePattern& lhs) { return overArguments(lhs, allNested); }

std::vector<RulePattern> alignTo(const RulePattern& q, const RulePattern& p) {
  std::vector<RulePattern> out;
  if (q.left.name() == p.left.name() && q.right.name() == p.right.name()) out.push_back(q);
  if (q.left.name() == p.right.name() && q.right.name() == p.left.name() &&
      (out.empty() || q.left.name() == q.right.name()))
    out.push_back(q.flipped());
  return out;
}

bool sameActivePair(const RulePattern& p, const RulePattern& q) { return !alignTo(q, p).empty(); }

bool isSubnet(const RulePattern& p, const RulePattern& q) {
  for (const auto& a : alignTo(q, p))
    if (embeds(p.left, a.left) && embeds(p.right, a.right)) return true;
  return false;
}

bool sequentialCompatible(const RulePattern& p, const RulePattern& q) {
  return compatibleWith(p, q, [](const RulePattern& r) { return posSym(r); });
}

bool sequentialCompatibleFull(const RulePattern& p, const RulePattern& q) {
  return compatibleWith(p, q, [](const RulePattern& r) { return nestedAgentPositions(r); });
}

std::vector<Diagnostic> WellFormednessChecker::admit(const Rule& rule) {
  std::vector<Diagnostic> out;
  const RulePattern& lhs = rule.lhs;
  const bool inp = lhs.isInp();

  for (const auto& q : stores_.all) {
    if (!sameActivePair(lhs, q.pattern)) continue;
    if (!inp && q.pattern.isOrn()) {
      out.push_back(violation(code::Duplicate,
                              "duplicate rule for active pair " + lhs.left.name() + " >< " + lhs.right.name() +
                                  " (also defined by " + q.label + ")",
                              rule, q));
      continue;
    }
    // An ORN left side can only sit inside an INP one; INP rules are checked both ways.
    bool mine = isSubnet(lhs, q.pattern);
    bool theirs = inp && isSubnet(q.pattern, lhs);
    if (mine || theirs)
      out.push_back(violation(code::Subnet,
                              "left-hand side " + toString(mine ? lhs : q.pattern) + " is a subnet of " +
                                  toString(mine ? q.pattern : lhs) + " (" + q.label + ")",
                              rule, q));
  }

  if (inp && !hasErrors(out)) {
    for (const auto& q : stores_.nested) {
      if (!sameActivePair(lhs, q.pattern)) continue;
      bool literal = sequentialCompatible(lhs, q.pattern);
      bool full = sequentialCompatibleFull(lhs, q.pattern);
      if (!literal)
        out.push_back(violation(code::Sequential,
                                "nested patterns " + toString(lhs) + " and " + toString(q.pattern) + " (" +
                                    q.label + ") cannot belong to the same sequential set",
                                rule, q));
      if (literal != full)
        out.push_back(Diagnostic{
            Severity::Warning, code::DroppedIntermediate,
            std::string("sequential-set verdict for ") + toString(lhs) + " and " + toString(q.pattern) +
                " depends on intermediate nested agents that position sets do not record (" +
                (full ? "compatible" : "incompatible") + " when they are recorded)",
            rule.span, q.span});
    }
  }

  if (!hasErrors(out)) {
    stores_.all.push_back({lhs, rule.span, rule.label});
    if (inp) stores_.nested.push_back({lhs, rule.span, rule.label});
  }
  return out;
}

const Diagnostic* CheckReport::firstError() const {
  for (const auto& d : diagnostics)
    if (d.isError()) return &d;
  return nullptr;
}

CheckReport verifyWellFormed(const std::vector<Rule>& rules) {
  WellFormednessChecker checker;
  CheckReport report;
  for (const auto& r : rules) {
    auto ds = checker.admit(r);
    report.diagnostics.insert(report.diagnostics.end(), ds.begin(), ds.end());
  }
  return report;
}

}  // namespace inet
