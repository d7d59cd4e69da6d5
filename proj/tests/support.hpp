#pragma once

// Test-only helpers: a minimal term reader that does not go through the
// parser module, rule construction shortcuts, and brute-force oracles.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inet/core.hpp"
#include "inet/eval.hpp"
#include "inet/parser.hpp"

namespace testing {

using inet::Net;
using inet::Position;
using inet::Rule;
using inet::RulePattern;
using inet::Term;

// ---- minimal reader ---------------------------------------------------------

class MiniReader {
 public:
  explicit MiniReader(std::string_view s) : s_(s) {}

  Term term() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) throw std::invalid_argument("bad term text: " + std::string(s_));
    std::string name(s_.substr(start, i_ - start));
    if (std::islower(static_cast<unsigned char>(name[0]))) return Term::variable(name);
    std::vector<Term> args;
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      ++i_;
      skip();
      if (s_[i_] != ')') {
        for (;;) {
          args.push_back(term());
          skip();
          if (s_[i_] == ',') {
            ++i_;
            continue;
          }
          break;
        }
      }
      if (s_[i_] != ')') throw std::invalid_argument("missing ')' in " + std::string(s_));
      ++i_;
    }
    return Term::agent(name, std::move(args));
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }

  bool done() {
    skip();
    return i_ == s_.size();
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string_view s_;
  std::size_t i_ = 0;
};

inline Term term(std::string_view s) { return MiniReader(s).term(); }

inline RulePattern pat(std::string_view s) {
  MiniReader r(s);
  Term l = r.term();
  if (!r.eat("><")) throw std::invalid_argument("missing >< in " + std::string(s));
  Term rr = r.term();
  return {l, rr};
}

/// Unflattened equation list.
inline Net net(std::string_view s) {
  Net n;
  MiniReader r(s);
  if (r.done()) return n;
  do {
    Term a = r.term();
    if (!r.eat("~")) throw std::invalid_argument("missing ~ in " + std::string(s));
    n.equations.push_back({a, r.term()});
  } while (r.eat(","));
  return n;
}

/// A rule with an explicit right side (no checks; label "rule k").
inline Rule rule(std::string_view lhs, std::string_view rhs, int k = 1) {
  return Rule{pat(lhs), net(rhs), {}, "rule " + std::to_string(k)};
}

/// Pattern-only rule: the right side erases every left-side variable with Eps.
inline Rule patternRule(std::string_view lhs, int k = 1) {
  Rule r{pat(lhs), {}, {}, "rule " + std::to_string(k)};
  for (const auto& v : inet::patternVariables(r.lhs))
    r.rhs.equations.push_back({Term::agent("Eps"), Term::variable(v)});
  return r;
}

inline std::vector<Rule> rulesOf(std::string_view program) { return inet::parseProgram(program).rules; }

// ---- nested agents of a pattern ---------------------------------------------

struct Agent {
  Position at;
  std::string symbol;
};

inline void agentsBelow(const Term& t, Position at, std::vector<Agent>& out) {
  if (t.isVariable()) return;
  out.push_back({at, t.name()});
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    Position c = at;
    c.path.push_back(i + 1);
    agentsBelow(t.args()[i], c, out);
  }
}

/// Every agent strictly below the two roots.
inline std::vector<Agent> nestedAgents(const RulePattern& p) {
  std::vector<Agent> out;
  for (std::uint32_t i = 0; i < p.left.arity(); ++i) agentsBelow(p.left.args()[i], {{1, i + 1}}, out);
  for (std::uint32_t i = 0; i < p.right.arity(); ++i) agentsBelow(p.right.args()[i], {{2, i + 1}}, out);
  return out;
}

inline std::vector<RulePattern> orientations(const RulePattern& q, const RulePattern& p) {
  std::vector<RulePattern> out;
  if (q.left.name() == p.left.name() && q.right.name() == p.right.name()) out.push_back(q);
  if (q.left.name() == p.right.name() && q.right.name() == p.left.name()) out.push_back(q.flipped());
  return out;
}

// ---- subnet oracle ----------------------------------------------------------

/// Every term obtained from `t` by cutting any set of agent subterms (below the
/// root) back to a variable. Variables are all named "_".
inline std::vector<Term> cuts(const Term& t) {
  if (t.isVariable()) return {Term::variable("_")};
  std::vector<std::vector<Term>> argChoices;
  for (const auto& a : t.args()) {
    std::vector<Term> c{Term::variable("_")};
    if (a.isAgent())
      for (auto& sub : cuts(a)) c.push_back(std::move(sub));
    argChoices.push_back(std::move(c));
  }
  std::vector<Term> out;
  std::vector<Term> args(t.arity());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == args.size()) {
      out.push_back(Term::agent(t.name(), args));
      return;
    }
    for (const auto& c : argChoices[i]) {
      args[i] = c;
      go(i + 1);
    }
  };
  go(0);
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return inet::toString(a) < inet::toString(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Term anonymous(const Term& t) {
  if (t.isVariable()) return Term::variable("_");
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(anonymous(a));
  return Term::agent(t.name(), std::move(args));
}

/// p is a subnet of q iff cutting q back somewhere yields p (names ignored).
inline bool subnetByCuts(const RulePattern& p, const RulePattern& q) {
  Term pl = anonymous(p.left), pr = anonymous(p.right);
  for (const auto& a : orientations(q, p))
    for (const auto& l : cuts(a.left))
      if (l == pl)
        for (const auto& r : cuts(a.right))
          if (r == pr) return true;
  return false;
}

// ---- sequentiality oracle ---------------------------------------------------

/// Orders in which the nested agents of `p` can be attached one at a time
/// (an agent only after the agent it hangs from).
inline std::vector<std::vector<Agent>> linearizations(const RulePattern& p) {
  auto agents = nestedAgents(p);
  std::vector<std::vector<Agent>> out;
  std::vector<Agent> cur;
  std::vector<char> used(agents.size(), 0);
  std::function<void()> go = [&] {
    if (cur.size() == agents.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (used[i]) continue;
      const Position& at = agents[i].at;
      bool ready = at.depth() == 2;
      for (const auto& c : cur)
        if (c.at.depth() + 1 == at.depth() && c.at.isPrefixOf(at)) ready = true;
      if (!ready) continue;
      used[i] = 1;
      cur.push_back(agents[i]);
      go();
      cur.pop_back();
      used[i] = 0;
    }
  };
  go();
  return out;
}

/// Two construction sequences can sit in one sequential set iff they agree up
/// to a point where both extend the same port, or one is a prefix of the other.
inline bool consistent(const std::vector<Agent>& a, const std::vector<Agent>& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a[k].at == b[k].at && a[k].symbol == b[k].symbol) continue;
    return a[k].at == b[k].at;
  }
  return true;
}

/// Some sequential set contains both patterns (searched over construction orders).
inline bool sequentialByConstruction(const RulePattern& p, const RulePattern& q) {
  auto aligned = orientations(q, p);
  if (aligned.empty()) return true;
  auto lp = linearizations(p);
  for (const auto& a : aligned)
    for (const auto& x : lp)
      for (const auto& y : linearizations(a))
        if (consistent(x, y)) return true;
  return false;
}

/// Some sequential set contains every pattern: one construction order per
/// pattern, pairwise consistent.
inline bool sequentialSetByConstruction(const std::vector<RulePattern>& ps) {
  std::vector<std::vector<std::vector<Agent>>> choices;
  for (const auto& p : ps) choices.push_back(linearizations(p));
  std::vector<const std::vector<Agent>*> pick(ps.size());
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == ps.size()) return true;
    for (const auto& c : choices[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (ps[j].left.name() == ps[i].left.name() && ps[j].right.name() == ps[i].right.name())
          ok = consistent(*pick[j], c);
      if (!ok) continue;
      pick[i] = &c;
      if (go(i + 1)) return true;
    }
    return false;
  };
  return go(0);
}

// ---- exhaustive reduction ---------------------------------------------------

struct Outcomes {
  std::set<std::pair<std::string, std::size_t>> normalForms;  // (readback, steps)
  bool truncated = false;
};

/// Explores every reduction order (up to `budget` distinct states). States are
/// identified by their canonical readback and the number of steps taken.
inline Outcomes allReductions(const inet::RuntimeNet& start, const std::vector<Rule>& rules, std::size_t budget) {
  Outcomes out;
  std::set<std::pair<std::string, std::size_t>> seen;
  std::function<void(const inet::RuntimeNet&, std::size_t)> go = [&](const inet::RuntimeNet& n, std::size_t steps) {
    if (out.truncated) return;
    if (!seen.insert({inet::readbackText(n), steps}).second) return;
    if (seen.size() > budget) {
      out.truncated = true;
      return;
    }
    bool moved = false;
    for (const auto& p : n.activePairs()) {
      for (std::size_t r = 0; r < rules.size(); ++r) {
        auto m = inet::matchRule(n, p.a, p.b, rules[r], r);
        if (!m) continue;
        inet::RuntimeNet next = n;
        inet::applyMatch(next, *m, rules[r]);
        moved = true;
        go(next, steps + 1);
        break;
      }
    }
    if (!moved) out.normalForms.insert({inet::readbackText(n), steps});
  };
  go(start, 0);
  return out;
}

}  // namespace testing
