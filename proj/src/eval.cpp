#include "inet/eval.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

namespace inet {

// ---- runtime net ------------------------------------------------------------

std::uint32_t RuntimeNet::addNode(const std::string& symbol, std::size_t arity) {
  std::uint32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  RuntimeNode& n = nodes_[id];
  n.symbol = symbol;
  n.ports.assign(arity + 1, PortRef{});
  n.alive = true;
  ++n.generation;
  ++live_;
  return id;
}

void RuntimeNet::removeNode(std::uint32_t id) {
  RuntimeNode& n = nodes_[id];
  n.alive = false;
  n.ports.clear();
  free_.push_back(id);
  --live_;
}

void RuntimeNet::connect(PortRef a, PortRef b) {
  auto set = [this](PortRef at, PortRef to) {
    if (at.isInterface())
      interfaceLinks_[at.slot] = to;
    else
      nodes_[at.node].ports[at.slot] = to;
  };
  set(a, b);
  set(b, a);
  if (a.isPrincipal() && b.isPrincipal())
    newActive_.push_back({a.node, b.node, nodes_[a.node].generation, nodes_[b.node].generation});
}

PortRef RuntimeNet::peer(PortRef p) const {
  if (p.isInterface()) return interfaceLinks_[p.slot];
  return nodes_[p.node].ports[p.slot];
}

std::uint32_t RuntimeNet::addInterface(const std::string& name) {
  interfaceNames_.push_back(name);
  interfaceLinks_.push_back(PortRef{});
  return static_cast<std::uint32_t>(interfaceNames_.size() - 1);
}

std::optional<std::uint32_t> RuntimeNet::interfaceIndex(const std::string& name) const {
  for (std::size_t i = 0; i < interfaceNames_.size(); ++i)
    if (interfaceNames_[i] == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

bool RuntimeNet::stillActive(const ActivePair& p) const {
  if (!alive(p.a) || !alive(p.b)) return false;
  if (nodes_[p.a].generation != p.genA || nodes_[p.b].generation != p.genB) return false;
  return nodes_[p.a].ports[0] == PortRef{p.b, 0};
}

std::vector<ActivePair> RuntimeNet::activePairs() const {
  std::vector<ActivePair> out;
  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    if (!nodes_[id].alive) continue;
    PortRef q = nodes_[id].ports[0];
    if (q.isPrincipal() && id < q.node) out.push_back({id, q.node, nodes_[id].generation, nodes_[q.node].generation});
  }
  return out;
}

std::vector<ActivePair> RuntimeNet::takeNewActivePairs() {
  std::vector<ActivePair> out;
  out.swap(newActive_);
  return out;
}

std::vector<std::string> RuntimeNet::validate() const {
  std::vector<std::string> problems;
  auto describe = [this](PortRef p) {
    if (p.isInterface()) return "interface " + interfaceNames_[p.slot];
    if (p.isNone()) return std::string("nothing");
    return "node " + std::to_string(p.node) + " port " + std::to_string(p.slot);
  };
  auto check = [&](PortRef at, PortRef to) {
    if (to.isNone()) {
      problems.push_back(describe(at) + " is unconnected");
      return;
    }
    if (!to.isInterface() && (!alive(to.node) || to.slot >= nodes_[to.node].ports.size())) {
      problems.push_back(describe(at) + " points to a dead port");
      return;
    }
    if (peer(to) != at) problems.push_back(describe(at) + " -> " + describe(to) + " is not symmetric");
  };
  for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
    if (!nodes_[id].alive) continue;
    for (std::uint32_t s = 0; s < nodes_[id].ports.size(); ++s) check({id, s}, nodes_[id].ports[s]);
  }
  for (std::uint32_t i = 0; i < interfaceLinks_.size(); ++i) check({PortRef::kInterface, i}, interfaceLinks_[i]);
  return problems;
}

// ---- wiring -----------------------------------------------------------------

namespace {

// Graph of terminals (real ports) and points (variables). Every point has
// degree two; resolving joins the two terminals at the ends of each chain.
class Wiring {
 public:
  std::uint32_t terminal(PortRef p) {
    vertices_.push_back({p, true, {}});
    return static_cast<std::uint32_t>(vertices_.size() - 1);
  }
  std::uint32_t point() {
    vertices_.push_back({{}, false, {}});
    return static_cast<std::uint32_t>(vertices_.size() - 1);
  }
  void link(std::uint32_t x, std::uint32_t y) {
    auto e = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({x, y});
    vertices_[x].edges.push_back(e);
    vertices_[y].edges.push_back(e);
  }

  void resolve(RuntimeNet& net) {
    std::vector<char> used(edges_.size(), 0);
    for (std::uint32_t t = 0; t < vertices_.size(); ++t) {
      if (!vertices_[t].isTerminal || vertices_[t].edges.empty()) continue;
      std::uint32_t e = vertices_[t].edges.front();
      if (used[e]) continue;
      std::uint32_t cur = t;
      for (;;) {
        used[e] = 1;
        std::uint32_t next = edges_[e].first == cur ? edges_[e].second : edges_[e].first;
        if (vertices_[next].isTerminal) {
          net.connect(vertices_[t].port, vertices_[next].port);
          break;
        }
        const auto& es = vertices_[next].edges;
        e = es[0] == e ? es[1] : es[0];
        cur = next;
      }
    }
  }

 private:
  struct Vertex {
    PortRef port;
    bool isTerminal = false;
    std::vector<std::uint32_t> edges;
  };
  std::vector<Vertex> vertices_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
};

// Adds the agents of `t` to the net and returns the wiring vertex standing
// for the term: its principal port, or the variable's vertex.
std::uint32_t endpoint(const Term& t, RuntimeNet& net, Wiring& w, const std::map<std::string, std::uint32_t>& vars) {
  if (t.isVariable()) return vars.at(t.name());
  std::uint32_t n = net.addNode(t.name(), t.arity());
  for (std::uint32_t i = 0; i < t.arity(); ++i)
    w.link(w.terminal({n, i + 1}), endpoint(t.args()[i], net, w, vars));
  return w.terminal({n, 0});
}

void wireEquations(const Net& net, RuntimeNet& rt, Wiring& w, const std::map<std::string, std::uint32_t>& vars) {
  for (const auto& eq : net.equations) {
    std::uint32_t l = endpoint(eq.left, rt, w, vars);
    std::uint32_t r = endpoint(eq.right, rt, w, vars);
    w.link(l, r);
  }
}

}  // namespace

RuntimeNet instantiate(const Net& net) {
  RuntimeNet rt;
  Wiring w;
  std::map<std::string, std::uint32_t> vars;
  for (const auto& [name, count] : variableOccurrences(net)) {
    if (count > 2) throw std::invalid_argument("variable " + name + " occurs " + std::to_string(count) + " times");
    vars[name] = count == 1 ? w.terminal({PortRef::kInterface, rt.addInterface(name)}) : w.point();
  }
  wireEquations(net, rt, w, vars);
  w.resolve(rt);
  return rt;
}

// ---- matching and rule application ------------------------------------------

namespace {

bool matchTerm(const RuntimeNet& net, const Term& t, std::uint32_t id, Match& m) {
  const RuntimeNode& n = net.node(id);
  if (n.symbol != t.name() || n.arity() != t.arity()) return false;
  if (std::find(m.nodes.begin(), m.nodes.end(), id) != m.nodes.end()) return false;
  m.nodes.push_back(id);
  for (std::uint32_t i = 0; i < t.arity(); ++i) {
    const Term& arg = t.args()[i];
    if (arg.isVariable()) {
      m.bindings.emplace_back(arg.name(), PortRef{id, i + 1});
      continue;
    }
    PortRef q = net.peer({id, i + 1});
    if (!q.isPrincipal() || !matchTerm(net, arg, q.node, m)) return false;
  }
  return true;
}

}  // namespace

std::optional<Match> matchRule(const RuntimeNet& net, std::uint32_t a, std::uint32_t b, const Rule& rule,
                               std::size_t ruleIndex) {
  for (bool flip : {false, true}) {
    Match m;
    m.rule = ruleIndex;
    m.flipped = flip;
    std::uint32_t x = flip ? b : a, y = flip ? a : b;
    if (matchTerm(net, rule.lhs.left, x, m) && matchTerm(net, rule.lhs.right, y, m)) return m;
  }
  return std::nullopt;
}

void applyMatch(RuntimeNet& net, const Match& m, const Rule& rule) {
  Wiring w;
  std::map<std::string, std::uint32_t> vars;
  for (const auto& [name, port] : m.bindings) vars[name] = w.point();

  // Left-side variables bound to two ports of the redex become a direct link.
  for (std::size_t i = 0; i < m.bindings.size(); ++i) {
    PortRef outside = net.peer(m.bindings[i].second);
    auto inner = std::find_if(m.bindings.begin(), m.bindings.end(),
                              [&](const auto& b) { return b.second == outside; });
    if (inner == m.bindings.end())
      w.link(vars[m.bindings[i].first], w.terminal(outside));
    else if (static_cast<std::size_t>(inner - m.bindings.begin()) > i)
      w.link(vars[m.bindings[i].first], vars[inner->first]);
  }

  for (std::uint32_t id : m.nodes) net.removeNode(id);

  for (const auto& [name, count] : variableOccurrences(rule.rhs))
    if (!vars.count(name)) vars[name] = w.point();
  wireEquations(rule.rhs, net, w, vars);
  w.resolve(net);
}

void applyRule(RuntimeNet& net, std::uint32_t a, std::uint32_t b, const Rule& rule) {
  auto m = matchRule(net, a, b, rule);
  if (!m) throw MatchFailure("rule " + toString(rule.lhs) + " does not match the pair");
  applyMatch(net, *m, rule);
}

// ---- reduction --------------------------------------------------------------

std::vector<std::string> Trace::lines() const {
  std::vector<std::string> out;
  for (const auto& s : steps)
    out.push_back("step " + std::to_string(s.index) + ": rule" + std::to_string(s.rule + 1) + " on " + s.left +
                  " >< " + s.right);
  if (outcome == Outcome::StepLimit) {
    out.push_back("step limit exceeded");
    return out;
  }
  out.push_back("normal form: " + finalNet);
  if (blocked) out.push_back("blocked pairs: " + std::to_string(blocked));
  return out;
}

Trace reduce(RuntimeNet& net, const std::vector<Rule>& rules, const ReduceOptions& options) {
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (options.mode == Mode::Orn && rules[i].lhs.isInp())
      throw std::invalid_argument("nested pattern " + toString(rules[i].lhs) + " in ordinary reduction mode");
    index[std::minmax(rules[i].lhs.left.name(), rules[i].lhs.right.name())].push_back(i);
  }

  std::deque<ActivePair> work;
  for (const auto& p : net.activePairs()) work.push_back(p);
  net.takeNewActivePairs();
  std::vector<ActivePair> waiting, blocked;
  std::mt19937_64 rng(options.strategy.seed);

  auto take = [&] {
    ActivePair p;
    switch (options.strategy.kind) {
      case Strategy::Kind::Fifo:
        p = work.front();
        work.pop_front();
        break;
      case Strategy::Kind::Lifo:
        p = work.back();
        work.pop_back();
        break;
      case Strategy::Kind::Random: {
        std::uniform_int_distribution<std::size_t> pick(0, work.size() - 1);
        std::swap(work[pick(rng)], work.back());
        p = work.back();
        work.pop_back();
        break;
      }
    }
    return p;
  };

  Trace trace;
  while (!work.empty()) {
    ActivePair p = take();
    if (!net.stillActive(p)) continue;
    const auto& a = net.node(p.a);
    const auto& b = net.node(p.b);
    auto it = index.find(std::minmax(a.symbol, b.symbol));
    if (it == index.end()) {
      blocked.push_back(p);
      continue;
    }

    std::optional<Match> found;
    for (std::size_t r : it->second) {
      auto m = matchRule(net, p.a, p.b, rules[r], r);
      if (!m) continue;
      if (found)
        throw std::runtime_error("rules " + std::to_string(found->rule + 1) + " and " + std::to_string(r + 1) +
                                 " both match " + a.symbol + " >< " + b.symbol);
      found = std::move(m);
    }
    if (!found) {
      waiting.push_back(p);
      continue;
    }
    if (trace.stepCount == options.maxSteps) {
      trace.outcome = Outcome::StepLimit;
      work.push_back(p);
      break;
    }

    const Rule& rule = rules[found->rule];
    ++trace.stepCount;
    if (options.recordSteps)
      trace.steps.push_back({trace.stepCount, found->rule, rule.lhs.left.name(), rule.lhs.right.name()});
    applyMatch(net, *found, rule);
    if (options.validateEachStep) {
      auto problems = net.validate();
      if (!problems.empty()) throw std::logic_error("port discipline violated: " + problems.front());
    }
    for (const auto& q : net.takeNewActivePairs()) work.push_back(q);
    for (const auto& q : waiting) work.push_back(q);
    waiting.clear();
  }

  for (const auto* list : {&waiting, &blocked})
    for (const auto& q : *list) trace.blocked += net.stillActive(q);
  trace.finalNet = readbackText(net);
  return trace;
}

// ---- readback ---------------------------------------------------------------

namespace {

struct Root {
  enum class Kind { Interface, Pair, Cycle } kind;
  std::uint32_t node = 0;
  std::uint32_t other = 0;  // partner node or interface index
};

class Reader {
 public:
  Reader(const RuntimeNet& net, std::vector<char>& visited, std::vector<char>& ifaceDone, NameSupply names)
      : net_(net), visited_(visited), ifaceDone_(ifaceDone), names_(std::move(names)) {}

  std::vector<Equation> out;

  Root findRoot(std::uint32_t n) const {
    std::unordered_set<std::uint32_t> seen{n};
    std::uint32_t cur = n;
    for (;;) {
      PortRef q = net_.peer({cur, 0});
      if (q.isInterface()) return {Root::Kind::Interface, cur, q.slot};
      if (q.isPrincipal()) return {Root::Kind::Pair, cur, q.node};
      if (!seen.insert(q.node).second) return {Root::Kind::Cycle, cur, 0};
      cur = q.node;
    }
  }

  void emitFrom(std::uint32_t n) {
    pending_.push_back(n);
    while (!pending_.empty()) {
      std::uint32_t next = pending_.front();
      pending_.pop_front();
      if (!visited_[next]) emit(findRoot(next));
    }
  }

  void emitInterfaceWire(std::uint32_t i, std::uint32_t j) {
    ifaceDone_[i] = ifaceDone_[j] = 1;
    out.push_back({Term::variable(net_.interfaceNames()[i]), Term::variable(net_.interfaceNames()[j])});
  }

 private:
  void emit(const Root& r) {
    switch (r.kind) {
      case Root::Kind::Interface:
        ifaceDone_[r.other] = 1;
        out.push_back({Term::variable(net_.interfaceNames()[r.other]), term(r.node)});
        break;
      case Root::Kind::Pair: {
        Term left = term(r.node);
        out.push_back({std::move(left), term(r.other)});
        break;
      }
      case Root::Kind::Cycle: {
        std::string w = names_.next();
        PortRef holder = net_.peer({r.node, 0});
        wires_[{holder.node, holder.slot}] = w;
        out.push_back({Term::variable(w), term(r.node)});
        break;
      }
    }
  }

  Term term(std::uint32_t id) {
    visited_[id] = 1;
    const RuntimeNode& n = net_.node(id);
    std::vector<Term> args;
    for (std::uint32_t i = 1; i < n.ports.size(); ++i) args.push_back(argument({id, i}));
    return Term::agent(n.symbol, std::move(args));
  }

  Term argument(PortRef at) {
    if (auto it = wires_.find({at.node, at.slot}); it != wires_.end()) {
      Term v = Term::variable(it->second);
      wires_.erase(it);
      return v;
    }
    PortRef q = net_.peer(at);
    if (q.isInterface()) {
      ifaceDone_[q.slot] = 1;
      return Term::variable(net_.interfaceNames()[q.slot]);
    }
    if (q.isPrincipal()) return term(q.node);
    std::string w = names_.next();
    wires_[{q.node, q.slot}] = w;
    if (!visited_[q.node]) pending_.push_back(q.node);
    return Term::variable(w);
  }

  const RuntimeNet& net_;
  std::vector<char>& visited_;
  std::vector<char>& ifaceDone_;
  NameSupply names_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::string> wires_;
  std::deque<std::uint32_t> pending_;
};

std::vector<std::uint32_t> component(const RuntimeNet& net, std::uint32_t start, std::vector<char>& claimed) {
  std::vector<std::uint32_t> out{start};
  claimed[start] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const PortRef& q : net.node(out[k]).ports)
      if (!q.isInterface() && !q.isNone() && !claimed[q.node]) {
        claimed[q.node] = 1;
        out.push_back(q.node);
      }
  return out;
}

constexpr std::size_t kCanonicalSearchLimit = 64;

}  // namespace

Net readback(const RuntimeNet& net) {
  const auto& names = net.interfaceNames();
  std::set<std::string> avoid(names.begin(), names.end());
  std::vector<char> visited(net.capacity(), 0), ifaceDone(names.size(), 0);
  Reader reader(net, visited, ifaceDone, NameSupply(avoid));

  std::vector<std::uint32_t> order(names.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return names[x] < names[y]; });

  for (std::uint32_t i : order) {
    if (ifaceDone[i]) continue;
    PortRef q = net.peer({PortRef::kInterface, i});
    if (q.isNone()) continue;
    if (q.isInterface()) {
      reader.emitInterfaceWire(i, q.slot);
      continue;
    }
    if (!visited[q.node]) reader.emitFrom(q.node);
    ifaceDone[i] = 1;
  }

  // Closed components: render from every start, keep the least text.
  std::vector<char> claimed(visited);
  std::vector<std::pair<std::string, std::uint32_t>> closed;
  for (std::uint32_t id = 0; id < net.capacity(); ++id) {
    if (!net.alive(id) || claimed[id]) continue;
    auto members = component(net, id, claimed);
    std::sort(members.begin(), members.end());
    std::vector<std::uint32_t> starts(members.begin(),
                                      members.size() > kCanonicalSearchLimit ? members.begin() + 1 : members.end());
    std::optional<std::pair<std::string, std::uint32_t>> best;
    for (std::uint32_t s : starts) {
      std::vector<char> ifaceScratch(ifaceDone);
      Reader scratch(net, visited, ifaceScratch, NameSupply(avoid));
      scratch.emitFrom(s);
      std::string text = toString(Net{scratch.out});
      for (std::uint32_t n : members) visited[n] = 0;
      if (!best || text < best->first) best = {std::move(text), s};
    }
    closed.push_back(*best);
  }
  std::sort(closed.begin(), closed.end());
  for (const auto& [text, start] : closed) reader.emitFrom(start);

  return Net{std::move(reader.out)};
}

std::string readbackText(const RuntimeNet& net) { return toString(readback(net)); }

bool equivalentNets(const Net& a, const Net& b) {
  return readbackText(instantiate(a)) == readbackText(instantiate(b));
}

namespace {

Term renameTerm(const Term& t, const std::map<std::string, std::string>& names) {
  if (t.isVariable()) {
    auto it = names.find(t.name());
    return Term::variable(it != names.end() ? it->second : "q" + t.name());
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(renameTerm(a, names));
  return Term::agent(t.name(), std::move(args));
}

// Left side with its variables renamed p0, p1, ... and the right side's
// canonical readback under the same renaming.
std::pair<std::string, std::string> ruleShape(const RulePattern& lhs, const Net& rhs) {
  std::map<std::string, std::string> names;
  for (const auto& v : patternVariables(lhs)) names.emplace(v, "p" + std::to_string(names.size()));
  RulePattern l{renameTerm(lhs.left, names), renameTerm(lhs.right, names)};
  Net r;
  for (const auto& eq : rhs.equations) r.equations.push_back({renameTerm(eq.left, names), renameTerm(eq.right, names)});
  return {toString(l), readbackText(instantiate(r))};
}

}  // namespace

bool rulesEquivalent(const Rule& a, const Rule& b) {
  auto shape = ruleShape(a.lhs, a.rhs);
  return shape == ruleShape(b.lhs, b.rhs) || shape == ruleShape(b.lhs.flipped(), b.rhs);
}

}  // namespace inet
