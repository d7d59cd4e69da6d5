#include "inet/parser.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace inet {

namespace {

// ---- lexer ------------------------------------------------------------------

enum class Tok { Name, Var, Int, String, LParen, RParen, Comma, Tilde, Bowtie, Arrow, Colon, Eof };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

[[noreturn]] void fail(const char* c, std::string message, SourceSpan span) {
  throw Error(Diagnostic{Severity::Error, c, std::move(message), span, std::nullopt});
}

const std::set<std::string> kUnsupportedKeywords = {"import", "module", "include", "if",
                                                     "then",   "else",   "print",   "let"};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipSpace();
      SourceSpan s{line_, col_, line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::Eof, "", s});
        return out;
      }
      char c = src_[pos_];
      auto simple = [&](Tok k, int len) {
        std::string text(src_.substr(pos_, len));
        for (int i = 0; i < len; ++i) advance();
        s.endLine = line_;
        s.endCol = col_ - 1;
        out.push_back({k, std::move(text), s});
      };
      if (c == '(') simple(Tok::LParen, 1);
      else if (c == ')') simple(Tok::RParen, 1);
      else if (c == ',') simple(Tok::Comma, 1);
      else if (c == '~') simple(Tok::Tilde, 1);
      else if (c == ':') simple(Tok::Colon, 1);
      else if (c == '>' && peek(1) == '<') simple(Tok::Bowtie, 2);
      else if (c == '=' && peek(1) == '>') simple(Tok::Arrow, 2);
      else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t n = 0;
        while (std::isdigit(static_cast<unsigned char>(peek(n)))) ++n;
        simple(Tok::Int, static_cast<int>(n));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || (c == '_' && isIdent(peek(1)))) {
        std::size_t n = 0;
        while (isIdent(peek(n))) ++n;
        simple(std::isupper(static_cast<unsigned char>(c)) ? Tok::Name : Tok::Var,
               static_cast<int>(n));
      } else if (c == '"') {
        std::size_t n = 1;
        while (pos_ + n < src_.size() && src_[pos_ + n] != '"' && src_[pos_ + n] != '\n') ++n;
        if (pos_ + n < src_.size() && src_[pos_ + n] == '"') ++n;
        simple(Tok::String, static_cast<int>(n));
      } else {
        fail(code::Syntax, std::string("unexpected character '") + c + "'", s);
      }
    }
  }

 private:
  static bool isIdent(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skipSpace() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---- raw syntax (terms with spans) -------------------------------------------

struct RawTerm {
  bool isVar = false;
  std::string name;
  std::vector<RawTerm> args;
  SourceSpan span;
};

struct RawEq {
  RawTerm left, right;
};

struct RawRule {
  RawTerm left, right;
  std::vector<RawEq> lhsEqs;
  bool hasArrow = false;
  std::vector<RawEq> rhs;
  SourceSpan span;
};

struct RawDecl {
  std::string name;
  std::size_t arity;
  SourceSpan span;
};

struct RawNet {
  std::vector<RawEq> eqs;
  SourceSpan span;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  return {a.startLine, a.startCol, b.endLine, b.endCol};
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  void parseTop(std::vector<RawRule>& rules, std::vector<RawDecl>& decls,
                std::vector<RawNet>& nets) {
    while (peek().kind != Tok::Eof) {
      const Token& t = peek();
      if (t.kind == Tok::Var && t.text == "net") {
        Token kw = next();
        RawNet n;
        n.eqs = eqList(true);
        n.span = join(kw.span, prevSpan());
        nets.push_back(std::move(n));
      } else if (t.kind == Tok::Var && t.text == "agent") {
        Token kw = next();
        Token name = expect(Tok::Name, "an agent name after 'agent'");
        expect(Tok::Colon, "':' in agent declaration");
        Token n = expect(Tok::Int, "an arity in agent declaration");
        decls.push_back({name.text, std::stoul(n.text), join(kw.span, n.span)});
      } else if (t.kind == Tok::Var && kUnsupportedKeywords.count(t.text)) {
        fail(code::Unsupported, "'" + t.text + "' is not supported: only rules, 'net' and 'agent' declarations are",
             t.span);
      } else if (t.kind == Tok::Name) {
        rules.push_back(rule());
      } else {
        fail(code::Syntax, "expected a rule, 'net' or 'agent' declaration, found " + describe(t),
             t.span);
      }
    }
  }

  std::vector<RawEq> parseBareNet() {
    auto eqs = eqList(true);
    if (peek().kind != Tok::Eof)
      fail(code::Syntax, "unexpected " + describe(peek()) + " after net", peek().span);
    return eqs;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  SourceSpan prevSpan() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Eof: return "end of input";
      case Tok::Int: return "number '" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }

  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(code::Syntax, "expected " + what + ", found " + describe(peek()), peek().span);
    return next();
  }

  RawTerm term() {
    const Token& t = peek();
    if (t.kind == Tok::Int)
      fail(code::Unsupported,
           "agent attribute values are not supported; use a zero-arity agent such as One instead of '" +
               t.text + "'",
           t.span);
    if (t.kind == Tok::String)
      fail(code::Unsupported, "string values are not supported", t.span);
    if (t.kind == Tok::Var) {
      Token v = next();
      return RawTerm{true, v.text, {}, v.span};
    }
    Token name = expect(Tok::Name, "a variable or agent");
    RawTerm out{false, name.text, {}, name.span};
    if (peek().kind == Tok::LParen) {
      next();
      if (peek().kind != Tok::RParen) {
        out.args.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          out.args.push_back(term());
        }
      }
      Token close = expect(Tok::RParen, "')' or ','");
      out.span = join(name.span, close.span);
    }
    return out;
  }

  RawEq equation() {
    RawTerm l = term();
    expect(Tok::Tilde, "'~'");
    RawTerm r = term();
    return {std::move(l), std::move(r)};
  }

  // True when the tokens at the cursor start a new rule (`term ><`) rather than an equation.
  bool startsRule() {
    if (peek().kind != Tok::Name) return false;
    std::size_t save = pos_;
    bool isRule = false;
    try {
      term();
      isRule = peek().kind == Tok::Bowtie;
    } catch (const Error&) {
    }
    pos_ = save;
    return isRule;
  }

  bool atDeclarationStart() {
    const Token& t = peek();
    if (t.kind == Tok::Eof) return true;
    if (t.kind == Tok::Var && (t.text == "net" || t.text == "agent" || kUnsupportedKeywords.count(t.text)))
      return true;
    return startsRule();
  }

  std::vector<RawEq> eqList(bool allowEmpty) {
    std::vector<RawEq> out;
    if (allowEmpty && atDeclarationStart()) return out;
    out.push_back(equation());
    while (peek().kind == Tok::Comma) {
      next();
      out.push_back(equation());
    }
    return out;
  }

  RawRule rule() {
    RawRule r;
    r.left = term();
    if (r.left.isVar) fail(code::Syntax, "a rule side must be an agent", r.left.span);
    expect(Tok::Bowtie, "'><' after the first agent of a rule");
    r.right = term();
    if (r.right.isVar) fail(code::Syntax, "a rule side must be an agent", r.right.span);
    while (peek().kind == Tok::Comma) {
      next();
      r.lhsEqs.push_back(equation());
    }
    if (peek().kind == Tok::Arrow) {
      next();
      r.hasArrow = true;
      r.rhs = eqList(true);
    }
    r.span = join(r.left.span, prevSpan());
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- elaboration ----------------------------------------------------------

class Elaborator {
 public:
  SymbolTable symbols;

  void declare(const RawDecl& d) {
    if (!symbols.declare(d.name, d.arity))
      fail(code::Arity,
           "agent " + d.name + " declared with arity " + std::to_string(d.arity) +
               ", previously declared with arity " + std::to_string(*symbols.arity(d.name)),
           d.span);
  }

  void checkArity(const RawTerm& t) {
    if (t.isVar) return;
    if (auto a = symbols.arity(t.name); a && *a != t.args.size())
      fail(code::Arity,
           "agent " + t.name + " expects " + std::to_string(*a) + " argument(s), found " +
               std::to_string(t.args.size()),
           t.span);
    symbols.declare(t.name, t.args.size());
    for (const auto& a : t.args) checkArity(a);
  }

  std::string fresh() { return "_" + std::to_string(counter_++); }

  static Term convert(const RawTerm& t) {
    if (t.isVar) return Term::variable(t.name);
    std::vector<Term> args;
    for (const auto& a : t.args) args.push_back(convert(a));
    return Term::agent(t.name, std::move(args));
  }

  Net net(const std::vector<RawEq>& eqs, const SourceSpan& span) {
    std::vector<Equation> conv;
    for (const auto& e : eqs) conv.push_back({convert(e.left), convert(e.right)});
    Net n = inet::flatten(Net{std::move(conv)});
    if (auto err = checkLinearity(n))
      fail(code::Linearity,
           "variable " + err->variable + " occurs " + std::to_string(err->count) + " times (at most 2 allowed)",
           span);
    return n;
  }

  Rule rule(RawRule raw, std::size_t index) {
    const std::string label = "rule " + std::to_string(index);
    Term left = convert(raw.left);
    Term right = convert(raw.right);

    for (const auto& e : raw.lhsEqs) substituteLhsEquation(left, right, e, raw.span);

    std::vector<Equation> rhs;
    for (const auto& e : raw.rhs) rhs.push_back({convert(e.left), convert(e.right)});

    if (!raw.hasArrow) unfold(left, right, rhs, raw.span);

    RulePattern lhs{std::move(left), std::move(right)};
    std::map<std::string, int> lhsCounts;
    countVariables(lhs.left, lhsCounts);
    countVariables(lhs.right, lhsCounts);
    for (const auto& [v, n] : lhsCounts)
      if (n > 1)
        fail(code::Linearity,
             "pattern variable " + v + " occurs " + std::to_string(n) +
                 " times on the left-hand side (patterns must be linear)",
             raw.span);

    Net flatRhs = inet::flatten(Net{std::move(rhs)});
    auto rhsCounts = variableOccurrences(flatRhs);
    for (const auto& [v, n] : rhsCounts) {
      bool inLhs = lhsCounts.count(v) != 0;
      int total = n + (inLhs ? 1 : 0);
      if (total > 2)
        fail(code::Linearity, "variable " + v + " occurs " + std::to_string(total) + " times in the rule",
             raw.span);
      if (total == 1)
        fail(code::Interface, "variable " + v + " on the right-hand side does not occur on the left-hand side",
             raw.span);
    }
    for (const auto& [v, n] : lhsCounts)
      if (!rhsCounts.count(v))
        fail(code::Interface, "variable " + v + " of the left-hand side is not used on the right-hand side",
             raw.span);

    return Rule{std::move(lhs), std::move(flatRhs), raw.span, label};
  }

 private:
  static bool replaceVar(Term& t, const std::string& v, const Term& by) {
    if (t.isVariable()) {
      if (t.name() != v) return false;
      t = by;
      return true;
    }
    for (auto& a : t.args())
      if (replaceVar(a, v, by)) return true;
    return false;
  }

  // `Lst(r) >< Cons(x,xs), xs~Nil` binds xs to the nested agent Nil.
  static void substituteLhsEquation(Term& left, Term& right, const RawEq& e, const SourceSpan& span) {
    const RawTerm* var = e.left.isVar ? &e.left : (e.right.isVar ? &e.right : nullptr);
    if (!var) fail(code::Syntax, "an equation on the left-hand side must connect a pattern variable", span);
    const RawTerm& other = var == &e.left ? e.right : e.left;
    Term by = convert(other);
    if (!replaceVar(left, var->name, by) && !replaceVar(right, var->name, by))
      fail(code::Syntax, "variable " + var->name + " does not occur in the rule's active pair", var->span);
  }

  // Folded optimised rule: nested agents and repeated variables on the left side
  // describe the right-hand side net.
  void unfold(Term& left, Term& right, std::vector<Equation>& rhs, const SourceSpan& span) {
    for (Term* root : {&left, &right}) {
      for (auto& a : root->args()) {
        if (!a.isAgent()) continue;
        Term v = Term::variable(fresh());
        rhs.push_back({v, std::move(a)});
        a = v;
      }
    }
    std::map<std::string, int> counts;
    countVariables(left, counts);
    countVariables(right, counts);
    for (const auto& [name, n] : counts) {
      if (n > 2)
        fail(code::Linearity, "variable " + name + " occurs " + std::to_string(n) + " times in the active pair",
             span);
      if (n != 2) continue;
      Term a = Term::variable(fresh());
      Term b = Term::variable(fresh());
      int seen = 0;
      for (Term* root : {&left, &right})
        for (auto& arg : root->args())
          if (arg.isVariable() && arg.name() == name) arg = seen++ == 0 ? a : b;
      rhs.push_back({a, b});
    }
  }

  std::size_t counter_ = 0;
};

}  // namespace

Program parseProgram(std::string_view text) {
  Parser p(Lexer(text).run());
  std::vector<RawRule> rawRules;
  std::vector<RawDecl> decls;
  std::vector<RawNet> nets;
  p.parseTop(rawRules, decls, nets);

  if (nets.size() > 1)
    fail(code::Syntax, "a program may contain at most one 'net' statement", nets[1].span);

  Elaborator el;
  for (const auto& d : decls) el.declare(d);
  for (const auto& r : rawRules) {
    el.checkArity(r.left);
    el.checkArity(r.right);
    for (const auto& e : r.lhsEqs) {
      el.checkArity(e.left);
      el.checkArity(e.right);
    }
    for (const auto& e : r.rhs) {
      el.checkArity(e.left);
      el.checkArity(e.right);
    }
  }
  for (const auto& n : nets)
    for (const auto& e : n.eqs) {
      el.checkArity(e.left);
      el.checkArity(e.right);
    }

  Program prog;
  for (std::size_t i = 0; i < rawRules.size(); ++i) prog.rules.push_back(el.rule(rawRules[i], i + 1));
  if (!nets.empty()) {
    prog.initialNet = el.net(nets[0].eqs, nets[0].span);
    prog.netSpan = nets[0].span;
  }
  prog.symbols = el.symbols;
  return prog;
}

Net parseNet(std::string_view text) {
  Parser p(Lexer(text).run());
  auto eqs = p.parseBareNet();
  Elaborator el;
  for (const auto& e : eqs) {
    el.checkArity(e.left);
    el.checkArity(e.right);
  }
  return el.net(eqs, eqs.empty() ? SourceSpan{} : join(eqs.front().left.span, eqs.back().right.span));
}

Net flatten(const Net& net) {
  // Fresh names must not clash with `_k` names already present.
  auto counts = variableOccurrences(net);
  Net out;
  std::size_t counter = 0;
  auto fresh = [&] {
    for (;;) {
      std::string n = "_" + std::to_string(counter++);
      if (!counts.count(n)) return Term::variable(n);
    }
  };
  std::function<Term(const Term&, std::vector<Equation>&)> flat = [&](const Term& t,
                                                                      std::vector<Equation>& extra) -> Term {
    if (t.isVariable()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) {
      if (a.isVariable()) {
        args.push_back(a);
        continue;
      }
      Term v = fresh();
      std::size_t slot = extra.size();
      extra.push_back({v, v});
      Term inner = flat(a, extra);
      extra[slot].right = std::move(inner);
      args.push_back(v);
    }
    return Term::agent(t.name(), std::move(args));
  };
  for (const auto& eq : net.equations) {
    std::vector<Equation> extra;
    Term l = flat(eq.left, extra);
    Term r = flat(eq.right, extra);
    out.equations.push_back({std::move(l), std::move(r)});
    for (auto& e : extra) out.equations.push_back(std::move(e));
  }
  return out;
}

}  // namespace inet
