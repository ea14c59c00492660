#include "relkit/dsl.hpp"

#include <algorithm>
#include <sstream>

namespace relkit::dsl {

using entail::SchemaTerm;
using eqcore::Sym;
using eqcore::SymbolKind;
using eqcore::Tag;
using logics::CtlFormula;
using logics::FodlFormula;
using logics::LtlFormula;
using logics::PathFormula;
using logics::Program;
using logics::StateFormula;
using relalg::RelTerm;

std::string to_string(const Diagnostic& d) {
  std::ostringstream out;
  out << (d.severity == Diagnostic::Severity::error ? "error" : "warning")
      << " at " << d.line << ":" << d.col << ": " << d.message;
  if (!d.suggestion.empty()) out << " (" << d.suggestion << ")";
  return out.str();
}

const char* logic_name(LogicKind k) {
  switch (k) {
    case LogicKind::ltl: return "ltl";
    case LogicKind::ctl: return "ctl";
    case LogicKind::pdl: return "pdl";
    case LogicKind::ctlstar: return "ctlstar";
  }
  return "ltl";
}

bool FrameDecl::operator==(const FrameDecl& o) const {
  return name == o.name && states == o.states && rels == o.rels &&
         frame.base == o.frame.base && frame.rels == o.frame.rels &&
         frame.state_theories == o.frame.state_theories;
}

bool CondItem::operator==(const CondItem& o) const {
  return kind == o.kind && rel == o.rel && formula == o.formula;
}

bool FrameMapDecl::operator==(const FrameMapDecl& o) const {
  return name == o.name && src == o.src && dst == o.dst &&
         rel_entries == o.rel_entries && state_entries == o.state_entries;
}

bool FormulaDecl::operator==(const FormulaDecl& o) const {
  return name == o.name && logic == o.logic &&
         flex_sig_name == o.flex_sig_name &&
         rigid_sig_name == o.rigid_sig_name && formula == o.formula;
}

bool CheckDecl::operator==(const CheckDecl& o) const {
  return logic == o.logic && frame == o.frame && interp == o.interp &&
         start == o.start && bound == o.bound && quant == o.quant &&
         formula == o.formula;
}

bool Workspace::operator==(const Workspace& o) const {
  return decls == o.decls;
}

namespace {

template <class T>
const T* find_decl(const std::vector<Decl>& decls, const std::string& name) {
  for (const auto& d : decls)
    if (const T* p = std::get_if<T>(&d); p && p->name == name) return p;
  return nullptr;
}

}  // namespace

const SignatureDecl* Workspace::find_signature(const std::string& n) const {
  return find_decl<SignatureDecl>(decls, n);
}
const InterpretationDecl* Workspace::find_interpretation(
    const std::string& n) const {
  return find_decl<InterpretationDecl>(decls, n);
}
const StateDecl* Workspace::find_state(const std::string& n) const {
  return find_decl<StateDecl>(decls, n);
}
const FrameDecl* Workspace::find_frame(const std::string& n) const {
  return find_decl<FrameDecl>(decls, n);
}
const ConditionsDecl* Workspace::find_conditions(const std::string& n) const {
  return find_decl<ConditionsDecl>(decls, n);
}
const QuantDomainDecl* Workspace::find_quantdomain(const std::string& n) const {
  return find_decl<QuantDomainDecl>(decls, n);
}
const FrameMapDecl* Workspace::find_framemap(const std::string& n) const {
  return find_decl<FrameMapDecl>(decls, n);
}
const FormulaDecl* Workspace::find_formula(const std::string& n) const {
  return find_decl<FormulaDecl>(decls, n);
}

std::vector<const CheckDecl*> Workspace::checks() const {
  std::vector<const CheckDecl*> out;
  for (const auto& d : decls)
    if (const CheckDecl* p = std::get_if<CheckDecl>(&d)) out.push_back(p);
  return out;
}

EntailBudget Workspace::default_budget() const {
  EntailBudget b;
  for (const auto& d : decls)
    if (const BudgetDecl* p = std::get_if<BudgetDecl>(&d)) b = p->budget;
  return b;
}

// --------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  ident, number, op, lparen, rparen, lbrace, rbrace, lbracket, rbracket,
  comma, semicolon, colon, assign, end, bad
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}
bool op_char(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '<': case '>': case '=':
    case '~': case '^': case '&': case '.': case '?': case '!': case '@':
    case '#': case '%': case '|':
      return true;
    default:
      return false;
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) {
    out.push_back(Token{k, std::move(text), l, c});
  };
  while (i < src.size()) {
    char c = src[i];
    int l = line, cl = col;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n && i < src.size(); ++k) {
        if (src[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
        ++i;
      }
    };
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Tok::ident, std::string(src.substr(i, j - i)), l, cl);
      advance(j - i);
      continue;
    }
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
      std::string text(src.substr(i, j - i));
      // the relational identity constant 1' is one token
      if (j < src.size() && src[j] == '\'') {
        text += '\'';
        ++j;
        push(Tok::op, std::move(text), l, cl);
      } else {
        push(Tok::number, std::move(text), l, cl);
      }
      advance(j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::lparen, "(", l, cl); advance(1); continue;
      case ')': push(Tok::rparen, ")", l, cl); advance(1); continue;
      case '{': push(Tok::lbrace, "{", l, cl); advance(1); continue;
      case '}': push(Tok::rbrace, "}", l, cl); advance(1); continue;
      case '[': push(Tok::lbracket, "[", l, cl); advance(1); continue;
      case ']': push(Tok::rbracket, "]", l, cl); advance(1); continue;
      case ',': push(Tok::comma, ",", l, cl); advance(1); continue;
      case ';': push(Tok::semicolon, ";", l, cl); advance(1); continue;
      case ':':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          push(Tok::assign, ":=", l, cl);
          advance(2);
        } else {
          push(Tok::colon, ":", l, cl);
          advance(1);
        }
        continue;
      default: break;
    }
    if (op_char(c)) {
      auto starts = [&](std::string_view s) {
        return src.substr(i, s.size()) == s;
      };
      // fixed multi-char operators, longest first
      if (starts("<=>")) { push(Tok::op, "<=>", l, cl); advance(3); continue; }
      if (starts("=>")) { push(Tok::op, "=>", l, cl); advance(2); continue; }
      if (starts("->")) { push(Tok::op, "->", l, cl); advance(2); continue; }
      if (starts("!=")) { push(Tok::op, "!=", l, cl); advance(2); continue; }
      push(Tok::op, std::string(1, c), l, cl);
      advance(1);
      continue;
    }
    push(Tok::bad, std::string(1, c), l, cl);
    advance(1);
  }
  out.push_back(Token{Tok::end, "", line, col});
  return out;
}

// --------------------------------------------------------------------------
// Parser

struct ParseAbort {};

// non-infix operator spellings, never resolvable as function/predicate names
bool reserved_op(const std::string& s) {
  return s == "=" || s == "!=" || s == "=>" || s == "<=>" || s == "->" ||
         s == "." || s == "&" || s == "~" || s == "^" || s == "|" ||
         s == "?" || s == "!" || s == "1'";
}

struct TermCtx {
  const EqSignature* plain = nullptr;     // set in plain contexts
  const EqSignature* rigid = nullptr;     // set in sum contexts
  const EqSignature* flexible = nullptr;  // set in sum contexts
  Tag forced = Tag::plain;
  const std::set<std::string>* metavars = nullptr;

  bool is_sum() const { return plain == nullptr; }
};

// a parsed atom: either a term or a full predicate application
struct TermOrAtom {
  bool is_sentence = false;
  SchemaTerm term;
  Sym pred;
  std::vector<SchemaTerm> args;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ParseResult run() {
    ParseResult res;
    try {
      while (!at(Tok::end)) parse_decl();
      res.workspace = std::move(ws_);
    } catch (const ParseAbort&) {
      // diagnostics already recorded
    }
    res.diagnostics = std::move(diags_);
    return res;
  }

  // single-expression entry points for the CLI
  EqSentence parse_goal(const EqSignature& rigid, const EqSignature& flexible) {
    TermCtx ctx;
    ctx.rigid = &rigid;
    ctx.flexible = &flexible;
    EqSentence out = ground_sentence(parse_eq_sentence(ctx), ctx);
    expect_end();
    return out;
  }

  LogicFormula parse_formula(LogicKind logic, const EqSignature& rigid,
                             const EqSignature& flexible) {
    TermCtx ctx;
    ctx.rigid = &rigid;
    ctx.flexible = &flexible;
    LogicFormula out = parse_logic_formula(logic, ctx);
    expect_end();
    return out;
  }

  std::vector<Diagnostic>& diagnostics() { return diags_; }

 private:
  // --- token helpers
  const Token& peek(int k = 0) const {
    size_t p = pos_ + static_cast<size_t>(k);
    if (p >= toks_.size()) p = toks_.size() - 1;
    return toks_[p];
  }
  bool at(Tok k, const char* text = nullptr) const {
    const Token& t = peek();
    return t.kind == k && (!text || t.text == text);
  }
  bool at_kw(const char* kw) const { return at(Tok::ident, kw); }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k, const char* text = nullptr) {
    if (at(k, text)) {
      next();
      return true;
    }
    return false;
  }
  bool accept_kw(const char* kw) { return accept(Tok::ident, kw); }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }
  Token expect(Tok k, const char* text, const char* what) {
    if (!at(k, text)) fail(std::string("expected ") + what);
    return next();
  }
  void expect_end() {
    if (!at(Tok::end)) fail("unexpected trailing input");
  }

  [[noreturn]] void fail(const std::string& msg,
                         const std::string& suggestion = "") {
    const Token& t = peek();
    diags_.push_back(Diagnostic{Diagnostic::Severity::error, t.line, t.col,
                                msg, suggestion});
    throw ParseAbort{};
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > 200) {
        p.depth_exceeded_ = true;  // not recoverable by backtracking
        p.fail("nesting too deep");
      }
    }
    ~DepthGuard() { --p.depth_; }
  };

  // backtracking points call this; depth overflows abort the whole parse
  void rollback(size_t pos, size_t diags) {
    if (depth_exceeded_) throw ParseAbort{};
    pos_ = pos;
    diags_.resize(diags);
  }

  // --- name resolution

  const EqSignature& need_signature(const std::string& name) {
    const SignatureDecl* d = ws_.find_signature(name);
    if (!d) fail("unresolved signature '" + name + "'");
    return d->sig;
  }

  std::pair<Sym, SymbolKind> resolve(const TermCtx& ctx,
                                     const std::string& name) {
    if (!ctx.is_sum()) {
      Sym s(name);
      auto k = ctx.plain->kind(s);
      if (!k) fail("unresolved symbol '" + name + "'");
      return {s, *k};
    }
    if (ctx.forced == Tag::rigid) {
      auto k = ctx.rigid->kind(Sym(name));
      if (!k) fail("unresolved rigid symbol '" + name + "'");
      return {Sym(Tag::rigid, name), *k};
    }
    if (ctx.forced == Tag::flexible) {
      auto k = ctx.flexible->kind(Sym(name));
      if (!k) fail("unresolved flexible symbol '" + name + "'");
      return {Sym(Tag::flexible, name), *k};
    }
    auto kr = ctx.rigid->kind(Sym(name));
    auto kf = ctx.flexible->kind(Sym(name));
    if (kr && kf)
      fail("symbol '" + name + "' is declared both rigid and flexible",
           "disambiguate with in_l(..) or in_r(..)");
    if (kr) return {Sym(Tag::rigid, name), *kr};
    if (kf) return {Sym(Tag::flexible, name), *kf};
    fail("unresolved symbol '" + name + "'");
  }

  // --- equational terms and sentences

  bool is_symbol_token() const {
    return at(Tok::ident) || at(Tok::number) ||
           (at(Tok::op) && !reserved_op(peek().text));
  }

  std::vector<SchemaTerm> parse_args(const TermCtx& ctx, int arity,
                                     const std::string& name) {
    std::vector<SchemaTerm> args;
    expect(Tok::lparen, "'('");
    if (!at(Tok::rparen)) {
      args.push_back(parse_eq_term(ctx));
      while (accept(Tok::comma)) args.push_back(parse_eq_term(ctx));
    }
    expect(Tok::rparen, "')'");
    if (static_cast<int>(args.size()) != arity)
      fail("'" + name + "' expects " + std::to_string(arity) +
           " arguments, got " + std::to_string(args.size()));
    return args;
  }

  TermOrAtom parse_eq_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    TermOrAtom out;
    if (accept(Tok::lparen)) {
      out.term = parse_eq_term(ctx);
      expect(Tok::rparen, "')'");
      return out;
    }
    if (!is_symbol_token()) fail("expected a term");
    // injection-tag wrappers
    if (ctx.is_sum() && (at_kw("in_l") || at_kw("in_r")) &&
        peek(1).kind == Tok::lparen) {
      Tag tag = peek().text == "in_l" ? Tag::rigid : Tag::flexible;
      next();
      next();  // '('
      TermCtx inner = ctx;
      inner.forced = tag;
      TermOrAtom sub = parse_eq_atom(inner);
      expect(Tok::rparen, "')'");
      return sub;
    }
    std::string name = next().text;
    if (ctx.metavars && ctx.metavars->count(name)) {
      out.term = SchemaTerm::meta(name);
      return out;
    }
    auto [sym, kind] = resolve(ctx, name);
    switch (kind) {
      case SymbolKind::constant:
        if (at(Tok::lparen)) fail("constant '" + name + "' takes no arguments");
        out.term = SchemaTerm::leaf(sym);
        return out;
      case SymbolKind::function: {
        int arity = ctx.is_sum()
                        ? (sym.tag == Tag::rigid ? ctx.rigid->arity(Sym(name))
                                                 : ctx.flexible->arity(Sym(name)))
                        : ctx.plain->arity(Sym(name));
        out.term = SchemaTerm::app(sym, parse_args(ctx, arity, name));
        return out;
      }
      case SymbolKind::predicate: {
        int arity = ctx.is_sum()
                        ? (sym.tag == Tag::rigid ? ctx.rigid->arity(Sym(name))
                                                 : ctx.flexible->arity(Sym(name)))
                        : ctx.plain->arity(Sym(name));
        out.is_sentence = true;
        out.pred = sym;
        if (at(Tok::lparen))
          out.args = parse_args(ctx, arity, name);
        else if (arity != 0)
          fail("predicate '" + name + "' expects " + std::to_string(arity) +
               " arguments");
        return out;
      }
    }
    fail("unresolved symbol '" + name + "'");
  }

  // primary extended by infix binary-function applications
  TermOrAtom parse_eq_atom(const TermCtx& ctx) {
    TermOrAtom first = parse_eq_primary(ctx);
    if (first.is_sentence) return first;
    SchemaTerm t = std::move(first.term);
    while (at(Tok::op) && !reserved_op(peek().text)) {
      std::string name = peek().text;
      auto [sym, kind] = resolve(ctx, name);
      if (kind == SymbolKind::predicate) break;  // sentence level
      if (kind != SymbolKind::function) fail("'" + name + "' is not a function");
      int arity = ctx.is_sum()
                      ? (sym.tag == Tag::rigid ? ctx.rigid->arity(Sym(name))
                                               : ctx.flexible->arity(Sym(name)))
                      : ctx.plain->arity(Sym(name));
      if (arity != 2) fail("infix '" + name + "' must be binary");
      next();
      TermOrAtom rhs = parse_eq_primary(ctx);
      if (rhs.is_sentence) fail("expected a term");
      t = SchemaTerm::app(sym, {std::move(t), std::move(rhs.term)});
    }
    TermOrAtom out;
    out.term = std::move(t);
    return out;
  }

  SchemaTerm parse_eq_term(const TermCtx& ctx) {
    TermOrAtom a = parse_eq_atom(ctx);
    if (a.is_sentence) fail("predicate application is not a term");
    return a.term;
  }

  struct PatSentence {
    bool is_equation = true;
    SchemaTerm lhs, rhs;
    Sym pred;
    std::vector<SchemaTerm> args;
  };

  PatSentence parse_eq_sentence(const TermCtx& ctx) {
    TermOrAtom first = parse_eq_atom(ctx);
    PatSentence out;
    if (first.is_sentence) {
      out.is_equation = false;
      out.pred = first.pred;
      out.args = std::move(first.args);
      return out;
    }
    if (accept(Tok::op, "=")) {
      out.lhs = std::move(first.term);
      out.rhs = parse_eq_term(ctx);
      return out;
    }
    if (at(Tok::op) && !reserved_op(peek().text)) {
      std::string name = peek().text;
      auto [sym, kind] = resolve(ctx, name);
      if (kind == SymbolKind::predicate) {
        int arity = ctx.is_sum()
                        ? (sym.tag == Tag::rigid ? ctx.rigid->arity(Sym(name))
                                                 : ctx.flexible->arity(Sym(name)))
                        : ctx.plain->arity(Sym(name));
        if (arity != 2) fail("infix predicate '" + name + "' must be binary");
        next();
        out.is_equation = false;
        out.pred = sym;
        out.args.push_back(std::move(first.term));
        out.args.push_back(parse_eq_term(ctx));
        return out;
      }
    }
    fail("expected '=' or a predicate symbol");
  }

  GroundTerm ground(const SchemaTerm& t) {
    if (t.is_meta()) fail("metavariable '" + t.meta_name() + "' not allowed here");
    if (t.args().empty()) return GroundTerm(t.symbol());
    std::vector<GroundTerm> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(ground(a));
    return GroundTerm(t.symbol(), std::move(args));
  }

  EqSentence ground_sentence(const PatSentence& s, const TermCtx&) {
    if (s.is_equation)
      return EqSentence::equation(ground(s.lhs), ground(s.rhs));
    std::vector<GroundTerm> args;
    for (const auto& a : s.args) args.push_back(ground(a));
    return EqSentence::pred_app(s.pred, std::move(args));
  }

  // --- relational formulae

  RelTerm parse_rt_primary(const std::set<std::string>& bound) {
    DepthGuard guard(*this);
    if (accept(Tok::lparen)) {
      RelTerm t = parse_relterm(bound);
      expect(Tok::rparen, "')'");
      return t;
    }
    if (at(Tok::number, "0")) {
      next();
      return RelTerm::empty();
    }
    if (at(Tok::number, "1")) {
      next();
      return RelTerm::univ();
    }
    if (at(Tok::op, "1'")) {
      next();
      return RelTerm::ident();
    }
    if (at(Tok::ident)) {
      std::string name = next().text;
      if (bound.count(name))
        fail("point variable '" + name + "' used as a relation");
      return RelTerm::symbol(name);
    }
    fail("expected a relational term");
  }

  RelTerm parse_rt_postfix(const std::set<std::string>& bound) {
    RelTerm t = parse_rt_primary(bound);
    while (true) {
      if (accept(Tok::op, "^")) {
        t = RelTerm::converse(std::move(t));
      } else if (accept(Tok::op, "*")) {
        t = RelTerm::star(std::move(t));
      } else {
        break;
      }
    }
    return t;
  }

  RelTerm parse_rt_unary(const std::set<std::string>& bound) {
    if (accept(Tok::op, "~")) return RelTerm::complement(parse_rt_unary(bound));
    return parse_rt_postfix(bound);
  }

  RelTerm parse_rt_compose(const std::set<std::string>& bound) {
    RelTerm t = parse_rt_unary(bound);
    while (accept(Tok::op, "."))
      t = RelTerm::compose(std::move(t), parse_rt_unary(bound));
    return t;
  }

  RelTerm parse_rt_meet(const std::set<std::string>& bound) {
    RelTerm t = parse_rt_compose(bound);
    while (accept(Tok::op, "&"))
      t = RelTerm::meet(std::move(t), parse_rt_compose(bound));
    return t;
  }

  RelTerm parse_relterm(const std::set<std::string>& bound) {
    RelTerm t = parse_rt_meet(bound);
    while (accept(Tok::op, "+"))
      t = RelTerm::join(std::move(t), parse_rt_meet(bound));
    return t;
  }

  RelFormula parse_rel_primary(std::set<std::string>& bound) {
    DepthGuard guard(*this);
    if (accept_kw("true")) return RelFormula::conj({});
    if (accept_kw("false")) return RelFormula::disj({});
    if (accept_kw("not")) return RelFormula::neg(parse_rel_primary(bound));
    if (at(Tok::lparen)) {
      // either a parenthesized formula or a parenthesized relational term
      size_t save_pos = pos_;
      size_t save_diags = diags_.size();
      try {
        next();
        RelFormula f = parse_rel_formula(bound);
        expect(Tok::rparen, "')'");
        return f;
      } catch (const ParseAbort&) {
        rollback(save_pos, save_diags);
      }
      RelTerm lhs = parse_relterm(bound);
      expect(Tok::op, "=", "'='");
      return RelFormula::term_eq(std::move(lhs), parse_relterm(bound));
    }
    if (at(Tok::ident) && bound.count(peek().text)) {
      std::string x = next().text;
      RelTerm r = parse_relterm(bound);
      Token y = expect(Tok::ident, "a point variable");
      if (!bound.count(y.text))
        fail("point variable '" + y.text + "' is unbound");
      return RelFormula::atom(std::move(x), std::move(r), y.text);
    }
    RelTerm lhs = parse_relterm(bound);
    expect(Tok::op, "=", "'='");
    return RelFormula::term_eq(std::move(lhs), parse_relterm(bound));
  }

  RelFormula parse_rel_and(std::set<std::string>& bound) {
    std::vector<RelFormula> fs{parse_rel_primary(bound)};
    while (accept_kw("and")) fs.push_back(parse_rel_primary(bound));
    if (fs.size() == 1) return std::move(fs[0]);
    return RelFormula::conj(std::move(fs));
  }

  RelFormula parse_rel_or(std::set<std::string>& bound) {
    std::vector<RelFormula> fs{parse_rel_and(bound)};
    while (accept_kw("or")) fs.push_back(parse_rel_and(bound));
    if (fs.size() == 1) return std::move(fs[0]);
    return RelFormula::disj(std::move(fs));
  }

  RelFormula parse_rel_implies(std::set<std::string>& bound) {
    RelFormula a = parse_rel_or(bound);
    if (accept(Tok::op, "=>"))
      return RelFormula::implies(std::move(a), parse_rel_implies(bound));
    return a;
  }

  RelFormula parse_rel_iff(std::set<std::string>& bound) {
    RelFormula a = parse_rel_implies(bound);
    if (accept(Tok::op, "<=>"))
      return RelFormula::iff(std::move(a), parse_rel_implies(bound));
    return a;
  }

  RelFormula parse_rel_formula(std::set<std::string>& bound) {
    DepthGuard guard(*this);
    if (at_kw("forall") || at_kw("exists")) {
      bool is_forall = next().text == "forall";
      std::vector<std::string> vars;
      vars.push_back(expect(Tok::ident, "a point variable").text);
      while (accept(Tok::comma))
        vars.push_back(expect(Tok::ident, "a point variable").text);
      expect(Tok::colon, "':'");
      std::vector<std::string> added;
      for (const auto& v : vars)
        if (bound.insert(v).second) added.push_back(v);
      RelFormula body = parse_rel_formula(bound);
      for (const auto& v : added) bound.erase(v);
      return is_forall ? RelFormula::forall(std::move(vars), std::move(body))
                       : RelFormula::exists(std::move(vars), std::move(body));
    }
    return parse_rel_iff(bound);
  }

  // --- logic formulae

  EqSentence parse_state_atom(const TermCtx& ctx) {
    return ground_sentence(parse_eq_sentence(ctx), ctx);
  }

  // LTL ------------------------------------------------------------------

  LtlFormula parse_ltl_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("true")) return LtlFormula::tt();
    if (accept_kw("false")) return LtlFormula::ff();
    if (at(Tok::lparen)) {
      size_t save_pos = pos_;
      size_t save_diags = diags_.size();
      try {
        next();
        LtlFormula f = parse_ltl(ctx);
        expect(Tok::rparen, "')'");
        return f;
      } catch (const ParseAbort&) {
        rollback(save_pos, save_diags);
      }
    }
    return LtlFormula::atom(parse_state_atom(ctx));
  }

  LtlFormula parse_ltl_unary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("not")) return LtlFormula::neg(parse_ltl_unary(ctx));
    if (accept_kw("X")) return LtlFormula::next(parse_ltl_unary(ctx));
    if (accept_kw("F")) return LtlFormula::eventually(parse_ltl_unary(ctx));
    if (accept_kw("G")) return LtlFormula::always(parse_ltl_unary(ctx));
    return parse_ltl_primary(ctx);
  }

  LtlFormula parse_ltl_until(const TermCtx& ctx) {
    LtlFormula a = parse_ltl_unary(ctx);
    if (accept_kw("U"))
      return LtlFormula::until(std::move(a), parse_ltl_until(ctx));
    if (accept_kw("R"))
      return LtlFormula::release(std::move(a), parse_ltl_until(ctx));
    if (accept_kw("W"))
      return LtlFormula::weak_until(std::move(a), parse_ltl_until(ctx));
    if (accept_kw("M"))
      return LtlFormula::strong_release(std::move(a), parse_ltl_until(ctx));
    return a;
  }

  LtlFormula parse_ltl_and(const TermCtx& ctx) {
    LtlFormula a = parse_ltl_until(ctx);
    while (accept_kw("and"))
      a = LtlFormula::land(std::move(a), parse_ltl_until(ctx));
    return a;
  }

  LtlFormula parse_ltl_or(const TermCtx& ctx) {
    LtlFormula a = parse_ltl_and(ctx);
    while (accept_kw("or"))
      a = LtlFormula::lor(std::move(a), parse_ltl_and(ctx));
    return a;
  }

  LtlFormula parse_ltl(const TermCtx& ctx) {
    DepthGuard guard(*this);
    LtlFormula a = parse_ltl_or(ctx);
    if (accept(Tok::op, "=>"))
      return LtlFormula::implies(std::move(a), parse_ltl(ctx));
    if (accept(Tok::op, "<=>")) {
      LtlFormula b = parse_ltl(ctx);
      return LtlFormula::land(LtlFormula::implies(a, b),
                              LtlFormula::implies(b, a));
    }
    return a;
  }

  // CTL ------------------------------------------------------------------

  CtlFormula parse_ctl_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("true")) return CtlFormula::tt();
    if (accept_kw("false")) return CtlFormula::ff();
    if (at(Tok::lparen)) {
      size_t save_pos = pos_;
      size_t save_diags = diags_.size();
      try {
        next();
        CtlFormula f = parse_ctl(ctx);
        expect(Tok::rparen, "')'");
        return f;
      } catch (const ParseAbort&) {
        rollback(save_pos, save_diags);
      }
    }
    return CtlFormula::atom(parse_state_atom(ctx));
  }

  CtlFormula parse_ctl_unary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("not")) return CtlFormula::neg(parse_ctl_unary(ctx));
    if (accept_kw("EX")) return CtlFormula::ex(parse_ctl_unary(ctx));
    if (accept_kw("EG")) return CtlFormula::eg(parse_ctl_unary(ctx));
    if (accept_kw("EF")) return CtlFormula::ef(parse_ctl_unary(ctx));
    if (accept_kw("AX")) return CtlFormula::ax(parse_ctl_unary(ctx));
    if (accept_kw("AF")) return CtlFormula::af(parse_ctl_unary(ctx));
    if (accept_kw("AG")) return CtlFormula::ag(parse_ctl_unary(ctx));
    if (at_kw("E") && peek(1).kind == Tok::lbracket) {
      next();
      next();
      CtlFormula a = parse_ctl(ctx);
      expect(Tok::ident, "U", "'U'");
      CtlFormula b = parse_ctl(ctx);
      expect(Tok::rbracket, "']'");
      return CtlFormula::eu(std::move(a), std::move(b));
    }
    if (at_kw("A") && peek(1).kind == Tok::lbracket) {
      next();
      next();
      CtlFormula a = parse_ctl(ctx);
      expect(Tok::ident, "U", "'U'");
      CtlFormula b = parse_ctl(ctx);
      expect(Tok::rbracket, "']'");
      return CtlFormula::au(std::move(a), std::move(b));
    }
    return parse_ctl_primary(ctx);
  }

  CtlFormula parse_ctl_and(const TermCtx& ctx) {
    CtlFormula a = parse_ctl_unary(ctx);
    while (accept_kw("and"))
      a = CtlFormula::land(std::move(a), parse_ctl_unary(ctx));
    return a;
  }

  CtlFormula parse_ctl_or(const TermCtx& ctx) {
    CtlFormula a = parse_ctl_and(ctx);
    while (accept_kw("or"))
      a = CtlFormula::lor(std::move(a), parse_ctl_and(ctx));
    return a;
  }

  CtlFormula parse_ctl(const TermCtx& ctx) {
    DepthGuard guard(*this);
    CtlFormula a = parse_ctl_or(ctx);
    if (accept(Tok::op, "=>"))
      return CtlFormula::implies(std::move(a), parse_ctl(ctx));
    if (accept(Tok::op, "<=>")) {
      CtlFormula b = parse_ctl(ctx);
      return CtlFormula::land(CtlFormula::implies(a, b),
                              CtlFormula::implies(b, a));
    }
    return a;
  }

  // FODL -----------------------------------------------------------------

  Program parse_prog_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept(Tok::lparen)) {
      Program p = parse_program(ctx);
      expect(Tok::rparen, "')'");
      return p;
    }
    if (accept_kw("test")) {
      expect(Tok::lparen, "'('");
      FodlFormula cond = parse_fodl(ctx);
      expect(Tok::rparen, "')'");
      return Program::test(std::move(cond));
    }
    if (accept_kw("if")) {
      FodlFormula cond = parse_fodl(ctx);
      expect(Tok::ident, "then", "'then'");
      Program then_p = parse_program(ctx);
      expect(Tok::ident, "else", "'else'");
      Program else_p = parse_program(ctx);
      return logics::if_then_else(std::move(cond), std::move(then_p),
                                  std::move(else_p));
    }
    if (accept_kw("while")) {
      FodlFormula cond = parse_fodl(ctx);
      expect(Tok::ident, "do", "'do'");
      Program body = parse_prog_postfix(ctx);
      return logics::while_do(std::move(cond), std::move(body));
    }
    if (at(Tok::ident)) return Program::atomic(next().text);
    fail("expected a program");
  }

  Program parse_prog_postfix(const TermCtx& ctx) {
    Program p = parse_prog_primary(ctx);
    while (accept(Tok::op, "*")) p = Program::star(std::move(p));
    return p;
  }

  Program parse_prog_seq(const TermCtx& ctx) {
    Program p = parse_prog_postfix(ctx);
    while (accept(Tok::op, "."))
      p = Program::seq(std::move(p), parse_prog_postfix(ctx));
    return p;
  }

  Program parse_program(const TermCtx& ctx) {
    DepthGuard guard(*this);
    Program p = parse_prog_seq(ctx);
    while (accept(Tok::op, "+"))
      p = Program::choice(std::move(p), parse_prog_seq(ctx));
    return p;
  }

  FodlFormula parse_fodl_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("true")) return FodlFormula::tt();
    if (accept_kw("false")) return FodlFormula::ff();
    if (at(Tok::op, "<")) {
      next();
      Program p = parse_program(ctx);
      expect(Tok::op, ">", "'>'");
      return FodlFormula::diamond(std::move(p), parse_fodl_unary(ctx));
    }
    if (at(Tok::lbracket)) {
      next();
      Program p = parse_program(ctx);
      expect(Tok::rbracket, "']'");
      return FodlFormula::box(std::move(p), parse_fodl_unary(ctx));
    }
    if (at(Tok::lparen)) {
      size_t save_pos = pos_;
      size_t save_diags = diags_.size();
      try {
        next();
        FodlFormula f = parse_fodl(ctx);
        expect(Tok::rparen, "')'");
        return f;
      } catch (const ParseAbort&) {
        rollback(save_pos, save_diags);
      }
    }
    return FodlFormula::atom(parse_state_atom(ctx));
  }

  FodlFormula parse_fodl_unary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("not")) return FodlFormula::neg(parse_fodl_unary(ctx));
    if (at_kw("exists")) {
      next();
      std::string var = expect(Tok::ident, "a flexible constant").text;
      expect(Tok::colon, "':'");
      return FodlFormula::exists(std::move(var), parse_fodl(ctx));
    }
    return parse_fodl_primary(ctx);
  }

  FodlFormula parse_fodl_and(const TermCtx& ctx) {
    FodlFormula a = parse_fodl_unary(ctx);
    while (accept_kw("and"))
      a = FodlFormula::land(std::move(a), parse_fodl_unary(ctx));
    return a;
  }

  FodlFormula parse_fodl_or(const TermCtx& ctx) {
    FodlFormula a = parse_fodl_and(ctx);
    while (accept_kw("or"))
      a = FodlFormula::lor(std::move(a), parse_fodl_and(ctx));
    return a;
  }

  FodlFormula parse_fodl(const TermCtx& ctx) {
    DepthGuard guard(*this);
    FodlFormula a = parse_fodl_or(ctx);
    if (accept(Tok::op, "=>"))
      return FodlFormula::implies(std::move(a), parse_fodl(ctx));
    if (accept(Tok::op, "<=>")) {
      FodlFormula b = parse_fodl(ctx);
      return FodlFormula::land(FodlFormula::implies(a, b),
                               FodlFormula::implies(b, a));
    }
    return a;
  }

  // FOCTL* -----------------------------------------------------------------

  StateFormula parse_st_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("true")) return StateFormula::tt();
    if (accept_kw("false")) return StateFormula::ff();
    if (at(Tok::lparen)) {
      size_t save_pos = pos_;
      size_t save_diags = diags_.size();
      try {
        next();
        StateFormula f = parse_ctlstar_state(ctx);
        expect(Tok::rparen, "')'");
        return f;
      } catch (const ParseAbort&) {
        rollback(save_pos, save_diags);
      }
    }
    return StateFormula::atom(parse_state_atom(ctx));
  }

  StateFormula parse_st_unary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("not")) return StateFormula::neg(parse_st_unary(ctx));
    if (accept_kw("E")) return StateFormula::epath(parse_pt_unary(ctx));
    if (at_kw("exists")) {
      next();
      std::string var = expect(Tok::ident, "a flexible constant").text;
      expect(Tok::colon, "':'");
      return StateFormula::exists(std::move(var), parse_ctlstar_state(ctx));
    }
    return parse_st_primary(ctx);
  }

  StateFormula parse_st_and(const TermCtx& ctx) {
    StateFormula a = parse_st_unary(ctx);
    while (accept_kw("and"))
      a = StateFormula::land(std::move(a), parse_st_unary(ctx));
    return a;
  }

  StateFormula parse_st_or(const TermCtx& ctx) {
    StateFormula a = parse_st_and(ctx);
    while (accept_kw("or"))
      a = StateFormula::lor(std::move(a), parse_st_and(ctx));
    return a;
  }

  StateFormula parse_ctlstar_state(const TermCtx& ctx) {
    DepthGuard guard(*this);
    StateFormula a = parse_st_or(ctx);
    if (accept(Tok::op, "=>"))
      return StateFormula::implies(std::move(a), parse_ctlstar_state(ctx));
    if (accept(Tok::op, "<=>")) {
      StateFormula b = parse_ctlstar_state(ctx);
      return StateFormula::land(StateFormula::implies(a, b),
                                StateFormula::implies(b, a));
    }
    return a;
  }

  PathFormula parse_pt_primary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (at(Tok::lparen)) {
      size_t save_pos = pos_;
      size_t save_diags = diags_.size();
      try {
        next();
        PathFormula f = parse_ctlstar_path(ctx);
        expect(Tok::rparen, "')'");
        return f;
      } catch (const ParseAbort&) {
        rollback(save_pos, save_diags);
      }
    }
    return PathFormula::state(parse_st_unary(ctx));
  }

  PathFormula parse_pt_unary(const TermCtx& ctx) {
    DepthGuard guard(*this);
    if (accept_kw("not")) return PathFormula::neg(parse_pt_unary(ctx));
    if (accept_kw("X")) return PathFormula::next(parse_pt_unary(ctx));
    if (accept_kw("F")) return PathFormula::eventually(parse_pt_unary(ctx));
    if (accept_kw("G")) return PathFormula::always(parse_pt_unary(ctx));
    return parse_pt_primary(ctx);
  }

  PathFormula parse_pt_until(const TermCtx& ctx) {
    PathFormula a = parse_pt_unary(ctx);
    if (accept_kw("U"))
      return PathFormula::until(std::move(a), parse_pt_until(ctx));
    if (accept_kw("R"))
      return PathFormula::release(std::move(a), parse_pt_until(ctx));
    if (accept_kw("W"))
      return PathFormula::weak_until(std::move(a), parse_pt_until(ctx));
    if (accept_kw("M"))
      return PathFormula::strong_release(std::move(a), parse_pt_until(ctx));
    return a;
  }

  PathFormula parse_pt_and(const TermCtx& ctx) {
    PathFormula a = parse_pt_until(ctx);
    while (accept_kw("and"))
      a = PathFormula::land(std::move(a), parse_pt_until(ctx));
    return a;
  }

  PathFormula parse_pt_or(const TermCtx& ctx) {
    PathFormula a = parse_pt_and(ctx);
    while (accept_kw("or"))
      a = PathFormula::lor(std::move(a), parse_pt_and(ctx));
    return a;
  }

  PathFormula parse_ctlstar_path(const TermCtx& ctx) {
    DepthGuard guard(*this);
    PathFormula a = parse_pt_or(ctx);
    if (accept(Tok::op, "=>"))
      return PathFormula::implies(std::move(a), parse_ctlstar_path(ctx));
    if (accept(Tok::op, "<=>")) {
      PathFormula b = parse_ctlstar_path(ctx);
      return PathFormula::land(PathFormula::implies(a, b),
                               PathFormula::implies(b, a));
    }
    return a;
  }

  LogicFormula parse_logic_formula(LogicKind logic, const TermCtx& ctx) {
    switch (logic) {
      case LogicKind::ltl: return parse_ltl(ctx);
      case LogicKind::ctl: return parse_ctl(ctx);
      case LogicKind::pdl: return parse_fodl(ctx);
      case LogicKind::ctlstar: return parse_ctlstar_state(ctx);
    }
    fail("unknown logic");
  }

  // --- declarations

  void check_fresh_name(const char* kind, const std::string& name, bool taken) {
    if (taken) fail(std::string(kind) + " '" + name + "' declared twice");
  }

  void parse_decl() {
    if (at(Tok::end)) return;
    if (accept_kw("signature")) return parse_signature_decl();
    if (accept_kw("interpretation")) return parse_interpretation_decl();
    if (accept_kw("state")) return parse_state_decl();
    if (accept_kw("frame")) return parse_frame_decl();
    if (accept_kw("conditions")) return parse_conditions_decl();
    if (accept_kw("quantdomain")) return parse_quantdomain_decl();
    if (accept_kw("framemap")) return parse_framemap_decl();
    if (accept_kw("budget")) return parse_budget_decl();
    if (accept_kw("check")) return parse_check_decl();
    if (at_kw("ltl") || at_kw("ctl") || at_kw("pdl") || at_kw("ctlstar"))
      return parse_formula_decl();
    fail("expected a declaration",
         "one of: signature, interpretation, state, frame, conditions, "
         "quantdomain, framemap, budget, check, ltl, ctl, pdl, ctlstar");
  }

  std::pair<std::string, int> parse_sym_arity() {
    if (!is_symbol_token()) fail("expected a symbol name");
    std::string name = next().text;
    expect(Tok::op, "/", "'/'");
    Token n = expect(Tok::number, "an arity");
    return {name, std::stoi(n.text)};
  }

  void parse_signature_decl() {
    SignatureDecl d;
    d.name = expect(Tok::ident, "a signature name").text;
    check_fresh_name("signature", d.name, ws_.find_signature(d.name));
    expect(Tok::lbrace, "'{'");
    try {
      while (!accept(Tok::rbrace)) {
        if (accept_kw("const")) {
          SigItem item;
          item.kind = SigItem::Kind::constants;
          do {
            if (!is_symbol_token()) fail("expected a constant name");
            std::string name = next().text;
            item.entries.emplace_back(name, 0);
            d.sig.add_constant(Sym(name));
          } while (accept(Tok::comma));
          expect(Tok::semicolon, "';'");
          d.items.push_back(std::move(item));
        } else if (accept_kw("func")) {
          SigItem item;
          item.kind = SigItem::Kind::functions;
          do {
            auto [name, arity] = parse_sym_arity();
            item.entries.emplace_back(name, arity);
            d.sig.add_function(Sym(name), arity);
          } while (accept(Tok::comma));
          expect(Tok::semicolon, "';'");
          d.items.push_back(std::move(item));
        } else if (accept_kw("pred")) {
          SigItem item;
          item.kind = SigItem::Kind::predicates;
          do {
            auto [name, arity] = parse_sym_arity();
            item.entries.emplace_back(name, arity);
            d.sig.add_predicate(Sym(name), arity);
          } while (accept(Tok::comma));
          expect(Tok::semicolon, "';'");
          d.items.push_back(std::move(item));
        } else {
          fail("expected 'const', 'func' or 'pred'");
        }
      }
    } catch (const Error& e) {
      fail(e.what());
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_interpretation_decl() {
    InterpretationDecl d;
    d.name = expect(Tok::ident, "an interpretation name").text;
    check_fresh_name("interpretation", d.name, ws_.find_interpretation(d.name));
    expect(Tok::ident, "over", "'over'");
    d.sig_name = expect(Tok::ident, "a signature name").text;
    const EqSignature& sig = need_signature(d.sig_name);
    TermCtx ctx;
    ctx.plain = &sig;
    expect(Tok::lbrace, "'{'");
    std::vector<EqSentence> axioms;
    std::vector<SchemaSentence> schemas;
    try {
      while (!accept(Tok::rbrace)) {
        if (accept_kw("axiom")) {
          InterpItem item;
          item.is_schema = false;
          do {
            EqSentence s = ground_sentence(parse_eq_sentence(ctx), ctx);
            axioms.push_back(s);
            item.axioms.push_back(std::move(s));
          } while (accept(Tok::comma));
          expect(Tok::semicolon, "';'");
          d.items.push_back(std::move(item));
        } else if (accept_kw("schema")) {
          InterpItem item;
          item.is_schema = true;
          item.metavars.push_back(expect(Tok::ident, "a metavariable").text);
          while (accept(Tok::comma))
            item.metavars.push_back(expect(Tok::ident, "a metavariable").text);
          std::set<std::string> metaset(item.metavars.begin(),
                                        item.metavars.end());
          if (accept_kw("where")) {
            do {
              std::string mv = expect(Tok::ident, "a metavariable").text;
              if (!metaset.count(mv))
                fail("guard mentions undeclared metavariable '" + mv + "'");
              expect(Tok::op, "!=", "'!='");
              item.guards.emplace_back(mv, ground(parse_eq_term(ctx)));
            } while (accept(Tok::comma));
          }
          expect(Tok::colon, "':'");
          TermCtx body_ctx = ctx;
          body_ctx.metavars = &metaset;
          do {
            PatSentence body = parse_eq_sentence(body_ctx);
            SchemaSentence schema =
                body.is_equation
                    ? SchemaSentence::equation(item.metavars, body.lhs, body.rhs)
                    : SchemaSentence::pred_app(item.metavars, body.pred,
                                               body.args);
            for (const auto& [mv, g] : item.guards) schema.add_guard(mv, g);
            schemas.push_back(schema);
            item.schemas.push_back(std::move(schema));
          } while (accept(Tok::comma));
          expect(Tok::semicolon, "';'");
          d.items.push_back(std::move(item));
        } else {
          fail("expected 'axiom' or 'schema'");
        }
      }
      d.interp = theoria::mk_interpretation(sig, std::move(axioms),
                                            std::move(schemas));
    } catch (const Error& e) {
      fail(e.what());
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_state_decl() {
    StateDecl d;
    d.name = expect(Tok::ident, "a state name").text;
    check_fresh_name("state", d.name, ws_.find_state(d.name));
    expect(Tok::ident, "over", "'over'");
    d.flex_sig_name = expect(Tok::ident, "a signature name").text;
    expect(Tok::comma, "','");
    d.rigid_sig_name = expect(Tok::ident, "a signature name").text;
    const EqSignature& flex = need_signature(d.flex_sig_name);
    const EqSignature& rigid = need_signature(d.rigid_sig_name);
    TermCtx rigid_ctx;
    rigid_ctx.plain = &rigid;
    expect(Tok::lbrace, "'{'");
    std::vector<theoria::Definition> defs;
    try {
      while (!accept(Tok::rbrace)) {
        if (!is_symbol_token()) fail("expected a flexible symbol");
        std::string name = next().text;
        Sym sym(name);
        auto kind = flex.kind(sym);
        if (!kind) fail("unresolved flexible symbol '" + name + "'");
        switch (*kind) {
          case SymbolKind::constant: {
            expect(Tok::assign, "':='");
            defs.push_back(theoria::Definition::constant(
                sym, ground(parse_eq_term(rigid_ctx))));
            break;
          }
          case SymbolKind::function: {
            std::vector<SchemaTerm> args =
                parse_args(rigid_ctx, flex.arity(sym), name);
            expect(Tok::assign, "':='");
            std::vector<GroundTerm> gargs;
            for (const auto& a : args) gargs.push_back(ground(a));
            defs.push_back(theoria::Definition::function(
                sym, std::move(gargs), ground(parse_eq_term(rigid_ctx))));
            break;
          }
          case SymbolKind::predicate: {
            std::vector<GroundTerm> gargs;
            if (at(Tok::lparen)) {
              std::vector<SchemaTerm> args =
                  parse_args(rigid_ctx, flex.arity(sym), name);
              for (const auto& a : args) gargs.push_back(ground(a));
            } else if (flex.arity(sym) != 0) {
              fail("predicate '" + name + "' expects arguments");
            }
            defs.push_back(theoria::Definition::predicate(sym, std::move(gargs)));
            break;
          }
        }
        expect(Tok::semicolon, "';'");
      }
      d.state = theoria::mk_state(flex, rigid, std::move(defs));
    } catch (const Error& e) {
      fail(e.what());
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_frame_decl() {
    FrameDecl d;
    d.name = expect(Tok::ident, "a frame name").text;
    check_fresh_name("frame", d.name, ws_.find_frame(d.name));
    expect(Tok::lbrace, "'{'");
    expect(Tok::ident, "states", "'states'");
    d.states.push_back(expect(Tok::ident, "a state name").text);
    while (accept(Tok::comma))
      d.states.push_back(expect(Tok::ident, "a state name").text);
    expect(Tok::semicolon, "';'");
    try {
      d.frame = relalg::make_frame(d.states);
    } catch (const Error& e) {
      fail(e.what());
    }
    const StateDecl* first_state = nullptr;
    for (const auto& sid : d.states) {
      const StateDecl* sd = ws_.find_state(sid);
      if (!sd) fail("unresolved state '" + sid + "'");
      if (!first_state) {
        first_state = sd;
      } else if (sd->state.flexible_sig != first_state->state.flexible_sig ||
                 sd->state.rigid_sig != first_state->state.rigid_sig) {
        fail("state '" + sid + "' is over a different signature pair than '" +
             first_state->name + "'");
      }
      d.frame.state_theories.emplace(sid, sd->state);
    }
    while (!accept(Tok::rbrace)) {
      expect(Tok::ident, "rel", "'rel'");
      std::string rname = expect(Tok::ident, "a relation name").text;
      if (d.frame.rels.count(rname))
        fail("relation '" + rname + "' declared twice");
      expect(Tok::op, "=", "'='");
      expect(Tok::lbrace, "'{'");
      std::vector<std::pair<std::string, std::string>> pairs;
      relalg::Relation rel(d.frame.size());
      if (!at(Tok::rbrace)) {
        do {
          expect(Tok::lparen, "'('");
          std::string a = expect(Tok::ident, "a state name").text;
          expect(Tok::comma, "','");
          std::string b = expect(Tok::ident, "a state name").text;
          expect(Tok::rparen, "')'");
          try {
            rel.set(d.frame.index_of(a), d.frame.index_of(b));
          } catch (const Error& e) {
            fail(e.what());
          }
          pairs.emplace_back(std::move(a), std::move(b));
        } while (accept(Tok::comma));
      }
      expect(Tok::rbrace, "'}'");
      expect(Tok::semicolon, "';'");
      d.frame.rels.emplace(rname, std::move(rel));
      d.rels.emplace_back(std::move(rname), std::move(pairs));
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_conditions_decl() {
    ConditionsDecl d;
    d.name = expect(Tok::ident, "a conditions name").text;
    check_fresh_name("conditions", d.name, ws_.find_conditions(d.name));
    expect(Tok::lbrace, "'{'");
    while (!accept(Tok::rbrace)) {
      CondItem item;
      if (accept_kw("total")) {
        item.kind = CondItem::Kind::total;
        item.rel = expect(Tok::ident, "a relation name").text;
        item.formula = relalg::total_condition(item.rel);
      } else if (accept_kw("functional")) {
        item.kind = CondItem::Kind::functional;
        item.rel = expect(Tok::ident, "a relation name").text;
        item.formula = relalg::functional_condition(item.rel);
      } else if (accept_kw("initial")) {
        item.kind = CondItem::Kind::initial;
        item.rel = expect(Tok::ident, "a relation name").text;
        item.formula = relalg::initial_condition(item.rel);
      } else if (accept_kw("formula")) {
        item.kind = CondItem::Kind::formula;
        std::set<std::string> bound;
        item.formula = parse_rel_formula(bound);
      } else {
        fail("expected 'total', 'functional', 'initial' or 'formula'");
      }
      expect(Tok::semicolon, "';'");
      d.items.push_back(std::move(item));
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_quantdomain_decl() {
    QuantDomainDecl d;
    d.name = expect(Tok::ident, "a quantdomain name").text;
    check_fresh_name("quantdomain", d.name, ws_.find_quantdomain(d.name));
    expect(Tok::ident, "over", "'over'");
    d.flex_sig_name = expect(Tok::ident, "a signature name").text;
    expect(Tok::comma, "','");
    d.rigid_sig_name = expect(Tok::ident, "a signature name").text;
    const EqSignature& flex = need_signature(d.flex_sig_name);
    const EqSignature& rigid = need_signature(d.rigid_sig_name);
    TermCtx ctx;
    ctx.plain = &rigid;
    expect(Tok::lbrace, "'{'");
    while (!accept(Tok::rbrace)) {
      if (!is_symbol_token()) fail("expected a flexible constant");
      std::string var = next().text;
      if (!flex.is_constant(Sym(var)))
        fail("'" + var + "' is not a flexible constant");
      expect(Tok::colon, "':'");
      std::vector<GroundTerm> terms;
      terms.push_back(ground(parse_eq_term(ctx)));
      while (accept(Tok::comma)) terms.push_back(ground(parse_eq_term(ctx)));
      expect(Tok::semicolon, "';'");
      d.qd.ranges[var] = terms;
      d.entries.emplace_back(std::move(var), std::move(terms));
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_framemap_decl() {
    FrameMapDecl d;
    d.name = expect(Tok::ident, "a framemap name").text;
    check_fresh_name("framemap", d.name, ws_.find_framemap(d.name));
    expect(Tok::ident, "from", "'from'");
    d.src = expect(Tok::ident, "a frame name").text;
    expect(Tok::ident, "to", "'to'");
    d.dst = expect(Tok::ident, "a frame name").text;
    const FrameDecl* src = ws_.find_frame(d.src);
    const FrameDecl* dst = ws_.find_frame(d.dst);
    if (!src) fail("unresolved frame '" + d.src + "'");
    if (!dst) fail("unresolved frame '" + d.dst + "'");
    expect(Tok::lbrace, "'{'");
    while (!accept(Tok::rbrace)) {
      if (accept_kw("rel")) {
        std::string from = expect(Tok::ident, "a relation name").text;
        expect(Tok::op, "->", "'->'");
        std::string to = expect(Tok::ident, "a relation name").text;
        if (!src->frame.rels.count(from))
          fail("relation '" + from + "' is not declared in '" + d.src + "'");
        if (!dst->frame.rels.count(to))
          fail("relation '" + to + "' is not declared in '" + d.dst + "'");
        d.fm.rel_map[from] = to;
        d.rel_entries.emplace_back(std::move(from), std::move(to));
      } else if (accept_kw("state")) {
        std::string from = expect(Tok::ident, "a state name").text;
        expect(Tok::op, "->", "'->'");
        std::string to = expect(Tok::ident, "a state name").text;
        if (std::find(src->states.begin(), src->states.end(), from) ==
            src->states.end())
          fail("state '" + from + "' is not in frame '" + d.src + "'");
        if (std::find(dst->states.begin(), dst->states.end(), to) ==
            dst->states.end())
          fail("state '" + to + "' is not in frame '" + d.dst + "'");
        d.fm.state_map[from] = to;
        d.state_entries.emplace_back(std::move(from), std::move(to));
      } else {
        fail("expected 'rel' or 'state'");
      }
      expect(Tok::semicolon, "';'");
    }
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_budget_decl() {
    BudgetDecl d;
    expect(Tok::lbrace, "'{'");
    while (!accept(Tok::rbrace)) {
      if (accept_kw("depth")) {
        d.budget.max_term_depth = std::stoi(expect(Tok::number, "a depth").text);
      } else if (accept_kw("instances")) {
        d.budget.max_instantiations =
            std::stoll(expect(Tok::number, "a count").text);
      } else {
        fail("expected 'depth' or 'instances'");
      }
      expect(Tok::semicolon, "';'");
    }
    ws_.decls.emplace_back(std::move(d));
  }

  LogicKind parse_logic_kind() {
    if (accept_kw("ltl")) return LogicKind::ltl;
    if (accept_kw("ctl")) return LogicKind::ctl;
    if (accept_kw("pdl")) return LogicKind::pdl;
    if (accept_kw("ctlstar")) return LogicKind::ctlstar;
    fail("expected a logic (ltl, ctl, pdl, ctlstar)");
  }

  void parse_check_decl() {
    CheckDecl d;
    d.logic = parse_logic_kind();
    d.frame = expect(Tok::ident, "a frame name").text;
    d.interp = expect(Tok::ident, "an interpretation name").text;
    d.start = expect(Tok::ident, "a start state").text;
    while (true) {
      if (accept_kw("bound")) {
        d.bound = std::stoi(expect(Tok::number, "a bound").text);
      } else if (accept_kw("quant")) {
        d.quant = expect(Tok::ident, "a quantdomain name").text;
      } else {
        break;
      }
    }
    const FrameDecl* frame = ws_.find_frame(d.frame);
    if (!frame) fail("unresolved frame '" + d.frame + "'");
    const InterpretationDecl* interp = ws_.find_interpretation(d.interp);
    if (!interp) fail("unresolved interpretation '" + d.interp + "'");
    if (std::find(frame->states.begin(), frame->states.end(), d.start) ==
        frame->states.end())
      fail("state '" + d.start + "' is not in frame '" + d.frame + "'");
    if (!d.quant.empty() && !ws_.find_quantdomain(d.quant))
      fail("unresolved quantdomain '" + d.quant + "'");
    const theoria::StateTheory& st = frame->frame.theory_of(frame->states[0]);
    if (interp->interp.rigid_sig != st.rigid_sig)
      fail("interpretation '" + d.interp +
           "' and frame '" + d.frame + "' disagree on the rigid signature");
    expect(Tok::colon, "':'");
    TermCtx ctx;
    ctx.rigid = &st.rigid_sig;
    ctx.flexible = &st.flexible_sig;
    d.formula = parse_logic_formula(d.logic, ctx);
    expect(Tok::semicolon, "';'");
    ws_.decls.emplace_back(std::move(d));
  }

  void parse_formula_decl() {
    FormulaDecl d;
    d.logic = parse_logic_kind();
    d.name = expect(Tok::ident, "a formula name").text;
    check_fresh_name("formula", d.name, ws_.find_formula(d.name));
    expect(Tok::ident, "over", "'over'");
    d.flex_sig_name = expect(Tok::ident, "a signature name").text;
    expect(Tok::comma, "','");
    d.rigid_sig_name = expect(Tok::ident, "a signature name").text;
    const EqSignature& flex = need_signature(d.flex_sig_name);
    const EqSignature& rigid = need_signature(d.rigid_sig_name);
    expect(Tok::colon, "':'");
    TermCtx ctx;
    ctx.rigid = &rigid;
    ctx.flexible = &flex;
    d.formula = parse_logic_formula(d.logic, ctx);
    expect(Tok::semicolon, "';'");
    ws_.decls.emplace_back(std::move(d));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
  Workspace ws_;
  int depth_ = 0;
  bool depth_exceeded_ = false;
};

}  // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

EqSentence parse_sentence_text(std::string_view text, const EqSignature& rigid,
                               const EqSignature& flexible) {
  Parser p(text);
  try {
    return p.parse_goal(rigid, flexible);
  } catch (const ParseAbort&) {
    std::string msg = "parse error";
    if (!p.diagnostics().empty()) msg = to_string(p.diagnostics().front());
    throw Error(ErrorCode::ill_formed_goal, msg);
  }
}

LogicFormula parse_formula_text(std::string_view text, LogicKind logic,
                                const EqSignature& rigid,
                                const EqSignature& flexible) {
  Parser p(text);
  try {
    return p.parse_formula(logic, rigid, flexible);
  } catch (const ParseAbort&) {
    std::string msg = "parse error";
    if (!p.diagnostics().empty()) msg = to_string(p.diagnostics().front());
    throw Error(ErrorCode::ill_formed_goal, msg);
  }
}

// --------------------------------------------------------------------------
// Printer

namespace {

bool symbolic_name(const std::string& s) {
  for (char c : s)
    if (ident_char(c)) return false;
  return !s.empty();
}

struct PrintCtx {
  const EqSignature* rigid = nullptr;     // null in plain contexts
  const EqSignature* flexible = nullptr;  // null in plain contexts
  Tag forced = Tag::plain;
};

bool bare_ok(const PrintCtx& ctx, const Sym& s) {
  if (s.tag == Tag::plain) return true;
  if (ctx.forced == s.tag) return true;
  if (ctx.forced != Tag::plain) return false;
  if (s.tag == Tag::rigid) return !ctx.flexible || !ctx.flexible->has(Sym(s.name));
  return !ctx.rigid || !ctx.rigid->has(Sym(s.name));
}

std::string term_text(const GroundTerm& t, PrintCtx ctx, bool parenthesize);

// a left operand keeps the flat chain only when it continues the same infix
// operator; mixed operators are parenthesized for readability
bool is_other_infix(const Sym& parent, const GroundTerm& t) {
  return t.args().size() == 2 && symbolic_name(t.symbol().name) &&
         t.symbol() != parent;
}

std::string apply_text(const Sym& sym, const std::vector<GroundTerm>& args,
                       PrintCtx ctx, bool parenthesize) {
  std::string inner;
  PrintCtx child = ctx;
  bool wrapped = !bare_ok(ctx, sym);
  if (wrapped) child.forced = sym.tag;
  if (symbolic_name(sym.name) && args.size() == 2) {
    inner = term_text(args[0], child, is_other_infix(sym, args[0])) + " " +
            sym.name + " " + term_text(args[1], child, true);
    if (wrapped)
      return std::string(sym.tag == Tag::rigid ? "in_l(" : "in_r(") + inner + ")";
    return parenthesize ? "(" + inner + ")" : inner;
  }
  inner = sym.name;
  if (!args.empty()) {
    inner += "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) inner += ", ";
      inner += term_text(args[i], child, false);
    }
    inner += ")";
  }
  if (wrapped)
    return std::string(sym.tag == Tag::rigid ? "in_l(" : "in_r(") + inner + ")";
  return inner;
}

std::string term_text(const GroundTerm& t, PrintCtx ctx, bool parenthesize) {
  return apply_text(t.symbol(), t.args(), ctx, parenthesize);
}

std::string sentence_text(const EqSentence& s, PrintCtx ctx) {
  if (s.is_equation())
    return term_text(s.lhs(), ctx, false) + " = " + term_text(s.rhs(), ctx, false);
  const Sym& p = s.pred();
  if (symbolic_name(p.name) && s.args().size() == 2 && bare_ok(ctx, p))
    return term_text(s.args()[0], ctx, false) + " " + p.name + " " +
           term_text(s.args()[1], ctx, false);
  if (!bare_ok(ctx, p)) {
    PrintCtx child = ctx;
    child.forced = p.tag;
    std::string inner = p.name;
    if (!s.args().empty()) {
      inner += "(";
      for (size_t i = 0; i < s.args().size(); ++i) {
        if (i) inner += ", ";
        inner += term_text(s.args()[i], child, false);
      }
      inner += ")";
    }
    return std::string(p.tag == Tag::rigid ? "in_l(" : "in_r(") + inner + ")";
  }
  std::string out = p.name;
  if (!s.args().empty()) {
    out += "(";
    for (size_t i = 0; i < s.args().size(); ++i) {
      if (i) out += ", ";
      out += term_text(s.args()[i], ctx, false);
    }
    out += ")";
  }
  return out;
}

std::string schema_term_text(const SchemaTerm& t, PrintCtx ctx,
                             bool parenthesize) {
  if (t.is_meta()) return t.meta_name();
  std::string inner;
  const Sym& sym = t.symbol();
  if (symbolic_name(sym.name) && t.args().size() == 2) {
    const SchemaTerm& lhs = t.args()[0];
    bool paren_left = !lhs.is_meta() && lhs.args().size() == 2 &&
                      symbolic_name(lhs.symbol().name) && lhs.symbol() != sym;
    inner = schema_term_text(lhs, ctx, paren_left) + " " + sym.name + " " +
            schema_term_text(t.args()[1], ctx, true);
    return parenthesize ? "(" + inner + ")" : inner;
  }
  inner = sym.name;
  if (!t.args().empty()) {
    inner += "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) inner += ", ";
      inner += schema_term_text(t.args()[i], ctx, false);
    }
    inner += ")";
  }
  return inner;
}

std::string schema_body_text(const SchemaSentence& s, PrintCtx ctx) {
  if (s.is_equation())
    return schema_term_text(s.lhs(), ctx, false) + " = " +
           schema_term_text(s.rhs(), ctx, false);
  if (symbolic_name(s.pred().name) && s.args().size() == 2)
    return schema_term_text(s.args()[0], ctx, false) + " " + s.pred().name +
           " " + schema_term_text(s.args()[1], ctx, false);
  std::string out = s.pred().name;
  if (!s.args().empty()) {
    out += "(";
    for (size_t i = 0; i < s.args().size(); ++i) {
      if (i) out += ", ";
      out += schema_term_text(s.args()[i], ctx, false);
    }
    out += ")";
  }
  return out;
}

logics::AtomPrinter ctx_atom_printer(const EqSignature& rigid,
                                     const EqSignature& flexible) {
  PrintCtx ctx;
  ctx.rigid = &rigid;
  ctx.flexible = &flexible;
  return [ctx](const EqSentence& s) { return sentence_text(s, ctx); };
}

std::string formula_text(const LogicFormula& f, const EqSignature& rigid,
                         const EqSignature& flexible) {
  logics::AtomPrinter atoms = ctx_atom_printer(rigid, flexible);
  return std::visit(
      [&](const auto& g) { return logics::to_string(g, atoms); }, f);
}

const char* sigitem_kw(SigItem::Kind k) {
  switch (k) {
    case SigItem::Kind::constants: return "const";
    case SigItem::Kind::functions: return "func";
    case SigItem::Kind::predicates: return "pred";
  }
  return "const";
}

struct DeclPrinter {
  const Workspace& ws;
  std::ostringstream& out;

  void operator()(const SignatureDecl& d) {
    out << "signature " << d.name << " {\n";
    for (const auto& item : d.items) {
      out << "  " << sigitem_kw(item.kind) << " ";
      for (size_t i = 0; i < item.entries.size(); ++i) {
        if (i) out << ", ";
        out << item.entries[i].first;
        if (item.kind != SigItem::Kind::constants)
          out << " / " << item.entries[i].second;
      }
      out << ";\n";
    }
    out << "}\n";
  }

  void operator()(const InterpretationDecl& d) {
    PrintCtx ctx;
    out << "interpretation " << d.name << " over " << d.sig_name << " {\n";
    for (const auto& item : d.items) {
      if (!item.is_schema) {
        out << "  axiom ";
        for (size_t i = 0; i < item.axioms.size(); ++i) {
          if (i) out << ", ";
          out << sentence_text(item.axioms[i], ctx);
        }
        out << ";\n";
      } else {
        out << "  schema ";
        for (size_t i = 0; i < item.metavars.size(); ++i) {
          if (i) out << ", ";
          out << item.metavars[i];
        }
        if (!item.guards.empty()) {
          out << " where ";
          for (size_t i = 0; i < item.guards.size(); ++i) {
            if (i) out << ", ";
            out << item.guards[i].first << " != "
                << term_text(item.guards[i].second, ctx, false);
          }
        }
        out << " : ";
        for (size_t i = 0; i < item.schemas.size(); ++i) {
          if (i) out << ", ";
          out << schema_body_text(item.schemas[i], ctx);
        }
        out << ";\n";
      }
    }
    out << "}\n";
  }

  void operator()(const StateDecl& d) {
    PrintCtx ctx;
    out << "state " << d.name << " over " << d.flex_sig_name << ", "
        << d.rigid_sig_name << " {\n";
    for (const auto& def : d.state.defs) {
      out << "  " << def.lhs_symbol().name;
      if (def.kind() != theoria::Definition::Kind::constant &&
          !(def.kind() == theoria::Definition::Kind::predicate &&
            def.args().empty())) {
        out << "(";
        for (size_t i = 0; i < def.args().size(); ++i) {
          if (i) out << ", ";
          out << term_text(def.args()[i], ctx, false);
        }
        out << ")";
      }
      if (def.kind() != theoria::Definition::Kind::predicate)
        out << " := " << term_text(def.rhs(), ctx, false);
      out << ";\n";
    }
    out << "}\n";
  }

  void operator()(const FrameDecl& d) {
    out << "frame " << d.name << " {\n  states ";
    for (size_t i = 0; i < d.states.size(); ++i) {
      if (i) out << ", ";
      out << d.states[i];
    }
    out << ";\n";
    for (const auto& [rname, pairs] : d.rels) {
      out << "  rel " << rname << " = { ";
      for (size_t i = 0; i < pairs.size(); ++i) {
        if (i) out << ", ";
        out << "(" << pairs[i].first << ", " << pairs[i].second << ")";
      }
      out << (pairs.empty() ? "};\n" : " };\n");
    }
    out << "}\n";
  }

  void operator()(const ConditionsDecl& d) {
    out << "conditions " << d.name << " {\n";
    for (const auto& item : d.items) {
      switch (item.kind) {
        case CondItem::Kind::total: out << "  total " << item.rel; break;
        case CondItem::Kind::functional:
          out << "  functional " << item.rel;
          break;
        case CondItem::Kind::initial: out << "  initial " << item.rel; break;
        case CondItem::Kind::formula:
          out << "  formula " << relalg::to_string(item.formula);
          break;
      }
      out << ";\n";
    }
    out << "}\n";
  }

  void operator()(const QuantDomainDecl& d) {
    PrintCtx ctx;
    out << "quantdomain " << d.name << " over " << d.flex_sig_name << ", "
        << d.rigid_sig_name << " {\n";
    for (const auto& [var, terms] : d.entries) {
      out << "  " << var << " : ";
      for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out << ", ";
        out << term_text(terms[i], ctx, false);
      }
      out << ";\n";
    }
    out << "}\n";
  }

  void operator()(const FrameMapDecl& d) {
    out << "framemap " << d.name << " from " << d.src << " to " << d.dst
        << " {\n";
    for (const auto& [from, to] : d.rel_entries)
      out << "  rel " << from << " -> " << to << ";\n";
    for (const auto& [from, to] : d.state_entries)
      out << "  state " << from << " -> " << to << ";\n";
    out << "}\n";
  }

  void operator()(const FormulaDecl& d) {
    const SignatureDecl* flex = ws.find_signature(d.flex_sig_name);
    const SignatureDecl* rigid = ws.find_signature(d.rigid_sig_name);
    out << logic_name(d.logic) << " " << d.name << " over " << d.flex_sig_name
        << ", " << d.rigid_sig_name << " : "
        << formula_text(d.formula, rigid->sig, flex->sig) << ";\n";
  }

  void operator()(const CheckDecl& d) {
    const FrameDecl* frame = ws.find_frame(d.frame);
    const theoria::StateTheory& st = frame->frame.theory_of(frame->states[0]);
    out << "check " << logic_name(d.logic) << " " << d.frame << " " << d.interp
        << " " << d.start;
    if (d.bound) out << " bound " << *d.bound;
    if (!d.quant.empty()) out << " quant " << d.quant;
    out << " : " << formula_text(d.formula, st.rigid_sig, st.flexible_sig)
        << ";\n";
  }

  void operator()(const BudgetDecl& d) {
    out << "budget { depth " << d.budget.max_term_depth << "; instances "
        << d.budget.max_instantiations << "; }\n";
  }
};

}  // namespace

std::string print(const Workspace& w) {
  std::ostringstream out;
  bool first = true;
  for (const auto& d : w.decls) {
    if (!first) out << "\n";
    first = false;
    std::visit(DeclPrinter{w, out}, d);
  }
  return out.str();
}

std::string print_term(const GroundTerm& t, const EqSignature& rigid,
                       const EqSignature& flexible) {
  PrintCtx ctx;
  ctx.rigid = &rigid;
  ctx.flexible = &flexible;
  return term_text(t, ctx, false);
}

std::string print_sentence(const EqSentence& s, const EqSignature& rigid,
                           const EqSignature& flexible) {
  PrintCtx ctx;
  ctx.rigid = &rigid;
  ctx.flexible = &flexible;
  return sentence_text(s, ctx);
}

std::string formula_to_string(const LogicFormula& f, const EqSignature& rigid,
                              const EqSignature& flexible) {
  return formula_text(f, rigid, flexible);
}

}  // namespace relkit::dsl
