#pragma once

#include <cexplain/check.hpp>
#include <cexplain/error.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/theory.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cexplain {

/// Source text of a parsed model and the positions of its formula nodes.
struct SourceModel {
  std::string path;
  std::string text;
  SpanMap spans;
};

/// Result of parse_model(): a checked Theory, or the diagnostics that
/// prevented one.
struct ModelParse {
  std::optional<Theory> theory;
  std::vector<Diagnostic> diagnostics;
  SourceModel source;

  explicit operator bool() const { return theory.has_value(); }
};

template <class T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  explicit operator bool() const { return value.has_value(); }
};

namespace detail {

enum class Tok {
  ident, number,
  lbrace, rbrace, lparen, rparen, comma, colon, dot,
  define,   // :=
  equal,    // =
  nequal,   // !=
  bang,     // !
  amp,      // &
  bar,      // |
  arrow,    // ->
  dblarrow, // <->
  end,
  bad,
};

struct Token {
  Tok kind;
  std::string_view text;
  Span span;
};

inline const char* describe(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::colon: return "':'";
    case Tok::dot: return "'.'";
    case Tok::define: return "':='";
    case Tok::equal: return "'='";
    case Tok::nequal: return "'!='";
    case Tok::bang: return "'!'";
    case Tok::amp: return "'&'";
    case Tok::bar: return "'|'";
    case Tok::arrow: return "'->'";
    case Tok::dblarrow: return "'<->'";
    case Tok::end: return "end of input";
    case Tok::bad: return "invalid character";
  }
  return "token";
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0, line = 1, col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  };
  auto emit = [&](Tok kind, std::size_t len) {
    Span s{pos, line, col, line, col + len};
    out.push_back({kind, src.substr(pos, len), s});
    advance(len);
  };

  while (pos < src.size()) {
    const char c = src[pos];
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (pos + n < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos + n])) || src[pos + n] == '_'))
        ++n;
      emit(Tok::ident, n);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (pos + n < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + n]))) ++n;
      emit(Tok::number, n);
      continue;
    }
    auto next_is = [&](std::string_view s) { return src.substr(pos, s.size()) == s; };
    if (next_is("<->")) { emit(Tok::dblarrow, 3); continue; }
    if (next_is("->")) { emit(Tok::arrow, 2); continue; }
    if (next_is(":=")) { emit(Tok::define, 2); continue; }
    if (next_is("!=")) { emit(Tok::nequal, 2); continue; }
    switch (c) {
      case '{': emit(Tok::lbrace, 1); continue;
      case '}': emit(Tok::rbrace, 1); continue;
      case '(': emit(Tok::lparen, 1); continue;
      case ')': emit(Tok::rparen, 1); continue;
      case ',': emit(Tok::comma, 1); continue;
      case ':': emit(Tok::colon, 1); continue;
      case '.': emit(Tok::dot, 1); continue;
      case '=': emit(Tok::equal, 1); continue;
      case '!': emit(Tok::bang, 1); continue;
      case '&': emit(Tok::amp, 1); continue;
      case '|': emit(Tok::bar, 1); continue;
      default: {
        // One token per UTF-8 sequence keeps spans on character boundaries.
        std::size_t n = 1;
        while (pos + n < src.size() && (static_cast<unsigned char>(src[pos + n]) & 0xC0) == 0x80) ++n;
        emit(Tok::bad, n);
        continue;
      }
    }
  }
  out.push_back({Tok::end, src.substr(src.size()), Span{pos, line, col, line, col}});
  return out;
}

inline bool is_statement_keyword(std::string_view s) {
  return s == "sort" || s == "pred" || s == "def" || s == "axiom" || s == "goal" || s == "interest";
}

inline bool is_reserved(std::string_view s) {
  return is_statement_keyword(s) || s == "forall" || s == "exists";
}

struct ParseFailure {
  Diagnostic diagnostic;
};

class Parser {
 public:
  Parser(std::string_view src, Theory& theory, SpanMap& spans)
      : toks_(lex(src)), theory_(theory), spans_(spans) {}

  std::vector<Diagnostic> parse_model() {
    while (!at(Tok::end)) {
      try {
        statement();
      } catch (const ParseFailure& f) {
        diags_.push_back(f.diagnostic);
        recover();
      }
    }
    if (diags_.empty() && !theory_.goal)
      diags_.push_back({"missing-goal", "the model has no goal statement", "model",
                        toks_.back().span});
    return std::move(diags_);
  }

  Parsed<Formula> parse_formula_only(std::vector<std::pair<std::string, std::string>> scope) {
    scope_ = std::move(scope);
    Parsed<Formula> out;
    try {
      Formula f = formula();
      expect(Tok::end, "after formula");
      out.value = std::move(f);
    } catch (const ParseFailure& fail) {
      out.diagnostics.push_back(fail.diagnostic);
    }
    return out;
  }

 private:
  // ---- token helpers -----------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::ident) && peek().text == w; }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    last_ = t.span;
    return t;
  }

  [[noreturn]] void fail(const std::string& code, const std::string& msg, const Span& at) const {
    throw ParseFailure{{code, msg, where_, at}};
  }
  [[noreturn]] void unexpected(const char* what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + std::string(t.text) + "'";
    if (t.kind == Tok::bad)
      fail("lexical", "invalid character " + found, t.span);
    fail("syntax", std::string("expected ") + what + ", found " + found, t.span);
  }
  const Token& expect(Tok k, const char* context) {
    if (!at(k)) unexpected((std::string(describe(k)) + " " + context).c_str());
    return take();
  }
  std::string identifier(const char* what) {
    if (!at(Tok::ident)) unexpected(what);
    const Token& t = peek();
    if (is_reserved(t.text))
      fail("syntax", "'" + std::string(t.text) + "' is a keyword, expected " + what, t.span);
    return std::string(take().text);
  }
  static Span join(const Span& a, const Span& b) {
    return Span{a.offset, a.line, a.column, b.end_line, b.end_column};
  }
  Formula mark(Formula f, const Span& start) {
    spans_[f.identity()] = join(start, last_);
    return f;
  }

  void recover() {
    // Skip at least one token, then resume at the next statement keyword.
    if (!at(Tok::end)) take();
    while (!at(Tok::end) && !(at(Tok::ident) && is_statement_keyword(peek().text))) take();
  }

  // ---- statements --------------------------------------------------------

  void statement() {
    if (!at(Tok::ident) || !is_statement_keyword(peek().text))
      unexpected("a statement (sort, pred, def, axiom, goal, interest)");
    const Token kw = take();
    where_ = std::string(kw.text);
    if (kw.text == "sort") return sort_decl();
    if (kw.text == "pred") return pred_decl();
    if (kw.text == "def") return def_decl(kw.span);
    if (kw.text == "axiom") {
      where_ = "axiom " + std::to_string(theory_.axioms.size() + 1);
      scope_.clear();
      theory_.axioms.push_back(formula());
      return;
    }
    if (kw.text == "goal") {
      if (theory_.goal) fail("duplicate-goal", "the model already has a goal", kw.span);
      scope_.clear();
      theory_.goal = formula();
      return;
    }
    interest_decl();
  }

  void sort_decl() {
    const Span at_name = peek().span;
    Sort s{identifier("a sort name"), {}};
    where_ = "sort " + s.name;
    if (theory_.find_sort(s.name)) fail("duplicate-sort", "sort '" + s.name + "' declared twice", at_name);
    expect(Tok::equal, "after sort name");
    expect(Tok::lbrace, "to open the constant list");
    if (at(Tok::rbrace)) fail("empty-sort", "sort '" + s.name + "' needs at least one constant", peek().span);
    for (;;) {
      const Span at_c = peek().span;
      std::string c = identifier("a constant name");
      if (theory_.sort_of_constant(c) ||
          std::find(s.constants.begin(), s.constants.end(), c) != s.constants.end())
        fail("duplicate-constant", "constant '" + c + "' declared more than once", at_c);
      s.constants.push_back(std::move(c));
      if (at(Tok::comma)) {
        take();
        continue;
      }
      expect(Tok::rbrace, "to close the constant list");
      break;
    }
    theory_.sorts.push_back(std::move(s));
  }

  void pred_decl() {
    const Span at_name = peek().span;
    PredicateDecl p{identifier("a predicate name"), {}};
    where_ = "predicate " + p.name;
    if (theory_.find_predicate(p.name))
      fail("duplicate-predicate", "predicate '" + p.name + "' declared twice", at_name);
    if (at(Tok::lparen)) {
      take();
      if (!at(Tok::rparen)) {
        for (;;) {
          const Span at_s = peek().span;
          std::string s = identifier("a sort name");
          if (!theory_.find_sort(s)) fail("undeclared-sort", "sort '" + s + "' is not declared", at_s);
          p.arg_sorts.push_back(std::move(s));
          if (!at(Tok::comma)) break;
          take();
        }
      }
      expect(Tok::rparen, "to close the argument sorts");
    }
    theory_.predicates.push_back(std::move(p));
  }

  void def_decl(const Span& start) {
    const Span at_name = peek().span;
    std::string head = identifier("the defined predicate");
    where_ = "definition of " + head;
    const PredicateDecl* decl = theory_.find_predicate(head);
    if (!decl) fail("undeclared-predicate", "predicate '" + head + "' must be declared before its definition", at_name);
    if (theory_.find_definition(head))
      fail("duplicate-definition", "predicate '" + head + "' already has a definition", at_name);
    std::vector<Term> params;
    if (at(Tok::lparen)) {
      take();
      if (!at(Tok::rparen)) {
        for (;;) {
          const Span at_p = peek().span;
          std::string v = identifier("a parameter name");
          if (params.size() >= decl->arity())
            fail("arity-mismatch", "'" + head + "' is declared with " + std::to_string(decl->arity()) + " arguments", at_p);
          for (const auto& q : params)
            if (q.name == v) fail("duplicate-parameter", "parameter '" + v + "' repeated", at_p);
          params.push_back(Term::variable(std::move(v), decl->arg_sorts[params.size()]));
          if (!at(Tok::comma)) break;
          take();
        }
      }
      expect(Tok::rparen, "to close the parameter list");
    }
    if (params.size() != decl->arity())
      fail("arity-mismatch",
           "'" + head + "' is declared with " + std::to_string(decl->arity()) + " arguments, defined with " +
               std::to_string(params.size()),
           join(start, last_));
    expect(Tok::define, "after the definition head");
    scope_.clear();
    for (const auto& p : params) scope_.emplace_back(p.name, p.sort);
    Formula body = formula();
    scope_.clear();
    theory_.definitions.push_back({std::move(head), std::move(params), std::move(body)});
  }

  void interest_decl() {
    const Span at_name = peek().span;
    std::string name = identifier("a predicate name");
    where_ = "interest " + name;
    if (!theory_.find_predicate(name))
      fail("undeclared-predicate", "interest given for undeclared predicate '" + name + "'", at_name);
    expect(Tok::equal, "after the predicate name");
    const Token& n = expect(Tok::number, "(a non-negative interest tier)");
    if (n.text.size() > 9) fail("bad-interest", "interest tier too large", n.span);
    theory_.interest_overrides[name] = std::stoi(std::string(n.text));
  }

  // ---- formulas ----------------------------------------------------------

  Formula formula() { return equivalence(); }

  Formula equivalence() {
    const Span start = peek().span;
    Formula lhs = implication();
    while (at(Tok::dblarrow)) {
      take();
      Formula rhs = implication();
      lhs = mark(Formula::iff(std::move(lhs), std::move(rhs)), start);
    }
    return lhs;
  }

  Formula implication() {
    const Span start = peek().span;
    Formula lhs = disjunction();
    if (!at(Tok::arrow)) return lhs;
    take();
    Formula rhs = implication();
    return mark(Formula::implies(std::move(lhs), std::move(rhs)), start);
  }

  Formula disjunction() {
    const Span start = peek().span;
    std::vector<Formula> ops{conjunction()};
    while (at(Tok::bar)) {
      take();
      ops.push_back(conjunction());
    }
    if (ops.size() == 1) return std::move(ops.front());
    return mark(Formula::disj(std::move(ops)), start);
  }

  Formula conjunction() {
    const Span start = peek().span;
    std::vector<Formula> ops{unary()};
    while (at(Tok::amp)) {
      take();
      ops.push_back(unary());
    }
    if (ops.size() == 1) return std::move(ops.front());
    return mark(Formula::conj(std::move(ops)), start);
  }

  Formula unary() {
    const Span start = peek().span;
    if (at(Tok::bang)) {
      take();
      Formula f = unary();
      return mark(Formula::negate(std::move(f)), start);
    }
    return primary();
  }

  Formula primary() {
    const Span start = peek().span;
    if (at(Tok::lparen)) {
      take();
      Formula f = formula();
      expect(Tok::rparen, "to close the parenthesis");
      return f;
    }
    if (at_word("forall") || at_word("exists")) {
      const bool universal = take().text == "forall";
      std::string var = identifier("a variable name");
      expect(Tok::colon, "after the bound variable");
      const Span at_sort = peek().span;
      std::string sort = identifier("a sort name");
      if (!theory_.find_sort(sort)) fail("undeclared-sort", "sort '" + sort + "' is not declared", at_sort);
      expect(Tok::dot, "after the quantifier sort");
      scope_.emplace_back(var, sort);
      Formula body = formula();
      scope_.pop_back();
      return mark(Formula::quantifier(universal ? FormulaKind::forall : FormulaKind::exists,
                                      std::move(var), std::move(sort), std::move(body)),
                  start);
    }
    if (!at(Tok::ident)) unexpected("a formula");
    if (is_reserved(peek().text))
      fail("syntax", "unexpected keyword '" + std::string(peek().text) + "'", peek().span);

    if (peek(1).kind == Tok::equal || peek(1).kind == Tok::nequal) {
      Term lhs = term();
      const bool negated = take().kind == Tok::nequal;
      Term rhs = term();
      if (lhs.sort != rhs.sort)
        fail("sort-mismatch", "cannot compare '" + lhs.name + "' (" + lhs.sort + ") with '" + rhs.name + "' (" + rhs.sort + ")",
             join(start, last_));
      Formula e = mark(Formula::eq(std::move(lhs), std::move(rhs)), start);
      return negated ? mark(Formula::negate(std::move(e)), start) : e;
    }

    const Token name = take();
    const PredicateDecl* decl = theory_.find_predicate(name.text);
    if (!decl) {
      if (lookup_variable(name.text) || theory_.sort_of_constant(name.text))
        fail("syntax", "'" + std::string(name.text) + "' is a term, not a formula", name.span);
      fail("undeclared-predicate", "predicate '" + std::string(name.text) + "' is not declared", name.span);
    }
    std::vector<Term> args;
    if (at(Tok::lparen)) {
      take();
      if (!at(Tok::rparen)) {
        for (;;) {
          const Span at_arg = peek().span;
          Term t = term();
          const std::size_t i = args.size();
          if (i >= decl->arity())
            fail("arity-mismatch", "'" + decl->name + "' takes " + std::to_string(decl->arity()) + " arguments", at_arg);
          if (t.sort != decl->arg_sorts[i])
            fail("sort-mismatch",
                 "argument " + std::to_string(i + 1) + " of '" + decl->name + "' must have sort " +
                     decl->arg_sorts[i] + ", '" + t.name + "' has sort " + t.sort,
                 at_arg);
          args.push_back(std::move(t));
          if (!at(Tok::comma)) break;
          take();
        }
      }
      expect(Tok::rparen, "to close the argument list");
    }
    if (args.size() != decl->arity())
      fail("arity-mismatch",
           "'" + decl->name + "' takes " + std::to_string(decl->arity()) + " arguments, got " +
               std::to_string(args.size()),
           join(start, last_));
    return mark(Formula::atom(decl->name, std::move(args)), start);
  }

  const std::pair<std::string, std::string>* lookup_variable(std::string_view name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return &*it;
    return nullptr;
  }

  Term term() {
    const Span at_t = peek().span;
    std::string name = identifier("a variable or constant");
    if (const auto* v = lookup_variable(name)) return Term::variable(std::move(name), v->second);
    if (const Sort* s = theory_.sort_of_constant(name)) return Term::constant(std::move(name), s->name);
    fail("free-variable", "'" + name + "' is neither a bound variable nor a declared constant", at_t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Span last_{};
  Theory& theory_;
  SpanMap& spans_;
  std::vector<std::pair<std::string, std::string>> scope_;
  std::vector<Diagnostic> diags_;
  std::string where_;
};

}  // namespace detail

/// Parses `.vfy` source text into a checked Theory.
inline ModelParse parse_model(std::string text, std::string path = {}) {
  ModelParse out;
  out.source.path = std::move(path);
  out.source.text = std::move(text);
  Theory t;
  detail::Parser parser(out.source.text, t, out.source.spans);
  out.diagnostics = parser.parse_model();
  if (out.diagnostics.empty()) out.diagnostics = check_theory(t, &out.source.spans);
  if (out.diagnostics.empty()) out.theory = std::move(t);
  return out;
}

/// Parses one formula against the signature of `t`. `scope` lists variables
/// (name, sort) that may occur free.
inline Parsed<Formula> parse_formula(std::string_view text, const Theory& t,
                                     std::vector<std::pair<std::string, std::string>> scope = {}) {
  Theory sig = t;
  SpanMap spans;
  detail::Parser parser(text, sig, spans);
  return parser.parse_formula_only(std::move(scope));
}

/// Parses a ground literal such as `!safe(rt2131)` or `a != b`.
inline Parsed<Literal> parse_literal(std::string_view text, const Theory& t) {
  Parsed<Literal> out;
  auto f = parse_formula(text, t);
  out.diagnostics = std::move(f.diagnostics);
  if (!f.value) return out;
  bool positive = true;
  Formula a = *f.value;
  if (a.is(FormulaKind::negation)) {
    positive = false;
    a = a.operand();
  }
  if (!a.is_literal_atom() || !is_ground(a)) {
    out.diagnostics.push_back({"not-a-literal", "'" + std::string(text) + "' is not a ground literal",
                               "literal", Span{0, 1, 1, 1, text.size() + 1}});
    return out;
  }
  out.value = Literal{positive, std::move(a)};
  return out;
}

}  // namespace cexplain
