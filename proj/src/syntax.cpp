#include "tldforge/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace tldf {

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, Var, Int, Float, Quoted, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

struct ParseError {
  std::string message;
  int line;
  int column;
};

struct Utf8Alias {
  std::string_view bytes;
  Tok kind;
  std::string_view text;
};

constexpr Utf8Alias kUtf8Aliases[] = {
    {"\xE2\x86\xA6", Tok::Punct, "->"},     // maps-to
    {"\xE2\x86\x92", Tok::Punct, "->"},     // right arrow
    {"\xE2\x88\x9E", Tok::Ident, "inf"},    // infinity
    {"\xE2\x88\x88", Tok::Ident, "in"},     // element-of
    {"\xE2\x87\x94", Tok::Punct, "<=>"},    // iff
    {"\xE2\x87\x92", Tok::Punct, "=>"},     // implies
    {"\xE2\x88\xA7", Tok::Punct, "/\\"},    // and
    {"\xE2\x88\xA8", Tok::Punct, "\\/"},    // or
    {"\xC2\xAC", Tok::Punct, "~"},          // not
    {"\xE2\x88\x83", Tok::Ident, "exists"}, {"\xE2\x88\x80", Tok::Ident, "forall"},
    {"\xE2\x80\xA2", Tok::Punct, "."},      // bullet
};

constexpr std::string_view kPuncts[] = {
    "<=>", "::=", "=>", "==", "/\\", "\\/", "->", "(", ")", "[", "]", "{",
    "}",   ",",   ".",  "|",  ":",   "<",   ">",  "-", "+", "*", "=", "~", ";"};

class Lexer {
 public:
  Lexer(std::string_view src, Diagnostics& diags, const std::string& file)
      : src_(src), diags_(diags), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (i_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const unsigned char c = static_cast<unsigned char>(src_[i_]);
      if (std::isalpha(c) || c == '_') {
        std::size_t j = i_;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) ||
                src_[j] == '_'))
          ++j;
        t.text = std::string(src_.substr(i_, j - i_));
        t.kind = (std::isupper(c) || c == '_') ? Tok::Var : Tok::Ident;
        advance(j - i_);
      } else if (std::isdigit(c)) {
        std::size_t j = i_;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        t.kind = Tok::Int;
        if (j + 1 < src_.size() && src_[j] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[j + 1]))) {
          ++j;
          while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
          t.kind = Tok::Float;
        }
        t.text = std::string(src_.substr(i_, j - i_));
        advance(j - i_);
      } else if (c == '\'' || c == '"') {
        t.kind = c == '\'' ? Tok::Quoted : Tok::String;
        t.text = quoted(static_cast<char>(c));
      } else if (c >= 0x80) {
        bool matched = false;
        for (const auto& a : kUtf8Aliases) {
          if (src_.substr(i_).starts_with(a.bytes)) {
            t.kind = a.kind;
            t.text = std::string(a.text);
            i_ += a.bytes.size();
            ++col_;
            matched = true;
            break;
          }
        }
        if (!matched) {
          error("unexpected character");
          skip_utf8();
          continue;
        }
      } else {
        bool matched = false;
        for (auto p : kPuncts) {
          if (src_.substr(i_).starts_with(p)) {
            t.kind = Tok::Punct;
            t.text = std::string(p);
            advance(p.size());
            matched = true;
            break;
          }
        }
        if (!matched) {
          error(std::string("unexpected character '") + src_[i_] + "'");
          advance(1);
          continue;
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k) {
      if (src_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++i_;
    }
  }

  void skip_utf8() {
    advance(1);
    while (i_ < src_.size() &&
           (static_cast<unsigned char>(src_[i_]) & 0xC0) == 0x80)
      ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      const unsigned char c = static_cast<unsigned char>(src_[i_]);
      if (std::isspace(c)) {
        advance(1);
      } else if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance(1);
      } else {
        return;
      }
    }
  }

  std::string quoted(char q) {
    const int line = line_;
    const int col = col_;
    advance(1);
    std::string out;
    while (i_ < src_.size() && src_[i_] != q) {
      char ch = src_[i_];
      if (ch == '\\' && i_ + 1 < src_.size()) {
        advance(1);
        ch = src_[i_];
        if (ch == 'n') ch = '\n';
      }
      out += ch;
      advance(1);
    }
    if (i_ >= src_.size()) {
      diags_.push_back({Severity::Error, "SyntaxError",
                        "unterminated quoted text", file_, line, col});
      return out;
    }
    advance(1);
    return out;
  }

  void error(std::string msg) {
    diags_.push_back(
        {Severity::Error, "SyntaxError", std::move(msg), file_, line_, col_});
  }

  std::string_view src_;
  Diagnostics& diags_;
  const std::string& file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::string_view src, std::string file) : file_(std::move(file)) {
    toks_ = Lexer(src, diags_, file_).run();
  }

  Diagnostics& diags() { return diags_; }
  const std::string& file() const { return file_; }

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool at_ident(std::string_view w, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == w;
  }
  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError{msg + ", found " + found, t.line, t.column};
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'");
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    return next().text;
  }
  std::string expect_var(const char* what) {
    if (peek().kind != Tok::Var) fail(std::string("expected ") + what);
    return next().text;
  }
  SourcePos here() const { return {peek().line, peek().column}; }
  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

  void report(const ParseError& e, std::string code = "SyntaxError") {
    diags_.push_back(
        {Severity::Error, std::move(code), e.message, file_, e.line, e.column});
  }
  void error_at(SourcePos p, std::string code, std::string msg,
                Severity sev = Severity::Error) {
    diags_.push_back({sev, std::move(code), std::move(msg), file_,
                      std::max(1, p.line), std::max(1, p.column)});
  }

  // Skips to just past a terminating '.' that ends its line.
  void resync() {
    while (!at_end()) {
      const Token& t = next();
      if (t.kind == Tok::Punct && t.text == "." &&
          (at_end() || peek().line > t.line))
        return;
    }
  }

  // ------------------------------------------------------------ terms

  Term term() { return additive(); }

  Term additive() {
    Term lhs = multiplicative();
    while (at_punct("+") || at_punct("-")) {
      std::string op = next().text;
      Term rhs = multiplicative();
      lhs = Term::compound(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Term multiplicative() {
    Term lhs = unary();
    while (at_punct("*")) {
      next();
      Term rhs = unary();
      lhs = Term::compound("*", {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Term unary() {
    if (at_punct("-")) {
      next();
      const Token& t = peek();
      if (t.kind == Tok::Int || t.kind == Tok::Float) {
        next();
        return Term::atom("-" + t.text);
      }
      if (t.kind == Tok::Ident && !at_punct("(", 1)) {
        next();
        return Term::atom("-" + t.text);
      }
      return Term::compound("-", {unary()});
    }
    return primary_term();
  }

  std::vector<Term> term_args() {
    std::vector<Term> args;
    expect("(");
    if (!at_punct(")")) {
      args.push_back(term());
      while (accept(",")) args.push_back(term());
    }
    expect(")");
    return args;
  }

  Term primary_term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var:
        next();
        return Term::var(t.text);
      case Tok::Int:
      case Tok::Float:
        next();
        return Term::atom(t.text);
      case Tok::Ident:
      case Tok::Quoted: {
        std::string name = next().text;
        if (at_punct("(")) return Term::compound(name, term_args());
        return Term::atom(name);
      }
      case Tok::Punct:
        if (t.text == "[") return list_term();
        if (t.text == "(") {
          next();
          Term inner = term();
          expect(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expected a term");
  }

  Term list_term() {
    expect("[");
    if (accept("]")) return Term::atom("[]");
    std::vector<Term> elems;
    elems.push_back(term());
    while (accept(",")) elems.push_back(term());
    Term tail = Term::atom("[]");
    if (accept("|")) tail = term();
    expect("]");
    for (auto it = elems.rbegin(); it != elems.rend(); ++it)
      tail = Term::compound("[|]", {std::move(*it), std::move(tail)});
    return tail;
  }

  // ------------------------------------------------------------ formulas

  Formula formula() {
    SourcePos p = here();
    Formula lhs = implication();
    while (at_punct("<=>")) {
      next();
      Formula rhs = implication();
      lhs = Formula::iff(std::move(lhs), std::move(rhs), p);
    }
    return lhs;
  }

  Formula implication() {
    SourcePos p = here();
    Formula lhs = disjunction();
    if (at_punct("=>")) {
      next();
      Formula rhs = implication();
      return Formula::implies(std::move(lhs), std::move(rhs), p);
    }
    return lhs;
  }

  Formula disjunction() {
    SourcePos p = here();
    std::vector<Formula> parts{conjunction()};
    while (accept("\\/") || accept(";")) parts.push_back(conjunction());
    return parts.size() == 1 ? parts.front() : Formula::disj(parts, p);
  }

  Formula conjunction() {
    SourcePos p = here();
    std::vector<Formula> parts{unary_formula()};
    while (accept("/\\") || accept(",")) parts.push_back(unary_formula());
    return parts.size() == 1 ? parts.front() : Formula::conj(parts, p);
  }

  Formula unary_formula() {
    SourcePos p = here();
    if (accept("~")) return Formula::negation(unary_formula(), p);
    if ((at_ident("exists") || at_ident("forall")) && peek(1).kind == Tok::Var)
      return quantified();
    return primary_formula();
  }

  Formula quantified() {
    SourcePos p = here();
    const bool is_exists = next().text == "exists";
    std::vector<std::pair<std::string, std::string>> binders;
    do {
      std::string v = expect_var("a quantified variable");
      expect(":");
      std::string type = expect_ident("a type name");
      binders.emplace_back(std::move(v), std::move(type));
    } while (accept(","));
    expect(".");
    Formula body = formula();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      body = is_exists ? Formula::exists(it->first, it->second, body, p)
                       : Formula::forall(it->first, it->second, body, p);
    return body;
  }

  Formula primary_formula() {
    SourcePos p = here();
    if (at_punct("(")) {
      const std::size_t m = mark();
      try {
        next();
        Formula inner = formula();
        expect(")");
        if (!at_punct("=") && !at_punct("+") && !at_punct("-") &&
            !at_punct("*"))
          return inner;
      } catch (const ParseError&) {
      }
      reset(m);
    }
    Term t = term();
    if (accept("=")) {
      Term rhs = term();
      return Formula::eq(std::move(t), std::move(rhs), p);
    }
    if (t.is_var()) {
      throw ParseError{"a variable is not a formula", p.line, p.column};
    }
    if (t.is_constant() && t.name() == "true") return Formula::truth(p);
    if (t.is_constant() && t.name() == "false") return Formula::falsity(p);
    if (t.name() == "[|]" || t.name() == "[]" || is_integer_literal(t.name()) ||
        is_float_literal(t.name()))
      throw ParseError{"expected a formula", p.line, p.column};
    return Formula::atom(t.name(), t.args(), p);
  }

 private:
  std::string file_;
  Diagnostics diags_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- types

std::string type_name(Parser& ps) {
  if (ps.peek().kind == Tok::Ident) return ps.next().text;
  ps.fail("expected a type name");
}

TypeCase type_case(Parser& ps) {
  TypeCase c;
  if (ps.accept("[")) {
    if (ps.accept("]")) {
      c.functor = "[]";
      return c;
    }
    c.functor = "[|]";
    c.components.push_back(type_name(ps));
    ps.expect("|");
    c.components.push_back(type_name(ps));
    ps.expect("]");
    return c;
  }
  const Token& t = ps.peek();
  if (t.kind == Tok::Int) {
    c.functor = ps.next().text;
    return c;
  }
  if (ps.at_punct("-") && ps.peek(1).kind == Tok::Int) {
    ps.next();
    c.functor = "-" + ps.next().text;
    return c;
  }
  if (t.kind != Tok::Ident && t.kind != Tok::Quoted)
    ps.fail("expected a constructor");
  c.functor = ps.next().text;
  if (ps.accept("(")) {
    c.components.push_back(type_name(ps));
    while (ps.accept(",")) c.components.push_back(type_name(ps));
    ps.expect(")");
  }
  return c;
}

std::vector<TypeCase> enum_cases(Parser& ps) {
  std::vector<TypeCase> cases;
  ps.expect("{");
  do {
    const Token& t = ps.peek();
    if (t.kind != Tok::Ident && t.kind != Tok::Quoted && t.kind != Tok::Int)
      ps.fail("expected an enumeration atom");
    cases.push_back({ps.next().text, {}});
  } while (ps.accept(","));
  ps.expect("}");
  return cases;
}

TypeDef type_decl(Parser& ps) {
  TypeDef def;
  def.pos = ps.here();
  def.file = ps.file();
  def.name = ps.expect_ident("a type name");
  if (ps.accept("==")) {
    def.form = TypeDef::Form::Alias;
    def.alias = type_name(ps);
  } else {
    ps.expect("::=");
    def.form = TypeDef::Form::Cases;
    if (ps.at_ident("enum")) {
      ps.next();
      def.cases = enum_cases(ps);
    } else if (ps.peek().kind == Tok::Var && ps.at_ident("in", 1)) {
      // X in {a1, ..., am}
      ps.next();
      ps.next();
      def.cases = enum_cases(ps);
    } else {
      def.cases.push_back(type_case(ps));
      while (ps.accept("|")) def.cases.push_back(type_case(ps));
    }
  }
  ps.expect(".");
  return def;
}

// ---------------------------------------------------------------- specs

Bound bound(Parser& ps) {
  const Token& t = ps.peek();
  if (t.kind == Tok::Int) {
    ps.next();
    return Bound::finite(std::stoull(t.text));
  }
  if (ps.accept("*")) return Bound::star();
  if (ps.at_ident("inf")) {
    ps.next();
    return Bound::infinite();
  }
  throw ParseError{"malformed multiplicity bound '" + t.text + "'", t.line,
                   t.column};
}

Multiplicity multiplicity(Parser& ps) {
  const Token start = ps.peek();
  try {
    ps.expect("<");
    Multiplicity m;
    m.min = bound(ps);
    ps.expect("-");
    m.max = bound(ps);
    ps.expect(">");
    return m;
  } catch (ParseError& e) {
    e.message = "malformed multiplicity: " + e.message;
    e.line = start.line;
    e.column = start.column;
    throw;
  }
}

struct ModeError {
  std::string keyword;
  SourcePos pos;
};

Mode mode_keyword(Parser& ps) {
  const Token& t = ps.peek();
  if (t.kind != Tok::Ident) ps.fail("expected a mode");
  ps.next();
  auto m = Mode::parse(t.text);
  if (!m) throw ModeError{t.text, {t.line, t.column}};
  return *m;
}

Directionality directionality(Parser& ps) {
  Directionality d;
  d.pos = ps.here();
  ps.expect("(");
  if (!ps.at_punct(")")) {
    do {
      ModePair mp;
      mp.in = mode_keyword(ps);
      mp.out = mp.in;
      if (ps.accept("->")) mp.out = mode_keyword(ps);
      d.modes.push_back(mp);
    } while (ps.accept(","));
  }
  ps.expect(")");
  ps.expect(":");
  d.mult = multiplicity(ps);
  if (ps.accept(":")) {
    ps.expect("{");
    if (!ps.at_punct("}")) {
      do {
        ps.expect("(");
        if (ps.peek().kind != Tok::Int) ps.fail("expected a parameter index");
        int i = std::stoi(ps.next().text);
        ps.expect(",");
        if (ps.peek().kind != Tok::Int) ps.fail("expected a parameter index");
        int j = std::stoi(ps.next().text);
        ps.expect(")");
        d.nosh.emplace_back(i, j);
      } while (ps.accept(","));
    }
    ps.expect("}");
  }
  ps.expect(".");
  return d;
}

std::string string_literal(Parser& ps) {
  if (ps.peek().kind != Tok::String) ps.fail("expected a quoted string");
  return ps.next().text;
}

void finish_spec(Parser& ps, Spec& s) {
  for (std::size_t i = 0; i < s.params.size(); ++i)
    if (s.param_types[i].empty())
      ps.error_at(s.pos, "MissingType",
                  "procedure " + s.name + ": parameter " + s.params[i] +
                      " has no type");
}

// ---------------------------------------------------------------- tlds

Formula close_implicit(const Formula& def, const std::vector<TypedVar>& params,
                       SourcePos pos) {
  std::vector<std::string> free = free_variable_names(def);
  std::vector<std::string> implicit;
  for (auto& v : free)
    if (std::none_of(params.begin(), params.end(),
                     [&](const TypedVar& p) { return p.name == v; }))
      implicit.push_back(v);
  Formula out = def;
  for (auto it = implicit.rbegin(); it != implicit.rend(); ++it)
    out = Formula::exists(*it, std::string(kTermType), out, pos);
  return out;
}

TypedLogicDescription tld_decl(Parser& ps) {
  TypedLogicDescription tld;
  tld.pos = ps.here();
  tld.file = ps.file();
  if (ps.peek().kind != Tok::Ident && ps.peek().kind != Tok::Quoted)
    ps.fail("expected a predicate name");
  tld.predicate = ps.next().text;
  if (ps.accept("(")) {
    do {
      SourcePos p = ps.here();
      std::string name = ps.expect_var("a parameter variable");
      ps.expect(":");
      std::string type = ps.expect_ident("a type name");
      if (std::any_of(tld.params.begin(), tld.params.end(),
                      [&](const TypedVar& v) { return v.name == name; }))
        throw ParseError{"duplicate parameter " + name, p.line, p.column};
      tld.params.push_back({std::move(name), std::move(type)});
    } while (ps.accept(","));
    ps.expect(")");
  }
  ps.expect("<=>");
  Formula def = ps.formula();
  ps.expect(".");
  tld.definition = close_implicit(def, tld.params, tld.pos);
  return tld;
}

// ---------------------------------------------------------------- printing

int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    case FormulaKind::Exists:
    case FormulaKind::Forall: return 0;
    default: return 6;
  }
}

void print(const Formula& f, int ctx, std::string& out);

void print_children(const Formula& f, std::string_view sep, int ctx,
                    std::string& out) {
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    if (i) out += sep;
    print(f.child(i), ctx, out);
  }
}

void print(const Formula& f, int ctx, std::string& out) {
  const int prec = precedence(f);
  const bool parens = prec < ctx || (prec == 0 && ctx > 0);
  if (parens) out += '(';
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; break;
    case FormulaKind::False: out += "false"; break;
    case FormulaKind::Eq:
      out += to_string(f.lhs()) + " = " + to_string(f.rhs());
      break;
    case FormulaKind::Atom:
      out += to_string(Term::compound(f.predicate(), f.args()));
      break;
    case FormulaKind::And: print_children(f, " /\\ ", 5, out); break;
    case FormulaKind::Or: print_children(f, " \\/ ", 4, out); break;
    case FormulaKind::Not:
      out += "~ ";
      print(f.child(0), 5, out);
      break;
    case FormulaKind::Implies:
      print(f.child(0), 3, out);
      out += " => ";
      print(f.child(1), 2, out);
      break;
    case FormulaKind::Iff:
      print(f.child(0), 1, out);
      out += " <=> ";
      print(f.child(1), 2, out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "exists " : "forall ";
      out += f.var() + ": " + f.type() + " . ";
      print(f.body(), 0, out);
      break;
  }
  if (parens) out += ')';
}

std::string print_header(const std::string& pred,
                         const std::vector<TypedVar>& params) {
  std::string out = to_string(Term::atom(pred));
  if (!params.empty()) {
    out += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) out += ", ";
      out += params[i].name + ": " + params[i].type;
    }
    out += ')';
  }
  return out;
}

std::string print_definition(const std::string& header, const Formula& def) {
  std::string out = header + " <=>\n";
  if (def.kind() == FormulaKind::Or) {
    for (std::size_t i = 0; i < def.children().size(); ++i) {
      out += i == 0 ? "      " : "   \\/ ";
      print(def.child(i), 4, out);
      out += '\n';
    }
    out += "   .\n";
  } else {
    out += "    ";
    print(def, 0, out);
    out += ".\n";
  }
  return out;
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string print_case(const TypeCase& c) {
  if (c.functor == "[]" && c.components.empty()) return "[]";
  if (c.functor == "[|]" && c.components.size() == 2)
    return "[" + c.components[0] + " | " + c.components[1] + "]";
  std::string out = to_string(Term::atom(c.functor));
  if (!c.components.empty()) {
    out += '(';
    for (std::size_t i = 0; i < c.components.size(); ++i) {
      if (i) out += ", ";
      out += c.components[i];
    }
    out += ')';
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- public API

Diagnostics parse_types_into(TypeEnv& env, std::string_view input,
                             std::string file) {
  Parser ps(input, std::move(file));
  while (!ps.at_end()) {
    try {
      TypeDef def = type_decl(ps);
      const SourcePos pos = def.pos;
      const std::string name = def.name;
      try {
        env.define(std::move(def));
      } catch (const Error& e) {
        ps.error_at(pos, e.code(), e.what());
      }
    } catch (const ParseError& e) {
      ps.report(e);
      ps.resync();
    }
  }
  return std::move(ps.diags());
}

Parsed<TypeEnv> parse_types(std::string_view input, std::string file) {
  Parsed<TypeEnv> out;
  out.diagnostics = parse_types_into(out.value, input, std::move(file));
  return out;
}

Parsed<std::vector<Spec>> parse_specs(std::string_view input,
                                      std::string file) {
  Parser ps(input, file);
  Parsed<std::vector<Spec>> out;
  Spec* cur = nullptr;
  auto need_current = [&]() -> Spec& {
    if (!cur) ps.fail("expected 'procedure' before this declaration");
    return *cur;
  };
  while (!ps.at_end()) {
    const std::size_t before = ps.diags().size();
    try {
      if (ps.at_ident("procedure")) {
        if (cur) finish_spec(ps, *cur);
        ps.next();
        Spec s;
        s.file = file;
        s.pos = ps.here();
        if (ps.peek().kind != Tok::Ident && ps.peek().kind != Tok::Quoted)
          ps.fail("expected a procedure name");
        s.name = ps.next().text;
        if (ps.accept("(")) {
          do {
            SourcePos p = ps.here();
            std::string v = ps.expect_var("a parameter variable");
            if (std::find(s.params.begin(), s.params.end(), v) !=
                s.params.end())
              throw ParseError{"duplicate parameter " + v, p.line, p.column};
            s.params.push_back(std::move(v));
          } while (ps.accept(","));
          ps.expect(")");
        }
        ps.expect(".");
        s.param_types.assign(s.params.size(), std::string());
        out.value.push_back(std::move(s));
        cur = &out.value.back();
      } else if (ps.at_ident("types") || ps.at_ident("type")) {
        Spec& s = need_current();
        ps.next();
        do {
          SourcePos p = ps.here();
          std::string v = ps.expect_var("a parameter variable");
          ps.expect(":");
          std::string t = ps.expect_ident("a type name");
          auto it = std::find(s.params.begin(), s.params.end(), v);
          if (it == s.params.end())
            throw ParseError{"unknown parameter " + v, p.line, p.column};
          s.param_types[static_cast<std::size_t>(it - s.params.begin())] = t;
        } while (ps.accept(","));
        ps.expect(".");
      } else if (ps.at_ident("relation")) {
        Spec& s = need_current();
        ps.next();
        s.relation = string_literal(ps);
        ps.expect(".");
      } else if (ps.at_ident("external")) {
        Spec& s = need_current();
        ps.next();
        s.external = string_literal(ps);
        ps.expect(".");
      } else if (ps.at_ident("dir") || ps.at_ident("directionality")) {
        Spec& s = need_current();
        ps.next();
        Directionality d = directionality(ps);
        if (d.modes.size() != s.params.size()) {
          ps.error_at(d.pos, "ArityMismatch",
                      "directionality has " + std::to_string(d.modes.size()) +
                          " modes but " + s.name + " has " +
                          std::to_string(s.params.size()) + " parameters");
        } else {
          s.dirs.push_back(std::move(d));
        }
      } else {
        ps.fail("expected a specification declaration");
      }
    } catch (const ParseError& e) {
      const bool mult = e.message.starts_with("malformed multiplicity");
      ps.report(e, mult ? "MalformedMultiplicity" : "SyntaxError");
      ps.resync();
    } catch (const ModeError& e) {
      ps.error_at(e.pos, "UnknownMode",
                  "unknown mode '" + e.keyword +
                      "' (expected ground, ngv, var, novar, gv, noground, any)");
      ps.resync();
    }
    (void)before;
  }
  if (cur) finish_spec(ps, *cur);
  out.diagnostics = std::move(ps.diags());
  return out;
}

Parsed<Spec> parse_spec(std::string_view input, std::string file) {
  auto all = parse_specs(input, file);
  Parsed<Spec> out;
  out.diagnostics = std::move(all.diagnostics);
  if (all.value.size() != 1) {
    out.diagnostics.push_back({Severity::Error, "SyntaxError",
                               "expected exactly one procedure, found " +
                                   std::to_string(all.value.size()),
                               file, 1, 1});
  }
  if (!all.value.empty()) out.value = std::move(all.value.front());
  return out;
}

Parsed<std::vector<TypedLogicDescription>> parse_tlds(std::string_view input,
                                                      std::string file) {
  Parser ps(input, std::move(file));
  Parsed<std::vector<TypedLogicDescription>> out;
  while (!ps.at_end()) {
    try {
      out.value.push_back(tld_decl(ps));
    } catch (const ParseError& e) {
      const bool dup = e.message.starts_with("duplicate parameter");
      ps.report(e, dup ? "DuplicateParameter" : "SyntaxError");
      ps.resync();
    }
  }
  out.diagnostics = std::move(ps.diags());
  return out;
}

Parsed<TypedLogicDescription> parse_tld(std::string_view input,
                                        std::string file) {
  auto all = parse_tlds(input, file);
  Parsed<TypedLogicDescription> out;
  out.diagnostics = std::move(all.diagnostics);
  if (all.value.size() != 1 && !has_errors(out.diagnostics))
    out.diagnostics.push_back({Severity::Error, "SyntaxError",
                               "expected exactly one logic description, found " +
                                   std::to_string(all.value.size()),
                               file, 1, 1});
  if (!all.value.empty()) out.value = std::move(all.value.front());
  return out;
}

Term parse_term(std::string_view input) {
  Parser ps(input, {});
  try {
    Term t = ps.term();
    if (!ps.at_end()) ps.fail("trailing input");
    if (has_errors(ps.diags())) throw Error("SyntaxError", ps.diags()[0].message);
    return t;
  } catch (const ParseError& e) {
    throw Error("SyntaxError", e.message);
  }
}

Formula parse_formula(std::string_view input) {
  Parser ps(input, {});
  try {
    Formula f = ps.formula();
    ps.accept(".");
    if (!ps.at_end()) ps.fail("trailing input");
    if (has_errors(ps.diags())) throw Error("SyntaxError", ps.diags()[0].message);
    return f;
  } catch (const ParseError& e) {
    throw Error("SyntaxError", e.message);
  }
}

std::string print_formula(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::string print_tld(const TypedLogicDescription& tld) {
  return print_definition(print_header(tld.predicate, tld.params),
                          tld.definition);
}

std::string print_ld(const LogicDescription& ld) {
  std::vector<TypedVar> params;
  for (const auto& p : ld.params) params.push_back({p, std::string(kTermType)});
  return print_definition(print_header(ld.predicate, params), ld.definition);
}

std::string print_type(const TypeDef& def) {
  std::string out = def.name;
  switch (def.form) {
    case TypeDef::Form::Alias:
      return out + " == " + def.alias + ".";
    case TypeDef::Form::Builtin:
      return "# " + out + " is built in";
    case TypeDef::Form::Cases:
      out += " ::= ";
      for (std::size_t i = 0; i < def.cases.size(); ++i) {
        if (i) out += " | ";
        out += print_case(def.cases[i]);
      }
      return out + ".";
  }
  return out;
}

std::string print_spec(const Spec& spec) {
  std::string out = "procedure " + to_string(Term::atom(spec.name));
  if (!spec.params.empty()) {
    out += '(';
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
      if (i) out += ", ";
      out += spec.params[i];
    }
    out += ')';
  }
  out += ".\n";
  if (!spec.params.empty()) {
    out += "types ";
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
      if (i) out += ", ";
      out += spec.params[i] + ": " + spec.param_types[i];
    }
    out += ".\n";
  }
  if (!spec.relation.empty())
    out += "relation " + quote_string(spec.relation) + ".\n";
  for (const auto& d : spec.dirs) out += "dir " + d.to_string() + ".\n";
  if (!spec.external.empty())
    out += "external " + quote_string(spec.external) + ".\n";
  return out;
}

}  // namespace tldf
