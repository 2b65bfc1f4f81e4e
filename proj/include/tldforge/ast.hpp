// Shared syntax trees: terms, formulas, logic descriptions, clauses.

#ifndef TLDFORGE_AST_HPP
#define TLDFORGE_AST_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tldf {

// Raised by core operations whose contract is violated. `code` is a stable
// identifier (UnboundVariable, NotDerivable, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct SourcePos {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

// The distinguished universal type.
inline constexpr std::string_view kTermType = "term";

bool is_variable_name(std::string_view name);
bool is_integer_literal(std::string_view text);
bool is_float_literal(std::string_view text);

class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Compound };

  Term() = default;
  static Term var(std::string name);
  static Term atom(std::string name);
  static Term integer(long long value);
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Compound && args_.empty(); }
  // Variable name or functor text.
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  bool is_ground() const;
  bool is_integer() const { return is_constant() && is_integer_literal(name_); }
  std::optional<long long> as_integer() const;
  // A constant has depth 1.
  int depth() const;
  // Variables in first-occurrence order, without duplicates.
  std::vector<std::string> variables() const;
  void collect_variables(std::vector<std::string>& out) const;
  bool mentions(std::string_view var) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::Compound;
  std::string name_;
  std::vector<Term> args_;
};

// Prolog-flavoured rendering shared by printers: lists as [H | T], infix
// arithmetic, quoted atoms when needed.
std::string to_string(const Term& t);

using TermBinding = std::map<std::string, Term, std::less<>>;

Term substitute(const Term& t, const TermBinding& binding);

enum class FormulaKind : std::uint8_t {
  True, False, Eq, Atom, And, Or, Not, Implies, Iff, Exists, Forall
};

// Immutable formula tree. Copies share structure. And/Or always carry at
// least two children; the builders flatten nested conjunctions/disjunctions.
class Formula {
 public:
  static Formula truth(SourcePos pos = {});
  static Formula falsity(SourcePos pos = {});
  static Formula eq(Term lhs, Term rhs, SourcePos pos = {});
  static Formula atom(std::string predicate, std::vector<Term> args,
                      SourcePos pos = {});
  static Formula conj(std::vector<Formula> parts, SourcePos pos = {});
  static Formula disj(std::vector<Formula> parts, SourcePos pos = {});
  static Formula negation(Formula f, SourcePos pos = {});
  static Formula implies(Formula lhs, Formula rhs, SourcePos pos = {});
  static Formula iff(Formula lhs, Formula rhs, SourcePos pos = {});
  static Formula exists(std::string var, std::string type, Formula body,
                        SourcePos pos = {});
  static Formula forall(std::string var, std::string type, Formula body,
                        SourcePos pos = {});

  FormulaKind kind() const { return node_->kind; }
  SourcePos pos() const { return node_->pos; }

  // Eq
  const Term& lhs() const { return node_->terms.at(0); }
  const Term& rhs() const { return node_->terms.at(1); }
  // Atom
  const std::string& predicate() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->terms; }
  // And/Or: all children; Not: one; Implies/Iff: two; quantifiers: body.
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  // Quantifiers
  const std::string& var() const { return node_->name; }
  const std::string& type() const { return node_->type; }
  const Formula& body() const { return node_->children.at(0); }

  // Node identity, stable across copies; usable as a cache key.
  const void* identity() const { return node_.get(); }

  bool is_quantifier() const {
    return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
  }

  // Structural equality; positions are ignored.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    SourcePos pos;
    std::string name;
    std::string type;
    std::vector<Term> terms;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

struct TypedVar {
  std::string name;
  std::string type;
  friend bool operator==(const TypedVar&, const TypedVar&) = default;
};

using TypingEnv = std::map<std::string, std::string, std::less<>>;

// Free variables in first-occurrence order, typed through `env` (binders
// shadow env). Throws Error{"UnboundVariable"} on an unresolvable name.
std::vector<TypedVar> free_variables(const Formula& f, const TypingEnv& env);
// Untyped variant: names only, no resolution needed.
std::vector<std::string> free_variable_names(const Formula& f);

// Replaces free occurrences; replacement terms must be ground
// (Error{"NonGroundSubstitute"} otherwise).
Formula substitute(const Formula& f, const TermBinding& binding);

// Every binder name occurring anywhere in f.
std::vector<std::string> bound_variable_names(const Formula& f);

struct TypedLogicDescription {
  std::string predicate;
  std::vector<TypedVar> params;
  Formula definition = Formula::truth();
  SourcePos pos;
  std::string file;

  std::size_t arity() const { return params.size(); }
  TypingEnv param_env() const;
};

// Untyped description p(X1..Xn) <=> Def; every quantifier is at `term`.
struct LogicDescription {
  std::string predicate;
  std::vector<std::string> params;
  Formula definition = Formula::truth();
};

class Literal {
 public:
  enum class Kind : std::uint8_t { Unify, Call, NafNot, TypeCheck };

  static Literal unify(Term lhs, Term rhs);
  static Literal call(std::string predicate, std::vector<Term> args);
  static Literal naf(Literal inner);
  static Literal type_check(std::string type, Term subject);

  Kind kind() const { return kind_; }
  // Unify: two terms; Call: args; TypeCheck: the subject.
  const std::vector<Term>& terms() const { return terms_; }
  const Term& lhs() const { return terms_.at(0); }
  const Term& rhs() const { return terms_.at(1); }
  const Term& subject() const { return terms_.at(0); }
  // Call predicate or TypeCheck type name.
  const std::string& name() const { return name_; }
  const Literal& inner() const { return *inner_; }

  std::vector<std::string> variables() const;

  friend bool operator==(const Literal& a, const Literal& b);

 private:
  Kind kind_ = Kind::Call;
  std::string name_;
  std::vector<Term> terms_;
  std::shared_ptr<const Literal> inner_;
};

std::string to_string(const Literal& lit);
Formula to_formula(const Literal& lit);

struct Clause {
  std::string predicate;
  std::vector<Term> head;
  std::vector<Literal> body;
  // Clause-local (existential) variables.
  std::vector<std::string> locals;
  std::string note;

  std::vector<std::string> variables() const;
};

struct Program {
  std::string predicate;
  std::size_t arity = 0;
  std::vector<Clause> clauses;
};

// Clark reading of a program: p(X1..Xn) <=> OR_i EXISTS locals . body_i.
// Head arguments must be the distinct variables `params`.
Formula program_definition(const Program& prog,
                           std::span<const std::string> params);

}  // namespace tldf

#endif  // TLDFORGE_AST_HPP
