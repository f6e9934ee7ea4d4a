#pragma once

// The gradual cast calculus: types, terms, type checking and a small-step
// call-by-value interpreter with explicit casts and the dynamic type error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lamg/outcome.hpp"

namespace lamg::gradual {

enum class TypeKind : std::uint8_t { Dyn, Unit, Prod, Sum, Fun };

// Immutable gradual type. Copies share structure.
class Type {
 public:
  static Type dyn();
  static Type unit();
  static Type prod(Type left, Type right);
  static Type sum(Type left, Type right);
  static Type fun(Type domain, Type codomain);
  static Type binary(TypeKind kind, Type left, Type right);

  TypeKind kind() const;
  bool is_dyn() const { return kind() == TypeKind::Dyn; }
  bool is_connective() const;

  // Components of a connective; for functions left is the domain.
  const Type& left() const;
  const Type& right() const;

  // Unit, ?×?, ?+? or ?→?.
  bool is_tag() const;
  std::size_t depth() const;
  std::size_t size() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// The tag type underlying a non-dynamic type. Throws std::invalid_argument
// on ?.
Type floor(const Type& type);

// The tag type of a given connective.
Type tag_of(TypeKind kind);

std::string to_string(const Type& type);
std::ostream& operator<<(std::ostream& out, const Type& type);

class Term;

namespace node {
// An `Err` produced by evaluation carries no ascription; source terms always
// do.
struct Err { std::optional<Type> type; };
struct Var { std::size_t index; };
struct Cast;
struct UnitVal {};
struct Pair;
struct MatchPair;
struct Inl;
struct Inr;
struct Case;
struct Lam;
struct App;
}  // namespace node

enum class TermKind : std::uint8_t { Err, Var, Cast, UnitVal, Pair, MatchPair, Inl, Inr, Case, Lam, App };

// Immutable cast-calculus term over de Bruijn indices.
class Term {
 public:
  struct Node;

  static Term err(std::optional<Type> type = std::nullopt);
  static Term var(std::size_t index);
  static Term cast(Type from, Type to, Term body);
  static Term unit();
  static Term pair(Term first, Term second);
  // Binders: Var 1 is the first component, Var 0 the second.
  static Term match_pair(Term scrutinee, Type first_type, Type second_type, Term body);
  // `sum` is the full sum type the injection lands in.
  static Term inl(Type sum, Term body);
  static Term inr(Type sum, Term body);
  static Term case_of(Term scrutinee, Type left_type, Term left, Type right_type, Term right);
  static Term lam(Type domain, Term body);
  static Term app(Term function, Term argument);

  TermKind kind() const;
  template <class T>
  const T* as() const;
  template <class T>
  const T& get() const;
  const Node& node() const { return *node_; }

  // Structural equality; ascriptions included.
  friend bool operator==(const Term& a, const Term& b);

  std::size_t size() const;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {
struct Cast { Type from; Type to; Term body; };
struct Pair { Term first; Term second; };
struct MatchPair { Term scrutinee; Type first_type; Type second_type; Term body; };
struct Inl { Type sum; Term body; };
struct Inr { Type sum; Term body; };
struct Case { Term scrutinee; Type left_type; Term left; Type right_type; Term right; };
struct Lam { Type domain; Term body; };
struct App { Term function; Term argument; };
}  // namespace node

struct Term::Node {
  std::variant<node::Err, node::Var, node::Cast, node::UnitVal, node::Pair, node::MatchPair, node::Inl,
               node::Inr, node::Case, node::Lam, node::App>
      data;
};

template <class T>
const T* Term::as() const {
  return std::get_if<T>(&node_->data);
}

template <class T>
const T& Term::get() const {
  return std::get<T>(node_->data);
}

// Typing context; index 0 is the innermost binder, stored last.
using Env = std::vector<Type>;

std::optional<Type> lookup(const Env& env, std::size_t index);

bool is_value(const Term& term);
bool is_err(const Term& term);
bool is_closed(const Term& term, std::size_t depth = 0);

// Adds `amount` to every free index at or above `cutoff`.
Term shift(const Term& term, std::size_t amount, std::size_t cutoff = 0);

// Replaces the innermost `values.size()` binders with `values` (values[0]
// is the outermost of them) and lowers the remaining free indices.
Term instantiate(const Term& body, std::span<const Term> values);

// Synthesizes the unique type of `term`. Throws TypeCheckError.
Type typecheck(const Env& env, const Term& term);

// Checks `term` against `expected`. Unascribed errors check at any type.
void check(const Env& env, const Term& term, const Type& expected);

// Reduction rules, named after the operational semantics. `UnitUnit` covers
// the 1 ⇒ 1 cast, which the published rule set leaves stuck.
enum class Rule : std::uint8_t {
  Beta,
  MatchPair,
  CaseInl,
  CaseInr,
  ErrorPropagate,
  DynDyn,
  TagUp,
  TagDn,
  TagMatch,
  TagMismatch,
  TagMismatchPrime,
  PairCast,
  SumCast,
  SumCastPrime,
  FunCast,
  UnitUnit,
};
inline constexpr std::size_t kRuleCount = 16;
std::string_view to_string(Rule rule);

struct Step {
  Term next;
  Rule rule;
};

// One reduction under the unique evaluation-context decomposition.
// Returns nullopt when `term` is a value or an error. Throws StuckError on
// any other irreducible term.
std::optional<Step> step(const Term& term);

struct Outcome {
  OutcomeKind kind;
  // The value, the error, or the term reached when fuel ran out.
  Term term;
  std::size_t steps = 0;
};

// Iterates `step` at most `fuel` times.
Outcome eval(const Term& term, std::size_t fuel);

// Text syntax. See docs/syntax.md.
Type parse_type(std::string_view text);
Term parse_term(std::string_view text);
std::string print(const Term& term);
std::ostream& operator<<(std::ostream& out, const Term& term);

}  // namespace lamg::gradual
