#pragma once

// The typed target language: a call-by-value lambda calculus with products,
// sums, functions, iso-recursive types and an uncatchable error. Unrolling a
// rolled value is the only reduction with weight 1.

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

namespace lamg::typed {

enum class TypeKind : std::uint8_t { Mu, Var, Unit, Prod, Sum, Fun };

// Immutable type over de Bruijn type variables. Equality is syntactic.
class Type {
 public:
  static Type mu(Type body);
  static Type var(std::size_t index);
  static Type unit();
  static Type prod(Type left, Type right);
  static Type sum(Type left, Type right);
  static Type fun(Type domain, Type codomain);

  TypeKind kind() const;
  bool is_connective() const;
  const Type& left() const;
  const Type& right() const;
  // Body of a μ.
  const Type& body() const;
  std::size_t index() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// μα. 1 + (α×α) + (α+α) + (α→α), with the sum nested to the right.
const Type& dyn_type();

bool is_closed(const Type& type, std::size_t depth = 0);

// A[μα.A/α] for `mu` = μα.A. Throws std::invalid_argument otherwise.
Type unfold(const Type& mu);

std::string to_string(const Type& type);
std::ostream& operator<<(std::ostream& out, const Type& type);

class Term;

namespace node {
struct Err { std::optional<Type> type; };
struct Var { std::size_t index; };
struct Let;
struct Roll;
struct Unroll;
struct UnitVal {};
struct Pair;
struct MatchPair;
struct Inl;
struct Inr;
struct Case;
struct Lam;
struct App;
// The hole of a cast context.
struct Hole {};
}  // namespace node

enum class TermKind : std::uint8_t {
  Err, Var, Let, Roll, Unroll, UnitVal, Pair, MatchPair, Inl, Inr, Case, Lam, App, Hole
};

class Term {
 public:
  struct Node;

  static Term err(std::optional<Type> type = std::nullopt);
  static Term var(std::size_t index);
  static Term let(Term bound, Term body);
  static Term roll(Type mu, Term body);
  static Term unroll(Term body);
  static Term unit();
  static Term pair(Term first, Term second);
  // Binders: Var 1 is the first component, Var 0 the second.
  static Term match_pair(Term scrutinee, Term body);
  static Term inl(Type sum, Term body);
  static Term inr(Type sum, Term body);
  static Term case_of(Term scrutinee, Term left, Term right);
  static Term lam(Type domain, Term body);
  static Term app(Term function, Term argument);
  static Term hole();

  TermKind kind() const;
  template <class T>
  const T* as() const;
  template <class T>
  const T& get() const;
  const Node& node() const { return *node_; }

  friend bool operator==(const Term& a, const Term& b);

  std::size_t size() const;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {
struct Let { Term bound; Term body; };
struct Roll { Type mu; Term body; };
struct Unroll { Term body; };
struct Pair { Term first; Term second; };
struct MatchPair { Term scrutinee; Term body; };
struct Inl { Type sum; Term body; };
struct Inr { Type sum; Term body; };
struct Case { Term scrutinee; Term left; Term right; };
struct Lam { Type domain; Term body; };
struct App { Term function; Term argument; };
}  // namespace node

struct Term::Node {
  std::variant<node::Err, node::Var, node::Let, node::Roll, node::Unroll, node::UnitVal, node::Pair,
               node::MatchPair, node::Inl, node::Inr, node::Case, node::Lam, node::App, node::Hole>
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

using Env = std::vector<Type>;

std::optional<Type> lookup(const Env& env, std::size_t index);

// Values include variables, as in the published grammar.
bool is_value(const Term& term);
bool is_err(const Term& term);
bool is_closed(const Term& term, std::size_t depth = 0);

Term shift(const Term& term, std::size_t amount, std::size_t cutoff = 0);
Term instantiate(const Term& body, std::span<const Term> values);

// Hole bookkeeping for cast contexts.
std::size_t hole_count(const Term& term);
// True when `term` has exactly one hole and it sits in evaluation position.
bool is_evaluation_context(const Term& term);
// Replaces every hole with `filler`. Holes in evaluation position are never
// under a binder, so `filler` is inserted unshifted.
Term plug(const Term& context, const Term& filler);

// Throws TypeCheckError; a hole is always ill-typed.
Type typecheck(const Env& env, const Term& term);
void check(const Env& env, const Term& term, const Type& expected);

enum class Rule : std::uint8_t { Beta, Let, MatchPair, CaseInl, CaseInr, Unroll, ErrorPropagate };
inline constexpr std::size_t kRuleCount = 7;
std::string_view to_string(Rule rule);

struct Step {
  Term next;
  Rule rule;
  // 1 exactly for unroll (roll A v) ↦ v.
  unsigned weight;
};

// One call-by-value step; nullopt on values and errors. Throws StuckError.
std::optional<Step> step(const Term& term);

struct Outcome {
  OutcomeKind kind;
  Term term;
  std::size_t steps = 0;
  // Total weight of the steps taken.
  std::size_t unrolls = 0;
};

Outcome eval(const Term& term, std::size_t fuel);

// Text syntax. `?` abbreviates dyn_type() in both directions.
Type parse_type(std::string_view text);
Term parse_term(std::string_view text, bool allow_hole = false);
std::string print(const Term& term);
std::ostream& operator<<(std::ostream& out, const Term& term);

}  // namespace lamg::typed
