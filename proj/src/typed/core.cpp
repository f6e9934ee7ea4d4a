#include <stdexcept>
#include <type_traits>

#include "lamg/typed.hpp"

namespace lamg::typed {

struct Type::Node {
  TypeKind kind;
  std::size_t index = 0;
  std::optional<Type> left;
  std::optional<Type> right;
};

Type Type::mu(Type body) { return Type(std::make_shared<const Node>(Node{TypeKind::Mu, 0, std::move(body), {}})); }
Type Type::var(std::size_t index) { return Type(std::make_shared<const Node>(Node{TypeKind::Var, index, {}, {}})); }
Type Type::unit() {
  static const Type instance(std::make_shared<const Node>(Node{TypeKind::Unit, 0, {}, {}}));
  return instance;
}
Type Type::prod(Type left, Type right) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Prod, 0, std::move(left), std::move(right)}));
}
Type Type::sum(Type left, Type right) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Sum, 0, std::move(left), std::move(right)}));
}
Type Type::fun(Type domain, Type codomain) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Fun, 0, std::move(domain), std::move(codomain)}));
}

TypeKind Type::kind() const { return node_->kind; }

bool Type::is_connective() const {
  auto k = kind();
  return k == TypeKind::Prod || k == TypeKind::Sum || k == TypeKind::Fun;
}

const Type& Type::left() const {
  if (!is_connective()) throw std::logic_error("typed::Type::left on a non-connective");
  return *node_->left;
}
const Type& Type::right() const {
  if (!is_connective()) throw std::logic_error("typed::Type::right on a non-connective");
  return *node_->right;
}
const Type& Type::body() const {
  if (kind() != TypeKind::Mu) throw std::logic_error("typed::Type::body on a non-mu type");
  return *node_->left;
}
std::size_t Type::index() const { return node_->index; }

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TypeKind::Unit: return true;
    case TypeKind::Var: return a.index() == b.index();
    case TypeKind::Mu: return a.body() == b.body();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

const Type& dyn_type() {
  static const Type instance = [] {
    auto a = Type::var(0);
    return Type::mu(Type::sum(
        Type::unit(), Type::sum(Type::prod(a, a), Type::sum(Type::sum(a, a), Type::fun(a, a)))));
  }();
  return instance;
}

bool is_closed(const Type& type, std::size_t depth) {
  switch (type.kind()) {
    case TypeKind::Unit: return true;
    case TypeKind::Var: return type.index() < depth;
    case TypeKind::Mu: return is_closed(type.body(), depth + 1);
    default: return is_closed(type.left(), depth) && is_closed(type.right(), depth);
  }
}

namespace {

Type shift_type(const Type& type, std::size_t amount, std::size_t cutoff) {
  switch (type.kind()) {
    case TypeKind::Unit: return type;
    case TypeKind::Var: return type.index() >= cutoff ? Type::var(type.index() + amount) : type;
    case TypeKind::Mu: return Type::mu(shift_type(type.body(), amount, cutoff + 1));
    case TypeKind::Prod: return Type::prod(shift_type(type.left(), amount, cutoff), shift_type(type.right(), amount, cutoff));
    case TypeKind::Sum: return Type::sum(shift_type(type.left(), amount, cutoff), shift_type(type.right(), amount, cutoff));
    case TypeKind::Fun: return Type::fun(shift_type(type.left(), amount, cutoff), shift_type(type.right(), amount, cutoff));
  }
  return type;
}

// body[replacement/α_depth], lowering variables above it.
Type substitute_type(const Type& body, const Type& replacement, std::size_t depth) {
  switch (body.kind()) {
    case TypeKind::Unit: return body;
    case TypeKind::Var:
      if (body.index() == depth) return shift_type(replacement, depth, 0);
      if (body.index() > depth) return Type::var(body.index() - 1);
      return body;
    case TypeKind::Mu: return Type::mu(substitute_type(body.body(), replacement, depth + 1));
    case TypeKind::Prod:
      return Type::prod(substitute_type(body.left(), replacement, depth),
                        substitute_type(body.right(), replacement, depth));
    case TypeKind::Sum:
      return Type::sum(substitute_type(body.left(), replacement, depth),
                       substitute_type(body.right(), replacement, depth));
    case TypeKind::Fun:
      return Type::fun(substitute_type(body.left(), replacement, depth),
                       substitute_type(body.right(), replacement, depth));
  }
  return body;
}

}  // namespace

Type unfold(const Type& mu) {
  if (mu.kind() != TypeKind::Mu) throw std::invalid_argument("unfold: not a recursive type");
  return substitute_type(mu.body(), mu, 0);
}

// ---------------------------------------------------------------------------

TermKind Term::kind() const { return static_cast<TermKind>(node_->data.index()); }

Term Term::err(std::optional<Type> type) {
  return Term(std::make_shared<const Node>(Node{node::Err{std::move(type)}}));
}
Term Term::var(std::size_t index) { return Term(std::make_shared<const Node>(Node{node::Var{index}})); }
Term Term::let(Term bound, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Let{std::move(bound), std::move(body)}}));
}
Term Term::roll(Type mu, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Roll{std::move(mu), std::move(body)}}));
}
Term Term::unroll(Term body) { return Term(std::make_shared<const Node>(Node{node::Unroll{std::move(body)}})); }
Term Term::unit() {
  static const Term instance(std::make_shared<const Node>(Node{node::UnitVal{}}));
  return instance;
}
Term Term::pair(Term first, Term second) {
  return Term(std::make_shared<const Node>(Node{node::Pair{std::move(first), std::move(second)}}));
}
Term Term::match_pair(Term scrutinee, Term body) {
  return Term(std::make_shared<const Node>(Node{node::MatchPair{std::move(scrutinee), std::move(body)}}));
}
Term Term::inl(Type sum, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Inl{std::move(sum), std::move(body)}}));
}
Term Term::inr(Type sum, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Inr{std::move(sum), std::move(body)}}));
}
Term Term::case_of(Term scrutinee, Term left, Term right) {
  return Term(
      std::make_shared<const Node>(Node{node::Case{std::move(scrutinee), std::move(left), std::move(right)}}));
}
Term Term::lam(Type domain, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Lam{std::move(domain), std::move(body)}}));
}
Term Term::app(Term function, Term argument) {
  return Term(std::make_shared<const Node>(Node{node::App{std::move(function), std::move(argument)}}));
}
Term Term::hole() {
  static const Term instance(std::make_shared<const Node>(Node{node::Hole{}}));
  return instance;
}

namespace {

// Calls `f` on each immediate subterm with the number of binders it sits
// under.
template <class F>
void for_each_child(const Term& term, F&& f) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Let>) {
          f(n.bound, 0);
          f(n.body, 1);
        } else if constexpr (std::is_same_v<N, node::Roll> || std::is_same_v<N, node::Unroll> ||
                             std::is_same_v<N, node::Inl> || std::is_same_v<N, node::Inr>) {
          f(n.body, 0);
        } else if constexpr (std::is_same_v<N, node::Pair>) {
          f(n.first, 0);
          f(n.second, 0);
        } else if constexpr (std::is_same_v<N, node::MatchPair>) {
          f(n.scrutinee, 0);
          f(n.body, 2);
        } else if constexpr (std::is_same_v<N, node::Case>) {
          f(n.scrutinee, 0);
          f(n.left, 1);
          f(n.right, 1);
        } else if constexpr (std::is_same_v<N, node::Lam>) {
          f(n.body, 1);
        } else if constexpr (std::is_same_v<N, node::App>) {
          f(n.function, 0);
          f(n.argument, 0);
        }
      },
      term.node().data);
}

// Rebuilds `term` with each immediate subterm replaced by `f(child, binders)`.
template <class F>
Term map_children(const Term& term, F&& f) {
  return std::visit(
      [&](const auto& n) -> Term {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Let>) return Term::let(f(n.bound, 0), f(n.body, 1));
        else if constexpr (std::is_same_v<N, node::Roll>) return Term::roll(n.mu, f(n.body, 0));
        else if constexpr (std::is_same_v<N, node::Unroll>) return Term::unroll(f(n.body, 0));
        else if constexpr (std::is_same_v<N, node::Inl>) return Term::inl(n.sum, f(n.body, 0));
        else if constexpr (std::is_same_v<N, node::Inr>) return Term::inr(n.sum, f(n.body, 0));
        else if constexpr (std::is_same_v<N, node::Pair>) return Term::pair(f(n.first, 0), f(n.second, 0));
        else if constexpr (std::is_same_v<N, node::MatchPair>) return Term::match_pair(f(n.scrutinee, 0), f(n.body, 2));
        else if constexpr (std::is_same_v<N, node::Case>)
          return Term::case_of(f(n.scrutinee, 0), f(n.left, 1), f(n.right, 1));
        else if constexpr (std::is_same_v<N, node::Lam>) return Term::lam(n.domain, f(n.body, 1));
        else if constexpr (std::is_same_v<N, node::App>) return Term::app(f(n.function, 0), f(n.argument, 0));
        else return term;
      },
      term.node().data);
}

template <class F>
Term map_vars(const Term& term, std::size_t depth, const F& on_var) {
  if (const auto* v = term.as<node::Var>()) return on_var(v->index, depth);
  return map_children(term, [&](const Term& child, std::size_t binders) {
    return map_vars(child, depth + binders, on_var);
  });
}

bool same_shallow(const Term& a, const Term& b) {
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b.node().data);
        if constexpr (std::is_same_v<N, node::Err>) return x.type == y.type;
        else if constexpr (std::is_same_v<N, node::Var>) return x.index == y.index;
        else if constexpr (std::is_same_v<N, node::Roll>) return x.mu == y.mu;
        else if constexpr (std::is_same_v<N, node::Inl> || std::is_same_v<N, node::Inr>) return x.sum == y.sum;
        else if constexpr (std::is_same_v<N, node::Lam>) return x.domain == y.domain;
        else return true;
      },
      a.node().data);
}

}  // namespace

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || !same_shallow(a, b)) return false;
  std::vector<const Term*> left;
  std::vector<const Term*> right;
  for_each_child(a, [&](const Term& c, std::size_t) { left.push_back(&c); });
  for_each_child(b, [&](const Term& c, std::size_t) { right.push_back(&c); });
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!(*left[i] == *right[i])) return false;
  }
  return true;
}

std::size_t Term::size() const {
  std::size_t total = 1;
  for_each_child(*this, [&](const Term& c, std::size_t) { total += c.size(); });
  return total;
}

std::optional<Type> lookup(const Env& env, std::size_t index) {
  if (index >= env.size()) return std::nullopt;
  return env[env.size() - 1 - index];
}

bool is_err(const Term& term) { return term.kind() == TermKind::Err; }

bool is_value(const Term& term) {
  switch (term.kind()) {
    case TermKind::Var:
    case TermKind::UnitVal:
    case TermKind::Lam: return true;
    case TermKind::Roll: return is_value(term.get<node::Roll>().body);
    case TermKind::Inl: return is_value(term.get<node::Inl>().body);
    case TermKind::Inr: return is_value(term.get<node::Inr>().body);
    case TermKind::Pair: {
      const auto& p = term.get<node::Pair>();
      return is_value(p.first) && is_value(p.second);
    }
    default: return false;
  }
}

bool is_closed(const Term& term, std::size_t depth) {
  if (const auto* v = term.as<node::Var>()) return v->index < depth;
  bool closed = true;
  for_each_child(term, [&](const Term& c, std::size_t binders) { closed = closed && is_closed(c, depth + binders); });
  return closed;
}

Term shift(const Term& term, std::size_t amount, std::size_t cutoff) {
  if (amount == 0) return term;
  return map_vars(term, cutoff, [amount](std::size_t index, std::size_t depth) {
    return Term::var(index >= depth ? index + amount : index);
  });
}

Term instantiate(const Term& body, std::span<const Term> values) {
  const std::size_t count = values.size();
  return map_vars(body, 0, [&](std::size_t index, std::size_t depth) -> Term {
    if (index < depth) return Term::var(index);
    std::size_t free = index - depth;
    if (free < count) return shift(values[count - 1 - free], depth);
    return Term::var(index - count);
  });
}

std::size_t hole_count(const Term& term) {
  if (term.kind() == TermKind::Hole) return 1;
  std::size_t total = 0;
  for_each_child(term, [&](const Term& c, std::size_t) { total += hole_count(c); });
  return total;
}

namespace {

// Follows the evaluation-context grammar down to the hole.
bool hole_in_evaluation_position(const Term& term) {
  switch (term.kind()) {
    case TermKind::Hole: return true;
    case TermKind::Let: return hole_in_evaluation_position(term.get<node::Let>().bound);
    case TermKind::Roll: return hole_in_evaluation_position(term.get<node::Roll>().body);
    case TermKind::Unroll: return hole_in_evaluation_position(term.get<node::Unroll>().body);
    case TermKind::Inl: return hole_in_evaluation_position(term.get<node::Inl>().body);
    case TermKind::Inr: return hole_in_evaluation_position(term.get<node::Inr>().body);
    case TermKind::MatchPair: return hole_in_evaluation_position(term.get<node::MatchPair>().scrutinee);
    case TermKind::Case: return hole_in_evaluation_position(term.get<node::Case>().scrutinee);
    case TermKind::Pair: {
      const auto& p = term.get<node::Pair>();
      if (hole_count(p.first) > 0) return hole_in_evaluation_position(p.first);
      return is_value(p.first) && hole_in_evaluation_position(p.second);
    }
    case TermKind::App: {
      const auto& a = term.get<node::App>();
      if (hole_count(a.function) > 0) return hole_in_evaluation_position(a.function);
      return is_value(a.function) && hole_in_evaluation_position(a.argument);
    }
    default: return false;
  }
}

}  // namespace

bool is_evaluation_context(const Term& term) {
  return hole_count(term) == 1 && hole_in_evaluation_position(term);
}

Term plug(const Term& context, const Term& filler) {
  if (context.kind() == TermKind::Hole) return filler;
  if (hole_count(context) == 0) return context;
  return map_children(context, [&](const Term& child, std::size_t) { return plug(child, filler); });
}

}  // namespace lamg::typed
