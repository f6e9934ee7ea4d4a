#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "lamg/gradual.hpp"

namespace lamg::gradual {

struct Type::Node {
  TypeKind kind;
  std::optional<Type> left;
  std::optional<Type> right;
};

Type Type::dyn() {
  static const Type instance(std::make_shared<const Node>(Node{TypeKind::Dyn, {}, {}}));
  return instance;
}

Type Type::unit() {
  static const Type instance(std::make_shared<const Node>(Node{TypeKind::Unit, {}, {}}));
  return instance;
}

Type Type::binary(TypeKind kind, Type left, Type right) {
  if (kind == TypeKind::Dyn || kind == TypeKind::Unit) {
    throw std::invalid_argument("Type::binary: not a connective");
  }
  return Type(std::make_shared<const Node>(Node{kind, std::move(left), std::move(right)}));
}

Type Type::prod(Type left, Type right) { return binary(TypeKind::Prod, std::move(left), std::move(right)); }
Type Type::sum(Type left, Type right) { return binary(TypeKind::Sum, std::move(left), std::move(right)); }
Type Type::fun(Type domain, Type codomain) {
  return binary(TypeKind::Fun, std::move(domain), std::move(codomain));
}

TypeKind Type::kind() const { return node_->kind; }

bool Type::is_connective() const {
  auto k = kind();
  return k == TypeKind::Prod || k == TypeKind::Sum || k == TypeKind::Fun;
}

const Type& Type::left() const {
  if (!node_->left) throw std::logic_error("Type::left on a base type");
  return *node_->left;
}

const Type& Type::right() const {
  if (!node_->right) throw std::logic_error("Type::right on a base type");
  return *node_->right;
}

bool Type::is_tag() const {
  switch (kind()) {
    case TypeKind::Dyn: return false;
    case TypeKind::Unit: return true;
    default: return left().is_dyn() && right().is_dyn();
  }
}

std::size_t Type::depth() const {
  if (!is_connective()) return 0;
  return 1 + std::max(left().depth(), right().depth());
}

std::size_t Type::size() const {
  if (!is_connective()) return 1;
  return 1 + left().size() + right().size();
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (!a.is_connective()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

Type tag_of(TypeKind kind) {
  if (kind == TypeKind::Dyn) throw std::invalid_argument("? has no tag");
  if (kind == TypeKind::Unit) return Type::unit();
  return Type::binary(kind, Type::dyn(), Type::dyn());
}

Type floor(const Type& type) {
  if (type.is_dyn()) throw std::invalid_argument("floor: the dynamic type has no tag");
  return tag_of(type.kind());
}

// ---------------------------------------------------------------------------

TermKind Term::kind() const { return static_cast<TermKind>(node_->data.index()); }

Term Term::err(std::optional<Type> type) {
  return Term(std::make_shared<const Node>(Node{node::Err{std::move(type)}}));
}
Term Term::var(std::size_t index) { return Term(std::make_shared<const Node>(Node{node::Var{index}})); }
Term Term::cast(Type from, Type to, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Cast{std::move(from), std::move(to), std::move(body)}}));
}
Term Term::unit() {
  static const Term instance(std::make_shared<const Node>(Node{node::UnitVal{}}));
  return instance;
}
Term Term::pair(Term first, Term second) {
  return Term(std::make_shared<const Node>(Node{node::Pair{std::move(first), std::move(second)}}));
}
Term Term::match_pair(Term scrutinee, Type first_type, Type second_type, Term body) {
  return Term(std::make_shared<const Node>(Node{node::MatchPair{
      std::move(scrutinee), std::move(first_type), std::move(second_type), std::move(body)}}));
}
Term Term::inl(Type sum, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Inl{std::move(sum), std::move(body)}}));
}
Term Term::inr(Type sum, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Inr{std::move(sum), std::move(body)}}));
}
Term Term::case_of(Term scrutinee, Type left_type, Term left, Type right_type, Term right) {
  return Term(std::make_shared<const Node>(Node{node::Case{std::move(scrutinee), std::move(left_type),
                                                           std::move(left), std::move(right_type),
                                                           std::move(right)}}));
}
Term Term::lam(Type domain, Term body) {
  return Term(std::make_shared<const Node>(Node{node::Lam{std::move(domain), std::move(body)}}));
}
Term Term::app(Term function, Term argument) {
  return Term(std::make_shared<const Node>(Node{node::App{std::move(function), std::move(argument)}}));
}

namespace {

struct EqualVisitor {
  const Term::Node& other;

  bool operator()(const node::Err& a) const {
    const auto& b = std::get<node::Err>(other.data);
    return a.type == b.type;
  }
  bool operator()(const node::Var& a) const { return a.index == std::get<node::Var>(other.data).index; }
  bool operator()(const node::Cast& a) const {
    const auto& b = std::get<node::Cast>(other.data);
    return a.from == b.from && a.to == b.to && a.body == b.body;
  }
  bool operator()(const node::UnitVal&) const { return true; }
  bool operator()(const node::Pair& a) const {
    const auto& b = std::get<node::Pair>(other.data);
    return a.first == b.first && a.second == b.second;
  }
  bool operator()(const node::MatchPair& a) const {
    const auto& b = std::get<node::MatchPair>(other.data);
    return a.first_type == b.first_type && a.second_type == b.second_type && a.scrutinee == b.scrutinee &&
           a.body == b.body;
  }
  bool operator()(const node::Inl& a) const {
    const auto& b = std::get<node::Inl>(other.data);
    return a.sum == b.sum && a.body == b.body;
  }
  bool operator()(const node::Inr& a) const {
    const auto& b = std::get<node::Inr>(other.data);
    return a.sum == b.sum && a.body == b.body;
  }
  bool operator()(const node::Case& a) const {
    const auto& b = std::get<node::Case>(other.data);
    return a.left_type == b.left_type && a.right_type == b.right_type && a.scrutinee == b.scrutinee &&
           a.left == b.left && a.right == b.right;
  }
  bool operator()(const node::Lam& a) const {
    const auto& b = std::get<node::Lam>(other.data);
    return a.domain == b.domain && a.body == b.body;
  }
  bool operator()(const node::App& a) const {
    const auto& b = std::get<node::App>(other.data);
    return a.function == b.function && a.argument == b.argument;
  }
};

}  // namespace

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  return std::visit(EqualVisitor{*b.node_}, a.node_->data);
}

std::size_t Term::size() const {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Cast>) return 1 + n.body.size();
        else if constexpr (std::is_same_v<N, node::Pair>) return 1 + n.first.size() + n.second.size();
        else if constexpr (std::is_same_v<N, node::MatchPair>) return 1 + n.scrutinee.size() + n.body.size();
        else if constexpr (std::is_same_v<N, node::Inl> || std::is_same_v<N, node::Inr>) return 1 + n.body.size();
        else if constexpr (std::is_same_v<N, node::Case>)
          return 1 + n.scrutinee.size() + n.left.size() + n.right.size();
        else if constexpr (std::is_same_v<N, node::Lam>) return 1 + n.body.size();
        else if constexpr (std::is_same_v<N, node::App>) return 1 + n.function.size() + n.argument.size();
        else return 1;
      },
      node_->data);
}

std::optional<Type> lookup(const Env& env, std::size_t index) {
  if (index >= env.size()) return std::nullopt;
  return env[env.size() - 1 - index];
}

bool is_err(const Term& term) { return term.kind() == TermKind::Err; }

bool is_value(const Term& term) {
  switch (term.kind()) {
    case TermKind::UnitVal:
    case TermKind::Lam: return true;
    case TermKind::Pair: {
      const auto& p = term.get<node::Pair>();
      return is_value(p.first) && is_value(p.second);
    }
    case TermKind::Inl: return is_value(term.get<node::Inl>().body);
    case TermKind::Inr: return is_value(term.get<node::Inr>().body);
    case TermKind::Cast: {
      const auto& c = term.get<node::Cast>();
      return c.to.is_dyn() && c.from.is_tag() && is_value(c.body);
    }
    default: return false;
  }
}

bool is_closed(const Term& term, std::size_t depth) {
  return std::visit(
      [depth](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Var>) return n.index < depth;
        else if constexpr (std::is_same_v<N, node::Cast>) return is_closed(n.body, depth);
        else if constexpr (std::is_same_v<N, node::Pair>)
          return is_closed(n.first, depth) && is_closed(n.second, depth);
        else if constexpr (std::is_same_v<N, node::MatchPair>)
          return is_closed(n.scrutinee, depth) && is_closed(n.body, depth + 2);
        else if constexpr (std::is_same_v<N, node::Inl> || std::is_same_v<N, node::Inr>)
          return is_closed(n.body, depth);
        else if constexpr (std::is_same_v<N, node::Case>)
          return is_closed(n.scrutinee, depth) && is_closed(n.left, depth + 1) && is_closed(n.right, depth + 1);
        else if constexpr (std::is_same_v<N, node::Lam>) return is_closed(n.body, depth + 1);
        else if constexpr (std::is_same_v<N, node::App>)
          return is_closed(n.function, depth) && is_closed(n.argument, depth);
        else return true;
      },
      term.node().data);
}

namespace {

// Generic index rewriting: `on_var(index, depth)` decides what a variable
// becomes at binder depth `depth`.
template <class F>
Term map_vars(const Term& term, std::size_t depth, const F& on_var) {
  return std::visit(
      [&](const auto& n) -> Term {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Var>) {
          return on_var(n.index, depth);
        } else if constexpr (std::is_same_v<N, node::Cast>) {
          return Term::cast(n.from, n.to, map_vars(n.body, depth, on_var));
        } else if constexpr (std::is_same_v<N, node::Pair>) {
          return Term::pair(map_vars(n.first, depth, on_var), map_vars(n.second, depth, on_var));
        } else if constexpr (std::is_same_v<N, node::MatchPair>) {
          return Term::match_pair(map_vars(n.scrutinee, depth, on_var), n.first_type, n.second_type,
                                  map_vars(n.body, depth + 2, on_var));
        } else if constexpr (std::is_same_v<N, node::Inl>) {
          return Term::inl(n.sum, map_vars(n.body, depth, on_var));
        } else if constexpr (std::is_same_v<N, node::Inr>) {
          return Term::inr(n.sum, map_vars(n.body, depth, on_var));
        } else if constexpr (std::is_same_v<N, node::Case>) {
          return Term::case_of(map_vars(n.scrutinee, depth, on_var), n.left_type,
                               map_vars(n.left, depth + 1, on_var), n.right_type,
                               map_vars(n.right, depth + 1, on_var));
        } else if constexpr (std::is_same_v<N, node::Lam>) {
          return Term::lam(n.domain, map_vars(n.body, depth + 1, on_var));
        } else if constexpr (std::is_same_v<N, node::App>) {
          return Term::app(map_vars(n.function, depth, on_var), map_vars(n.argument, depth, on_var));
        } else {
          return term;
        }
      },
      term.node().data);
}

}  // namespace

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

}  // namespace lamg::gradual
