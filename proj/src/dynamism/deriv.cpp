#include <sstream>
#include <stdexcept>

#include "lamg/dynamism.hpp"
#include "lamg/elaborate.hpp"

namespace lamg::dynamism {

using gradual::TypeKind;

struct DynDeriv::Node {
  DerivKind kind;
  Type lower;
  Type upper;
  std::optional<Type> tag;
  std::optional<DynDeriv> left;
  std::optional<DynDeriv> right;
};

namespace {

TypeKind type_kind(DerivKind kind) {
  switch (kind) {
    case DerivKind::Prod: return TypeKind::Prod;
    case DerivKind::Sum: return TypeKind::Sum;
    case DerivKind::Fun: return TypeKind::Fun;
    default: break;
  }
  throw std::logic_error("not a connective derivation");
}

}  // namespace

DynDeriv DynDeriv::id_base(Type base) {
  if (base.kind() != TypeKind::Unit && !base.is_dyn()) {
    throw std::invalid_argument("id_base on non-base type " + to_string(base));
  }
  return DynDeriv(std::make_shared<const Node>(Node{DerivKind::IdBase, base, base, {}, {}, {}}));
}

DynDeriv DynDeriv::tag_comp(Type tag, DynDeriv rest) {
  if (!tag.is_tag()) throw std::invalid_argument("tag_comp on non-tag " + to_string(tag));
  Type lower = rest.lower();
  return DynDeriv(
      std::make_shared<const Node>(Node{DerivKind::TagComp, lower, Type::dyn(), tag, std::move(rest), {}}));
}

DynDeriv DynDeriv::connective(DerivKind kind, DynDeriv left, DynDeriv right) {
  auto k = type_kind(kind);
  Type lower = Type::binary(k, left.lower(), right.lower());
  Type upper = Type::binary(k, left.upper(), right.upper());
  return DynDeriv(std::make_shared<const Node>(
      Node{kind, std::move(lower), std::move(upper), {}, std::move(left), std::move(right)}));
}

DynDeriv DynDeriv::prod(DynDeriv left, DynDeriv right) {
  return connective(DerivKind::Prod, std::move(left), std::move(right));
}
DynDeriv DynDeriv::sum(DynDeriv left, DynDeriv right) {
  return connective(DerivKind::Sum, std::move(left), std::move(right));
}
DynDeriv DynDeriv::fun(DynDeriv domain, DynDeriv codomain) {
  return connective(DerivKind::Fun, std::move(domain), std::move(codomain));
}

DerivKind DynDeriv::kind() const { return node_->kind; }
const Type& DynDeriv::lower() const { return node_->lower; }
const Type& DynDeriv::upper() const { return node_->upper; }

const Type& DynDeriv::tag() const {
  if (kind() != DerivKind::TagComp) throw std::logic_error("DynDeriv::tag on a non-tag node");
  return *node_->tag;
}
const DynDeriv& DynDeriv::rest() const {
  if (kind() != DerivKind::TagComp) throw std::logic_error("DynDeriv::rest on a non-tag node");
  return *node_->left;
}
const DynDeriv& DynDeriv::left() const {
  if (!node_->right) throw std::logic_error("DynDeriv::left on a non-connective node");
  return *node_->left;
}
const DynDeriv& DynDeriv::right() const {
  if (!node_->right) throw std::logic_error("DynDeriv::right on a non-connective node");
  return *node_->right;
}

bool operator==(const DynDeriv& a, const DynDeriv& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case DerivKind::IdBase: return a.lower() == b.lower();
    case DerivKind::TagComp: return a.tag() == b.tag() && a.rest() == b.rest();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

bool well_formed(const DynDeriv& c) {
  switch (c.kind()) {
    case DerivKind::IdBase:
      return c.lower() == c.upper() && (c.lower().is_dyn() || c.lower().kind() == TypeKind::Unit);
    case DerivKind::TagComp: {
      const auto& rest = c.rest();
      if (!well_formed(rest) || !c.upper().is_dyn() || c.lower() != rest.lower()) return false;
      if (rest.lower().is_dyn()) return false;
      return rest.upper() == c.tag() && gradual::floor(rest.lower()) == c.tag();
    }
    default: {
      auto k = type_kind(c.kind());
      return well_formed(c.left()) && well_formed(c.right()) &&
             c.lower() == Type::binary(k, c.left().lower(), c.right().lower()) &&
             c.upper() == Type::binary(k, c.left().upper(), c.right().upper());
    }
  }
}

namespace {

void print(std::ostream& out, const DynDeriv& c) {
  switch (c.kind()) {
    case DerivKind::IdBase: out << "id(" << c.lower() << ')'; return;
    case DerivKind::TagComp:
      out << "tag(" << c.tag() << ") o ";
      print(out, c.rest());
      return;
    default: {
      const char* op = c.kind() == DerivKind::Prod ? " x " : c.kind() == DerivKind::Sum ? " + " : " -> ";
      out << '(';
      print(out, c.left());
      out << op;
      print(out, c.right());
      out << ')';
    }
  }
}

DerivKind deriv_kind(TypeKind kind) {
  switch (kind) {
    case TypeKind::Prod: return DerivKind::Prod;
    case TypeKind::Sum: return DerivKind::Sum;
    case TypeKind::Fun: return DerivKind::Fun;
    default: break;
  }
  throw std::logic_error("not a connective type");
}

DynDeriv rebuild(DerivKind kind, DynDeriv left, DynDeriv right) {
  switch (kind) {
    case DerivKind::Prod: return DynDeriv::prod(std::move(left), std::move(right));
    case DerivKind::Sum: return DynDeriv::sum(std::move(left), std::move(right));
    default: return DynDeriv::fun(std::move(left), std::move(right));
  }
}

}  // namespace

std::string to_string(const DynDeriv& c) {
  std::ostringstream out;
  print(out, c);
  return out.str();
}

std::optional<DynDeriv> check_dynamism(const Type& a, const Type& b) {
  if (b.is_dyn()) {
    if (a.is_dyn()) return DynDeriv::id_base(a);
    auto tag = gradual::floor(a);
    auto rest = check_dynamism(a, tag);
    if (!rest) return std::nullopt;
    return DynDeriv::tag_comp(tag, *rest);
  }
  if (a.kind() != b.kind() || a.is_dyn()) return std::nullopt;
  if (a.kind() == TypeKind::Unit) return DynDeriv::id_base(a);
  auto left = check_dynamism(a.left(), b.left());
  if (!left) return std::nullopt;
  auto right = check_dynamism(a.right(), b.right());
  if (!right) return std::nullopt;
  return rebuild(deriv_kind(a.kind()), *left, *right);
}

bool less_dynamic(const Type& a, const Type& b) { return check_dynamism(a, b).has_value(); }

DynDeriv deriv_id(const Type& a) {
  if (!a.is_connective()) return DynDeriv::id_base(a);
  return rebuild(deriv_kind(a.kind()), deriv_id(a.left()), deriv_id(a.right()));
}

DynDeriv deriv_compose(const DynDeriv& c, const DynDeriv& d) {
  if (!(d.upper() == c.lower())) {
    throw std::invalid_argument("cannot compose " + to_string(c) + " after " + to_string(d));
  }
  switch (c.kind()) {
    case DerivKind::TagComp: return DynDeriv::tag_comp(c.tag(), deriv_compose(c.rest(), d));
    case DerivKind::IdBase: return d;
    default:
      return rebuild(c.kind(), deriv_compose(c.left(), d.left()), deriv_compose(c.right(), d.right()));
  }
}

DynDeriv deriv_top(const Type& a) {
  if (a.is_dyn()) return DynDeriv::id_base(a);
  if (a.kind() == TypeKind::Unit) return DynDeriv::tag_comp(a, DynDeriv::id_base(a));
  return DynDeriv::tag_comp(gradual::tag_of(a.kind()),
                            rebuild(deriv_kind(a.kind()), deriv_top(a.left()), deriv_top(a.right())));
}

std::string_view to_string(Mode m) { return m == Mode::Embed ? "e" : "p"; }

typed::Term ep_cast(Mode mode, const DynDeriv& c) {
  switch (c.kind()) {
    case DerivKind::IdBase: return typed::Term::hole();
    case DerivKind::TagComp: {
      auto inner = ep_cast(mode, c.rest());
      if (mode == Mode::Embed) return typed::plug(elaborate::tag_embedding(c.tag()), inner);
      return typed::plug(inner, elaborate::tag_projection(c.tag()));
    }
    case DerivKind::Prod: return elaborate::functor_prod(ep_cast(mode, c.left()), ep_cast(mode, c.right()));
    case DerivKind::Sum: {
      const auto& target = mode == Mode::Embed ? c.upper() : c.lower();
      return elaborate::functor_sum(elaborate::translate_type(target), ep_cast(mode, c.left()),
                                    ep_cast(mode, c.right()));
    }
    case DerivKind::Fun: {
      const auto& target = mode == Mode::Embed ? c.upper() : c.lower();
      return elaborate::functor_fun(elaborate::translate_type(target.left()), ep_cast(complement(mode), c.left()),
                                    ep_cast(mode, c.right()));
    }
  }
  throw std::logic_error("unknown derivation");
}

}  // namespace lamg::dynamism
