#include "lamg/elaborate.hpp"

#include <stdexcept>

namespace lamg::elaborate {

using gradual::TypeKind;
using typed::Term;

typed::Type translate_type(const gradual::Type& type) {
  switch (type.kind()) {
    case TypeKind::Dyn: return typed::dyn_type();
    case TypeKind::Unit: return typed::Type::unit();
    case TypeKind::Prod: return typed::Type::prod(translate_type(type.left()), translate_type(type.right()));
    case TypeKind::Sum: return typed::Type::sum(translate_type(type.left()), translate_type(type.right()));
    case TypeKind::Fun: return typed::Type::fun(translate_type(type.left()), translate_type(type.right()));
  }
  throw std::invalid_argument("unknown gradual type");
}

typed::Env translate_env(const gradual::Env& env) {
  typed::Env out;
  out.reserve(env.size());
  for (const auto& t : env) out.push_back(translate_type(t));
  return out;
}

namespace {

// Position of a tag in the right-nested sum under ⟦?⟧.
std::size_t tag_position(const gradual::Type& tag) {
  if (!tag.is_tag()) throw std::invalid_argument("not a tag type: " + to_string(tag));
  switch (tag.kind()) {
    case TypeKind::Unit: return 0;
    case TypeKind::Prod: return 1;
    case TypeKind::Sum: return 2;
    case TypeKind::Fun: return 3;
    default: break;
  }
  throw std::invalid_argument("not a tag type: " + to_string(tag));
}

// The sums along the spine of unfold(⟦?⟧), outermost first.
const std::vector<typed::Type>& dyn_spine() {
  static const std::vector<typed::Type> spine = [] {
    std::vector<typed::Type> out;
    typed::Type t = typed::unfold(typed::dyn_type());
    for (int i = 0; i < 3; ++i) {
      out.push_back(t);
      t = t.right();
    }
    return out;
  }();
  return spine;
}

Term inject(std::size_t position, Term body) {
  const auto& spine = dyn_spine();
  Term out = position < 3 ? Term::inl(spine[position], std::move(body)) : std::move(body);
  for (std::size_t i = std::min<std::size_t>(position, 3); i-- > 0;) out = Term::inr(spine[i], std::move(out));
  return out;
}

// Case tree over `scrutinee` (the unrolled dynamic value) that returns the
// payload at `position` and errors elsewhere. `depth` counts the spine
// levels already peeled off.
Term project_from(Term scrutinee, std::size_t position, std::size_t depth, const typed::Type& result) {
  if (depth == 3) return scrutinee;
  Term miss = Term::err(result);
  if (position == depth) return Term::case_of(std::move(scrutinee), Term::var(0), miss);
  return Term::case_of(std::move(scrutinee), miss, project_from(Term::var(0), position, depth + 1, result));
}

bool same_shape(const gradual::Type& a, const gradual::Type& b) {
  return a.kind() == b.kind() && a.is_connective();
}

}  // namespace

Term tag_embedding(const gradual::Type& tag) {
  return Term::roll(typed::dyn_type(), inject(tag_position(tag), Term::hole()));
}

Term tag_projection(const gradual::Type& tag) {
  return project_from(Term::unroll(Term::hole()), tag_position(tag), 0, translate_type(tag));
}

Term functor_prod(const Term& first, const Term& second) {
  return Term::match_pair(Term::hole(),
                          Term::pair(typed::plug(first, Term::var(1)), typed::plug(second, Term::var(0))));
}

Term functor_sum(const typed::Type& target, const Term& left, const Term& right) {
  return Term::case_of(Term::hole(), Term::inl(target, typed::plug(left, Term::var(0))),
                       Term::inr(target, typed::plug(right, Term::var(0))));
}

Term functor_fun(const typed::Type& target_domain, const Term& domain, const Term& codomain) {
  Term call = Term::app(Term::var(1), typed::plug(domain, Term::var(0)));
  return Term::let(Term::hole(), Term::lam(target_domain, typed::plug(codomain, call)));
}

Term cast_context(const gradual::Type& from, const gradual::Type& to) {
  if (from.is_dyn() && to.is_dyn()) return Term::hole();
  if (from.kind() == TypeKind::Unit && to.kind() == TypeKind::Unit) return Term::hole();
  if (same_shape(from, to)) {
    switch (from.kind()) {
      case TypeKind::Prod:
        return functor_prod(cast_context(from.left(), to.left()), cast_context(from.right(), to.right()));
      case TypeKind::Sum:
        return functor_sum(translate_type(to), cast_context(from.left(), to.left()),
                           cast_context(from.right(), to.right()));
      case TypeKind::Fun:
        return functor_fun(translate_type(to.left()), cast_context(to.left(), from.left()),
                           cast_context(from.right(), to.right()));
      default: break;
    }
  }
  if (to.is_dyn()) {
    if (from.is_tag()) return tag_embedding(from);
    auto tag = gradual::floor(from);
    return typed::plug(cast_context(tag, to), cast_context(from, tag));
  }
  if (from.is_dyn()) {
    if (to.is_tag()) return tag_projection(to);
    auto tag = gradual::floor(to);
    return typed::plug(cast_context(tag, to), cast_context(from, tag));
  }
  return Term::let(Term::hole(), Term::err(translate_type(to)));
}

Term translate_term(const gradual::Term& term) {
  using namespace gradual::node;
  switch (term.kind()) {
    case gradual::TermKind::Err: {
      const auto& e = term.get<Err>();
      if (e.type) return Term::err(translate_type(*e.type));
      return Term::err();
    }
    case gradual::TermKind::Var: return Term::var(term.get<Var>().index);
    case gradual::TermKind::Cast: {
      const auto& c = term.get<Cast>();
      return typed::plug(cast_context(c.from, c.to), translate_term(c.body));
    }
    case gradual::TermKind::UnitVal: return Term::unit();
    case gradual::TermKind::Pair: {
      const auto& p = term.get<Pair>();
      return Term::pair(translate_term(p.first), translate_term(p.second));
    }
    case gradual::TermKind::MatchPair: {
      const auto& m = term.get<MatchPair>();
      return Term::match_pair(translate_term(m.scrutinee), translate_term(m.body));
    }
    case gradual::TermKind::Inl: {
      const auto& i = term.get<Inl>();
      return Term::inl(translate_type(i.sum), translate_term(i.body));
    }
    case gradual::TermKind::Inr: {
      const auto& i = term.get<Inr>();
      return Term::inr(translate_type(i.sum), translate_term(i.body));
    }
    case gradual::TermKind::Case: {
      const auto& c = term.get<Case>();
      return Term::case_of(translate_term(c.scrutinee), translate_term(c.left), translate_term(c.right));
    }
    case gradual::TermKind::Lam: {
      const auto& l = term.get<Lam>();
      return Term::lam(translate_type(l.domain), translate_term(l.body));
    }
    case gradual::TermKind::App: {
      const auto& a = term.get<App>();
      return Term::app(translate_term(a.function), translate_term(a.argument));
    }
  }
  throw std::invalid_argument("unknown gradual term");
}

}  // namespace lamg::elaborate
