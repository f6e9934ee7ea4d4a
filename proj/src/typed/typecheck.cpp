#include "lamg/typed.hpp"

namespace lamg::typed {

namespace {

[[noreturn]] void fail(const char* rule, const Term& at, const std::string& message) {
  throw TypeCheckError(rule, print(at), message);
}

void expect_equal(const char* rule, const Term& at, const Type& expected, const Type& actual) {
  if (!(expected == actual)) {
    fail(rule, at, "expected " + to_string(expected) + " but found " + to_string(actual));
  }
}

void expect_closed(const char* rule, const Term& at, const Type& type) {
  if (!is_closed(type)) fail(rule, at, "annotation " + to_string(type) + " has a free type variable");
}

Type synth(Env& env, const Term& term);

Type synth_under(Env& env, std::initializer_list<Type> binders, const Term& body) {
  for (const auto& b : binders) env.push_back(b);
  Type result = synth(env, body);
  env.erase(env.end() - static_cast<std::ptrdiff_t>(binders.size()), env.end());
  return result;
}

Type synth(Env& env, const Term& term) {
  switch (term.kind()) {
    case TermKind::Hole: fail("Hole", term, "a cast-context hole is not a term");
    case TermKind::Err: {
      const auto& e = term.get<node::Err>();
      if (!e.type) fail("Err", term, "an error needs a type ascription here");
      expect_closed("Err", term, *e.type);
      return *e.type;
    }
    case TermKind::Var: {
      auto index = term.get<node::Var>().index;
      auto type = lookup(env, index);
      if (!type) fail("Var", term, "unbound index " + std::to_string(index));
      return *type;
    }
    case TermKind::Let: {
      const auto& l = term.get<node::Let>();
      auto bound = synth(env, l.bound);
      return synth_under(env, {bound}, l.body);
    }
    case TermKind::Roll: {
      const auto& r = term.get<node::Roll>();
      if (r.mu.kind() != TypeKind::Mu) fail("Roll", term, "annotation " + to_string(r.mu) + " is not a mu type");
      expect_closed("Roll", term, r.mu);
      expect_equal("Roll", term, unfold(r.mu), synth(env, r.body));
      return r.mu;
    }
    case TermKind::Unroll: {
      auto body = synth(env, term.get<node::Unroll>().body);
      if (body.kind() != TypeKind::Mu) fail("Unroll", term, "unrolling non-recursive type " + to_string(body));
      return unfold(body);
    }
    case TermKind::UnitVal: return Type::unit();
    case TermKind::Pair: {
      const auto& p = term.get<node::Pair>();
      auto first = synth(env, p.first);
      return Type::prod(first, synth(env, p.second));
    }
    case TermKind::MatchPair: {
      const auto& m = term.get<node::MatchPair>();
      auto scrutinee = synth(env, m.scrutinee);
      if (scrutinee.kind() != TypeKind::Prod) {
        fail("MatchPair", term, "scrutinee has non-product type " + to_string(scrutinee));
      }
      return synth_under(env, {scrutinee.left(), scrutinee.right()}, m.body);
    }
    case TermKind::Inl:
    case TermKind::Inr: {
      bool left = term.kind() == TermKind::Inl;
      const auto& sum = left ? term.get<node::Inl>().sum : term.get<node::Inr>().sum;
      const auto& body = left ? term.get<node::Inl>().body : term.get<node::Inr>().body;
      const char* rule = left ? "Inl" : "Inr";
      if (sum.kind() != TypeKind::Sum) fail(rule, term, "ascription " + to_string(sum) + " is not a sum");
      expect_closed(rule, term, sum);
      expect_equal(rule, term, left ? sum.left() : sum.right(), synth(env, body));
      return sum;
    }
    case TermKind::Case: {
      const auto& c = term.get<node::Case>();
      auto scrutinee = synth(env, c.scrutinee);
      if (scrutinee.kind() != TypeKind::Sum) {
        fail("Case", term, "scrutinee has non-sum type " + to_string(scrutinee));
      }
      auto left = synth_under(env, {scrutinee.left()}, c.left);
      auto right = synth_under(env, {scrutinee.right()}, c.right);
      expect_equal("Case", term, left, right);
      return left;
    }
    case TermKind::Lam: {
      const auto& l = term.get<node::Lam>();
      expect_closed("Lam", term, l.domain);
      return Type::fun(l.domain, synth_under(env, {l.domain}, l.body));
    }
    case TermKind::App: {
      const auto& a = term.get<node::App>();
      auto function = synth(env, a.function);
      if (function.kind() != TypeKind::Fun) {
        fail("App", term, "applied term has non-function type " + to_string(function));
      }
      expect_equal("App", term, function.left(), synth(env, a.argument));
      return function.right();
    }
  }
  fail("?", term, "unknown term");
}

}  // namespace

Type typecheck(const Env& env, const Term& term) {
  Env scratch = env;
  return synth(scratch, term);
}

void check(const Env& env, const Term& term, const Type& expected) {
  if (is_err(term)) return;
  expect_equal("Check", term, expected, typecheck(env, term));
}

}  // namespace lamg::typed
