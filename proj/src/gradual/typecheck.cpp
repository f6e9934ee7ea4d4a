#include "lamg/gradual.hpp"

namespace lamg::gradual {

namespace {

[[noreturn]] void fail(const char* rule, const Term& at, const std::string& message) {
  throw TypeCheckError(rule, print(at), message);
}

void expect_equal(const char* rule, const Term& at, const Type& expected, const Type& actual) {
  if (!(expected == actual)) {
    fail(rule, at, "expected " + to_string(expected) + " but found " + to_string(actual));
  }
}

Type synth(Env& env, const Term& term);

// Exceptions abandon `env`; `typecheck` only ever passes a scratch copy.
Type synth_under(Env& env, std::initializer_list<Type> binders, const Term& body) {
  for (const auto& b : binders) env.push_back(b);
  Type result = synth(env, body);
  env.erase(env.end() - static_cast<std::ptrdiff_t>(binders.size()), env.end());
  return result;
}

Type synth(Env& env, const Term& term) {
  switch (term.kind()) {
    case TermKind::Err: {
      const auto& e = term.get<node::Err>();
      if (!e.type) fail("Err", term, "an error needs a type ascription here");
      return *e.type;
    }
    case TermKind::Var: {
      auto index = term.get<node::Var>().index;
      auto type = lookup(env, index);
      if (!type) fail("Var", term, "unbound index " + std::to_string(index));
      return *type;
    }
    case TermKind::Cast: {
      const auto& c = term.get<node::Cast>();
      expect_equal("Cast", term, c.from, synth(env, c.body));
      return c.to;
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
      expect_equal("MatchPair", term, scrutinee.left(), m.first_type);
      expect_equal("MatchPair", term, scrutinee.right(), m.second_type);
      return synth_under(env, {m.first_type, m.second_type}, m.body);
    }
    case TermKind::Inl: {
      const auto& i = term.get<node::Inl>();
      if (i.sum.kind() != TypeKind::Sum) fail("Inl", term, "ascription " + to_string(i.sum) + " is not a sum");
      expect_equal("Inl", term, i.sum.left(), synth(env, i.body));
      return i.sum;
    }
    case TermKind::Inr: {
      const auto& i = term.get<node::Inr>();
      if (i.sum.kind() != TypeKind::Sum) fail("Inr", term, "ascription " + to_string(i.sum) + " is not a sum");
      expect_equal("Inr", term, i.sum.right(), synth(env, i.body));
      return i.sum;
    }
    case TermKind::Case: {
      const auto& c = term.get<node::Case>();
      auto scrutinee = synth(env, c.scrutinee);
      if (scrutinee.kind() != TypeKind::Sum) {
        fail("Case", term, "scrutinee has non-sum type " + to_string(scrutinee));
      }
      expect_equal("Case", term, scrutinee.left(), c.left_type);
      expect_equal("Case", term, scrutinee.right(), c.right_type);
      auto left = synth_under(env, {c.left_type}, c.left);
      auto right = synth_under(env, {c.right_type}, c.right);
      expect_equal("Case", term, left, right);
      return left;
    }
    case TermKind::Lam: {
      const auto& l = term.get<node::Lam>();
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

}  // namespace lamg::gradual
