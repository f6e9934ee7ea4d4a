#include "lamg/dynamism.hpp"

namespace lamg::dynamism {

namespace {

using gradual::Term;
using gradual::TermKind;
using gradual::TypeKind;
namespace node = gradual::node;

struct Unrelated {
  std::string reason;
};

using TypePair = std::pair<Type, Type>;

[[noreturn]] void reject(std::string reason) { throw Unrelated{std::move(reason)}; }

void require_less(const Type& a, const Type& b, const char* where) {
  if (!less_dynamic(a, b)) reject(std::string(where) + ": " + to_string(a) + " is not below " + to_string(b));
}

void require_equal(const Type& expected, const Type& actual, const char* where) {
  if (!(expected == actual)) {
    reject(std::string(where) + ": expected " + to_string(expected) + " but found " + to_string(actual));
  }
}

class Checker {
 public:
  Checker(gradual::Env env1, gradual::Env env2) : env1_(std::move(env1)), env2_(std::move(env2)) {}

  TypePair relate(const Term& t1, const Term& t2) {
    if (t1.kind() == TermKind::Err || t2.kind() == TermKind::Err) reject("no rule relates err");
    if (t1.kind() != t2.kind()) reject("term structure differs: " + print(t1) + " vs " + print(t2));
    switch (t1.kind()) {
      case TermKind::Err: break;
      case TermKind::Var: {
        auto i = t1.get<node::Var>().index;
        if (i != t2.get<node::Var>().index) reject("different variables");
        auto a = gradual::lookup(env1_, i);
        auto b = gradual::lookup(env2_, i);
        if (!a || !b) reject("unbound variable");
        return {*a, *b};
      }
      case TermKind::Cast: {
        const auto& c1 = t1.get<node::Cast>();
        const auto& c2 = t2.get<node::Cast>();
        auto [a1, a2] = relate(c1.body, c2.body);
        require_equal(c1.from, a1, "cast source");
        require_equal(c2.from, a2, "cast source");
        require_less(c1.to, c2.to, "cast target");
        return {c1.to, c2.to};
      }
      case TermKind::UnitVal: return {Type::unit(), Type::unit()};
      case TermKind::Pair: {
        const auto& p1 = t1.get<node::Pair>();
        const auto& p2 = t2.get<node::Pair>();
        auto first = relate(p1.first, p2.first);
        auto second = relate(p1.second, p2.second);
        return {Type::prod(first.first, second.first), Type::prod(first.second, second.second)};
      }
      case TermKind::MatchPair: {
        const auto& m1 = t1.get<node::MatchPair>();
        const auto& m2 = t2.get<node::MatchPair>();
        auto [s1, s2] = relate(m1.scrutinee, m2.scrutinee);
        if (s1.kind() != TypeKind::Prod || s2.kind() != TypeKind::Prod) reject("match on a non-product");
        require_equal(s1, Type::prod(m1.first_type, m1.second_type), "match annotation");
        require_equal(s2, Type::prod(m2.first_type, m2.second_type), "match annotation");
        return under({{m1.first_type, m2.first_type}, {m1.second_type, m2.second_type}},
                     [&] { return relate(m1.body, m2.body); });
      }
      case TermKind::Inl:
      case TermKind::Inr: {
        bool left = t1.kind() == TermKind::Inl;
        const auto& sum1 = left ? t1.get<node::Inl>().sum : t1.get<node::Inr>().sum;
        const auto& sum2 = left ? t2.get<node::Inl>().sum : t2.get<node::Inr>().sum;
        const auto& body1 = left ? t1.get<node::Inl>().body : t1.get<node::Inr>().body;
        const auto& body2 = left ? t2.get<node::Inl>().body : t2.get<node::Inr>().body;
        if (sum1.kind() != TypeKind::Sum || sum2.kind() != TypeKind::Sum) reject("injection into a non-sum");
        auto [a1, a2] = relate(body1, body2);
        require_equal(left ? sum1.left() : sum1.right(), a1, "injection");
        require_equal(left ? sum2.left() : sum2.right(), a2, "injection");
        require_less(left ? sum1.right() : sum1.left(), left ? sum2.right() : sum2.left(), "other summand");
        return {sum1, sum2};
      }
      case TermKind::Case: {
        const auto& c1 = t1.get<node::Case>();
        const auto& c2 = t2.get<node::Case>();
        auto [s1, s2] = relate(c1.scrutinee, c2.scrutinee);
        if (s1.kind() != TypeKind::Sum || s2.kind() != TypeKind::Sum) reject("case on a non-sum");
        require_equal(s1, Type::sum(c1.left_type, c1.right_type), "case annotation");
        require_equal(s2, Type::sum(c2.left_type, c2.right_type), "case annotation");
        auto left = under({{c1.left_type, c2.left_type}}, [&] { return relate(c1.left, c2.left); });
        auto right = under({{c1.right_type, c2.right_type}}, [&] { return relate(c1.right, c2.right); });
        require_equal(left.first, right.first, "case branches");
        require_equal(left.second, right.second, "case branches");
        return left;
      }
      case TermKind::Lam: {
        const auto& l1 = t1.get<node::Lam>();
        const auto& l2 = t2.get<node::Lam>();
        require_less(l1.domain, l2.domain, "lambda annotation");
        auto [b1, b2] = under({{l1.domain, l2.domain}}, [&] { return relate(l1.body, l2.body); });
        return {Type::fun(l1.domain, b1), Type::fun(l2.domain, b2)};
      }
      case TermKind::App: {
        const auto& a1 = t1.get<node::App>();
        const auto& a2 = t2.get<node::App>();
        auto [f1, f2] = relate(a1.function, a2.function);
        if (f1.kind() != TypeKind::Fun || f2.kind() != TypeKind::Fun) reject("application of a non-function");
        auto [x1, x2] = relate(a1.argument, a2.argument);
        require_equal(f1.left(), x1, "argument");
        require_equal(f2.left(), x2, "argument");
        return {f1.right(), f2.right()};
      }
    }
    reject("unknown term");
  }

 private:
  // Binding pairs are related because every binder rule checks the
  // annotations it introduces.
  template <class F>
  TypePair under(std::initializer_list<TypePair> binders, F body) {
    for (const auto& [a, b] : binders) {
      require_less(a, b, "binder");
      env1_.push_back(a);
      env2_.push_back(b);
    }
    TypePair result = body();
    auto n = static_cast<std::ptrdiff_t>(binders.size());
    env1_.erase(env1_.end() - n, env1_.end());
    env2_.erase(env2_.end() - n, env2_.end());
    return result;
  }

  gradual::Env env1_;
  gradual::Env env2_;
};

}  // namespace

bool check_env_dynamism(const gradual::Env& lower, const gradual::Env& upper) {
  if (lower.size() != upper.size()) return false;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!less_dynamic(lower[i], upper[i])) return false;
  }
  return true;
}

TermDynamism check_term_dynamism(const gradual::Env& env1, const gradual::Env& env2, const gradual::Term& t1,
                                 const gradual::Term& t2) {
  if (!check_env_dynamism(env1, env2)) return {std::nullopt, "environments are not related"};
  try {
    return {Checker(env1, env2).relate(t1, t2), {}};
  } catch (const Unrelated& u) {
    return {std::nullopt, u.reason};
  }
}

}  // namespace lamg::dynamism
