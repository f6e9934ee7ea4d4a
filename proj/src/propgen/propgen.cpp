#include "lamg/propgen.hpp"

#include <algorithm>

#include "lamg/dynamism.hpp"

namespace lamg::propgen {

using gradual::TypeKind;

// -------------------------------------------------------------------- types

Type gen_type(Rng& rng, std::size_t depth) {
  if (depth == 0) return rng.chance(0.5) ? Type::dyn() : Type::unit();
  switch (rng.below(5)) {
    case 0: return Type::dyn();
    case 1: return Type::unit();
    case 2: return Type::prod(gen_type(rng, depth - 1), gen_type(rng, depth - 1));
    case 3: return Type::sum(gen_type(rng, depth - 1), gen_type(rng, depth - 1));
    default: return Type::fun(gen_type(rng, depth - 1), gen_type(rng, depth - 1));
  }
}

Type gen_type(const GenConfig& config, Rng& rng) { return gen_type(rng, config.max_type_depth); }

namespace {

Type related(Rng& rng, const Type& upper, std::size_t depth) {
  switch (upper.kind()) {
    case TypeKind::Dyn:
      if (rng.chance(0.3)) return upper;
      return gen_type(rng, depth);
    case TypeKind::Unit: return upper;
    default: {
      std::size_t next = depth == 0 ? 0 : depth - 1;
      return Type::binary(upper.kind(), related(rng, upper.left(), next), related(rng, upper.right(), next));
    }
  }
}

}  // namespace

Type gen_related_type(const GenConfig& config, Rng& rng, const Type& upper) {
  return related(rng, upper, config.max_type_depth);
}

Type gen_raised_type(Rng& rng, const Type& lower) {
  if (lower.is_dyn() || rng.chance(0.3)) return Type::dyn();
  if (lower.kind() == TypeKind::Unit) return lower;
  return Type::binary(lower.kind(), gen_raised_type(rng, lower.left()), gen_raised_type(rng, lower.right()));
}

// -------------------------------------------------------------------- terms

Term canonical_inhabitant(const Type& target, bool allow_casts) {
  switch (target.kind()) {
    case TypeKind::Dyn:
      if (allow_casts) return Term::cast(Type::unit(), Type::dyn(), Term::unit());
      return Term::err(target);
    case TypeKind::Unit: return Term::unit();
    case TypeKind::Prod:
      return Term::pair(canonical_inhabitant(target.left(), allow_casts),
                        canonical_inhabitant(target.right(), allow_casts));
    case TypeKind::Sum: return Term::inl(target, canonical_inhabitant(target.left(), allow_casts));
    case TypeKind::Fun: return Term::lam(target.left(), canonical_inhabitant(target.right(), allow_casts));
  }
  return Term::err(target);
}

namespace {

// Types of binders introduced by elimination forms stay small.
constexpr std::size_t kAuxTypeDepth = 1;

class Generator {
 public:
  Generator(const GenConfig& config, Rng& rng, Env env) : config_(config), rng_(rng), env_(std::move(env)) {}

  Term term(const Type& target, std::size_t size) {
    if (rng_.chance(config_.error_probability)) return Term::err(target);
    if (size > 1 && rng_.chance(config_.cast_probability)) return cast(target, size);
    auto vars = variables(target);
    if (!vars.empty() && (size <= 1 || rng_.chance(0.3))) return Term::var(vars[rng_.below(vars.size())]);
    if (size <= 1) return canonical_inhabitant(target, casts_allowed());
    if (rng_.chance(0.45)) return elimination(target, size);
    return introduction(target, size);
  }

  Term value(const Type& target, std::size_t depth) {
    switch (target.kind()) {
      case TypeKind::Unit: return Term::unit();
      case TypeKind::Prod: return Term::pair(value(target.left(), depth), value(target.right(), depth));
      case TypeKind::Sum:
        if (rng_.chance(0.5)) return Term::inl(target, value(target.left(), depth));
        return Term::inr(target, value(target.right(), depth));
      case TypeKind::Fun:
        return Term::lam(target.left(),
                         under({target.left()}, [&] { return term(target.right(), config_.max_term_size / 2); }));
      case TypeKind::Dyn: {
        Type tag = depth == 0 ? Type::unit() : random_tag();
        return Term::cast(tag, Type::dyn(), value(tag, depth == 0 ? 0 : depth - 1));
      }
    }
    return Term::unit();
  }

 private:
  bool casts_allowed() const { return config_.cast_probability > 0.0; }

  Type random_tag() {
    static constexpr std::array<TypeKind, 4> kinds = {TypeKind::Unit, TypeKind::Prod, TypeKind::Sum, TypeKind::Fun};
    auto kind = kinds[rng_.below(kinds.size())];
    return kind == TypeKind::Unit ? Type::unit() : gradual::tag_of(kind);
  }

  std::vector<std::size_t> variables(const Type& target) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < env_.size(); ++i) {
      if (env_[env_.size() - 1 - i] == target) out.push_back(i);
    }
    return out;
  }

  Term cast(const Type& target, std::size_t size) {
    Type source = target;
    auto choice = rng_.below(10);
    if (choice < 4) {
      source = related(rng_, target, config_.max_type_depth);
    } else if (choice < 8) {
      source = gen_raised_type(rng_, target);
    } else {
      source = gen_type(rng_, config_.max_type_depth);
    }
    return Term::cast(source, target, term(source, size - 1));
  }

  // Splits `total` into two positive parts.
  std::pair<std::size_t, std::size_t> split(std::size_t total) {
    if (total < 2) return {1, 1};
    std::size_t first = 1 + rng_.below(total - 1);
    return {first, total - first};
  }

  Term introduction(const Type& target, std::size_t size) {
    switch (target.kind()) {
      case TypeKind::Unit: return Term::unit();
      case TypeKind::Prod: {
        auto [a, b] = split(size - 1);
        Term first = term(target.left(), a);
        return Term::pair(first, term(target.right(), b));
      }
      case TypeKind::Sum:
        if (rng_.chance(0.5)) return Term::inl(target, term(target.left(), size - 1));
        return Term::inr(target, term(target.right(), size - 1));
      case TypeKind::Fun:
        return Term::lam(target.left(), under({target.left()}, [&] { return term(target.right(), size - 1); }));
      case TypeKind::Dyn: {
        if (!casts_allowed()) return elimination(target, size);
        Type tag = random_tag();
        return Term::cast(tag, target, term(tag, size - 1));
      }
    }
    return canonical_inhabitant(target, casts_allowed());
  }

  Term elimination(const Type& target, std::size_t size) {
    auto [a, b] = split(size - 1);
    switch (rng_.below(3)) {
      case 0: {
        Type argument = gen_type(rng_, kAuxTypeDepth);
        Term function = term(Type::fun(argument, target), a);
        return Term::app(function, term(argument, b));
      }
      case 1: {
        Type first = gen_type(rng_, kAuxTypeDepth);
        Type second = gen_type(rng_, kAuxTypeDepth);
        Term scrutinee = term(Type::prod(first, second), a);
        return Term::match_pair(scrutinee, first, second, under({first, second}, [&] { return term(target, b); }));
      }
      default: {
        Type left = gen_type(rng_, kAuxTypeDepth);
        Type right = gen_type(rng_, kAuxTypeDepth);
        auto [c, d] = split(b);
        Term scrutinee = term(Type::sum(left, right), a);
        Term on_left = under({left}, [&] { return term(target, c); });
        Term on_right = under({right}, [&] { return term(target, d); });
        return Term::case_of(scrutinee, left, on_left, right, on_right);
      }
    }
  }

  template <class F>
  Term under(std::initializer_list<Type> binders, F body) {
    for (const auto& b : binders) env_.push_back(b);
    Term result = body();
    env_.erase(env_.end() - static_cast<std::ptrdiff_t>(binders.size()), env_.end());
    return result;
  }

  const GenConfig& config_;
  Rng& rng_;
  Env env_;
};

}  // namespace

Term gen_term(const GenConfig& config, Rng& rng, const Env& env, const Type& target) {
  return Generator(config, rng, env).term(target, std::max<std::size_t>(config.max_term_size, 1));
}

Term gen_value(const GenConfig& config, Rng& rng, const Type& target) {
  return Generator(config, rng, {}).value(target, config.max_type_depth);
}

std::pair<Term, Type> gen_program(const GenConfig& config, Rng& rng) {
  Type type = gen_type(config, rng);
  Term term = gen_term(config, rng, {}, type);
  while (type.kind() == TypeKind::Fun) {
    term = Term::app(term, gen_value(config, rng, type.left()));
    type = type.right();
  }
  return {term, type};
}

// ----------------------------------------------------------------- mutation

namespace {

struct Reject {};

class Lowerer {
 public:
  Lowerer(const GenConfig& config, Rng& rng) : config_(config), rng_(rng) {}

  std::pair<Term, Type> lower(const Term& t, const std::optional<Type>& expected) {
    using namespace gradual::node;
    switch (t.kind()) {
      case gradual::TermKind::Err: throw Reject{};
      case gradual::TermKind::Var: {
        auto type = gradual::lookup(env_, t.get<Var>().index);
        if (!type) throw Reject{};
        return {t, *type};
      }
      case gradual::TermKind::UnitVal: return {t, Type::unit()};
      case gradual::TermKind::Cast: {
        const auto& c = t.get<Cast>();
        auto [body, source] = lower(c.body, std::nullopt);
        Type target = fits(expected, c.to) ? *expected : maybe_lower(c.to);
        return {Term::cast(source, target, body), target};
      }
      case gradual::TermKind::Pair: {
        const auto& p = t.get<Pair>();
        bool split = expected && expected->kind() == TypeKind::Prod;
        auto [first, a] = lower(p.first, split ? std::optional(expected->left()) : std::nullopt);
        auto [second, b] = lower(p.second, split ? std::optional(expected->right()) : std::nullopt);
        return {Term::pair(first, second), Type::prod(a, b)};
      }
      case gradual::TermKind::Inl:
      case gradual::TermKind::Inr: {
        bool left = t.kind() == gradual::TermKind::Inl;
        const auto& sum = left ? t.get<Inl>().sum : t.get<Inr>().sum;
        const auto& body = left ? t.get<Inl>().body : t.get<Inr>().body;
        if (sum.kind() != TypeKind::Sum) throw Reject{};
        bool split = expected && expected->kind() == TypeKind::Sum;
        std::optional<Type> inner;
        std::optional<Type> other;
        if (split) {
          inner = left ? expected->left() : expected->right();
          other = left ? expected->right() : expected->left();
        }
        auto [lowered, type] = lower(body, inner);
        const auto& old_other = left ? sum.right() : sum.left();
        Type new_other = fits(other, old_other) ? *other : maybe_lower(old_other);
        Type new_sum = left ? Type::sum(type, new_other) : Type::sum(new_other, type);
        return {left ? Term::inl(new_sum, lowered) : Term::inr(new_sum, lowered), new_sum};
      }
      case gradual::TermKind::MatchPair: {
        const auto& m = t.get<MatchPair>();
        auto [scrutinee, type] = lower(m.scrutinee, std::nullopt);
        if (type.kind() != TypeKind::Prod) throw Reject{};
        auto [body, result] = under({type.left(), type.right()}, [&] { return lower(m.body, expected); });
        return {Term::match_pair(scrutinee, type.left(), type.right(), body), result};
      }
      case gradual::TermKind::Case: {
        const auto& c = t.get<Case>();
        auto [scrutinee, type] = lower(c.scrutinee, std::nullopt);
        if (type.kind() != TypeKind::Sum) throw Reject{};
        auto [on_left, result] = under({type.left()}, [&] { return lower(c.left, expected); });
        auto [on_right, right_result] = under({type.right()}, [&] { return lower(c.right, result); });
        if (!(result == right_result)) throw Reject{};
        return {Term::case_of(scrutinee, type.left(), on_left, type.right(), on_right), result};
      }
      case gradual::TermKind::Lam: {
        const auto& l = t.get<Lam>();
        bool split = expected && expected->kind() == TypeKind::Fun;
        std::optional<Type> domain_hint = split ? std::optional(expected->left()) : std::nullopt;
        Type domain = fits(domain_hint, l.domain) ? *domain_hint : maybe_lower(l.domain);
        auto [body, result] = under({domain}, [&] {
          return lower(l.body, split ? std::optional(expected->right()) : std::nullopt);
        });
        return {Term::lam(domain, body), Type::fun(domain, result)};
      }
      case gradual::TermKind::App: {
        const auto& a = t.get<App>();
        auto [function, type] = lower(a.function, std::nullopt);
        if (type.kind() != TypeKind::Fun) throw Reject{};
        auto [argument, argument_type] = lower(a.argument, type.left());
        if (!(argument_type == type.left())) throw Reject{};
        return {Term::app(function, argument), type.right()};
      }
    }
    throw Reject{};
  }

 private:
  // Adopting the type the context expects keeps the result well typed.
  static bool fits(const std::optional<Type>& expected, const Type& annotation) {
    return expected && dynamism::less_dynamic(*expected, annotation);
  }

  Type maybe_lower(const Type& annotation) {
    if (!rng_.chance(0.5)) return annotation;
    return gen_related_type(config_, rng_, annotation);
  }

  template <class F>
  std::pair<Term, Type> under(std::initializer_list<Type> binders, F body) {
    for (const auto& b : binders) env_.push_back(b);
    auto result = body();
    env_.erase(env_.end() - static_cast<std::ptrdiff_t>(binders.size()), env_.end());
    return result;
  }

  const GenConfig& config_;
  Rng& rng_;
  Env env_;
};

}  // namespace

std::optional<Mutation> mutate_less_dynamic(const GenConfig& config, Rng& rng, const Term& upper,
                                            MutationStats& stats) {
  ++stats.attempts;
  Term lower = upper;
  try {
    lower = Lowerer(config, rng).lower(upper, std::nullopt).first;
  } catch (const Reject&) {
    return std::nullopt;
  }
  if (lower == upper) return std::nullopt;
  Type lower_type = Type::unit();
  try {
    lower_type = gradual::typecheck({}, lower);
  } catch (const TypeCheckError&) {
    return std::nullopt;
  }
  auto related = dynamism::check_term_dynamism({}, {}, lower, upper);
  if (!related) return std::nullopt;
  ++stats.accepted;
  return Mutation{lower, upper, lower_type, related.types->second};
}

// ----------------------------------------------------------------- coverage

void RuleCoverage::trace(const Term& term, std::size_t fuel) {
  Term current = term;
  for (std::size_t i = 0; i < fuel; ++i) {
    auto next = gradual::step(current);
    if (!next) return;
    record(next->rule);
    current = std::move(next->next);
  }
}

std::vector<gradual::Rule> RuleCoverage::missing() const {
  std::vector<gradual::Rule> out;
  for (std::size_t i = 0; i < gradual::kRuleCount; ++i) {
    if (counts_[i] == 0) out.push_back(static_cast<gradual::Rule>(i));
  }
  return out;
}

void RuleCoverage::merge(const RuleCoverage& other) {
  for (std::size_t i = 0; i < gradual::kRuleCount; ++i) counts_[i] += other.counts_[i];
}

}  // namespace lamg::propgen
