#include <array>

#include "lamg/gradual.hpp"

namespace lamg::gradual {

std::string_view to_string(Rule rule) {
  static constexpr std::array<std::string_view, kRuleCount> names = {
      "Beta",   "MatchPair",   "CaseInl",     "CaseInr", "ErrorPropagate", "DynDyn",
      "TagUp",  "TagDn",       "TagMatch",    "TagMismatch", "TagMismatch'", "Pair",
      "Sum",    "Sum'",        "Fun",         "UnitUnit"};
  return names[static_cast<std::size_t>(rule)];
}

namespace {

// Result of focusing on the redex of a term.
struct Focus {
  enum class Kind { Value, Error, Stepped, Raise } kind;
  std::optional<Term> next;
  Rule rule = Rule::Beta;

  static Focus value() { return {Kind::Value, std::nullopt}; }
  static Focus error() { return {Kind::Error, std::nullopt}; }
  static Focus stepped(Term next, Rule rule) { return {Kind::Stepped, std::move(next), rule}; }
  // The whole program becomes ℧.
  static Focus raise(Rule rule) { return {Kind::Raise, std::nullopt, rule}; }
};

Focus focus(const Term& term);

// Focus on an evaluation-position child, rebuilding the parent on a step.
template <class Rebuild>
std::optional<Focus> descend(const Term& child, Rebuild rebuild) {
  Focus inner = focus(child);
  switch (inner.kind) {
    case Focus::Kind::Value: return std::nullopt;
    case Focus::Kind::Error: return Focus::raise(Rule::ErrorPropagate);
    case Focus::Kind::Raise: return inner;
    case Focus::Kind::Stepped: return Focus::stepped(rebuild(std::move(*inner.next)), inner.rule);
  }
  return std::nullopt;
}

// ⟨from ⇒ to⟩ v for a value v.
Focus reduce_cast(const Type& from, const Type& to, const Term& value) {
  if (from.is_dyn() && to.is_dyn()) return Focus::stepped(value, Rule::DynDyn);

  if (to.is_dyn()) {
    if (from.is_tag()) return Focus::value();
    auto tag = floor(from);
    return Focus::stepped(Term::cast(tag, Type::dyn(), Term::cast(from, tag, value)), Rule::TagUp);
  }

  if (from.is_dyn()) {
    if (!to.is_tag()) {
      auto tag = floor(to);
      return Focus::stepped(Term::cast(tag, to, Term::cast(Type::dyn(), tag, value)), Rule::TagDn);
    }
    // Values of ? are exactly tagged values.
    const auto* tagged = value.as<node::Cast>();
    if (tagged == nullptr || !tagged->to.is_dyn() || !tagged->from.is_tag()) {
      throw StuckError("projection from ? applied to an untagged value: " + print(value));
    }
    if (tagged->from == to) return Focus::stepped(tagged->body, Rule::TagMatch);
    return Focus::raise(Rule::TagMismatch);
  }

  if (from.kind() != to.kind()) return Focus::raise(Rule::TagMismatchPrime);

  switch (from.kind()) {
    case TypeKind::Unit: return Focus::stepped(value, Rule::UnitUnit);
    case TypeKind::Prod: {
      const auto* pair = value.as<node::Pair>();
      if (pair == nullptr) throw StuckError("product cast on a non-pair: " + print(value));
      return Focus::stepped(Term::pair(Term::cast(from.left(), to.left(), pair->first),
                                       Term::cast(from.right(), to.right(), pair->second)),
                            Rule::PairCast);
    }
    case TypeKind::Sum: {
      // The published rule drops the re-injection; keep it so the result
      // has the target sum type.
      if (const auto* inl = value.as<node::Inl>()) {
        return Focus::stepped(Term::inl(to, Term::cast(from.left(), to.left(), inl->body)), Rule::SumCast);
      }
      if (const auto* inr = value.as<node::Inr>()) {
        return Focus::stepped(Term::inr(to, Term::cast(from.right(), to.right(), inr->body)),
                              Rule::SumCastPrime);
      }
      throw StuckError("sum cast on a non-injection: " + print(value));
    }
    case TypeKind::Fun: {
      // λx:A2. ⟨B1⇒B2⟩(v (⟨A2⇒A1⟩x))
      auto wrapped = Term::lam(
          to.left(), Term::cast(from.right(), to.right(),
                                Term::app(shift(value, 1), Term::cast(to.left(), from.left(), Term::var(0)))));
      return Focus::stepped(std::move(wrapped), Rule::FunCast);
    }
    default: break;
  }
  throw StuckError("unhandled cast " + to_string(from) + " => " + to_string(to));
}

Focus focus(const Term& term) {
  switch (term.kind()) {
    case TermKind::Err: return Focus::error();
    case TermKind::UnitVal:
    case TermKind::Lam: return Focus::value();
    case TermKind::Var: throw StuckError("free variable in evaluation position: " + print(term));

    case TermKind::Cast: {
      const auto& c = term.get<node::Cast>();
      if (auto f = descend(c.body, [&](Term t) { return Term::cast(c.from, c.to, std::move(t)); })) return *f;
      return reduce_cast(c.from, c.to, c.body);
    }
    case TermKind::Pair: {
      const auto& p = term.get<node::Pair>();
      if (auto f = descend(p.first, [&](Term t) { return Term::pair(std::move(t), p.second); })) return *f;
      if (auto f = descend(p.second, [&](Term t) { return Term::pair(p.first, std::move(t)); })) return *f;
      return Focus::value();
    }
    case TermKind::Inl: {
      const auto& i = term.get<node::Inl>();
      if (auto f = descend(i.body, [&](Term t) { return Term::inl(i.sum, std::move(t)); })) return *f;
      return Focus::value();
    }
    case TermKind::Inr: {
      const auto& i = term.get<node::Inr>();
      if (auto f = descend(i.body, [&](Term t) { return Term::inr(i.sum, std::move(t)); })) return *f;
      return Focus::value();
    }
    case TermKind::MatchPair: {
      const auto& m = term.get<node::MatchPair>();
      if (auto f = descend(m.scrutinee, [&](Term t) {
            return Term::match_pair(std::move(t), m.first_type, m.second_type, m.body);
          })) {
        return *f;
      }
      const auto* pair = m.scrutinee.as<node::Pair>();
      if (pair == nullptr) throw StuckError("match on a non-pair: " + print(term));
      std::array<Term, 2> values = {pair->first, pair->second};
      return Focus::stepped(instantiate(m.body, values), Rule::MatchPair);
    }
    case TermKind::Case: {
      const auto& c = term.get<node::Case>();
      if (auto f = descend(c.scrutinee, [&](Term t) {
            return Term::case_of(std::move(t), c.left_type, c.left, c.right_type, c.right);
          })) {
        return *f;
      }
      if (const auto* inl = c.scrutinee.as<node::Inl>()) {
        return Focus::stepped(instantiate(c.left, std::span(&inl->body, 1)), Rule::CaseInl);
      }
      if (const auto* inr = c.scrutinee.as<node::Inr>()) {
        return Focus::stepped(instantiate(c.right, std::span(&inr->body, 1)), Rule::CaseInr);
      }
      throw StuckError("case on a non-injection: " + print(term));
    }
    case TermKind::App: {
      const auto& a = term.get<node::App>();
      if (auto f = descend(a.function, [&](Term t) { return Term::app(std::move(t), a.argument); })) return *f;
      if (auto f = descend(a.argument, [&](Term t) { return Term::app(a.function, std::move(t)); })) return *f;
      const auto* lam = a.function.as<node::Lam>();
      if (lam == nullptr) throw StuckError("application of a non-function: " + print(term));
      return Focus::stepped(instantiate(lam->body, std::span(&a.argument, 1)), Rule::Beta);
    }
  }
  throw StuckError("unknown term");
}

}  // namespace

std::optional<Step> step(const Term& term) {
  Focus f = focus(term);
  switch (f.kind) {
    case Focus::Kind::Value:
    case Focus::Kind::Error: return std::nullopt;
    case Focus::Kind::Stepped: return Step{std::move(*f.next), f.rule};
    case Focus::Kind::Raise: return Step{Term::err(), f.rule};
  }
  return std::nullopt;
}

Outcome eval(const Term& term, std::size_t fuel) {
  Term current = term;
  std::size_t steps = 0;
  while (true) {
    if (is_err(current)) return {OutcomeKind::TypeError, current, steps};
    if (steps == fuel) {
      if (is_value(current)) return {OutcomeKind::Value, current, steps};
      return {OutcomeKind::FuelExhausted, current, steps};
    }
    auto next = step(current);
    if (!next) return {OutcomeKind::Value, current, steps};
    current = std::move(next->next);
    ++steps;
  }
}

}  // namespace lamg::gradual
