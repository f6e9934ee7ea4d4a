#include <array>

#include "lamg/typed.hpp"

namespace lamg::typed {

std::string_view to_string(Rule rule) {
  static constexpr std::array<std::string_view, kRuleCount> names = {
      "Beta", "Let", "MatchPair", "CaseInl", "CaseInr", "Unroll", "ErrorPropagate"};
  return names[static_cast<std::size_t>(rule)];
}

namespace {

struct Focus {
  enum class Kind { Value, Error, Stepped, Raise } kind;
  std::optional<Term> next;
  Rule rule = Rule::Beta;

  static Focus value() { return {Kind::Value, std::nullopt}; }
  static Focus error() { return {Kind::Error, std::nullopt}; }
  static Focus stepped(Term next, Rule rule) { return {Kind::Stepped, std::move(next), rule}; }
  static Focus raise() { return {Kind::Raise, std::nullopt, Rule::ErrorPropagate}; }
};

Focus focus(const Term& term);

template <class Rebuild>
std::optional<Focus> descend(const Term& child, Rebuild rebuild) {
  Focus inner = focus(child);
  switch (inner.kind) {
    case Focus::Kind::Value: return std::nullopt;
    case Focus::Kind::Error: return Focus::raise();
    case Focus::Kind::Raise: return inner;
    case Focus::Kind::Stepped: return Focus::stepped(rebuild(std::move(*inner.next)), inner.rule);
  }
  return std::nullopt;
}

Focus focus(const Term& term) {
  switch (term.kind()) {
    case TermKind::Err: return Focus::error();
    case TermKind::Var:
    case TermKind::UnitVal:
    case TermKind::Lam: return Focus::value();
    case TermKind::Hole: throw StuckError("cannot evaluate a cast-context hole");

    case TermKind::Let: {
      const auto& l = term.get<node::Let>();
      if (auto f = descend(l.bound, [&](Term t) { return Term::let(std::move(t), l.body); })) return *f;
      return Focus::stepped(instantiate(l.body, std::span(&l.bound, 1)), Rule::Let);
    }
    case TermKind::Roll: {
      const auto& r = term.get<node::Roll>();
      if (auto f = descend(r.body, [&](Term t) { return Term::roll(r.mu, std::move(t)); })) return *f;
      return Focus::value();
    }
    case TermKind::Unroll: {
      const auto& u = term.get<node::Unroll>();
      if (auto f = descend(u.body, [&](Term t) { return Term::unroll(std::move(t)); })) return *f;
      const auto* roll = u.body.as<node::Roll>();
      if (roll == nullptr) throw StuckError("unroll of a non-rolled value: " + print(term));
      return Focus::stepped(roll->body, Rule::Unroll);
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
      if (auto f = descend(m.scrutinee, [&](Term t) { return Term::match_pair(std::move(t), m.body); })) return *f;
      const auto* pair = m.scrutinee.as<node::Pair>();
      if (pair == nullptr) throw StuckError("match on a non-pair: " + print(term));
      std::array<Term, 2> values = {pair->first, pair->second};
      return Focus::stepped(instantiate(m.body, values), Rule::MatchPair);
    }
    case TermKind::Case: {
      const auto& c = term.get<node::Case>();
      if (auto f = descend(c.scrutinee, [&](Term t) { return Term::case_of(std::move(t), c.left, c.right); })) {
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
    case Focus::Kind::Stepped: {
      unsigned weight = f.rule == Rule::Unroll ? 1 : 0;
      return Step{std::move(*f.next), f.rule, weight};
    }
    case Focus::Kind::Raise: return Step{Term::err(), Rule::ErrorPropagate, 0};
  }
  return std::nullopt;
}

Outcome eval(const Term& term, std::size_t fuel) {
  Term current = term;
  std::size_t steps = 0;
  std::size_t unrolls = 0;
  while (true) {
    if (is_err(current)) return {OutcomeKind::TypeError, current, steps, unrolls};
    if (steps == fuel) {
      if (is_value(current)) return {OutcomeKind::Value, current, steps, unrolls};
      return {OutcomeKind::FuelExhausted, current, steps, unrolls};
    }
    auto next = step(current);
    if (!next) return {OutcomeKind::Value, current, steps, unrolls};
    unrolls += next->weight;
    current = std::move(next->next);
    ++steps;
  }
}

}  // namespace lamg::typed
