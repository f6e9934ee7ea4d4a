#include <doctest.h>

#include <optional>
#include <stdexcept>

#include "lamg/gradual.hpp"
#include "lamg/propgen.hpp"
#include "support.hpp"

using namespace lamg;
using namespace lamg::gradual;
using lamg::test::G;
using lamg::test::GT;

namespace {

// A second interpreter written straight from the evaluation-context grammar
// and the reduction table, used as an oracle for `step`. It shares only the
// term constructors and substitution with the library.
struct RefStep {
  Term next;
  std::string rule;
};

bool ref_value(const Term& t) {
  switch (t.kind()) {
    case TermKind::UnitVal:
    case TermKind::Lam:
    case TermKind::Var: return true;
    case TermKind::Pair: return ref_value(t.get<node::Pair>().first) && ref_value(t.get<node::Pair>().second);
    case TermKind::Inl: return ref_value(t.get<node::Inl>().body);
    case TermKind::Inr: return ref_value(t.get<node::Inr>().body);
    case TermKind::Cast: {
      const auto& c = t.get<node::Cast>();
      return c.to.is_dyn() && !c.from.is_dyn() && c.from.is_tag() && ref_value(c.body);
    }
    default: return false;
  }
}

bool is_tag_type(const Type& a) {
  return a == Type::unit() || a == GT("? * ?") || a == GT("? + ?") || a == GT("? -> ?");
}

Type tag_of_type(const Type& a) {
  switch (a.kind()) {
    case TypeKind::Unit: return Type::unit();
    case TypeKind::Prod: return GT("? * ?");
    case TypeKind::Sum: return GT("? + ?");
    case TypeKind::Fun: return GT("? -> ?");
    default: throw std::logic_error("no tag");
  }
}

RefStep contract_cast(const Type& a, const Type& b, const Term& v) {
  if (a.is_dyn() && b.is_dyn()) return {v, "DynDyn"};
  if (b.is_dyn() && !is_tag_type(a)) {
    auto g = tag_of_type(a);
    return {Term::cast(g, b, Term::cast(a, g, v)), "TagUp"};
  }
  if (a.is_dyn() && !is_tag_type(b)) {
    auto g = tag_of_type(b);
    return {Term::cast(g, b, Term::cast(a, g, v)), "TagDn"};
  }
  if (a.is_dyn()) {
    const auto& inner = v.get<node::Cast>();
    if (inner.from == b) return {inner.body, "TagMatch"};
    return {Term::err(), "TagMismatch"};
  }
  if (!(tag_of_type(a) == tag_of_type(b))) return {Term::err(), "TagMismatch'"};
  switch (a.kind()) {
    case TypeKind::Unit: return {v, "UnitUnit"};
    case TypeKind::Prod: {
      const auto& p = v.get<node::Pair>();
      return {Term::pair(Term::cast(a.left(), b.left(), p.first), Term::cast(a.right(), b.right(), p.second)),
              "Pair"};
    }
    case TypeKind::Sum:
      if (const auto* l = v.as<node::Inl>()) return {Term::inl(b, Term::cast(a.left(), b.left(), l->body)), "Sum"};
      return {Term::inr(b, Term::cast(a.right(), b.right(), v.get<node::Inr>().body)), "Sum'"};
    case TypeKind::Fun: {
      auto arg = Term::cast(b.left(), a.left(), Term::var(0));
      return {Term::lam(b.left(), Term::cast(a.right(), b.right(), Term::app(shift(v, 1), arg))), "Fun"};
    }
    default: throw std::logic_error("bad cast");
  }
}

RefStep contract(const Term& r) {
  switch (r.kind()) {
    case TermKind::App: {
      const auto& a = r.get<node::App>();
      return {instantiate(a.function.get<node::Lam>().body, std::span(&a.argument, 1)), "Beta"};
    }
    case TermKind::MatchPair: {
      const auto& m = r.get<node::MatchPair>();
      const auto& p = m.scrutinee.get<node::Pair>();
      std::vector<Term> vs = {p.first, p.second};
      return {instantiate(m.body, vs), "MatchPair"};
    }
    case TermKind::Case: {
      const auto& c = r.get<node::Case>();
      if (const auto* l = c.scrutinee.as<node::Inl>()) return {instantiate(c.left, std::span(&l->body, 1)), "CaseInl"};
      const auto& body = c.scrutinee.get<node::Inr>().body;
      return {instantiate(c.right, std::span(&body, 1)), "CaseInr"};
    }
    case TermKind::Cast: {
      const auto& c = r.get<node::Cast>();
      return contract_cast(c.from, c.to, c.body);
    }
    default: throw std::logic_error("not a redex");
  }
}

// Finds E[r]; `plug` rebuilds the frame around a stepped child.
std::optional<RefStep> ref_step(const Term& t, bool top = true);

template <class Plug>
std::optional<std::optional<RefStep>> sub(const Term& child, Plug plug) {
  if (ref_value(child)) return std::nullopt;
  if (is_err(child)) return std::optional<RefStep>(RefStep{Term::err(), "ErrorPropagate"});
  auto inner = ref_step(child, false);
  if (!inner) return std::optional<RefStep>();
  // Raised errors abort the whole program.
  if (inner->rule == "ErrorPropagate" || inner->rule == "TagMismatch" || inner->rule == "TagMismatch'") return inner;
  return std::optional<RefStep>(RefStep{plug(inner->next), inner->rule});
}

std::optional<RefStep> ref_step(const Term& t, bool top) {
  if (top && (ref_value(t) || is_err(t))) return std::nullopt;
  switch (t.kind()) {
    case TermKind::Cast: {
      const auto& c = t.get<node::Cast>();
      if (auto s = sub(c.body, [&](Term x) { return Term::cast(c.from, c.to, x); })) return *s;
      return contract(t);
    }
    case TermKind::Pair: {
      const auto& p = t.get<node::Pair>();
      if (auto s = sub(p.first, [&](Term x) { return Term::pair(x, p.second); })) return *s;
      if (auto s = sub(p.second, [&](Term x) { return Term::pair(p.first, x); })) return *s;
      return std::nullopt;
    }
    case TermKind::Inl: {
      const auto& i = t.get<node::Inl>();
      if (auto s = sub(i.body, [&](Term x) { return Term::inl(i.sum, x); })) return *s;
      return std::nullopt;
    }
    case TermKind::Inr: {
      const auto& i = t.get<node::Inr>();
      if (auto s = sub(i.body, [&](Term x) { return Term::inr(i.sum, x); })) return *s;
      return std::nullopt;
    }
    case TermKind::MatchPair: {
      const auto& m = t.get<node::MatchPair>();
      if (auto s = sub(m.scrutinee, [&](Term x) {
            return Term::match_pair(x, m.first_type, m.second_type, m.body);
          })) {
        return *s;
      }
      return contract(t);
    }
    case TermKind::Case: {
      const auto& c = t.get<node::Case>();
      if (auto s = sub(c.scrutinee, [&](Term x) {
            return Term::case_of(x, c.left_type, c.left, c.right_type, c.right);
          })) {
        return *s;
      }
      return contract(t);
    }
    case TermKind::App: {
      const auto& a = t.get<node::App>();
      if (auto s = sub(a.function, [&](Term x) { return Term::app(x, a.argument); })) return *s;
      if (auto s = sub(a.argument, [&](Term x) { return Term::app(a.function, x); })) return *s;
      return contract(t);
    }
    default: return std::nullopt;
  }
}

std::vector<std::string> trace_rules(const Term& t, std::size_t fuel) {
  std::vector<std::string> rules;
  Term current = t;
  for (std::size_t i = 0; i < fuel; ++i) {
    auto s = step(current);
    if (!s) break;
    rules.emplace_back(to_string(s->rule));
    current = s->next;
  }
  return rules;
}

}  // namespace

TEST_SUITE("gradual") {

TEST_CASE("floor maps each connective to its tag") {
  CHECK(floor(Type::unit()) == Type::unit());
  CHECK(floor(GT("1 * ?")) == GT("? * ?"));
  CHECK(floor(GT("(1 -> 1) + 1")) == GT("? + ?"));
  CHECK(floor(GT("1 -> 1 * 1")) == GT("? -> ?"));
  CHECK_THROWS_AS(floor(Type::dyn()), std::invalid_argument);
  CHECK(GT("? -> ?").is_tag());
  CHECK_FALSE(GT("1 -> ?").is_tag());
  CHECK_FALSE(Type::dyn().is_tag());
}

TEST_CASE("type syntax") {
  CHECK(GT("1 * 1 + 1 -> ?") == Type::fun(Type::sum(Type::prod(Type::unit(), Type::unit()), Type::unit()),
                                          Type::dyn()));
  CHECK(GT("1 -> 1 -> 1") == Type::fun(Type::unit(), Type::fun(Type::unit(), Type::unit())));
  CHECK(GT("1 → 1") == GT("1 -> 1"));
  CHECK(to_string(GT("(1 -> 1) * (1 + ?)")) == "(1 -> 1) * (1 + ?)");
  CHECK_THROWS_AS(GT("1 *"), ParseError);
}

TEST_CASE("type checking") {
  CHECK(typecheck({}, Term::cast(Type::unit(), Type::dyn(), Term::unit())) == Type::dyn());
  CHECK(typecheck({}, Term::lam(Type::dyn(), Term::var(0))) == GT("? -> ?"));
  CHECK_THROWS_AS(typecheck({}, Term::app(Term::unit(), Term::unit())), TypeCheckError);
  // Casts between any two types are well formed.
  CHECK(typecheck({}, G("<1 => 1 * 1> ()")) == GT("1 * 1"));
  CHECK(typecheck({}, G("err : 1 + ?")) == GT("1 + ?"));
  CHECK(typecheck({GT("1 * ?")}, Term::var(0)) == GT("1 * ?"));
  CHECK_THROWS_AS(typecheck({}, Term::var(0)), TypeCheckError);

  try {
    typecheck({}, G("(fun (x : 1) -> x) ((), ())"));
    FAIL("expected a type error");
  } catch (const TypeCheckError& e) {
    CHECK(e.rule() == "App");
  }
  CHECK_THROWS_AS(typecheck({}, G("case inl [1 + 1] () of inl (x : 1) -> x | inr (y : 1) -> ((), ())")),
                  TypeCheckError);
  CHECK_THROWS_AS(typecheck({}, G("inl [1 * 1] ()")), TypeCheckError);
  CHECK_NOTHROW(check({}, Term::err(), GT("1 -> 1")));
}

TEST_CASE("single steps from the reduction table") {
  auto v = Term::cast(Type::unit(), Type::dyn(), Term::unit());
  auto s = step(Term::cast(Type::dyn(), Type::dyn(), v));
  REQUIRE(s);
  CHECK(s->rule == Rule::DynDyn);
  CHECK(s->next == v);

  s = step(G("<1 * 1 => ? * ?> ((), ())"));
  REQUIRE(s);
  CHECK(s->rule == Rule::PairCast);
  CHECK(s->next == G("(<1 => ?> (), <1 => ?> ())"));

  // ⟨?⇒1⟩⟨?→?⇒?⟩λx.x: 1 is its own tag, so the mismatch fires at once.
  auto fn = Term::cast(GT("? -> ?"), Type::dyn(), Term::lam(Type::dyn(), Term::var(0)));
  CHECK(trace_rules(Term::cast(Type::dyn(), Type::unit(), fn), 10) == std::vector<std::string>{"TagMismatch"});
  CHECK(eval(Term::cast(Type::dyn(), Type::unit(), fn), 10).kind == OutcomeKind::TypeError);

  CHECK(trace_rules(G("<? => 1 -> 1> <? -> ? => ?> fun (x : ?) -> x"), 10)[0] == "TagDn");
  CHECK(trace_rules(G("<1 -> 1 => ?> fun (x : 1) -> x"), 10)[0] == "TagUp");
  CHECK(trace_rules(G("<1 => 1> ()"), 10) == std::vector<std::string>{"UnitUnit"});
  CHECK(trace_rules(G("<1 + 1 => ? * ?> inl [1 + 1] ()"), 10) == std::vector<std::string>{"TagMismatch'"});

  s = step(G("<1 + 1 => ? + 1> inl [1 + 1] ()"));
  REQUIRE(s);
  CHECK(s->rule == Rule::SumCast);
  CHECK(s->next == G("inl [? + 1] <1 => ?> ()"));

  s = step(G("<1 -> 1 => ? -> ?> fun (x : 1) -> x"));
  REQUIRE(s);
  CHECK(s->rule == Rule::FunCast);
  CHECK(s->next == G("fun (y : ?) -> <1 => ?> ((fun (x : 1) -> x) <? => 1> y)"));
}

TEST_CASE("evaluation outcomes") {
  auto tagmatch = eval(G("<? => 1> <1 => ?> ()"), 100);
  CHECK(tagmatch.kind == OutcomeKind::Value);
  CHECK(tagmatch.term == Term::unit());
  CHECK(tagmatch.steps == 1);

  auto err = eval(Term::err(), 5);
  CHECK(err.kind == OutcomeKind::TypeError);
  CHECK(err.steps == 0);
  CHECK(eval(Term::err(), 0).kind == OutcomeKind::TypeError);
  CHECK(eval(G("(fun (x : 1) -> x) ()"), 0).kind == OutcomeKind::FuelExhausted);
  CHECK(eval(Term::unit(), 0).kind == OutcomeKind::Value);
}

TEST_CASE("self-application diverges, stepped by hand") {
  const char* d = "fun (x : ?) -> (<? => ? -> ?> x) x";
  auto omega = G(std::string("(") + d + ") <? -> ? => ?> " + d);
  // Printed states, worked out from the Beta and TagMatch rules.
  const std::string dp = "(fun (x0 : ?) -> <? => ? -> ?> x0 x0)";
  const std::string tagged = "<? -> ? => ?> " + dp;
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"Beta", "<? => ? -> ?> " + tagged + " " + tagged},
      {"TagMatch", dp + " " + tagged},
      {"Beta", "<? => ? -> ?> " + tagged + " " + tagged},
      {"TagMatch", dp + " " + tagged},
      {"Beta", "<? => ? -> ?> " + tagged + " " + tagged},
      {"TagMatch", dp + " " + tagged},
  };
  Term current = omega;
  for (const auto& [rule, text] : expected) {
    auto s = step(current);
    REQUIRE(s);
    CHECK(to_string(s->rule) == rule);
    CHECK(print(s->next) == text);
    current = s->next;
  }
  CHECK(current == omega);
  auto out = eval(omega, 1000);
  CHECK(out.kind == OutcomeKind::FuelExhausted);
  CHECK(out.steps == 1000);
}

TEST_CASE("errors propagate through every evaluation frame") {
  for (const char* text : {"((), err : 1)", "(err : 1, ())", "inl [1 + 1] (err : 1)", "<1 => ?> (err : 1)",
                           "(err : 1 -> 1) ()", "(fun (x : 1) -> x) (err : 1)",
                           "match (err : 1 * 1) with (a : 1, b : 1) -> a",
                           "case (err : 1 + 1) of inl (a : 1) -> a | inr (b : 1) -> b"}) {
    CAPTURE(text);
    auto s = step(G(text));
    REQUIRE(s);
    CHECK(s->rule == Rule::ErrorPropagate);
    CHECK(is_err(s->next));
  }
  // Not in evaluation position: under a lambda, or right of a non-value.
  CHECK(is_value(G("fun (x : 1) -> err : 1")));
  auto s = step(G("((fun (x : 1) -> x) (), err : 1)"));
  REQUIRE(s);
  CHECK(s->rule == Rule::Beta);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_term("fun (x : 1) ->\n  y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_term("() ()  )"), ParseError);
  CHECK_THROWS_AS(parse_term("$"), ParseError);
}

TEST_CASE("printing and parsing round-trip on generated terms") {
  propgen::GenConfig config;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = Rng(11).split(i);
    auto [t, a] = propgen::gen_program(config, rng);
    auto text = print(t);
    CAPTURE(text);
    auto back = parse_term(text);
    CHECK(back == t);
    CHECK(print(back) == text);
    CHECK(parse_type(to_string(a)) == a);
  }
}

TEST_CASE("values do not step") {
  propgen::GenConfig config;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng(12).split(i);
    auto type = propgen::gen_type(config, rng);
    auto v = propgen::gen_value(config, rng, type);
    CAPTURE(print(v));
    CHECK(is_value(v));
    CHECK_FALSE(step(v).has_value());
  }
}

TEST_CASE("step agrees with the evaluation-context oracle") {
  propgen::GenConfig config;
  std::size_t compared = 0;
  for (std::uint64_t i = 0; i < 600; ++i) {
    Rng rng = Rng(13).split(i);
    Term current = propgen::gen_program(config, rng).first;
    for (std::size_t k = 0; k < 300; ++k) {
      auto expected = ref_step(current);
      auto got = step(current);
      REQUIRE(expected.has_value() == got.has_value());
      CHECK(is_value(current) == ref_value(current));
      if (!got) break;
      ++compared;
      CAPTURE(print(current));
      CHECK(std::string(to_string(got->rule)) == expected->rule);
      REQUIRE(got->next == expected->next);
      current = got->next;
    }
  }
  CHECK(compared > 3000);
}

}  // TEST_SUITE
