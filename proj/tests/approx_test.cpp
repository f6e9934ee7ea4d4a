#include <doctest.h>

#include "lamg/approx.hpp"
#include "lamg/dynamism.hpp"
#include "lamg/elaborate.hpp"
#include "support.hpp"

using namespace lamg;
using approx::VerdictKind;
using lamg::test::G;
using lamg::test::GT;

namespace {

typed::Term T(std::string_view text) { return typed::parse_term(text); }

approx::CompareConfig small(std::uint64_t seed = 1) {
  approx::CompareConfig c;
  c.fuel = 500;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("error approximation on first-order programs") {
  auto unit = typed::Type::unit();
  CHECK(approx::compare_error_approx(typed::Term::err(), T("()"), unit, small()).holds());
  CHECK(approx::compare_error_approx(T("()"), T("()"), unit, small()).holds());
  auto v = approx::compare_error_approx(T("()"), typed::Term::err(), unit, small());
  CHECK(v.fails());
  REQUIRE(v.witness);
  CHECK(v.witness->left == "()");

  auto sum = typed::parse_type("1 + 1");
  CHECK(approx::compare_equiv(T("inl [1 + 1] ()"), T("inr [1 + 1] ()"), sum, small()).fails());
  CHECK(approx::compare_error_approx(T("(err : 1, ())"), T("((), ())"), typed::parse_type("1 * 1"), small())
            .holds());
}

TEST_CASE("equivalence") {
  auto unit = typed::Type::unit();
  CHECK(approx::compare_equiv(T("()"), T("()"), unit, small()).holds());
  CHECK(approx::compare_equiv(typed::Term::err(), T("()"), unit, small()).fails());
  CHECK(approx::compare_equiv(T("(fun (x : 1) -> x) ()"), T("()"), unit, small()).holds());
}

TEST_CASE("divergence on one side is inconclusive, on both sides agreement") {
  auto omega = elaborate::translate_term(
      G("(fun (x : ?) -> (<? => ? -> ?> x) x) <? -> ? => ?> fun (x : ?) -> (<? => ? -> ?> x) x"));
  auto d = typed::dyn_type();
  auto tagged = elaborate::translate_term(G("<1 => ?> ()"));
  auto v = approx::compare_error_approx(omega, tagged, d, small());
  CHECK(v.kind == VerdictKind::Inconclusive);
  REQUIRE(v.cause);
  CHECK(*v.cause == approx::Cause::Fuel);
  CHECK(approx::compare_error_approx(omega, omega, d, small()).holds());
  CHECK(approx::compare_error_approx(typed::Term::err(), omega, d, small()).holds());
  // Running out of fuel on the left may hide a later value, so an error on
  // the right is not a counterexample.
  CHECK(approx::compare_error_approx(omega, typed::Term::err(), d, small()).kind == VerdictKind::Inconclusive);
}

TEST_CASE("functions are compared on shared samples") {
  auto fn = typed::parse_type("1 -> 1 + 1");
  auto left = T("fun (x : 1) -> inl [1 + 1] x");
  auto right = T("fun (x : 1) -> inr [1 + 1] x");
  auto v = approx::compare_equiv(left, right, fn, small());
  CHECK(v.fails());
  REQUIRE(v.witness);
  CHECK(v.witness->arguments.size() == 1);
  CHECK(approx::compare_error_approx(T("fun (x : 1) -> err : 1 + 1"), right, fn, small()).holds());
  CHECK(approx::compare_error_approx(right, T("fun (x : 1) -> err : 1 + 1"), fn, small()).fails());

  // A function value round-tripped through ? behaves as the original.
  auto g = G("fun (x : 1 + 1) -> case x of inl (a : 1) -> inr [1 + 1] a | inr (b : 1) -> inl [1 + 1] b");
  auto round = gradual::Term::cast(GT("?"), GT("1 + 1 -> 1 + 1"), gradual::Term::cast(GT("1 + 1 -> 1 + 1"), GT("?"), g));
  CHECK(approx::compare_equiv(round, g, small()).holds());
}

TEST_CASE("verdicts are deterministic in the seed") {
  auto fn = typed::parse_type("(1 -> 1 + 1) -> 1 + 1");
  auto left = T("fun (f : 1 -> 1 + 1) -> f ()");
  auto right = T("fun (f : 1 -> 1 + 1) -> inl [1 + 1] ()");
  auto a = approx::compare_equiv(left, right, fn, small(5));
  auto b = approx::compare_equiv(left, right, fn, small(5));
  CHECK(a.kind == b.kind);
  CHECK(a.samples == b.samples);
  if (a.witness && b.witness) CHECK(a.witness->arguments == b.witness->arguments);
  CHECK(a.fails());
}

TEST_CASE("sampled values have the requested type") {
  Rng rng(3);
  for (const char* text : {"1", "1 + 1 * 1", "(1 -> 1) -> 1 + 1", "?", "? -> ?", "mu a. 1 + a * a"}) {
    auto type = typed::parse_type(text);
    for (int i = 0; i < 20; ++i) {
      auto v = approx::sample_value(type, rng);
      CHECK(typed::is_value(v));
      CHECK(typed::typecheck({}, v) == type);
    }
  }
}

TEST_CASE("gradual comparisons translate first") {
  CHECK(approx::compare_error_approx(G("err : 1"), G("()"), small()).holds());
  CHECK(approx::compare_error_approx(G("()"), G("<? => 1> <1 => ?> ()"), small()).holds());
  CHECK(approx::compare_error_approx(G("<? => 1> <1 * 1 => ?> ((), ())"), G("()"), small()).holds());
  CHECK(approx::compare_error_approx(G("()"), G("<? => 1> <1 * 1 => ?> ((), ())"), small()).fails());
  CHECK_THROWS_AS(approx::compare_error_approx(G("()"), G("((), ())"), small()), TypeCheckError);
}

TEST_CASE("graduality pairs") {
  auto t1 = G("fun (x : 1) -> x");
  auto t2 = G("fun (x : ?) -> x");
  auto c = *dynamism::check_dynamism(GT("1 -> 1"), GT("? -> ?"));
  auto pair = approx::build_graduality_pair(t1, t2, c);
  CHECK(pair.type == elaborate::translate_type(GT("? -> ?")));
  CHECK(typed::typecheck({}, pair.lhs) == pair.type);
  CHECK(approx::compare_error_approx(pair.lhs, pair.rhs, pair.type, small()).holds());

  auto same = approx::build_graduality_pair(G("()"), G("()"), dynamism::deriv_id(GT("1")));
  CHECK(approx::compare_equiv(same.lhs, elaborate::translate_term(G("()")), same.type, small()).holds());

  auto err = approx::build_graduality_pair(G("err : 1"), G("<1 => ?> ()"), *dynamism::check_dynamism(GT("1"), GT("?")));
  CHECK(approx::compare_error_approx(err.lhs, err.rhs, err.type, small()).holds());

  CHECK_THROWS_AS(approx::build_graduality_pair(t1, t2, dynamism::deriv_id(GT("1"))), std::invalid_argument);
}

}  // TEST_SUITE
