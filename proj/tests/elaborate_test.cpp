#include <doctest.h>

#include <algorithm>

#include "lamg/approx.hpp"
#include "lamg/elaborate.hpp"
#include "lamg/propgen.hpp"
#include "support.hpp"

using namespace lamg;
using elaborate::cast_context;
using elaborate::translate_term;
using elaborate::translate_type;
using lamg::test::G;
using lamg::test::GT;

namespace {

const std::string kUnfolded = "1 + ? * ? + (? + ?) + (? -> ?)";

// The context must take a term of type ⟦from⟧ to one of type ⟦to⟧.
void check_context(const gradual::Type& from, const gradual::Type& to) {
  auto ctx = cast_context(from, to);
  CAPTURE(gradual::to_string(from));
  CAPTURE(gradual::to_string(to));
  CHECK(typed::is_evaluation_context(ctx));
  CHECK(typed::hole_count(ctx) == 1);
  auto plugged = typed::plug(ctx, typed::Term::var(0));
  CHECK(typed::typecheck({translate_type(from)}, plugged) == translate_type(to));
}

}  // namespace

TEST_SUITE("elaborate") {

TEST_CASE("type translation") {
  CHECK(translate_type(gradual::Type::dyn()) == typed::dyn_type());
  CHECK(translate_type(gradual::Type::unit()) == typed::Type::unit());
  CHECK(translate_type(GT("? -> 1")) == typed::Type::fun(typed::dyn_type(), typed::Type::unit()));
  CHECK(translate_type(GT("(1 + ?) * 1")) ==
        typed::Type::prod(typed::Type::sum(typed::Type::unit(), typed::dyn_type()), typed::Type::unit()));
}

TEST_CASE("cast contexts for the base rows") {
  CHECK(cast_context(GT("?"), GT("?")) == typed::Term::hole());
  CHECK(typed::print(cast_context(GT("1"), GT("? * ?"))) == "let x0 = [] in err : ? * ?");
  CHECK(typed::print(cast_context(GT("1 + 1"), GT("1 -> 1"))) == "let x0 = [] in err : 1 -> 1");
  CHECK(typed::print(cast_context(GT("1"), GT("?"))) == "roll [?] inl [" + kUnfolded + "] []");
  CHECK(typed::print(cast_context(GT("? * ?"), GT("?"))) == "roll [?] inr [" + kUnfolded + "] inl [? * ? + (? + ?) + (? -> ?)] []");
  CHECK(typed::print(cast_context(GT("?"), GT("1"))) == "case unroll [] of inl x0 -> x0 | inr x0 -> err : 1");
}

TEST_CASE("functorial actions") {
  auto pair = typed::parse_term("((), ())");
  auto ctx = elaborate::functor_prod(typed::Term::hole(), typed::Term::hole());
  auto out = typed::eval(typed::plug(ctx, pair), 100);
  CHECK(out.kind == OutcomeKind::Value);
  CHECK(out.term == pair);

  // The function row casts the argument with the reversed cast.
  auto fun = cast_context(GT("1 -> 1"), GT("? -> ?"));
  CHECK(fun == elaborate::functor_fun(typed::dyn_type(), cast_context(GT("?"), GT("1")),
                                      cast_context(GT("1"), GT("?"))));
  CHECK(typed::print(fun) ==
        "let x0 = [] in fun (x1 : ?) -> roll [?] inl [" + kUnfolded +
            "] (x0 (case unroll x1 of inl x2 -> x2 | inr x2 -> err : 1))");
}

TEST_CASE("term translation") {
  CHECK(translate_term(gradual::Term::err()) == typed::Term::err());
  auto tagged = G("<1 => ?> ()");
  CHECK(translate_term(gradual::Term::cast(GT("?"), GT("?"), tagged)) == translate_term(tagged));
  CHECK(typed::print(translate_term(G("fun (x : 1) -> (x, x)"))) == "fun (x0 : 1) -> (x0, x0)");
}

TEST_CASE("every pair of shallow types has a well-typed cast context") {
  auto types = lamg::test::all_types(1);
  REQUIRE(types.size() == 14);
  for (const auto& a : types) {
    for (const auto& b : types) check_context(a, b);
  }
}

TEST_CASE("random deeper pairs have well-typed cast contexts") {
  propgen::GenConfig config;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng = Rng(31).split(i);
    auto a = propgen::gen_type(config, rng);
    auto b = propgen::gen_type(config, rng);
    check_context(a, b);
  }
}

TEST_CASE("translation preserves types and values") {
  propgen::GenConfig config;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = Rng(32).split(i);
    auto [t, a] = propgen::gen_program(config, rng);
    CAPTURE(gradual::print(t));
    CHECK(typed::typecheck({}, translate_term(t)) == translate_type(a));
    auto v = propgen::gen_value(config, rng, a);
    CHECK(typed::is_value(translate_term(v)));
  }
}

TEST_CASE("corpus programs agree with their translations") {
  std::size_t checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(lamg::test::corpus_dir())) {
    if (entry.path().extension() != ".lamg") continue;
    auto t = gradual::parse_term(lamg::test::slurp(entry.path()));
    CAPTURE(entry.path().filename().string());
    auto g = gradual::eval(t, 100);
    auto m = typed::eval(translate_term(t), 100 * approx::kTypedFuelFactor);
    CHECK(g.kind == m.kind);
    if (g.kind == OutcomeKind::Value) CHECK(translate_term(g.term) == m.term);
    ++checked;
  }
  CHECK(checked >= 25);
}

TEST_CASE("typed steps per gradual step stay below the fuel factor") {
  propgen::GenConfig config;
  double worst = 0;
  std::size_t measured = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng = Rng(33).split(i);
    auto t = propgen::gen_program(config, rng).first;
    auto g = gradual::eval(t, config.fuel);
    if (g.kind == OutcomeKind::FuelExhausted || g.steps == 0) continue;
    auto m = typed::eval(translate_term(t), config.fuel * approx::kTypedFuelFactor);
    REQUIRE(m.kind == g.kind);
    worst = std::max(worst, static_cast<double>(m.steps) / static_cast<double>(g.steps));
    ++measured;
  }
  MESSAGE("largest typed/gradual step ratio over " << measured << " programs: " << worst);
  CHECK(measured > 300);
  CHECK(worst <= static_cast<double>(approx::kTypedFuelFactor));
}

}  // TEST_SUITE
