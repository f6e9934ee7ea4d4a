#include <doctest.h>

#include <map>

#include "lamg/approx.hpp"
#include "lamg/dynamism.hpp"
#include "lamg/elaborate.hpp"
#include "lamg/propgen.hpp"
#include "support.hpp"

using namespace lamg;
using namespace lamg::dynamism;
using lamg::test::G;
using lamg::test::GT;

namespace {

// The dynamism relation on all types of depth ≤ 2, computed as the least
// relation closed under reflexivity, A ⊑ ?, the three congruences and
// transitivity. Bit (i, j) means types[i] ⊑ types[j].
class Closure {
 public:
  explicit Closure(std::vector<Type> types) : types_(std::move(types)), n_(types_.size()), rel_(n_ * n_, false) {
    for (std::size_t i = 0; i < n_; ++i) index_[gradual::to_string(types_[i])] = i;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (!rel(i, j) && derivable(i, j)) {
            set(i, j);
            changed = true;
          }
        }
      }
      // Transitivity, Warshall style.
      for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t i = 0; i < n_; ++i) {
          if (!rel(i, k)) continue;
          for (std::size_t j = 0; j < n_; ++j) {
            if (rel(k, j) && !rel(i, j)) {
              set(i, j);
              changed = true;
            }
          }
        }
      }
    }
  }

  bool rel(std::size_t i, std::size_t j) const { return rel_[i * n_ + j]; }
  const std::vector<Type>& types() const { return types_; }

 private:
  void set(std::size_t i, std::size_t j) { rel_[i * n_ + j] = true; }
  std::size_t at(const Type& t) const { return index_.at(gradual::to_string(t)); }

  bool derivable(std::size_t i, std::size_t j) const {
    const auto& a = types_[i];
    const auto& b = types_[j];
    if (i == j || b.is_dyn()) return true;
    if (!a.is_connective() || a.kind() != b.kind()) return false;
    return rel(at(a.left()), at(b.left())) && rel(at(a.right()), at(b.right()));
  }

  std::vector<Type> types_;
  std::size_t n_;
  std::vector<bool> rel_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace

TEST_SUITE("dynamism") {

TEST_CASE("canonical derivations") {
  auto c = check_dynamism(GT("1 -> 1"), GT("? -> ?"));
  REQUIRE(c);
  CHECK(c->kind() == DerivKind::Fun);
  auto one = DynDeriv::tag_comp(Type::unit(), DynDeriv::id_base(Type::unit()));
  CHECK(c->left() == one);
  CHECK(c->right() == one);
  CHECK(to_string(*c) == "(tag(1) o id(1) -> tag(1) o id(1))");

  CHECK_FALSE(check_dynamism(Type::dyn(), Type::unit()));
  CHECK_FALSE(check_dynamism(GT("1 * 1"), GT("1 + 1")));

  auto p = check_dynamism(GT("1 * 1"), Type::dyn());
  REQUIRE(p);
  CHECK(*p == DynDeriv::tag_comp(GT("? * ?"), DynDeriv::prod(one, one)));
  CHECK(*p == deriv_top(GT("1 * 1")));
  CHECK(deriv_top(Type::dyn()) == DynDeriv::id_base(Type::dyn()));
}

TEST_CASE("derivation combinators") {
  auto d = *check_dynamism(GT("1 * (1 -> 1)"), GT("? * (? -> 1)"));
  CHECK(deriv_compose(deriv_id(d.upper()), d) == d);
  CHECK(deriv_compose(d, deriv_id(d.lower())) == d);
  CHECK(deriv_compose(deriv_id(Type::dyn()), deriv_top(GT("1 + 1"))) == deriv_top(GT("1 + 1")));

  auto c1 = *check_dynamism(GT("1"), GT("?"));
  auto c2 = *check_dynamism(GT("1 -> 1"), GT("? -> 1"));
  auto d1 = deriv_id(GT("1"));
  auto d2 = *check_dynamism(GT("1 -> 1"), GT("1 -> 1"));
  CHECK(deriv_compose(DynDeriv::prod(c1, c2), DynDeriv::prod(d1, d2)) ==
        DynDeriv::prod(deriv_compose(c1, d1), deriv_compose(c2, d2)));
  CHECK_THROWS_AS(deriv_compose(c1, c2), std::invalid_argument);
  CHECK_THROWS_AS(DynDeriv::tag_comp(GT("1 * 1"), deriv_id(GT("1"))), std::invalid_argument);
}

TEST_CASE("the relation matches the rule closure on every pair of types up to depth 2") {
  Closure closure(lamg::test::all_types(2));
  const auto& types = closure.types();
  REQUIRE(types.size() == 590);
  std::size_t related = 0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = 0; j < types.size(); ++j) {
      auto c = check_dynamism(types[i], types[j]);
      if (c.has_value() != closure.rel(i, j)) {
        FAIL_CHECK(gradual::to_string(types[i]) << " <= " << gradual::to_string(types[j]));
      }
      if (!c) continue;
      ++related;
      if (!(well_formed(*c) && c->lower() == types[i] && c->upper() == types[j])) {
        FAIL_CHECK("bad derivation " << to_string(*c));
      }
    }
  }
  MESSAGE(related << " related pairs");
  CHECK(related > 590);
}

TEST_CASE("composition of canonical derivations is the canonical derivation") {
  auto types = lamg::test::all_types(1);
  for (const auto& a : types) {
    for (const auto& b : types) {
      auto d = check_dynamism(a, b);
      if (!d) continue;
      for (const auto& c3 : types) {
        auto c = check_dynamism(b, c3);
        if (!c) continue;
        auto composed = deriv_compose(*c, *d);
        CHECK(well_formed(composed));
        CHECK(composed == *check_dynamism(a, c3));
      }
    }
  }
}

TEST_CASE("embedding and projection contexts") {
  auto tag1 = *check_dynamism(GT("1"), GT("?"));
  CHECK(typed::print(ep_cast(Mode::Embed, tag1)) == "roll [?] inl [1 + ? * ? + (? + ?) + (? -> ?)] []");
  CHECK(ep_cast(Mode::Embed, tag1) == elaborate::cast_context(GT("1"), GT("?")));
  CHECK(ep_cast(Mode::Project, tag1) == elaborate::cast_context(GT("?"), GT("1")));
  for (auto mode : {Mode::Embed, Mode::Project}) {
    CHECK(ep_cast(mode, deriv_id(Type::unit())) == typed::Term::hole());
    CHECK(ep_cast(mode, deriv_id(Type::dyn())) == typed::Term::hole());
  }
  // Domains flip mode.
  auto fn = *check_dynamism(GT("1 -> 1"), GT("? -> ?"));
  CHECK(ep_cast(Mode::Embed, fn) == elaborate::functor_fun(typed::dyn_type(), ep_cast(Mode::Project, tag1),
                                                           ep_cast(Mode::Embed, tag1)));
  CHECK(complement(Mode::Embed) == Mode::Project);

  propgen::GenConfig config;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = Rng(41).split(i);
    auto upper = propgen::gen_type(config, rng);
    auto lower = propgen::gen_related_type(config, rng, upper);
    auto c = *check_dynamism(lower, upper);
    auto lo = elaborate::translate_type(lower);
    auto hi = elaborate::translate_type(upper);
    auto e = ep_cast(Mode::Embed, c);
    auto p = ep_cast(Mode::Project, c);
    CHECK(typed::is_evaluation_context(e));
    CHECK(typed::is_evaluation_context(p));
    CHECK(typed::typecheck({lo}, typed::plug(e, typed::Term::var(0))) == hi);
    CHECK(typed::typecheck({hi}, typed::plug(p, typed::Term::var(0))) == lo);
  }
}

TEST_CASE("identity derivations of compound types act as the identity") {
  propgen::GenConfig config;
  approx::CompareConfig compare;
  compare.fuel = 2000 * approx::kTypedFuelFactor;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = Rng(42).split(i);
    auto a = propgen::gen_type(config, rng);
    auto v = elaborate::translate_term(propgen::gen_value(config, rng, a));
    compare.seed = i;
    for (auto mode : {Mode::Embed, Mode::Project}) {
      auto verdict = approx::compare_equiv(typed::plug(ep_cast(mode, deriv_id(a)), v), v,
                                           elaborate::translate_type(a), compare);
      CHECK_FALSE(verdict.fails());
    }
  }
}

TEST_CASE("syntactic term dynamism") {
  auto r = check_term_dynamism({GT("1")}, {GT("?")}, gradual::Term::var(0), gradual::Term::var(0));
  REQUIRE(r);
  CHECK(r.types->first == GT("1"));
  CHECK(r.types->second == GT("?"));

  r = check_term_dynamism({}, {}, G("fun (x : 1) -> x"), G("fun (x : ?) -> x"));
  REQUIRE(r);
  CHECK(r.types->first == GT("1 -> 1"));
  CHECK(r.types->second == GT("? -> ?"));

  CHECK(check_term_dynamism({}, {}, G("<1 => 1> ()"), G("<1 => ?> ()")));
  CHECK_FALSE(check_term_dynamism({}, {}, G("<1 => ?> ()"), G("<1 => 1> ()")));
  // Both cast endpoints must be related.
  auto cast11 = gradual::Term::cast(GT("1"), GT("1"), gradual::Term::var(0));
  auto castdd = gradual::Term::cast(GT("?"), GT("?"), gradual::Term::var(0));
  CHECK(check_term_dynamism({GT("1")}, {GT("?")}, cast11, castdd));
  CHECK_FALSE(check_term_dynamism({GT("?")}, {GT("1")}, castdd, cast11));
  CHECK_FALSE(check_term_dynamism({}, {}, G("fun (x : ?) -> x"), G("fun (x : 1) -> x")));
  CHECK_FALSE(check_term_dynamism({}, {}, G("()"), G("<1 => ?> ()")));
  CHECK_FALSE(check_term_dynamism({}, {}, G("err : 1"), G("err : 1")));
  CHECK(check_env_dynamism({GT("1"), GT("1 -> 1")}, {GT("?"), GT("? -> 1")}));
  CHECK_FALSE(check_env_dynamism({GT("?")}, {GT("1")}));
  CHECK_FALSE(check_env_dynamism({GT("1")}, {}));
}

}  // TEST_SUITE
