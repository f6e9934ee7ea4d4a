#include "lamg/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lamg/dynamism.hpp"
#include "lamg/elaborate.hpp"

namespace lamg::suites {

using approx::Cause;
using approx::Verdict;
using approx::VerdictKind;
using dynamism::Mode;
using gradual::Type;

namespace {

const std::vector<std::string_view> kSuites = {"retraction",    "projection", "decomposition", "ud_are_casts",
                                               "factorization", "adequacy",   "graduality",    "meta",
                                               "reflexivity"};

std::size_t typed_fuel(const SuiteConfig& config) { return config.gen.fuel * approx::kTypedFuelFactor; }

approx::CompareConfig compare_config(const SuiteConfig& config, Rng& rng) {
  approx::CompareConfig out;
  out.fuel = typed_fuel(config);
  out.samples = config.gen.samples;
  out.seed = rng.next();
  return out;
}

typed::Term translated_value(const SuiteConfig& config, Rng& rng, const Type& type) {
  return elaborate::translate_term(propgen::gen_value(config.gen, rng, type));
}

// A ⊑ B with B drawn first, so B = ? is common.
std::pair<Type, Type> related_pair(const SuiteConfig& config, Rng& rng) {
  Type upper = propgen::gen_type(config.gen, rng);
  Type lower = propgen::gen_related_type(config.gen, rng, upper);
  return {lower, upper};
}

dynamism::DynDeriv derive(const Type& a, const Type& b) {
  auto c = dynamism::check_dynamism(a, b);
  if (!c) throw std::logic_error("generated types are unrelated: " + to_string(a) + " and " + to_string(b));
  return *c;
}

void absorb(CaseResult& result, const Verdict& verdict, const std::string& what) {
  if (result.kind == VerdictKind::Fails) return;
  if (verdict.kind == VerdictKind::Fails) {
    result.kind = VerdictKind::Fails;
    result.cause.reset();
    result.detail = what;
    result.witness = verdict.witness;
    if (verdict.witness) result.detail += ": " + verdict.witness->detail;
    return;
  }
  if (verdict.kind == VerdictKind::Inconclusive && result.kind == VerdictKind::Holds) {
    result.kind = VerdictKind::Inconclusive;
    result.cause = verdict.cause;
    result.detail = what;
  }
}

void fail(CaseResult& result, const std::string& what) {
  if (result.kind == VerdictKind::Fails) return;
  result.kind = VerdictKind::Fails;
  result.cause.reset();
  result.detail = what;
}

std::string describe(const Type& a, const Type& b) { return to_string(a) + " <= " + to_string(b); }

// ------------------------------------------------------------------ ep laws

CaseResult retraction(const SuiteConfig& config, Rng& rng, CaseResult result) {
  auto [lower, upper] = related_pair(config, rng);
  auto c = derive(lower, upper);
  auto v = translated_value(config, rng, lower);
  auto embedded = typed::plug(dynamism::ep_cast(Mode::Embed, c), v);
  auto o = typed::eval(embedded, typed_fuel(config));
  ++result.stats["embeddings_run"];
  if (o.kind != OutcomeKind::Value) {
    ++result.stats["purity_violations"];
    fail(result, "embedding " + to_string(c) + " of " + typed::print(v) + " gave " + std::string(to_string(o.kind)));
    return result;
  }
  auto round_trip = typed::plug(dynamism::ep_cast(Mode::Project, c), embedded);
  absorb(result,
         approx::compare_equiv(round_trip, v, elaborate::translate_type(lower), compare_config(config, rng)),
         "retraction at " + describe(lower, upper));
  return result;
}

CaseResult projection(const SuiteConfig& config, Rng& rng, CaseResult result) {
  auto [lower, upper] = related_pair(config, rng);
  auto c = derive(lower, upper);
  auto v = translated_value(config, rng, upper);
  auto projected = typed::plug(dynamism::ep_cast(Mode::Project, c), v);
  auto o = typed::eval(projected, typed_fuel(config));
  ++result.stats["projections_run"];
  if (o.kind == OutcomeKind::FuelExhausted) {
    ++result.stats["termination_violations"];
    fail(result, "projection " + to_string(c) + " of " + typed::print(v) + " ran out of fuel");
    return result;
  }
  if (o.kind == OutcomeKind::TypeError) ++result.stats["projection_errors"];
  auto back = typed::plug(dynamism::ep_cast(Mode::Embed, c), projected);
  absorb(result,
         approx::compare_error_approx(back, v, elaborate::translate_type(upper), compare_config(config, rng)),
         "projection at " + describe(lower, upper));
  return result;
}

CaseResult decomposition(const SuiteConfig& config, Rng& rng, CaseResult result) {
  Type a3 = propgen::gen_type(config.gen, rng);
  Type a2 = propgen::gen_related_type(config.gen, rng, a3);
  Type a1 = propgen::gen_related_type(config.gen, rng, a2);
  auto c = derive(a1, a2);
  auto c2 = derive(a2, a3);
  auto composite = dynamism::deriv_compose(c2, c);
  if (!(composite == derive(a1, a3))) fail(result, "composite is not the canonical derivation");

  auto v1 = translated_value(config, rng, a1);
  auto whole = typed::plug(dynamism::ep_cast(Mode::Embed, composite), v1);
  auto staged =
      typed::plug(dynamism::ep_cast(Mode::Embed, c2), typed::plug(dynamism::ep_cast(Mode::Embed, c), v1));
  absorb(result, approx::compare_equiv(whole, staged, elaborate::translate_type(a3), compare_config(config, rng)),
         "embedding decomposition at " + describe(a1, a2) + " <= " + to_string(a3));

  auto v3 = translated_value(config, rng, a3);
  whole = typed::plug(dynamism::ep_cast(Mode::Project, composite), v3);
  staged =
      typed::plug(dynamism::ep_cast(Mode::Project, c), typed::plug(dynamism::ep_cast(Mode::Project, c2), v3));
  absorb(result, approx::compare_equiv(whole, staged, elaborate::translate_type(a1), compare_config(config, rng)),
         "projection decomposition at " + describe(a1, a2) + " <= " + to_string(a3));
  return result;
}

CaseResult ud_are_casts(const SuiteConfig& config, Rng& rng, CaseResult result) {
  auto [lower, upper] = related_pair(config, rng);
  auto c = derive(lower, upper);
  auto v = translated_value(config, rng, lower);
  absorb(result,
         approx::compare_equiv(typed::plug(elaborate::cast_context(lower, upper), v),
                               typed::plug(dynamism::ep_cast(Mode::Embed, c), v),
                               elaborate::translate_type(upper), compare_config(config, rng)),
         "upcast at " + describe(lower, upper));
  auto w = translated_value(config, rng, upper);
  absorb(result,
         approx::compare_equiv(typed::plug(elaborate::cast_context(upper, lower), w),
                               typed::plug(dynamism::ep_cast(Mode::Project, c), w),
                               elaborate::translate_type(lower), compare_config(config, rng)),
         "downcast at " + describe(lower, upper));
  return result;
}

bool incompatible(const Type& a, const Type& b) {
  return !a.is_dyn() && !b.is_dyn() && !(gradual::floor(a) == gradual::floor(b));
}

CaseResult factorization(const SuiteConfig& config, Rng& rng, CaseResult result) {
  Type a1 = propgen::gen_type(config.gen, rng);
  Type a2 = propgen::gen_type(config.gen, rng);
  // A quarter of the cases exercise the incompatible-tag row on purpose.
  if (rng.below(4) == 0) {
    for (int tries = 0; tries < 64 && !incompatible(a1, a2); ++tries) {
      a1 = propgen::gen_type(config.gen, rng);
      a2 = propgen::gen_type(config.gen, rng);
    }
  }
  auto v = translated_value(config, rng, a1);
  auto direct = typed::plug(elaborate::cast_context(a1, a2), v);
  auto through_dyn = typed::plug(dynamism::ep_cast(Mode::Project, dynamism::deriv_top(a2)),
                                 typed::plug(dynamism::ep_cast(Mode::Embed, dynamism::deriv_top(a1)), v));
  if (incompatible(a1, a2)) {
    ++result.stats["incompatible"];
    auto fuel = typed_fuel(config);
    if (typed::eval(direct, fuel).kind == OutcomeKind::TypeError &&
        typed::eval(through_dyn, fuel).kind == OutcomeKind::TypeError) {
      ++result.stats["incompatible_both_error"];
    }
  }
  absorb(result,
         approx::compare_equiv(direct, through_dyn, elaborate::translate_type(a2), compare_config(config, rng)),
         "factorization of " + to_string(a1) + " => " + to_string(a2));
  return result;
}

CaseResult reflexivity(const SuiteConfig& config, Rng& rng, CaseResult result) {
  Type a = propgen::gen_type(config.gen, rng);
  auto id = dynamism::deriv_id(a);
  auto v = translated_value(config, rng, a);
  auto type = elaborate::translate_type(a);
  for (auto mode : {Mode::Embed, Mode::Project}) {
    absorb(result,
           approx::compare_equiv(typed::plug(dynamism::ep_cast(mode, id), v), v, type, compare_config(config, rng)),
           "id(" + to_string(a) + ") in mode " + std::string(dynamism::to_string(mode)));
  }
  return result;
}

// ---------------------------------------------------------------- adequacy

CaseResult adequacy(const SuiteConfig& config, Rng& rng, CaseResult result) {
  auto [t, a] = propgen::gen_program(config.gen, rng);
  auto tt = elaborate::translate_term(t);
  auto type = elaborate::translate_type(a);
  try {
    auto got = typed::typecheck({}, tt);
    if (!(got == type)) fail(result, "translation has type " + to_string(got) + ", expected " + to_string(type));
  } catch (const TypeCheckError& e) {
    fail(result, std::string("translation is ill typed: ") + e.what());
  }

  // Gradual run, recording which rules fire.
  gradual::Term current = t;
  std::size_t steps = 0;
  for (; steps < config.gen.fuel; ++steps) {
    auto next = gradual::step(current);
    if (!next) break;
    ++result.stats["rule:" + std::string(gradual::to_string(next->rule))];
    current = std::move(next->next);
  }
  OutcomeKind gradual_kind = gradual::is_err(current)     ? OutcomeKind::TypeError
                             : gradual::is_value(current) ? OutcomeKind::Value
                                                          : OutcomeKind::FuelExhausted;
  auto typed_outcome = typed::eval(tt, typed_fuel(config));
  if (steps > 0 && gradual_kind != OutcomeKind::FuelExhausted && typed_outcome.kind != OutcomeKind::FuelExhausted) {
    result.stats["max_step_ratio"] = static_cast<double>(typed_outcome.steps) / static_cast<double>(steps);
  }

  std::string what = "adequacy of " + gradual::print(t);
  if (gradual_kind == OutcomeKind::FuelExhausted && typed_outcome.kind == OutcomeKind::FuelExhausted) {
    ++result.stats["both_fuel"];
  } else if (gradual_kind == OutcomeKind::FuelExhausted || typed_outcome.kind == OutcomeKind::FuelExhausted) {
    absorb(result, Verdict{VerdictKind::Inconclusive, Cause::Fuel, std::nullopt, 0, 0}, what);
  } else if (gradual_kind != typed_outcome.kind) {
    fail(result, what + ": gradual " + std::string(to_string(gradual_kind)) + ", typed " +
                     std::string(to_string(typed_outcome.kind)));
  } else if (gradual_kind == OutcomeKind::Value) {
    auto expected = elaborate::translate_term(current);
    if (expected == typed_outcome.term) {
      ++result.stats["syntactic_value_match"];
    } else {
      absorb(result, approx::compare_equiv(typed_outcome.term, expected, type, compare_config(config, rng)),
             what + ": value " + typed::print(typed_outcome.term) + " vs " + typed::print(expected));
    }
  }
  return result;
}

// -------------------------------------------------------------- graduality

constexpr std::size_t kMutationTries = 8;
constexpr std::size_t kProgramTries = 200;

CaseResult graduality(const SuiteConfig& config, Rng& rng, CaseResult result) {
  auto gen = config.gen;
  gen.error_probability = 0.0;
  propgen::MutationStats stats;
  std::optional<propgen::Mutation> mutation;
  for (std::size_t p = 0; p < kProgramTries && !mutation; ++p) {
    auto upper = propgen::gen_program(gen, rng).first;
    for (std::size_t m = 0; m < kMutationTries && !mutation; ++m) {
      mutation = propgen::mutate_less_dynamic(gen, rng, upper, stats);
    }
  }
  result.stats["mutation_attempts"] = static_cast<double>(stats.attempts);
  result.stats["mutation_accepted"] = static_cast<double>(stats.accepted);
  if (!mutation) {
    absorb(result, Verdict{VerdictKind::Inconclusive, Cause::Sampling, std::nullopt, 0, 0},
           "no accepted mutation");
    return result;
  }
  result.stats["pairs"] = 1;
  auto c = derive(mutation->lower_type, mutation->upper_type);
  auto pair = approx::build_graduality_pair(mutation->lower, mutation->upper, c);
  absorb(result, approx::compare_error_approx(pair.lhs, pair.rhs, pair.type, compare_config(config, rng)),
         "graduality of " + gradual::print(mutation->lower) + " below " + gradual::print(mutation->upper));
  return result;
}

// -------------------------------------------------------------------- meta

template <class Step, class Check, class Terminal>
std::optional<std::string> walk(auto current, std::size_t fuel, Step step, Check check, Terminal terminal) {
  for (std::size_t i = 0; i < fuel; ++i) {
    decltype(step(current)) first;
    try {
      first = step(current);
    } catch (const StuckError& e) {
      return std::string("progress: ") + e.what();
    }
    if (!first) {
      if (!terminal(current)) return "progress: irreducible non-value";
      return std::nullopt;
    }
    auto second = step(current);
    if (!second || !(second->next == first->next) || second->rule != first->rule) return "determinism";
    try {
      check(first->next);
    } catch (const TypeCheckError& e) {
      return std::string("subject reduction: ") + e.what();
    }
    current = std::move(first->next);
  }
  return std::nullopt;
}

CaseResult meta(const SuiteConfig& config, Rng& rng, CaseResult result) {
  auto [t, a] = propgen::gen_program(config.gen, rng);
  std::string where = " in " + gradual::print(t);
  try {
    if (!(gradual::typecheck({}, t) == a)) fail(result, "generator produced a term of the wrong type" + where);
  } catch (const TypeCheckError& e) {
    fail(result, std::string("generator produced an ill-typed term: ") + e.what());
    return result;
  }
  auto gradual_issue = walk(
      t, config.gen.fuel, [](const gradual::Term& x) { return gradual::step(x); },
      [&](const gradual::Term& x) { gradual::check({}, x, a); },
      [](const gradual::Term& x) { return gradual::is_value(x) || gradual::is_err(x); });
  if (gradual_issue) fail(result, "gradual " + *gradual_issue + where);

  auto tt = elaborate::translate_term(t);
  auto type = elaborate::translate_type(a);
  auto typed_issue = walk(
      tt, config.gen.fuel, [](const typed::Term& x) { return typed::step(x); },
      [&](const typed::Term& x) { typed::check({}, x, type); },
      [](const typed::Term& x) { return typed::is_value(x) || typed::is_err(x); });
  if (typed_issue) fail(result, "typed " + *typed_issue + where);

  // Weight soundness: the accumulated weight is the number of unroll steps.
  auto outcome = typed::eval(tt, config.gen.fuel);
  std::size_t unrolls = 0;
  typed::Term current = tt;
  for (std::size_t i = 0; i < outcome.steps; ++i) {
    auto next = typed::step(current);
    if (!next) break;
    if (next->rule == typed::Rule::Unroll) ++unrolls;
    current = std::move(next->next);
  }
  if (unrolls != outcome.unrolls) fail(result, "unroll weight " + std::to_string(outcome.unrolls) + " but " +
                                                   std::to_string(unrolls) + " unroll steps" + where);
  return result;
}

using CaseFn = CaseResult (*)(const SuiteConfig&, Rng&, CaseResult);

CaseFn lookup(std::string_view suite) {
  if (suite == "retraction") return retraction;
  if (suite == "projection") return projection;
  if (suite == "decomposition") return decomposition;
  if (suite == "ud_are_casts") return ud_are_casts;
  if (suite == "factorization") return factorization;
  if (suite == "adequacy") return adequacy;
  if (suite == "graduality") return graduality;
  if (suite == "meta") return meta;
  if (suite == "reflexivity") return reflexivity;
  throw std::invalid_argument("unknown suite `" + std::string(suite) + "`");
}

}  // namespace

const std::vector<std::string_view>& suite_names() { return kSuites; }

bool known_suite(std::string_view name) { return std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end(); }

CaseResult run_case(std::string_view suite, const SuiteConfig& config, std::size_t index) {
  auto fn = lookup(suite);
  Rng rng = Rng(config.gen.seed).split(index);
  CaseResult result;
  result.index = index;
  try {
    return fn(config, rng, result);
  } catch (const std::exception& e) {
    result.kind = VerdictKind::Fails;
    result.detail = std::string("exception: ") + e.what();
    return result;
  }
}

SuiteReport run_suite(std::string_view suite, const SuiteConfig& config) {
  lookup(suite);
  auto start = std::chrono::steady_clock::now();
  std::vector<CaseResult> results(config.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.count; i = next++) results[i] = run_case(suite, config, i);
  };
  std::size_t threads = std::clamp<std::size_t>(config.threads, 1, 64);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteReport report;
  report.suite = std::string(suite);
  report.config = config;
  report.cases = config.count;
  for (auto& r : results) {
    switch (r.kind) {
      case VerdictKind::Holds: ++report.holds; break;
      case VerdictKind::Fails: ++report.fails; break;
      case VerdictKind::Inconclusive: ++report.inconclusive; break;
    }
    for (const auto& [key, value] : r.stats) {
      if (key == "max_step_ratio") {
        report.stats[key] = std::max(report.stats[key], value);
      } else {
        report.stats[key] += value;
      }
    }
    if (r.kind == VerdictKind::Fails) report.failures.push_back(std::move(r));
  }
  if (report.stats.count("mutation_attempts") && report.stats["mutation_attempts"] > 0) {
    report.stats["mutation_acceptance_rate"] = report.stats["mutation_accepted"] / report.stats["mutation_attempts"];
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lamg::suites
