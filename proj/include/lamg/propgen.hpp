#pragma once

// Seeded generators for gradual types, well-typed terms and values, and a
// mutation that lowers type annotations to build pairs of terms related by
// syntactic term dynamism.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lamg/gradual.hpp"
#include "lamg/rng.hpp"

namespace lamg::propgen {

using gradual::Env;
using gradual::Term;
using gradual::Type;

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_type_depth = 3;
  std::size_t max_term_size = 24;
  double cast_probability = 0.25;
  std::size_t fuel = 2000;
  std::size_t samples = 8;
  // Chance of an ascribed err at any generated position.
  double error_probability = 0.01;
};

Type gen_type(const GenConfig& config, Rng& rng);
Type gen_type(Rng& rng, std::size_t depth);
// A type below `upper` in the dynamism order.
Type gen_related_type(const GenConfig& config, Rng& rng, const Type& upper);
// A type above `lower` in the dynamism order.
Type gen_raised_type(Rng& rng, const Type& lower);

// A term of type `target` in `env`, of roughly `max_term_size` nodes.
// With cast probability 0 no cast appears; a ? position with nothing of
// type ? in scope then falls back to err.
Term gen_term(const GenConfig& config, Rng& rng, const Env& env, const Type& target);
// A closed value of type `target`. Function bodies are generated terms.
Term gen_value(const GenConfig& config, Rng& rng, const Type& target);
// A closed program: a generated term of a random type, applied to
// generated arguments while its type is a function type so that more of it
// runs. Returns the program and its type.
std::pair<Term, Type> gen_program(const GenConfig& config, Rng& rng);
// The smallest closed term of `target` the generator falls back on.
Term canonical_inhabitant(const Type& target, bool allow_casts = true);

struct MutationStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  double rate() const { return attempts == 0 ? 0.0 : static_cast<double>(accepted) / attempts; }
};

struct Mutation {
  // The less dynamic program.
  Term lower;
  Term upper;
  Type lower_type;
  Type upper_type;
};

// One attempt: lowers randomly chosen annotations of the closed term
// `upper`, adjusts the annotations that typing forces, and keeps the result
// only if it type checks, differs from `upper` and is syntactically less
// dynamic than it.
std::optional<Mutation> mutate_less_dynamic(const GenConfig& config, Rng& rng, const Term& upper,
                                            MutationStats& stats);

// Counts how often each gradual reduction rule fires.
class RuleCoverage {
 public:
  void record(gradual::Rule rule) { ++counts_[static_cast<std::size_t>(rule)]; }
  // Steps `term` up to `fuel` times, recording every rule.
  void trace(const Term& term, std::size_t fuel);
  std::size_t count(gradual::Rule rule) const { return counts_[static_cast<std::size_t>(rule)]; }
  std::vector<gradual::Rule> missing() const;
  void merge(const RuleCoverage& other);

 private:
  std::array<std::size_t, gradual::kRuleCount> counts_{};
};

}  // namespace lamg::propgen
