#pragma once

// Fuel-bounded observational comparison of closed programs. Programs are
// compared in the typed target; gradual programs are translated first.
// Divergence is approximated by running out of fuel, and function values
// are compared on a shared sample of arguments.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lamg/dynamism.hpp"
#include "lamg/gradual.hpp"
#include "lamg/rng.hpp"
#include "lamg/typed.hpp"

namespace lamg::approx {

// Typed fuel per unit of gradual fuel when a gradual program is compared
// after translation.
inline constexpr std::size_t kTypedFuelFactor = 16;

enum class VerdictKind : std::uint8_t { Holds, Fails, Inconclusive };
enum class Cause : std::uint8_t { Fuel, Sampling };

std::string_view to_string(VerdictKind kind);
std::string_view to_string(Cause cause);

// What separated the two programs: the printed programs, the arguments
// applied on the way to the disagreement (outermost first) and the seed
// that drew them.
struct Witness {
  std::string left;
  std::string right;
  std::vector<std::string> arguments;
  std::uint64_t seed = 0;
  std::string detail;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Holds;
  std::optional<Cause> cause;
  std::optional<Witness> witness;
  // Largest step count of any single evaluation.
  std::size_t fuel_used = 0;
  // Function arguments drawn in total.
  std::size_t samples = 0;

  bool holds() const { return kind == VerdictKind::Holds; }
  bool fails() const { return kind == VerdictKind::Fails; }
};

struct CompareConfig {
  std::size_t fuel = 2000;
  // Arguments drawn per function comparison.
  std::size_t samples = 8;
  // Nested arrows compared before giving up as inconclusive.
  std::size_t max_depth = 3;
  std::uint64_t seed = 0;
};

// A closed value of a closed typed type, sized by `budget`. Function values
// are constant, identity or erroring functions. Throws std::invalid_argument
// for an uninhabited type.
typed::Term sample_value(const typed::Type& type, Rng& rng, std::size_t budget = 3);

// t1 error-approximates t2 at `type`.
Verdict compare_error_approx(const typed::Term& t1, const typed::Term& t2, const typed::Type& type,
                             const CompareConfig& config);
// Approximation in both directions.
Verdict compare_equiv(const typed::Term& t1, const typed::Term& t2, const typed::Type& type,
                      const CompareConfig& config);

// Compares two evaluation outcomes. Both must come from programs of type
// `type`; functions inside values are compared by sampling.
Verdict compare_outcomes(const typed::Outcome& o1, const typed::Outcome& o2, const typed::Type& type,
                         const CompareConfig& config);

// Gradual programs: both are type checked and must have the same type.
// The fuel in `config` counts gradual steps and is scaled by
// kTypedFuelFactor for the translated programs. Throws TypeCheckError.
Verdict compare_error_approx(const gradual::Term& t1, const gradual::Term& t2, const CompareConfig& config);
Verdict compare_equiv(const gradual::Term& t1, const gradual::Term& t2, const CompareConfig& config);

struct GradualityPair {
  typed::Term lhs;
  typed::Term rhs;
  typed::Type type;
};

// lhs = ⟦⟨B1⇒B2⟩t1⟧ and rhs = ⟦t2⟧ for closed t1 : B1 and t2 : B2 with
// c : B1 ⊑ B2. Throws std::invalid_argument for open terms or a derivation
// whose endpoints are not the terms' types.
GradualityPair build_graduality_pair(const gradual::Term& t1, const gradual::Term& t2,
                                     const dynamism::DynDeriv& c);

}  // namespace lamg::approx
