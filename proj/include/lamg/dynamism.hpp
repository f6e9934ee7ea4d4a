#pragma once

// Type dynamism (precision), its canonical proof terms, the embedding and
// projection contexts they denote, and syntactic term dynamism.

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "lamg/gradual.hpp"
#include "lamg/typed.hpp"

namespace lamg::dynamism {

using gradual::Type;

enum class DerivKind : std::uint8_t { IdBase, TagComp, Prod, Sum, Fun };

// A canonical derivation c : lower ⊑ upper. Endpoints are stored with the
// node; `well_formed` re-derives them from the children.
class DynDeriv {
 public:
  // id(1) or id(?).
  static DynDeriv id_base(Type base);
  // tag(g) ∘ rest, where rest : A ⊑ g with A ≠ ? and ⌊A⌋ = g.
  static DynDeriv tag_comp(Type tag, DynDeriv rest);
  static DynDeriv prod(DynDeriv left, DynDeriv right);
  static DynDeriv sum(DynDeriv left, DynDeriv right);
  static DynDeriv fun(DynDeriv domain, DynDeriv codomain);

  DerivKind kind() const;
  const Type& lower() const;
  const Type& upper() const;
  // The tag of a TagComp node.
  const Type& tag() const;
  // The inner derivation of a TagComp node.
  const DynDeriv& rest() const;
  // Components of a connective node.
  const DynDeriv& left() const;
  const DynDeriv& right() const;

  friend bool operator==(const DynDeriv& a, const DynDeriv& b);

 private:
  struct Node;
  static DynDeriv connective(DerivKind kind, DynDeriv left, DynDeriv right);
  explicit DynDeriv(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Checks every side condition and that the stored endpoints match the ones
// implied by the children.
bool well_formed(const DynDeriv& c);

std::string to_string(const DynDeriv& c);

// The unique canonical derivation of a ⊑ b, if any.
std::optional<DynDeriv> check_dynamism(const Type& a, const Type& b);
bool less_dynamic(const Type& a, const Type& b);

DynDeriv deriv_id(const Type& a);
// c ∘ d for d : A1 ⊑ A2 and c : A2 ⊑ A3. Throws std::invalid_argument when
// the endpoints do not meet.
DynDeriv deriv_compose(const DynDeriv& c, const DynDeriv& d);
DynDeriv deriv_top(const Type& a);

enum class Mode : std::uint8_t { Embed, Project };
constexpr Mode complement(Mode m) { return m == Mode::Embed ? Mode::Project : Mode::Embed; }
std::string_view to_string(Mode m);

// The embedding ⟦lower⟧ → ⟦upper⟧ or the projection ⟦upper⟧ → ⟦lower⟧ as a
// cast context.
typed::Term ep_cast(Mode mode, const DynDeriv& c);

// Pointwise dynamism of two environments of equal length.
bool check_env_dynamism(const gradual::Env& lower, const gradual::Env& upper);

struct TermDynamism {
  // The related result types when the judgement holds.
  std::optional<std::pair<Type, Type>> types;
  std::string reason;

  explicit operator bool() const { return types.has_value(); }
};

// Decides Γ1 ⊑ Γ2 ⊢ t1 ⊑ t2 : A1 ⊑ A2. Both terms must also be well
// typed; a term containing err is rejected since no rule relates it.
TermDynamism check_term_dynamism(const gradual::Env& env1, const gradual::Env& env2, const gradual::Term& t1,
                                 const gradual::Term& t2);

}  // namespace lamg::dynamism
