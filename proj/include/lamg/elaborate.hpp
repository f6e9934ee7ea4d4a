#pragma once

// Type-preserving translation of the gradual language into the typed
// target. A cast becomes a cast context: a typed term with one hole in
// evaluation position.

#include "lamg/gradual.hpp"
#include "lamg/typed.hpp"

namespace lamg::elaborate {

typed::Type translate_type(const gradual::Type& type);
typed::Env translate_env(const gradual::Env& env);

// roll ⟦?⟧ (inj_G []) for a tag type G.
typed::Term tag_embedding(const gradual::Type& tag);
// case (unroll []) of inj_G x -> x | else err.
typed::Term tag_projection(const gradual::Type& tag);

// Functorial actions on contexts. Each argument is a context whose hole is
// plugged with the corresponding component.
typed::Term functor_prod(const typed::Term& first, const typed::Term& second);
typed::Term functor_sum(const typed::Type& target, const typed::Term& left, const typed::Term& right);
// `domain` runs on arguments of the target domain type.
typed::Term functor_fun(const typed::Type& target_domain, const typed::Term& domain, const typed::Term& codomain);

// The cast context for ⟨from ⇒ to⟩. Throws std::invalid_argument when the
// types are not consistent-shaped in a way the translation covers (it
// covers every pair, so this never happens for well-formed types).
typed::Term cast_context(const gradual::Type& from, const gradual::Type& to);

// ⟦t⟧. The term is not checked; a well-typed t translates to a term of
// the translated type.
typed::Term translate_term(const gradual::Term& term);

}  // namespace lamg::elaborate
