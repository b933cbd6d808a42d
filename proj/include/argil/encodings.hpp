#pragma once

#include <argil/asp/syntax.hpp>
#include <argil/framework.hpp>
#include <argil/semantics.hpp>

#include <string_view>

namespace argil::encodings {

//! Source text of a bundled fixture, e.g. `background_aaf` or `stable`.
//!
//! Throws Error for unknown names.
std::string_view source(std::string_view name);

//! The general background knowledge covering all framework kinds.
asp::Program background();
//! The simplified background knowledge for one framework kind.
asp::Program background(FrameworkKind kind);
//! The learned hypothesis for a semantics; identical for all framework kinds.
asp::Program learned(Semantics semantics);
//! Background for `kind` followed by the learned hypothesis for `semantics`.
//!
//! Throws Error for conflict_free, which has no learned encoding.
asp::Program full_semantics(FrameworkKind kind, Semantics semantics);
//! Source text of full_semantics.
std::string full_semantics_source(FrameworkKind kind, Semantics semantics);

//! The ASPARTIX encoding of admissible semantics.
asp::Program aspartix_admissible();

} // namespace argil::encodings
