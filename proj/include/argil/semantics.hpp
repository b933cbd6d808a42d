#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace argil {

enum class Semantics { conflict_free, admissible, complete, grounded, preferred, stable };

//! The five semantics with learned encodings.
inline constexpr std::array<Semantics, 5> learned_semantics{Semantics::admissible, Semantics::complete,
                                                            Semantics::grounded, Semantics::preferred,
                                                            Semantics::stable};

std::string_view to_string(Semantics semantics);
//! Accepts the names above; `-` may be used in place of `_`.
std::optional<Semantics> parse_semantics(std::string_view text);

} // namespace argil
