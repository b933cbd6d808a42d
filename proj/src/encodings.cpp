#include <argil/asp/parser.hpp>
#include <argil/encodings.hpp>
#include <argil/error.hpp>

#include <map>
#include <string>

namespace argil {

namespace encodings::detail {
// Generated from data/encodings at build time.
extern std::map<std::string_view, std::string_view> const fixtures;
} // namespace encodings::detail

std::string_view to_string(Semantics semantics) {
    switch (semantics) {
        case Semantics::conflict_free: return "conflict_free";
        case Semantics::admissible: return "admissible";
        case Semantics::complete: return "complete";
        case Semantics::grounded: return "grounded";
        case Semantics::preferred: return "preferred";
        case Semantics::stable: return "stable";
    }
    return "conflict_free";
}

std::optional<Semantics> parse_semantics(std::string_view text) {
    std::string name(text);
    for (auto &c : name) {
        if (c == '-') { c = '_'; }
    }
    for (auto s : {Semantics::conflict_free, Semantics::admissible, Semantics::complete, Semantics::grounded,
                   Semantics::preferred, Semantics::stable}) {
        if (to_string(s) == name) { return s; }
    }
    return std::nullopt;
}

namespace encodings {

namespace {

std::string_view background_name(FrameworkKind kind) {
    switch (kind) {
        case FrameworkKind::aaf: return "background_aaf";
        case FrameworkKind::baf: return "background_baf";
        case FrameworkKind::vaf: return "background_vaf";
    }
    return "background_aaf";
}

std::string_view learned_name(Semantics semantics) {
    if (semantics == Semantics::conflict_free) { throw Error("no learned encoding for conflict_free semantics"); }
    return to_string(semantics);
}

} // namespace

std::string_view source(std::string_view name) {
    auto it = detail::fixtures.find(name);
    if (it == detail::fixtures.end()) { throw Error("unknown encoding '" + std::string(name) + "'"); }
    return it->second;
}

asp::Program background() { return asp::parse_program(source("background_b")); }

asp::Program background(FrameworkKind kind) { return asp::parse_program(source(background_name(kind))); }

asp::Program learned(Semantics semantics) { return asp::parse_program(source(learned_name(semantics))); }

asp::Program full_semantics(FrameworkKind kind, Semantics semantics) {
    return background(kind) + learned(semantics);
}

std::string full_semantics_source(FrameworkKind kind, Semantics semantics) {
    auto learned_text = source(learned_name(semantics));
    return std::string(source(background_name(kind))) + std::string(learned_text);
}

asp::Program aspartix_admissible() { return asp::parse_program(source("aspartix_adm")); }

} // namespace encodings

} // namespace argil
