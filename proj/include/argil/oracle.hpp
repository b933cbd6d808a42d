#pragma once

#include <argil/error.hpp>
#include <argil/framework.hpp>
#include <argil/semantics.hpp>

#include <cstdint>
#include <set>
#include <vector>

namespace argil::oracle {

struct Options {
    //! Frameworks with more arguments raise ResourceLimit; at most 64.
    std::size_t max_args = 20;
    Deadline deadline;
};

//! The relation used for defence checks.
//!
//! AAF: the attacks. BAF: attacks plus supported and secondary defeats over
//! the transitive closure of support. VAF: attacks (x,y) unless the value of
//! y is strictly preferred over the value of x in the closed preference.
std::set<Edge> defeats(Framework const &framework);

//! Bitmask view of a framework's defeat relation.
struct DefeatGraph {
    std::size_t size = 0;
    //! attackers[i]: bit j set iff j defeats i.
    std::vector<std::uint64_t> attackers;
    //! targets[i]: bit j set iff i defeats j.
    std::vector<std::uint64_t> targets;

    explicit DefeatGraph(Framework const &framework, std::size_t max_args = 64);

    [[nodiscard]] std::uint64_t all() const { return size == 64 ? ~0ULL : (1ULL << size) - 1; }
    //! Union of the targets of the members of `set`.
    [[nodiscard]] std::uint64_t defeated_by(std::uint64_t set) const;
    //! Arguments all of whose defeaters are defeated by `set`.
    [[nodiscard]] std::uint64_t defended_by(std::uint64_t set) const;
    [[nodiscard]] bool conflict_free(std::uint64_t set) const;
    [[nodiscard]] bool is(Semantics semantics, std::uint64_t set) const;
};

//! Extensions as bitmasks over argument indices, in increasing numeric order.
std::vector<std::uint64_t> extension_masks(Framework const &framework, Semantics semantics,
                                           Options const &options = {});

//! All extensions in lexicographic order, by enumeration of conflict-free sets.
std::vector<Extension> extensions(Framework const &framework, Semantics semantics, Options const &options = {});

//! Membership test; grounded and preferred fall back to enumeration.
//!
//! Throws ValidationError if `extension` names an unknown argument.
bool is_extension(Framework const &framework, Semantics semantics, Extension const &extension,
                  Options const &options = {});

Extension to_extension(Framework const &framework, std::uint64_t mask);

} // namespace argil::oracle
