#pragma once

#include <argil/framework.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace argil::aba {

//! A deduction `assumptions |- root` with a subset-minimal assumption set.
struct StructuredArgument {
    std::size_t index = 0;
    std::string root;
    std::set<std::string> assumptions;

    friend auto operator<=>(StructuredArgument const &, StructuredArgument const &) = default;
};

//! One argument per atom and subset-minimal assumption set deriving it.
//!
//! Indices start at 1 and follow the order (number of assumptions, root, assumption set).
std::vector<StructuredArgument> construct_arguments(AbaFramework const &aba);

//! Name of the abstract argument for an index, `a<index>`.
std::string argument_name(std::size_t index);

//! X attacks Y iff the root of X is the contrary of an assumption of Y.
Framework generate_attacks(std::vector<StructuredArgument> const &arguments,
                           std::map<std::string, std::string> const &contrary);

struct Translation {
    Framework framework;
    std::vector<StructuredArgument> arguments;
};

Translation translate(AbaFramework const &aba);

//! CSV with header `index,root,assumptions`; assumptions are joined with `;`.
std::string table_csv(std::vector<StructuredArgument> const &arguments);

} // namespace argil::aba
