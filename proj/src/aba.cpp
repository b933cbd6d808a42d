#include <argil/aba.hpp>

#include <algorithm>
#include <tuple>

namespace argil::aba {

namespace {

using Support = std::set<std::string>;
using Family = std::vector<Support>;

bool includes(Support const &big, Support const &small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Adds `set` unless a subset is present; drops supersets. Returns true on change.
bool insert_minimal(Family &family, Support const &set) {
    for (auto const &s : family) {
        if (includes(set, s)) { return false; }
    }
    family.erase(std::remove_if(family.begin(), family.end(), [&](Support const &s) { return includes(s, set); }),
                 family.end());
    family.push_back(set);
    return true;
}

} // namespace

std::vector<StructuredArgument> construct_arguments(AbaFramework const &aba) {
    std::map<std::string, Family> derived;
    for (auto const &a : aba.assumptions()) { derived[a].push_back({a}); }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const &rule : aba.rules()) {
            Family combined{Support{}};
            for (auto const &atom : rule.body) {
                auto it = derived.find(atom);
                if (it == derived.end()) {
                    combined.clear();
                    break;
                }
                Family next;
                for (auto const &left : combined) {
                    for (auto const &right : it->second) {
                        auto merged = left;
                        merged.insert(right.begin(), right.end());
                        insert_minimal(next, merged);
                    }
                }
                combined = std::move(next);
            }
            for (auto const &set : combined) { changed |= insert_minimal(derived[rule.head], set); }
        }
    }
    std::vector<StructuredArgument> out;
    for (auto const &[root, family] : derived) {
        for (auto const &set : family) { out.push_back({0, root, set}); }
    }
    std::sort(out.begin(), out.end(), [](StructuredArgument const &a, StructuredArgument const &b) {
        return std::forward_as_tuple(a.assumptions.size(), a.root, a.assumptions) <
               std::forward_as_tuple(b.assumptions.size(), b.root, b.assumptions);
    });
    for (std::size_t i = 0; i < out.size(); ++i) { out[i].index = i + 1; }
    return out;
}

std::string argument_name(std::size_t index) { return "a" + std::to_string(index); }

Framework generate_attacks(std::vector<StructuredArgument> const &arguments,
                           std::map<std::string, std::string> const &contrary) {
    FrameworkBuilder builder;
    for (auto const &x : arguments) { builder.argument(argument_name(x.index)); }
    for (auto const &x : arguments) {
        for (auto const &y : arguments) {
            bool hits = std::any_of(y.assumptions.begin(), y.assumptions.end(), [&](std::string const &a) {
                auto it = contrary.find(a);
                return it != contrary.end() && it->second == x.root;
            });
            if (hits) { builder.attack(argument_name(x.index), argument_name(y.index)); }
        }
    }
    return builder.build(FrameworkKind::aaf);
}

Translation translate(AbaFramework const &aba) {
    auto arguments = construct_arguments(aba);
    auto framework = generate_attacks(arguments, aba.contrary());
    return {std::move(framework), std::move(arguments)};
}

std::string table_csv(std::vector<StructuredArgument> const &arguments) {
    std::string out = "index,root,assumptions\n";
    for (auto const &x : arguments) {
        out += std::to_string(x.index) + "," + x.root + ",";
        bool first = true;
        for (auto const &a : x.assumptions) {
            if (!first) { out += ';'; }
            out += a;
            first = false;
        }
        out += '\n';
    }
    return out;
}

} // namespace argil::aba
