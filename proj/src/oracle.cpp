#include <argil/oracle.hpp>

#include <algorithm>
#include <bit>
#include <map>

namespace argil::oracle {

namespace {

using Mask = std::uint64_t;

std::vector<std::set<std::size_t>> support_closure(Framework const &f) {
    std::vector<std::set<std::size_t>> reach(f.size());
    for (auto const &e : f.supports()) { reach[e.from].insert(e.to); }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto &targets : reach) {
            std::set<std::size_t> add;
            for (auto t : targets) {
                for (auto u : reach[t]) {
                    if (targets.count(u) == 0) { add.insert(u); }
                }
            }
            if (!add.empty()) {
                targets.insert(add.begin(), add.end());
                changed = true;
            }
        }
    }
    return reach;
}

std::set<std::pair<std::string, std::string>> preference_closure(Framework const &f) {
    auto rel = f.value_preferences();
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const &[a, b] : std::set(rel)) {
            for (auto const &[c, d] : std::set(rel)) {
                if (b == c) { changed |= rel.emplace(a, d).second; }
            }
        }
    }
    return rel;
}

void check_size(Framework const &f, std::size_t cap) {
    if (f.size() > std::min<std::size_t>(cap, 64)) {
        throw ResourceLimit("framework has " + std::to_string(f.size()) + " arguments; oracle cap is " +
                            std::to_string(std::min<std::size_t>(cap, 64)));
    }
}

// Conflict-free sets by backtracking over arguments in index order.
template <class F>
void each_conflict_free(DefeatGraph const &g, Deadline const &deadline, F &&visit) {
    std::uint64_t nodes = 0;
    auto rec = [&](auto &self, std::size_t i, Mask set, Mask blocked) -> void {
        if ((++nodes & 1023U) == 0) { deadline.check(); }
        if (i == g.size) {
            visit(set);
            return;
        }
        self(self, i + 1, set, blocked);
        Mask bit = 1ULL << i;
        if ((blocked & bit) == 0 && (g.attackers[i] & bit) == 0) {
            self(self, i + 1, set | bit, blocked | g.attackers[i] | g.targets[i]);
        }
    };
    rec(rec, 0, 0, 0);
}

} // namespace

std::set<Edge> defeats(Framework const &f) {
    std::set<Edge> result;
    switch (f.kind()) {
        case FrameworkKind::aaf: return f.attacks();
        case FrameworkKind::baf: {
            result = f.attacks();
            auto reach = support_closure(f);
            for (auto const &att : f.attacks()) {
                // x supports* z, z attacks y
                for (std::size_t x = 0; x < f.size(); ++x) {
                    if (reach[x].count(att.from) != 0) { result.insert({x, att.to}); }
                }
                // x attacks z, z supports* y
                for (auto y : reach[att.to]) { result.insert({att.from, y}); }
            }
            return result;
        }
        case FrameworkKind::vaf: {
            auto pref = preference_closure(f);
            for (auto const &att : f.attacks()) {
                if (pref.count({f.values()[att.to], f.values()[att.from]}) == 0) { result.insert(att); }
            }
            return result;
        }
    }
    return result;
}

DefeatGraph::DefeatGraph(Framework const &framework, std::size_t max_args)
: size(framework.size())
, attackers(framework.size(), 0)
, targets(framework.size(), 0) {
    check_size(framework, max_args);
    for (auto const &e : defeats(framework)) {
        attackers[e.to] |= 1ULL << e.from;
        targets[e.from] |= 1ULL << e.to;
    }
}

Mask DefeatGraph::defeated_by(Mask set) const {
    Mask out = 0;
    for (Mask rest = set; rest != 0; rest &= rest - 1) { out |= targets[static_cast<std::size_t>(std::countr_zero(rest))]; }
    return out;
}

Mask DefeatGraph::defended_by(Mask set) const {
    Mask defeated = defeated_by(set);
    Mask out = 0;
    for (std::size_t i = 0; i < size; ++i) {
        if ((attackers[i] & ~defeated) == 0) { out |= 1ULL << i; }
    }
    return out;
}

bool DefeatGraph::conflict_free(Mask set) const { return (defeated_by(set) & set) == 0; }

bool DefeatGraph::is(Semantics semantics, Mask set) const {
    if (!conflict_free(set)) { return false; }
    switch (semantics) {
        case Semantics::conflict_free: return true;
        case Semantics::admissible: return (set & ~defended_by(set)) == 0;
        case Semantics::complete: return defended_by(set) == set;
        case Semantics::stable: return (set | defeated_by(set)) == all();
        case Semantics::grounded:
        case Semantics::preferred: break;
    }
    throw Error("membership for " + std::string(to_string(semantics)) + " needs enumeration");
}

std::vector<Mask> extension_masks(Framework const &framework, Semantics semantics, Options const &options) {
    DefeatGraph g(framework, options.max_args);
    auto base = semantics == Semantics::grounded ? Semantics::complete
              : semantics == Semantics::preferred ? Semantics::admissible
                                                  : semantics;
    std::vector<Mask> found;
    each_conflict_free(g, options.deadline, [&](Mask set) {
        if (g.is(base, set)) { found.push_back(set); }
    });
    if (semantics == Semantics::grounded || semantics == Semantics::preferred) {
        bool minimal = semantics == Semantics::grounded;
        std::stable_sort(found.begin(), found.end(), [&](Mask a, Mask b) {
            return minimal ? std::popcount(a) < std::popcount(b) : std::popcount(a) > std::popcount(b);
        });
        std::vector<Mask> kept;
        for (auto set : found) {
            bool dominated = std::any_of(kept.begin(), kept.end(), [&](Mask k) {
                return minimal ? (k & ~set) == 0 : (set & ~k) == 0;
            });
            if (!dominated) { kept.push_back(set); }
        }
        found = std::move(kept);
    }
    std::sort(found.begin(), found.end());
    return found;
}

Extension to_extension(Framework const &framework, Mask mask) {
    Extension out;
    for (std::size_t i = 0; i < framework.size(); ++i) {
        if ((mask >> i & 1U) != 0) { out.insert(framework.name(i)); }
    }
    return out;
}

std::vector<Extension> extensions(Framework const &framework, Semantics semantics, Options const &options) {
    std::vector<Extension> out;
    for (auto mask : extension_masks(framework, semantics, options)) { out.push_back(to_extension(framework, mask)); }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_extension(Framework const &framework, Semantics semantics, Extension const &extension,
                  Options const &options) {
    Mask mask = 0;
    for (auto const &name : extension) {
        auto i = framework.index_of(name);
        if (!i) { throw ValidationError("unknown argument " + name); }
        mask |= 1ULL << *i;
    }
    if (semantics == Semantics::grounded || semantics == Semantics::preferred) {
        auto all = extension_masks(framework, semantics, options);
        return std::binary_search(all.begin(), all.end(), mask);
    }
    return DefeatGraph(framework, options.max_args).is(semantics, mask);
}

} // namespace argil::oracle
