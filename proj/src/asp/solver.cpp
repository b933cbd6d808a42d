#include <argil/asp/solver.hpp>

#include <algorithm>
#include <set>

namespace argil::asp {

namespace {

constexpr std::int8_t unknown = 0;
constexpr std::int8_t truth = 1;
constexpr std::int8_t falsity = -1;

// Builds a CSR index: for every key in [0, size) the list of rules mentioning it.
template <class F>
void build_index(std::size_t size, std::size_t rules, F &&keys, std::vector<std::uint32_t> &index,
                 std::vector<std::uint32_t> &out) {
    index.assign(size + 1, 0);
    for (std::size_t r = 0; r < rules; ++r) {
        keys(r, [&](int k) { ++index[static_cast<std::size_t>(k) + 1]; });
    }
    for (std::size_t i = 0; i < size; ++i) { index[i + 1] += index[i]; }
    out.assign(index[size], 0);
    auto fill = index;
    for (std::size_t r = 0; r < rules; ++r) {
        keys(r, [&](int k) { out[fill[static_cast<std::size_t>(k)]++] = static_cast<std::uint32_t>(r); });
    }
}

} // namespace

// {{{1 Solver

void Solver::reset(std::size_t atom_count) {
    atoms_ = atom_count;
    heads_.clear();
    begin_.clear();
    mid_.clear();
    end_.clear();
    lits_.clear();
    assumptions_.assign(atom_count, unknown);
    preferred_.clear();
    prepared_ = false;
    nodes_ = 0;
}

void Solver::add_rule(GroundRule const &rule) {
    auto check = [&](int a) {
        if (a < 0 || static_cast<std::size_t>(a) >= atoms_) { throw Error("ground rule refers to unknown atom"); }
    };
    if (rule.head != GroundRule::bottom) { check(rule.head); }
    heads_.push_back(rule.head);
    begin_.push_back(static_cast<std::uint32_t>(lits_.size()));
    for (int a : rule.pos) {
        check(a);
        lits_.push_back(a);
    }
    mid_.push_back(static_cast<std::uint32_t>(lits_.size()));
    for (int a : rule.neg) {
        check(a);
        lits_.push_back(a);
    }
    end_.push_back(static_cast<std::uint32_t>(lits_.size()));
    prepared_ = false;
}

void Solver::add_rules(std::span<GroundRule const> rules) {
    for (auto const &r : rules) { add_rule(r); }
}

void Solver::assume(int atom, bool value) {
    auto &slot = assumptions_.at(static_cast<std::size_t>(atom));
    std::int8_t v = value ? truth : falsity;
    // Contradicting assumptions leave no answer set.
    if (slot != unknown && slot != v) {
        add_rule(GroundRule{GroundRule::bottom, {}, {}});
        return;
    }
    slot = v;
}

void Solver::prefer_false(std::span<int const> atoms) {
    preferred_.insert(preferred_.end(), atoms.begin(), atoms.end());
    prepared_ = false;
}

void Solver::prepare() {
    if (prepared_) { return; }
    auto rules = heads_.size();
    build_index(
        atoms_, rules,
        [&](std::size_t r, auto &&add) {
            if (heads_[r] != GroundRule::bottom) { add(heads_[r]); }
        },
        head_index_, head_rules_);
    build_index(
        atoms_, rules,
        [&](std::size_t r, auto &&add) {
            for (int a : pos(r)) { add(a); }
        },
        pos_index_, pos_rules_);

    // Branch on preferred atoms, then atoms under negation, then the rest.
    std::vector<std::uint8_t> placed(atoms_, 0);
    std::vector<std::uint8_t> negated(atoms_, 0);
    for (std::size_t r = 0; r < rules; ++r) {
        for (int a : neg(r)) { negated[static_cast<std::size_t>(a)] = 1; }
    }
    order_.clear();
    for (int a : preferred_) {
        if (!placed[static_cast<std::size_t>(a)]) {
            placed[static_cast<std::size_t>(a)] = 1;
            order_.push_back(a);
        }
    }
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t a = 0; a < atoms_; ++a) {
            if (!placed[a] && (pass == 1 || negated[a])) {
                placed[a] = 1;
                order_.push_back(static_cast<int>(a));
            }
        }
    }
    count_.resize(rules);
    eligible_.resize(rules);
    derived_.resize(atoms_);
    queue_.reserve(rules);
    prepared_ = true;
}

bool Solver::lower(Values &v, bool &changed) {
    auto rules = heads_.size();
    queue_.clear();
    std::fill(derived_.begin(), derived_.end(), 0);
    for (std::size_t r = 0; r < rules; ++r) {
        auto n = neg(r);
        bool ok = std::all_of(n.begin(), n.end(), [&](int a) { return v[static_cast<std::size_t>(a)] == falsity; });
        eligible_[r] = ok;
        count_[r] = mid_[r] - begin_[r];
        if (ok && count_[r] == 0) { queue_.push_back(static_cast<std::uint32_t>(r)); }
    }
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
        int h = heads_[queue_[qi]];
        if (h == GroundRule::bottom) { return false; }
        auto hi = static_cast<std::size_t>(h);
        if (derived_[hi]) { continue; }
        derived_[hi] = 1;
        for (auto k = pos_index_[hi]; k < pos_index_[hi + 1]; ++k) {
            auto r = pos_rules_[k];
            if (--count_[r] == 0 && eligible_[r]) { queue_.push_back(r); }
        }
    }
    for (std::size_t a = 0; a < atoms_; ++a) {
        if (!derived_[a]) { continue; }
        if (v[a] == falsity) { return false; }
        if (v[a] == unknown) {
            v[a] = truth;
            changed = true;
        }
    }
    return true;
}

bool Solver::upper(Values &v, bool &changed) {
    auto rules = heads_.size();
    queue_.clear();
    std::fill(derived_.begin(), derived_.end(), 0);
    for (std::size_t r = 0; r < rules; ++r) {
        int h = heads_[r];
        bool ok = h != GroundRule::bottom && v[static_cast<std::size_t>(h)] != falsity;
        if (ok) {
            auto n = neg(r);
            ok = std::none_of(n.begin(), n.end(), [&](int a) { return v[static_cast<std::size_t>(a)] == truth; });
        }
        if (ok) {
            auto p = pos(r);
            ok = std::none_of(p.begin(), p.end(), [&](int a) { return v[static_cast<std::size_t>(a)] == falsity; });
        }
        eligible_[r] = ok;
        count_[r] = mid_[r] - begin_[r];
        if (ok && count_[r] == 0) { queue_.push_back(static_cast<std::uint32_t>(r)); }
    }
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
        auto hi = static_cast<std::size_t>(heads_[queue_[qi]]);
        if (derived_[hi]) { continue; }
        derived_[hi] = 1;
        for (auto k = pos_index_[hi]; k < pos_index_[hi + 1]; ++k) {
            auto r = pos_rules_[k];
            if (--count_[r] == 0 && eligible_[r]) { queue_.push_back(r); }
        }
    }
    for (std::size_t a = 0; a < atoms_; ++a) {
        if (derived_[a]) { continue; }
        if (v[a] == truth) { return false; }
        if (v[a] == unknown) {
            v[a] = falsity;
            changed = true;
        }
    }
    return true;
}

bool Solver::backward(Values &v, bool &changed) {
    auto rules = heads_.size();
    // A rule whose head is false needs a false body literal.
    for (std::size_t r = 0; r < rules; ++r) {
        int h = heads_[r];
        if (h != GroundRule::bottom && v[static_cast<std::size_t>(h)] != falsity) { continue; }
        int open = 0;
        int last = 0;
        bool last_pos = true;
        bool falsified = false;
        for (int a : pos(r)) {
            auto s = v[static_cast<std::size_t>(a)];
            if (s == falsity) {
                falsified = true;
                break;
            }
            if (s == unknown) {
                ++open;
                last = a;
                last_pos = true;
            }
        }
        if (falsified) { continue; }
        for (int a : neg(r)) {
            auto s = v[static_cast<std::size_t>(a)];
            if (s == truth) {
                falsified = true;
                break;
            }
            if (s == unknown) {
                ++open;
                last = a;
                last_pos = false;
            }
        }
        if (falsified) { continue; }
        if (open == 0) { return false; }
        if (open == 1) {
            v[static_cast<std::size_t>(last)] = last_pos ? falsity : truth;
            changed = true;
        }
    }
    // A true atom with a single rule that can still support it needs that rule's body.
    for (std::size_t a = 0; a < atoms_; ++a) {
        if (v[a] != truth) { continue; }
        std::size_t support = rules;
        int candidates = 0;
        for (auto k = head_index_[a]; k < head_index_[a + 1] && candidates < 2; ++k) {
            auto r = head_rules_[k];
            auto p = pos(r);
            auto n = neg(r);
            bool falsified =
                std::any_of(p.begin(), p.end(), [&](int b) { return v[static_cast<std::size_t>(b)] == falsity; }) ||
                std::any_of(n.begin(), n.end(), [&](int b) { return v[static_cast<std::size_t>(b)] == truth; });
            if (!falsified) {
                ++candidates;
                support = r;
            }
        }
        if (candidates == 0) { return false; }
        if (candidates == 1) {
            for (int b : pos(support)) {
                if (v[static_cast<std::size_t>(b)] == unknown) {
                    v[static_cast<std::size_t>(b)] = truth;
                    changed = true;
                }
            }
            for (int b : neg(support)) {
                if (v[static_cast<std::size_t>(b)] == unknown) {
                    v[static_cast<std::size_t>(b)] = falsity;
                    changed = true;
                }
            }
        }
    }
    return true;
}

bool Solver::propagate(Values &v) {
    for (;;) {
        bool changed = false;
        if (!lower(v, changed) || !upper(v, changed)) { return false; }
        if (changed) { continue; }
        if (!backward(v, changed)) { return false; }
        if (!changed) { return true; }
    }
}

bool Solver::stable(Values const &v) {
    // Least model of the reduct, computed independently of the propagation state.
    auto rules = heads_.size();
    std::vector<std::uint32_t> count(rules);
    std::vector<std::uint8_t> in_reduct(rules);
    std::vector<std::uint8_t> model(atoms_, 0);
    std::vector<std::uint32_t> queue;
    for (std::size_t r = 0; r < rules; ++r) {
        auto n = neg(r);
        in_reduct[r] = std::none_of(n.begin(), n.end(), [&](int a) { return v[static_cast<std::size_t>(a)] == truth; });
        count[r] = mid_[r] - begin_[r];
        if (in_reduct[r] && count[r] == 0) { queue.push_back(static_cast<std::uint32_t>(r)); }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int h = heads_[queue[qi]];
        if (h == GroundRule::bottom) { return false; }
        auto hi = static_cast<std::size_t>(h);
        if (model[hi]) { continue; }
        model[hi] = 1;
        for (auto k = pos_index_[hi]; k < pos_index_[hi + 1]; ++k) {
            auto r = pos_rules_[k];
            if (--count[r] == 0 && in_reduct[r]) { queue.push_back(r); }
        }
    }
    for (std::size_t a = 0; a < atoms_; ++a) {
        if ((model[a] != 0) != (v[a] == truth)) { return false; }
    }
    return true;
}

bool Solver::search(Values &v, std::function<bool(std::vector<int> const &)> const &visit) {
    if ((++nodes_ & 63U) == 0) { deadline_.check(); }
    if (!propagate(v)) { return true; }
    auto it = std::find_if(order_.begin(), order_.end(), [&](int a) { return v[static_cast<std::size_t>(a)] == unknown; });
    if (it == order_.end()) {
        if (!stable(v)) { return true; }
        std::vector<int> model;
        for (std::size_t a = 0; a < atoms_; ++a) {
            if (v[a] == truth) { model.push_back(static_cast<int>(a)); }
        }
        return visit(model);
    }
    auto branch = static_cast<std::size_t>(*it);
    Values copy = v;
    copy[branch] = falsity;
    if (!search(copy, visit)) { return false; }
    v[branch] = truth;
    return search(v, visit);
}

bool Solver::enumerate(std::function<bool(std::vector<int> const &)> const &visit) {
    prepare();
    deadline_.check();
    Values v = assumptions_;
    return search(v, visit);
}

std::optional<std::vector<int>> Solver::first() {
    std::optional<std::vector<int>> result;
    enumerate([&](std::vector<int> const &m) {
        result = m;
        return false;
    });
    return result;
}

std::vector<std::vector<int>> Solver::all() {
    std::vector<std::vector<int>> result;
    enumerate([&](std::vector<int> const &m) {
        result.push_back(m);
        return true;
    });
    return result;
}

// {{{1 program level

std::vector<std::vector<int>> solve_all(GroundProgram const &program, Deadline const &deadline) {
    Solver solver(program.atoms.size());
    solver.add_rules(program.rules);
    solver.set_deadline(deadline);
    return solver.all();
}

std::vector<std::vector<int>> minimal_by_projection(std::vector<std::vector<int>> const &sets,
                                                    std::vector<int> const &projection) {
    if (projection.empty()) { return sets; }
    auto project = [&](std::vector<int> const &s) {
        std::vector<int> p;
        std::set_intersection(s.begin(), s.end(), projection.begin(), projection.end(), std::back_inserter(p));
        return p;
    };
    std::set<std::vector<int>> unique;
    for (auto const &s : sets) { unique.insert(project(s)); }
    std::set<std::vector<int>> minimal;
    for (auto const &p : unique) {
        bool dominated = std::any_of(unique.begin(), unique.end(), [&](std::vector<int> const &q) {
            return q.size() < p.size() && std::includes(p.begin(), p.end(), q.begin(), q.end());
        });
        if (!dominated) { minimal.insert(p); }
    }
    std::vector<std::vector<int>> result;
    for (auto const &s : sets) {
        if (minimal.count(project(s)) != 0) { result.push_back(s); }
    }
    return result;
}

std::optional<std::vector<int>> solve_first_minimal(GroundProgram const &program, Deadline const &deadline) {
    auto const &projection = program.heuristic_atoms;
    auto run = [&](std::vector<int> const *bound) {
        Solver solver(program.atoms.size());
        solver.add_rules(program.rules);
        solver.set_deadline(deadline);
        solver.prefer_false(projection);
        if (bound != nullptr) {
            // Look for a strictly smaller projection: nothing outside `bound`, not all of `bound`.
            GroundRule not_all{GroundRule::bottom, *bound, {}};
            solver.add_rule(not_all);
            for (int a : projection) {
                if (!std::binary_search(bound->begin(), bound->end(), a)) { solver.assume(a, false); }
            }
        }
        return solver.first();
    };
    auto best = run(nullptr);
    while (best && !projection.empty()) {
        std::vector<int> p;
        std::set_intersection(best->begin(), best->end(), projection.begin(), projection.end(), std::back_inserter(p));
        if (p.empty()) { break; }
        auto smaller = run(&p);
        if (!smaller) { break; }
        best = std::move(smaller);
    }
    return best;
}

namespace {

std::vector<Interpretation> to_interpretations(GroundProgram const &gp, std::vector<std::vector<int>> const &sets) {
    std::vector<Interpretation> result;
    result.reserve(sets.size());
    for (auto const &s : sets) { result.push_back(gp.interpretation(s)); }
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace

std::vector<Interpretation> answer_sets(Program const &program, std::vector<Atom> const &facts,
                                        EngineOptions const &options) {
    auto gp = instantiate(program, facts, options.max_atoms);
    return to_interpretations(gp, solve_all(gp, options.deadline));
}

std::vector<Interpretation> minimal_answer_sets(Program const &program, std::vector<Atom> const &facts,
                                                EngineOptions const &options) {
    auto gp = instantiate(program, facts, options.max_atoms);
    return to_interpretations(gp, minimal_by_projection(solve_all(gp, options.deadline), gp.heuristic_atoms));
}

std::optional<Interpretation> first_minimal_answer_set(Program const &program, std::vector<Atom> const &facts,
                                                       EngineOptions const &options) {
    auto gp = instantiate(program, facts, options.max_atoms);
    auto found = solve_first_minimal(gp, options.deadline);
    if (!found) { return std::nullopt; }
    return gp.interpretation(*found);
}

// {{{1 reduct

DefiniteProgram reduct(Program const &ground_program, Interpretation const &interpretation) {
    DefiniteProgram result;
    for (auto const &rule : ground_program.rules()) {
        if (!rule.is_ground()) { throw ValidationError("reduct requires a ground program: " + rule.str()); }
        bool blocked = std::any_of(rule.neg.begin(), rule.neg.end(),
                                   [&](Atom const &a) { return interpretation.count(a) != 0; });
        if (blocked) { continue; }
        result.push_back(DefiniteRule{rule.head, rule.pos});
    }
    return result;
}

LeastModel least_model(DefiniteProgram const &program) {
    LeastModel model;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const &rule : program) {
            bool fires = std::all_of(rule.body.begin(), rule.body.end(),
                                     [&](Atom const &a) { return model.atoms.count(a) != 0; });
            if (!fires) { continue; }
            if (!rule.head) {
                model.bottom = true;
            }
            else if (model.atoms.insert(*rule.head).second) {
                changed = true;
            }
        }
    }
    return model;
}

bool is_answer_set(Program const &ground_program, Interpretation const &interpretation) {
    auto model = least_model(reduct(ground_program, interpretation));
    return !model.bottom && model.atoms == interpretation;
}

std::string str(DefiniteRule const &rule) {
    std::string out = rule.head ? rule.head->str() : "#false";
    if (!rule.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) { out += (i ? ", " : "") + rule.body[i].str(); }
    }
    return out + ".";
}

} // namespace argil::asp
