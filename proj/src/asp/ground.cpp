#include <argil/asp/ground.hpp>
#include <argil/error.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace argil::asp {

namespace {

void check_arity(std::map<std::string, std::size_t> &arities, Atom const &atom) {
    auto [it, inserted] = arities.emplace(atom.predicate, atom.arity());
    if (!inserted && it->second != atom.arity()) {
        throw ValidationError("arity mismatch for predicate " + atom.predicate + ": " + std::to_string(it->second) +
                              " and " + std::to_string(atom.arity()));
    }
}

void collect_constants(Atom const &atom, std::set<std::string> &out) {
    for (auto const &t : atom.args) {
        if (!t.variable) { out.insert(t.name); }
    }
}

Atom substitute(Atom const &atom, std::map<std::string, std::string> const &binding) {
    Atom result(atom.predicate);
    result.args.reserve(atom.args.size());
    for (auto const &t : atom.args) {
        result.args.push_back(t.variable ? Term::constant(binding.at(t.name)) : t);
    }
    return result;
}

// Calls visit for every assignment of `vars` to `constants`.
void for_each_binding(std::vector<std::string> const &vars, std::vector<std::string> const &constants,
                      std::function<void(std::map<std::string, std::string> const &)> const &visit) {
    std::map<std::string, std::string> binding;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            visit(binding);
            return;
        }
        for (auto const &c : constants) {
            binding[vars[i]] = c;
            rec(i + 1);
        }
    };
    if (!vars.empty() && constants.empty()) { return; }
    rec(0);
}

std::vector<std::string> atom_variables(Atom const &atom) {
    std::vector<std::string> vars;
    for (auto const &t : atom.args) {
        if (t.variable && std::find(vars.begin(), vars.end(), t.name) == vars.end()) { vars.push_back(t.name); }
    }
    return vars;
}

} // namespace

// {{{1 GroundProgram

std::optional<int> GroundProgram::find(Atom const &atom) const {
    if (index_.size() != atoms.size()) {
        auto it = std::find(atoms.begin(), atoms.end(), atom);
        if (it == atoms.end()) { return std::nullopt; }
        return static_cast<int>(it - atoms.begin());
    }
    auto it = index_.find(atom);
    if (it == index_.end()) { return std::nullopt; }
    return it->second;
}

Interpretation GroundProgram::interpretation(std::vector<int> const &ids) const {
    Interpretation result;
    for (int id : ids) { result.insert(atoms[static_cast<std::size_t>(id)]); }
    return result;
}

void GroundProgram::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < atoms.size(); ++i) { index_.emplace(atoms[i], static_cast<int>(i)); }
}

// {{{1 naive grounding

Program ground(Program const &program, std::vector<Atom> const &facts) {
    std::map<std::string, std::size_t> arities;
    std::set<std::string> constant_set;
    for (auto const &f : facts) {
        if (!f.is_ground()) { throw ValidationError("fact " + f.str() + " is not ground"); }
        check_arity(arities, f);
        collect_constants(f, constant_set);
    }
    for (auto const &r : program.rules()) {
        if (r.head) {
            check_arity(arities, *r.head);
            collect_constants(*r.head, constant_set);
        }
        for (auto const &a : r.pos) {
            check_arity(arities, a);
            collect_constants(a, constant_set);
        }
        for (auto const &a : r.neg) {
            check_arity(arities, a);
            collect_constants(a, constant_set);
        }
    }
    for (auto const &h : program.heuristics()) {
        check_arity(arities, h);
        collect_constants(h, constant_set);
    }
    std::vector<std::string> constants(constant_set.begin(), constant_set.end());

    Program result;
    std::set<Atom> seen_facts;
    for (auto const &f : facts) {
        if (seen_facts.insert(f).second) { result.add(Rule{f, {}, {}}); }
    }
    for (auto const &r : program.rules()) {
        for_each_binding(r.variables(), constants, [&](auto const &binding) {
            Rule g;
            if (r.head) { g.head = substitute(*r.head, binding); }
            for (auto const &a : r.pos) { g.pos.push_back(substitute(a, binding)); }
            for (auto const &a : r.neg) { g.neg.push_back(substitute(a, binding)); }
            result.add(std::move(g));
        });
    }
    for (auto const &h : program.heuristics()) {
        for_each_binding(atom_variables(h), constants,
                         [&](auto const &binding) { result.add_heuristic(substitute(h, binding)); });
    }
    return result;
}

std::vector<Atom> herbrand_base(Program const &ground_program) {
    std::map<std::string, std::size_t> arities;
    std::set<std::string> constant_set;
    auto visit = [&](Atom const &a) {
        check_arity(arities, a);
        collect_constants(a, constant_set);
    };
    for (auto const &r : ground_program.rules()) {
        if (r.head) { visit(*r.head); }
        for (auto const &a : r.pos) { visit(a); }
        for (auto const &a : r.neg) { visit(a); }
    }
    for (auto const &h : ground_program.heuristics()) { visit(h); }
    std::vector<std::string> constants(constant_set.begin(), constant_set.end());
    std::vector<Atom> base;
    for (auto const &[pred, arity] : arities) {
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < arity; ++i) { vars.push_back("V" + std::to_string(i)); }
        Atom schema(pred);
        for (auto const &v : vars) { schema.args.push_back(Term::var(v)); }
        for_each_binding(vars, constants, [&](auto const &binding) { base.push_back(substitute(schema, binding)); });
    }
    std::sort(base.begin(), base.end());
    return base;
}

// {{{1 Grounder

Grounder::Grounder(std::vector<Atom> const &facts, std::size_t max_atoms)
: max_atoms_(max_atoms) {
    for (auto const &f : facts) {
        if (!f.is_ground()) { throw ValidationError("fact " + f.str() + " is not ground"); }
        int id = add_possible(f);
        if (std::find(facts_.begin(), facts_.end(), id) == facts_.end()) { facts_.push_back(id); }
    }
}

int Grounder::predicate_id(std::string const &name, std::size_t arity) {
    auto it = predicate_ids_.find(name);
    if (it != predicate_ids_.end()) {
        auto id = it->second;
        if (arities_[static_cast<std::size_t>(id)] != arity) {
            throw ValidationError("arity mismatch for predicate " + name + ": " +
                                  std::to_string(arities_[static_cast<std::size_t>(id)]) + " and " +
                                  std::to_string(arity));
        }
        return id;
    }
    int id = static_cast<int>(predicates_.size());
    predicates_.push_back(name);
    arities_.push_back(arity);
    atoms_by_predicate_.emplace_back();
    predicate_ids_.emplace(name, id);
    return id;
}

int Grounder::constant_id(std::string const &name) {
    auto [it, inserted] = constant_ids_.emplace(name, static_cast<int>(constants_.size()));
    if (inserted) { constants_.push_back(name); }
    return it->second;
}

Grounder::CompiledAtom Grounder::compile(Atom const &atom, std::vector<std::string> &vars) {
    CompiledAtom c;
    c.predicate = predicate_id(atom.predicate, atom.arity());
    for (auto const &t : atom.args) {
        if (t.variable) {
            auto it = std::find(vars.begin(), vars.end(), t.name);
            if (it == vars.end()) {
                vars.push_back(t.name);
                it = vars.end() - 1;
            }
            c.args.push_back(-1 - static_cast<int>(it - vars.begin()));
        }
        else {
            c.args.push_back(constant_id(t.name));
        }
    }
    return c;
}

Grounder::CompiledRule Grounder::compile(Rule const &rule) {
    std::vector<std::string> vars;
    CompiledRule c;
    // Positive body first so that variables are numbered in binding order.
    for (auto const &a : rule.pos) { c.pos.push_back(compile(a, vars)); }
    if (rule.head) { c.head = compile(*rule.head, vars); }
    for (auto const &a : rule.neg) { c.neg.push_back(compile(a, vars)); }
    c.variables = vars.size();
    return c;
}

void Grounder::declare(Program const &program) {
    std::vector<std::string> vars;
    for (auto const &r : program.rules()) { (void)compile(r); }
    for (auto const &h : program.heuristics()) { (void)compile(h, vars); }
}

std::optional<int> Grounder::lookup(int predicate, std::vector<int> const &args) const {
    auto it = atom_ids_.find({predicate, args});
    if (it == atom_ids_.end()) { return std::nullopt; }
    return it->second;
}

int Grounder::intern(int predicate, std::vector<int> args) {
    if (auto id = lookup(predicate, args)) { return *id; }
    if (atom_args_.size() >= max_atoms_) {
        throw ResourceLimit("ground atom limit of " + std::to_string(max_atoms_) + " exceeded");
    }
    int id = static_cast<int>(atom_args_.size());
    atom_ids_.emplace(std::make_pair(predicate, args), id);
    atom_predicate_.push_back(predicate);
    atom_args_.push_back(std::move(args));
    atoms_by_predicate_[static_cast<std::size_t>(predicate)].push_back(id);
    return id;
}

int Grounder::add_possible(Atom const &atom) {
    if (!atom.is_ground()) { throw ValidationError("atom " + atom.str() + " is not ground"); }
    int pred = predicate_id(atom.predicate, atom.arity());
    std::vector<int> args;
    for (auto const &t : atom.args) { args.push_back(constant_id(t.name)); }
    return intern(pred, std::move(args));
}

std::vector<int> Grounder::bind(CompiledAtom const &atom, std::vector<int> const &binding) const {
    std::vector<int> args = atom.args;
    for (auto &a : args) {
        if (a < 0) { a = binding[static_cast<std::size_t>(-1 - a)]; }
    }
    return args;
}

template <class F>
void Grounder::join(CompiledRule const &rule, std::size_t i, std::vector<int> &binding, F &&visit) const {
    if (i == rule.pos.size()) {
        visit(binding);
        return;
    }
    auto const &lit = rule.pos[i];
    auto const &candidates = atoms_by_predicate_[static_cast<std::size_t>(lit.predicate)];
    // The candidate list may grow while visiting; only the current prefix is joined.
    std::size_t count = candidates.size();
    std::vector<std::size_t> assigned;
    for (std::size_t k = 0; k < count; ++k) {
        auto const &args = atom_args_[static_cast<std::size_t>(candidates[k])];
        assigned.clear();
        bool match = true;
        for (std::size_t j = 0; j < args.size() && match; ++j) {
            int t = lit.args[j];
            if (t >= 0) {
                match = t == args[j];
                continue;
            }
            auto v = static_cast<std::size_t>(-1 - t);
            if (binding[v] < 0) {
                binding[v] = args[j];
                assigned.push_back(v);
            }
            else {
                match = binding[v] == args[j];
            }
        }
        if (match) { join(rule, i + 1, binding, visit); }
        for (auto v : assigned) { binding[v] = -1; }
    }
}

void Grounder::saturate(std::vector<Rule> const &rules) {
    std::vector<CompiledRule> compiled;
    for (auto const &r : rules) {
        if (r.head) { compiled.push_back(compile(r)); }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<int, std::vector<int>>> derived;
        for (auto const &rule : compiled) {
            std::vector<int> binding(rule.variables, -1);
            join(rule, 0, binding, [&](std::vector<int> const &b) {
                auto args = bind(*rule.head, b);
                if (!lookup(rule.head->predicate, args)) { derived.emplace_back(rule.head->predicate, std::move(args)); }
            });
        }
        for (auto &[pred, args] : derived) {
            if (!lookup(pred, args)) {
                intern(pred, std::move(args));
                changed = true;
            }
        }
    }
}

std::vector<GroundRule> Grounder::instantiate(Rule const &rule) {
    auto compiled = compile(rule);
    std::vector<std::pair<int, std::vector<int>>> heads;
    std::vector<GroundRule> result;
    std::vector<int> binding(compiled.variables, -1);
    join(compiled, 0, binding, [&](std::vector<int> const &b) {
        GroundRule g;
        for (auto const &lit : compiled.pos) { g.pos.push_back(*lookup(lit.predicate, bind(lit, b))); }
        for (auto const &lit : compiled.neg) {
            if (auto id = lookup(lit.predicate, bind(lit, b))) { g.neg.push_back(*id); }
        }
        if (compiled.head) {
            // Heads are interned after the join so the candidate lists stay stable.
            g.head = static_cast<int>(heads.size());
            heads.emplace_back(compiled.head->predicate, bind(*compiled.head, b));
        }
        result.push_back(std::move(g));
    });
    if (compiled.head) {
        for (auto &g : result) {
            auto &[pred, args] = heads[static_cast<std::size_t>(g.head)];
            g.head = intern(pred, args);
        }
    }
    return result;
}

std::vector<int> Grounder::instantiate_heuristic(Atom const &schema) {
    std::vector<std::string> vars;
    auto compiled = compile(schema, vars);
    std::vector<int> result;
    std::vector<int> binding(vars.size(), -1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            if (auto id = lookup(compiled.predicate, bind(compiled, binding))) { result.push_back(*id); }
            return;
        }
        for (std::size_t c = 0; c < constants_.size(); ++c) {
            binding[i] = static_cast<int>(c);
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<GroundRule> Grounder::fact_rules() const {
    std::vector<GroundRule> result;
    for (int id : facts_) { result.push_back(GroundRule{id, {}, {}}); }
    return result;
}

Atom Grounder::atom(int id) const {
    auto i = static_cast<std::size_t>(id);
    Atom a(predicates_[static_cast<std::size_t>(atom_predicate_[i])]);
    for (int c : atom_args_[i]) { a.args.push_back(Term::constant(constants_[static_cast<std::size_t>(c)])); }
    return a;
}

std::vector<Atom> Grounder::atoms() const {
    std::vector<Atom> result;
    result.reserve(atom_args_.size());
    for (std::size_t i = 0; i < atom_args_.size(); ++i) { result.push_back(atom(static_cast<int>(i))); }
    return result;
}

std::optional<int> Grounder::find(Atom const &atom) const {
    auto pit = predicate_ids_.find(atom.predicate);
    if (pit == predicate_ids_.end() || arities_[static_cast<std::size_t>(pit->second)] != atom.arity()) {
        return std::nullopt;
    }
    std::vector<int> args;
    for (auto const &t : atom.args) {
        auto cit = constant_ids_.find(t.name);
        if (t.variable || cit == constant_ids_.end()) { return std::nullopt; }
        args.push_back(cit->second);
    }
    return lookup(pit->second, args);
}

// {{{1 instantiate

GroundProgram instantiate(Program const &program, std::vector<Atom> const &facts, std::size_t max_atoms) {
    Grounder grounder(facts, max_atoms);
    grounder.declare(program);
    grounder.saturate(program.rules());
    GroundProgram result;
    result.rules = grounder.fact_rules();
    for (auto const &r : program.rules()) {
        auto rules = grounder.instantiate(r);
        result.rules.insert(result.rules.end(), std::make_move_iterator(rules.begin()),
                            std::make_move_iterator(rules.end()));
    }
    std::set<int> heuristic;
    for (auto const &h : program.heuristics()) {
        auto ids = grounder.instantiate_heuristic(h);
        heuristic.insert(ids.begin(), ids.end());
    }
    result.heuristic_atoms.assign(heuristic.begin(), heuristic.end());
    result.atoms = grounder.atoms();
    result.reindex();
    return result;
}

} // namespace argil::asp
