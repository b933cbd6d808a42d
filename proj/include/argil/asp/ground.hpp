#pragma once

#include <argil/asp/syntax.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace argil::asp {

//! A ground rule over atom ids. Constraints use `head == GroundRule::bottom`.
struct GroundRule {
    static constexpr int bottom = -1;

    int head = bottom;
    std::vector<int> pos;
    std::vector<int> neg;

    friend auto operator<=>(GroundRule const &, GroundRule const &) = default;
};

//! Ground rules over an indexed atom table.
struct GroundProgram {
    std::vector<Atom> atoms;
    std::vector<GroundRule> rules;
    //! Ids of ground heuristic atoms that occur in the atom table, sorted.
    std::vector<int> heuristic_atoms;

    [[nodiscard]] std::optional<int> find(Atom const &atom) const;
    [[nodiscard]] Interpretation interpretation(std::vector<int> const &ids) const;

    //! Rebuilds the lookup index; call after modifying `atoms` directly.
    void reindex();

private:
    std::map<Atom, int> index_;
};

//! Instantiates every rule over all constants of `program` and `facts`.
//!
//! Facts become bodiless rules and heuristic schemas are instantiated over
//! all constants. No simplification is applied, so the result is suitable as
//! a reference for the Herbrand base based definitions.
Program ground(Program const &program, std::vector<Atom> const &facts);

//! All ground atoms that can be formed from the predicates and constants of
//! a ground program, in lexicographic order.
std::vector<Atom> herbrand_base(Program const &ground_program);

//! Bottom-up grounder restricted to atoms that are derivable when negation is ignored.
//!
//! The atom table is fixed by `saturate`; `instantiate` only adds head atoms.
//! A negative literal over an atom that is not in the table is always true
//! and gets dropped.
class Grounder {
public:
    explicit Grounder(std::vector<Atom> const &facts, std::size_t max_atoms = 1'000'000);

    //! Registers constants and arities of a program without adding atoms.
    void declare(Program const &program);
    //! Adds an atom to the table of possible atoms.
    int add_possible(Atom const &atom);
    //! Extends the table with everything derivable by `rules` under the current table.
    void saturate(std::vector<Rule> const &rules);

    [[nodiscard]] std::vector<GroundRule> instantiate(Rule const &rule);
    //! Ground instances of a heuristic schema over all constants, restricted to the table.
    [[nodiscard]] std::vector<int> instantiate_heuristic(Atom const &schema);
    //! One bodiless rule per fact.
    [[nodiscard]] std::vector<GroundRule> fact_rules() const;

    [[nodiscard]] std::size_t atom_count() const { return atom_args_.size(); }
    [[nodiscard]] Atom atom(int id) const;
    [[nodiscard]] std::vector<Atom> atoms() const;
    [[nodiscard]] std::optional<int> find(Atom const &atom) const;
    [[nodiscard]] std::vector<std::string> const &constants() const { return constants_; }

private:
    // Terms are constant ids (>= 0) or encoded variables (-1 - index).
    struct CompiledAtom {
        int predicate = 0;
        std::vector<int> args;
    };
    struct CompiledRule {
        std::optional<CompiledAtom> head;
        std::vector<CompiledAtom> pos;
        std::vector<CompiledAtom> neg;
        std::size_t variables = 0;
    };

    int predicate_id(std::string const &name, std::size_t arity);
    int constant_id(std::string const &name);
    CompiledAtom compile(Atom const &atom, std::vector<std::string> &vars);
    CompiledRule compile(Rule const &rule);
    std::optional<int> lookup(int predicate, std::vector<int> const &args) const;
    int intern(int predicate, std::vector<int> args);
    std::vector<int> bind(CompiledAtom const &atom, std::vector<int> const &binding) const;

    template <class F>
    void join(CompiledRule const &rule, std::size_t i, std::vector<int> &binding, F &&visit) const;

    std::size_t max_atoms_;
    std::vector<std::string> predicates_;
    std::vector<std::size_t> arities_;
    std::map<std::string, int> predicate_ids_;
    std::vector<std::string> constants_;
    std::map<std::string, int> constant_ids_;
    std::vector<int> atom_predicate_;
    std::vector<std::vector<int>> atom_args_;
    std::vector<std::vector<int>> atoms_by_predicate_;
    std::map<std::pair<int, std::vector<int>>, int> atom_ids_;
    std::vector<int> facts_;
};

//! Grounds `program` together with `facts` into an indexed ground program.
//!
//! Throws ValidationError on arity mismatches and ResourceLimit when the
//! number of ground atoms exceeds `max_atoms`.
GroundProgram instantiate(Program const &program, std::vector<Atom> const &facts, std::size_t max_atoms = 1'000'000);

} // namespace argil::asp
