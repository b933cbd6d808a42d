#pragma once

#include <argil/asp/ground.hpp>
#include <argil/asp/syntax.hpp>
#include <argil/error.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace argil::asp {

struct EngineOptions {
    //! Cap on the number of ground atoms; exceeding it raises ResourceLimit.
    std::size_t max_atoms = 1'000'000;
    Deadline deadline;
};

//! Enumerates the answer sets of a ground program.
//!
//! The search branches on undecided atoms and prunes with the usual
//! well-founded style propagation: atoms derivable from rules whose negative
//! body is already false become true, atoms outside the upper closure become
//! false, and rules with a false head (including constraints) or a single
//! supporting rule propagate backwards. Every complete assignment is checked
//! against the least model of its reduct before it is reported.
class Solver {
public:
    explicit Solver(std::size_t atom_count = 0) { reset(atom_count); }

    void reset(std::size_t atom_count);
    void add_rule(GroundRule const &rule);
    void add_rules(std::span<GroundRule const> rules);
    //! Restricts the search to answer sets where `atom` has the given truth value.
    void assume(int atom, bool value);
    //! Atoms to decide first, trying false before true.
    void prefer_false(std::span<int const> atoms);
    void set_deadline(Deadline deadline) { deadline_ = deadline; }

    //! Calls `visit` with the sorted true atoms of each answer set until it returns false.
    //! Returns false if the enumeration was stopped by `visit`.
    bool enumerate(std::function<bool(std::vector<int> const &)> const &visit);
    std::optional<std::vector<int>> first();
    std::vector<std::vector<int>> all();

    [[nodiscard]] std::size_t atom_count() const { return atoms_; }
    [[nodiscard]] std::size_t rule_count() const { return heads_.size(); }
    [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

private:
    using Values = std::vector<std::int8_t>;

    void prepare();
    bool propagate(Values &v);
    bool lower(Values &v, bool &changed);
    bool upper(Values &v, bool &changed);
    bool backward(Values &v, bool &changed);
    bool stable(Values const &v);
    bool search(Values &v, std::function<bool(std::vector<int> const &)> const &visit);

    std::span<int const> pos(std::size_t r) const { return {lits_.data() + begin_[r], lits_.data() + mid_[r]}; }
    std::span<int const> neg(std::size_t r) const { return {lits_.data() + mid_[r], lits_.data() + end_[r]}; }

    std::size_t atoms_ = 0;
    std::vector<int> heads_;
    std::vector<std::uint32_t> begin_, mid_, end_;
    std::vector<int> lits_;
    Values assumptions_;
    std::vector<int> preferred_;
    Deadline deadline_;

    bool prepared_ = false;
    std::vector<std::uint32_t> head_index_, head_rules_;
    std::vector<std::uint32_t> pos_index_, pos_rules_;
    std::vector<int> order_;

    std::vector<std::uint32_t> count_;
    std::vector<std::uint8_t> eligible_, derived_;
    std::vector<std::uint32_t> queue_;
    std::uint64_t nodes_ = 0;
};

//! Sorted answer sets of `program` with `facts`.
std::vector<Interpretation> answer_sets(Program const &program, std::vector<Atom> const &facts,
                                        EngineOptions const &options = {});

//! Answer sets whose projection onto the ground heuristic atoms is subset-minimal.
//! Equals `answer_sets` when the program has no heuristic statements.
std::vector<Interpretation> minimal_answer_sets(Program const &program, std::vector<Atom> const &facts,
                                                EngineOptions const &options = {});

//! Some member of `minimal_answer_sets`, found without full enumeration.
std::optional<Interpretation> first_minimal_answer_set(Program const &program, std::vector<Atom> const &facts,
                                                       EngineOptions const &options = {});

//! Id-level variants on an already ground program.
std::vector<std::vector<int>> solve_all(GroundProgram const &program, Deadline const &deadline = {});
std::optional<std::vector<int>> solve_first_minimal(GroundProgram const &program, Deadline const &deadline = {});

//! Keeps the sets whose restriction to `projection` (sorted) is subset-minimal among all restrictions.
std::vector<std::vector<int>> minimal_by_projection(std::vector<std::vector<int>> const &sets,
                                                    std::vector<int> const &projection);

//! A rule of a negation-free program; a missing head stands for bottom.
struct DefiniteRule {
    std::optional<Atom> head;
    std::vector<Atom> body;

    friend auto operator<=>(DefiniteRule const &, DefiniteRule const &) = default;
};

using DefiniteProgram = std::vector<DefiniteRule>;

//! The reduct of a ground program: rules whose negative body meets `interpretation`
//! are dropped, negative literals are removed, constraint heads become bottom.
DefiniteProgram reduct(Program const &ground_program, Interpretation const &interpretation);

struct LeastModel {
    Interpretation atoms;
    bool bottom = false;
};

//! Least model by fixpoint iteration from the empty set.
LeastModel least_model(DefiniteProgram const &program);

//! True iff `interpretation` is the least model of its own reduct and that model avoids bottom.
bool is_answer_set(Program const &ground_program, Interpretation const &interpretation);

std::string str(DefiniteRule const &rule);

} // namespace argil::asp
