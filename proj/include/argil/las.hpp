#pragma once

#include <argil/asp/solver.hpp>
#include <argil/asp/syntax.hpp>
#include <argil/error.hpp>
#include <argil/framework.hpp>
#include <argil/semantics.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace argil::las {

enum class Polarity { positive, negative };

//! A partial interpretation over in/out atoms together with a context of facts.
struct CdpiExample {
    Polarity polarity = Polarity::positive;
    asp::Interpretation inclusions;
    asp::Interpretation exclusions;
    std::vector<asp::Atom> context;

    //! Throws ValidationError if inclusions and exclusions overlap, if they
    //! mention an argument without an `arg` fact, or if the context has
    //! facts other than arg/att/support/val/valpref.
    void validate() const;
    //! `#pos({...}, {...}, {...}).` as in the example file format.
    [[nodiscard]] std::string str() const;

    friend bool operator==(CdpiExample const &, CdpiExample const &) = default;
};

struct ExampleSet {
    std::vector<CdpiExample> positives;
    std::vector<CdpiExample> negatives;

    [[nodiscard]] std::size_t size() const { return positives.size() + negatives.size(); }
    [[nodiscard]] std::string str() const;
};

//! Parses `#pos(...)` and `#neg(...)` statements; `%` starts a comment.
ExampleSet parse_examples(std::string_view text);

//! The stored training set for `semantics` over abstract frameworks.
//!
//! Throws Error for conflict_free.
ExampleSet fixture_examples(Semantics semantics);
//! Source text of the stored training set.
std::string_view fixture_source(Semantics semantics);

struct Mode {
    std::string predicate;
    std::size_t arity = 1;
    bool positive_only = false;
};

//! Head and body mode declarations; all arguments are variables of one type.
struct ModeBias {
    std::vector<Mode> head;
    std::vector<Mode> body;

    //! in/out heads; in, out, arg (positive only), att, defeated, not_defended, supported bodies.
    static ModeBias arguments();
};

//! All safe rules allowed by `bias` with at most `max_body` body literals and
//! `max_vars` distinct variables, one per class of variable renaming, in
//! canonical order: shorter rules first, then by body, then by head.
//! Variables are named X, Y, Z, ... by first occurrence.
std::vector<asp::Rule> enumerate_space(ModeBias const &bias, std::size_t max_body, std::size_t max_vars);

struct Hypothesis {
    std::vector<asp::Rule> rules;
    std::vector<asp::Atom> heuristics;
    std::size_t cost = 0;

    [[nodiscard]] asp::Program program() const;
    [[nodiscard]] std::string str() const;
};

//! Literals counted over all rules, head included, plus one per heuristic.
std::size_t cost(std::vector<asp::Rule> const &rules, std::vector<asp::Atom> const &heuristics = {});

struct LearningTask {
    asp::Program background;
    ModeBias bias = ModeBias::arguments();
    std::vector<CdpiExample> positives;
    std::vector<CdpiExample> negatives;
    bool learn_heuristics = false;
};

struct LearnOptions {
    std::size_t max_body = 3;
    std::size_t max_vars = 2;
    //! Iterative deepening stops after this cost.
    std::size_t max_cost = 12;
    Deadline deadline;
};

struct LearnStats {
    std::size_t space = 0;
    //! Rules left after removing redundant and inconsistent ones.
    std::size_t candidates = 0;
    std::uint64_t checked = 0;
};

//! True iff some answer set in AS*(program + context) extends the example.
bool accepts(asp::Program const &program, CdpiExample const &example, asp::EngineOptions const &options = {});

//! An optimal hypothesis: minimal cost, then least rule set in canonical
//! order, then least heuristic set.
//!
//! Throws Unsatisfiable if no hypothesis within the bounds is a solution and
//! Timeout if the deadline expires.
Hypothesis learn(LearningTask const &task, LearnOptions const &options = {}, LearnStats *stats = nullptr);

//! The example labelling `extension` in and every other argument out.
//!
//! Positive examples exclude the opposite labels; negative ones have no exclusions.
CdpiExample labelling_example(Framework const &framework, Extension const &extension, Polarity polarity);

//! Samples labelled extensions (positives) and non-extensions (negatives).
//!
//! Deterministic for a given seed. Throws Error if fewer distinct
//! labellings exist than requested.
ExampleSet generate_examples(Semantics semantics, std::vector<Framework> const &frameworks, std::size_t n_pos,
                             std::size_t n_neg, std::uint64_t seed = 0);

} // namespace argil::las
