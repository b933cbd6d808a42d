#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace argil::asp {

//! A constant or a variable. Variables start with an uppercase letter.
struct Term {
    std::string name;
    bool variable = false;

    static Term constant(std::string name) { return {std::move(name), false}; }
    static Term var(std::string name) { return {std::move(name), true}; }

    friend auto operator<=>(Term const &, Term const &) = default;
};

//! A first-order atom without function symbols.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    Atom() = default;
    Atom(std::string predicate, std::vector<Term> args = {})
    : predicate(std::move(predicate))
    , args(std::move(args)) { }

    //! Builds a ground atom from constant names.
    static Atom ground(std::string predicate, std::vector<std::string> const &constants);

    [[nodiscard]] std::size_t arity() const { return args.size(); }
    [[nodiscard]] bool is_ground() const;
    [[nodiscard]] std::string str() const;

    friend auto operator<=>(Atom const &, Atom const &) = default;
};

//! A normal rule `head :- pos, not neg.`; a missing head makes it a constraint.
struct Rule {
    std::optional<Atom> head;
    std::vector<Atom> pos;
    std::vector<Atom> neg;

    [[nodiscard]] bool is_constraint() const { return !head.has_value(); }
    [[nodiscard]] bool is_fact() const { return head && pos.empty() && neg.empty(); }
    [[nodiscard]] bool is_ground() const;
    //! Number of literals, counting the head.
    [[nodiscard]] std::size_t length() const { return (head ? 1 : 0) + pos.size() + neg.size(); }
    //! Variables of the head or negative body that do not occur in the positive body.
    [[nodiscard]] std::vector<std::string> unsafe_variables() const;
    //! Variables in order of first occurrence (head, positive body, negative body).
    [[nodiscard]] std::vector<std::string> variables() const;
    [[nodiscard]] std::string str() const;

    friend auto operator<=>(Rule const &, Rule const &) = default;
};

//! A set of ground atoms.
using Interpretation = std::set<Atom>;

//! Normal rules plus heuristic statements `#heuristic h. [1@1, false]`.
//!
//! Every rule is checked for safety on construction.
class Program {
public:
    Program() = default;
    explicit Program(std::vector<Rule> rules, std::vector<Atom> heuristics = {});

    [[nodiscard]] std::vector<Rule> const &rules() const { return rules_; }
    [[nodiscard]] std::vector<Atom> const &heuristics() const { return heuristics_; }
    [[nodiscard]] bool empty() const { return rules_.empty() && heuristics_.empty(); }

    void add(Rule rule);
    void add_heuristic(Atom atom);
    //! Appends rules and heuristics of another program.
    void extend(Program const &other);

    [[nodiscard]] std::string str() const;

    friend bool operator==(Program const &, Program const &) = default;

private:
    std::vector<Rule> rules_;
    std::vector<Atom> heuristics_;
};

//! Union of two programs, rules of `a` first.
Program operator+(Program a, Program const &b);

std::string heuristic_str(Atom const &atom);
std::string str(Interpretation const &interpretation);

std::ostream &operator<<(std::ostream &out, Term const &term);
std::ostream &operator<<(std::ostream &out, Atom const &atom);
std::ostream &operator<<(std::ostream &out, Rule const &rule);
std::ostream &operator<<(std::ostream &out, Program const &program);

} // namespace argil::asp
