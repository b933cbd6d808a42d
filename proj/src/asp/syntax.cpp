#include <argil/asp/syntax.hpp>
#include <argil/error.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace argil::asp {

namespace {

void collect_variables(Atom const &atom, std::vector<std::string> &out) {
    for (auto const &term : atom.args) {
        if (term.variable && std::find(out.begin(), out.end(), term.name) == out.end()) {
            out.push_back(term.name);
        }
    }
}

void join(std::ostream &out, std::vector<Atom> const &atoms, char const *prefix, bool &first) {
    for (auto const &atom : atoms) {
        out << (first ? "" : ", ") << prefix << atom;
        first = false;
    }
}

} // namespace

Atom Atom::ground(std::string predicate, std::vector<std::string> const &constants) {
    std::vector<Term> args;
    args.reserve(constants.size());
    for (auto const &c : constants) { args.push_back(Term::constant(c)); }
    return Atom(std::move(predicate), std::move(args));
}

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](Term const &t) { return t.variable; });
}

std::string Atom::str() const {
    std::ostringstream out;
    out << *this;
    return out.str();
}

bool Rule::is_ground() const {
    auto ground = [](Atom const &a) { return a.is_ground(); };
    return (!head || head->is_ground()) && std::all_of(pos.begin(), pos.end(), ground) &&
           std::all_of(neg.begin(), neg.end(), ground);
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> vars;
    if (head) { collect_variables(*head, vars); }
    for (auto const &a : pos) { collect_variables(a, vars); }
    for (auto const &a : neg) { collect_variables(a, vars); }
    return vars;
}

std::vector<std::string> Rule::unsafe_variables() const {
    std::vector<std::string> bound;
    for (auto const &a : pos) { collect_variables(a, bound); }
    std::vector<std::string> unsafe;
    for (auto const &v : variables()) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) { unsafe.push_back(v); }
    }
    return unsafe;
}

std::string Rule::str() const {
    std::ostringstream out;
    out << *this;
    return out.str();
}

Program::Program(std::vector<Rule> rules, std::vector<Atom> heuristics) {
    rules_.reserve(rules.size());
    for (auto &r : rules) { add(std::move(r)); }
    for (auto &h : heuristics) { add_heuristic(std::move(h)); }
}

void Program::add(Rule rule) {
    if (auto unsafe = rule.unsafe_variables(); !unsafe.empty()) {
        throw ValidationError("unsafe variable " + unsafe.front() + " in rule: " + rule.str());
    }
    rules_.push_back(std::move(rule));
}

void Program::add_heuristic(Atom atom) { heuristics_.push_back(std::move(atom)); }

void Program::extend(Program const &other) {
    rules_.insert(rules_.end(), other.rules_.begin(), other.rules_.end());
    heuristics_.insert(heuristics_.end(), other.heuristics_.begin(), other.heuristics_.end());
}

std::string Program::str() const {
    std::ostringstream out;
    out << *this;
    return out.str();
}

Program operator+(Program a, Program const &b) {
    a.extend(b);
    return a;
}

std::string heuristic_str(Atom const &atom) { return "#heuristic " + atom.str() + ". [1@1, false]"; }

std::string str(Interpretation const &interpretation) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (auto const &atom : interpretation) {
        out << (first ? "" : ", ") << atom;
        first = false;
    }
    out << "}";
    return out.str();
}

std::ostream &operator<<(std::ostream &out, Term const &term) { return out << term.name; }

std::ostream &operator<<(std::ostream &out, Atom const &atom) {
    out << atom.predicate;
    if (!atom.args.empty()) {
        out << "(";
        for (std::size_t i = 0; i < atom.args.size(); ++i) { out << (i ? "," : "") << atom.args[i]; }
        out << ")";
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, Rule const &rule) {
    if (rule.head) { out << *rule.head; }
    if (!rule.pos.empty() || !rule.neg.empty()) {
        out << (rule.head ? " :- " : ":- ");
        bool first = true;
        join(out, rule.pos, "", first);
        join(out, rule.neg, "not ", first);
    }
    return out << ".";
}

std::ostream &operator<<(std::ostream &out, Program const &program) {
    for (auto const &r : program.rules()) { out << r << "\n"; }
    for (auto const &h : program.heuristics()) { out << heuristic_str(h) << "\n"; }
    return out;
}

} // namespace argil::asp
