#include <argil/asp/ground.hpp>
#include <argil/asp/lexer.hpp>
#include <argil/asp/parser.hpp>
#include <argil/las.hpp>
#include <argil/oracle.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace argil::las {

using asp::Atom;
using asp::GroundRule;
using asp::Rule;
using asp::Term;

// {{{1 examples

namespace {

std::set<std::string> const context_predicates{"arg", "att", "support", "val", "valpref"};

std::string join_atoms(asp::Interpretation const &atoms) {
    std::string out;
    for (auto const &a : atoms) {
        if (!out.empty()) { out += ", "; }
        out += a.str();
    }
    return out;
}

asp::Interpretation parse_atom_set(asp::Lexer &lexer) {
    asp::Interpretation out;
    lexer.expect(asp::TokenKind::LBrace);
    if (lexer.accept(asp::TokenKind::RBrace)) { return out; }
    do {
        auto line = lexer.peek().line;
        auto column = lexer.peek().column;
        auto atom = asp::parse_atom(lexer);
        if (!atom.is_ground()) { throw ParseError("atom " + atom.str() + " contains a variable", line, column); }
        out.insert(std::move(atom));
    } while (lexer.accept(asp::TokenKind::Comma));
    lexer.expect(asp::TokenKind::RBrace);
    return out;
}

std::vector<Atom> parse_context(asp::Lexer &lexer) {
    std::vector<Atom> out;
    lexer.expect(asp::TokenKind::LBrace);
    while (!lexer.accept(asp::TokenKind::RBrace)) {
        auto line = lexer.peek().line;
        auto column = lexer.peek().column;
        auto atom = asp::parse_atom(lexer);
        if (!atom.is_ground()) { throw ParseError("fact " + atom.str() + " contains a variable", line, column); }
        lexer.expect(asp::TokenKind::Dot);
        if (std::find(out.begin(), out.end(), atom) == out.end()) { out.push_back(std::move(atom)); }
    }
    return out;
}

} // namespace

void CdpiExample::validate() const {
    for (auto const &a : inclusions) {
        if (exclusions.count(a) != 0) { throw ValidationError("atom " + a.str() + " is both included and excluded"); }
    }
    std::set<std::string> args;
    for (auto const &f : context) {
        if (context_predicates.count(f.predicate) == 0) {
            throw ValidationError("context fact " + f.str() + " is not over arg, att, support, val or valpref");
        }
        if (f.predicate == "arg" && f.arity() == 1) { args.insert(f.args[0].name); }
    }
    for (auto const *set : {&inclusions, &exclusions}) {
        for (auto const &a : *set) {
            for (auto const &t : a.args) {
                if (args.count(t.name) == 0) {
                    throw ValidationError("atom " + a.str() + " mentions " + t.name + ", which is not an argument");
                }
            }
        }
    }
}

std::string CdpiExample::str() const {
    std::string out = polarity == Polarity::positive ? "#pos({" : "#neg({";
    out += join_atoms(inclusions) + "}, {" + join_atoms(exclusions) + "}, {";
    bool first = true;
    for (auto const &f : context) {
        if (!first) { out += ' '; }
        out += f.str() + ".";
        first = false;
    }
    return out + "}).";
}

std::string ExampleSet::str() const {
    std::string out;
    for (auto const &e : positives) { out += e.str() + "\n"; }
    for (auto const &e : negatives) { out += e.str() + "\n"; }
    return out;
}

ExampleSet parse_examples(std::string_view text) {
    ExampleSet out;
    asp::Lexer lexer(text);
    while (lexer.peek().kind != asp::TokenKind::End) {
        auto tok = lexer.expect(asp::TokenKind::Directive);
        CdpiExample e;
        if (tok.text == "#pos") { e.polarity = Polarity::positive; }
        else if (tok.text == "#neg") { e.polarity = Polarity::negative; }
        else { throw ParseError("expected #pos or #neg, found '" + tok.text + "'", tok.line, tok.column); }
        lexer.expect(asp::TokenKind::LParen);
        e.inclusions = parse_atom_set(lexer);
        lexer.expect(asp::TokenKind::Comma);
        e.exclusions = parse_atom_set(lexer);
        lexer.expect(asp::TokenKind::Comma);
        e.context = parse_context(lexer);
        lexer.expect(asp::TokenKind::RParen);
        lexer.expect(asp::TokenKind::Dot);
        try {
            e.validate();
        }
        catch (ValidationError const &err) {
            throw ParseError(err.what(), tok.line, tok.column);
        }
        (e.polarity == Polarity::positive ? out.positives : out.negatives).push_back(std::move(e));
    }
    return out;
}

namespace detail {
extern std::map<std::string_view, std::string_view> const fixtures;
} // namespace detail

std::string_view fixture_source(Semantics semantics) {
    auto it = detail::fixtures.find(to_string(semantics));
    if (it == detail::fixtures.end()) {
        throw Error("no stored examples for " + std::string(to_string(semantics)) + " semantics");
    }
    return it->second;
}

ExampleSet fixture_examples(Semantics semantics) { return parse_examples(fixture_source(semantics)); }

// {{{1 hypothesis space

ModeBias ModeBias::arguments() {
    ModeBias bias;
    bias.head = {{"in", 1, false}, {"out", 1, false}};
    bias.body = {{"in", 1, false},       {"out", 1, false},          {"arg", 1, true},       {"att", 2, false},
                 {"defeated", 1, false}, {"not_defended", 1, false}, {"supported", 1, false}};
    return bias;
}

namespace {

std::string variable_name(int v) {
    static char const *const names[] = {"X", "Y", "Z", "W"};
    if (v < 4) { return names[v]; }
    return "V" + std::to_string(v);
}

struct Literal {
    int mode = 0;
    std::vector<int> vars;

    friend auto operator<=>(Literal const &, Literal const &) = default;
};

// Calls visit with every tuple of `arity` variables below `max_vars`.
template <class F>
void each_tuple(std::size_t arity, std::size_t max_vars, F &&visit) {
    std::vector<int> tuple(arity, 0);
    while (true) {
        visit(tuple);
        std::size_t i = 0;
        while (i < arity && static_cast<std::size_t>(++tuple[i]) == max_vars) { tuple[i++] = 0; }
        if (i == arity) { return; }
    }
}

// Encodes a rule as head mode, head vars, positive and negative literals; vectors compare lexicographically.
std::vector<int> encode(Literal const &head, std::vector<Literal> pos, std::vector<Literal> neg) {
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    std::vector<int> key{head.mode};
    key.insert(key.end(), head.vars.begin(), head.vars.end());
    key.push_back(static_cast<int>(pos.size()));
    for (auto const &l : pos) {
        key.push_back(l.mode);
        key.insert(key.end(), l.vars.begin(), l.vars.end());
    }
    key.push_back(static_cast<int>(neg.size()));
    for (auto const &l : neg) {
        key.push_back(l.mode);
        key.insert(key.end(), l.vars.begin(), l.vars.end());
    }
    return key;
}

Literal rename(Literal l, std::vector<int> const &perm) {
    for (auto &v : l.vars) { v = perm[static_cast<std::size_t>(v)]; }
    return l;
}

Atom make_atom(Mode const &mode, std::vector<int> const &vars) {
    Atom a(mode.predicate);
    for (int v : vars) { a.args.push_back(Term::var(variable_name(v))); }
    return a;
}

} // namespace

std::vector<Rule> enumerate_space(ModeBias const &bias, std::size_t max_body, std::size_t max_vars) {
    if (max_vars == 0) { return {}; }
    struct BodyLiteral {
        Literal atom;
        bool negated = false;
    };
    std::vector<BodyLiteral> literals;
    for (std::size_t m = 0; m < bias.body.size(); ++m) {
        each_tuple(bias.body[m].arity, max_vars, [&](std::vector<int> const &t) {
            literals.push_back({{static_cast<int>(m), t}, false});
            if (!bias.body[m].positive_only) { literals.push_back({{static_cast<int>(m), t}, true}); }
        });
    }
    std::vector<int> identity(max_vars);
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<std::vector<int>> perms;
    do { perms.push_back(identity); } while (std::next_permutation(identity.begin(), identity.end()));

    std::set<std::vector<int>> keys;
    std::vector<std::size_t> chosen;
    for (std::size_t h = 0; h < bias.head.size(); ++h) {
        each_tuple(bias.head[h].arity, max_vars, [&](std::vector<int> const &head_vars) {
            Literal head{static_cast<int>(h), head_vars};
            auto consider = [&]() {
                std::vector<Literal> pos;
                std::vector<Literal> neg;
                std::vector<bool> bound(max_vars, false);
                for (auto i : chosen) {
                    auto const &l = literals[i];
                    (l.negated ? neg : pos).push_back(l.atom);
                    if (!l.negated) {
                        for (int v : l.atom.vars) { bound[static_cast<std::size_t>(v)] = true; }
                    }
                }
                auto safe = [&](Literal const &l) {
                    return std::all_of(l.vars.begin(), l.vars.end(), [&](int v) { return bound[static_cast<std::size_t>(v)]; });
                };
                if (!safe(head) || !std::all_of(neg.begin(), neg.end(), safe)) { return; }
                std::vector<int> best;
                for (auto const &perm : perms) {
                    std::vector<Literal> p2;
                    std::vector<Literal> n2;
                    for (auto const &l : pos) { p2.push_back(rename(l, perm)); }
                    for (auto const &l : neg) { n2.push_back(rename(l, perm)); }
                    auto key = encode(rename(head, perm), std::move(p2), std::move(n2));
                    if (best.empty() || key < best) { best = std::move(key); }
                }
                keys.insert(std::move(best));
            };
            auto rec = [&](auto &self, std::size_t start) -> void {
                consider();
                if (chosen.size() == max_body) { return; }
                for (std::size_t i = start; i < literals.size(); ++i) {
                    chosen.push_back(i);
                    self(self, i + 1);
                    chosen.pop_back();
                }
            };
            rec(rec, 0);
        });
    }

    // Shortest rules first, then by body, then by head.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> ordered;
    for (auto const &key : keys) {
        auto split = static_cast<std::ptrdiff_t>(1 + bias.head[static_cast<std::size_t>(key[0])].arity);
        std::size_t npos = static_cast<std::size_t>(key[static_cast<std::size_t>(split)]);
        std::size_t length = 1 + npos;
        std::size_t i = static_cast<std::size_t>(split) + 1;
        for (std::size_t k = 0; k < npos; ++k) { i += 1 + bias.body[static_cast<std::size_t>(key[i])].arity; }
        length += static_cast<std::size_t>(key[i]);
        std::vector<int> order{static_cast<int>(length)};
        order.insert(order.end(), key.begin() + split, key.end());
        order.insert(order.end(), key.begin(), key.begin() + split);
        ordered.emplace_back(std::move(order), key);
    }
    std::sort(ordered.begin(), ordered.end());

    std::vector<Rule> out;
    out.reserve(keys.size());
    for (auto const &[order, key] : ordered) {
        std::size_t i = 0;
        auto read = [&](std::vector<Mode> const &modes) {
            auto const &mode = modes[static_cast<std::size_t>(key[i++])];
            std::vector<int> vars(key.begin() + static_cast<std::ptrdiff_t>(i),
                                  key.begin() + static_cast<std::ptrdiff_t>(i + mode.arity));
            i += mode.arity;
            return make_atom(mode, vars);
        };
        Rule r;
        r.head = read(bias.head);
        auto npos = static_cast<std::size_t>(key[i++]);
        for (std::size_t k = 0; k < npos; ++k) { r.pos.push_back(read(bias.body)); }
        auto nneg = static_cast<std::size_t>(key[i++]);
        for (std::size_t k = 0; k < nneg; ++k) { r.neg.push_back(read(bias.body)); }
        out.push_back(std::move(r));
    }
    return out;
}

// {{{1 hypotheses

std::size_t cost(std::vector<Rule> const &rules, std::vector<Atom> const &heuristics) {
    std::size_t total = heuristics.size();
    for (auto const &r : rules) { total += r.length(); }
    return total;
}

asp::Program Hypothesis::program() const { return asp::Program(rules, heuristics); }

std::string Hypothesis::str() const { return program().str(); }

bool accepts(asp::Program const &program, CdpiExample const &example, asp::EngineOptions const &options) {
    for (auto const &as : asp::minimal_answer_sets(program, example.context, options)) {
        bool extends = std::includes(as.begin(), as.end(), example.inclusions.begin(), example.inclusions.end()) &&
                       std::none_of(example.exclusions.begin(), example.exclusions.end(),
                                    [&](Atom const &a) { return as.count(a) != 0; });
        if (extends) { return true; }
    }
    return false;
}

// {{{1 learner

namespace {

// A definite rule that can fire inside the candidate answer set of a fully labelled example.
struct Firing {
    int head = 0;
    std::vector<int> pos;

    friend auto operator<=>(Firing const &, Firing const &) = default;
};

struct Example {
    bool positive = true;
    std::size_t atoms = 0;
    std::vector<GroundRule> base;
    std::vector<int> inclusions;
    std::vector<int> exclusions;
    // Some inclusion can never be derived.
    bool impossible = false;
    // Every possible head atom is labelled, so at most one answer set can extend the example.
    bool total = false;
    std::vector<char> model;
    std::vector<Firing> base_firing;
    std::vector<int> targets;
    // Ground atoms of each heuristic candidate, and of the background heuristics.
    std::vector<std::vector<int>> heuristic_ids;
    std::vector<int> background_heuristics;
};

struct Candidate {
    Rule rule;
    std::size_t cost = 0;
    std::size_t head_mode = 0;
    std::vector<std::vector<GroundRule>> instances;
    std::vector<std::vector<Firing>> firing;
};

// Simplifies an instance against the facts; returns false if it can never fire.
bool simplify(GroundRule &g, std::vector<char> const &is_fact) {
    if (std::find(g.pos.begin(), g.pos.end(), g.head) != g.pos.end() && g.head != GroundRule::bottom) { return false; }
    for (int n : g.neg) {
        if (is_fact[static_cast<std::size_t>(n)] != 0) { return false; }
        if (std::find(g.pos.begin(), g.pos.end(), n) != g.pos.end()) { return false; }
    }
    g.pos.erase(std::remove_if(g.pos.begin(), g.pos.end(), [&](int p) { return is_fact[static_cast<std::size_t>(p)] != 0; }),
                g.pos.end());
    std::sort(g.pos.begin(), g.pos.end());
    g.pos.erase(std::unique(g.pos.begin(), g.pos.end()), g.pos.end());
    std::sort(g.neg.begin(), g.neg.end());
    g.neg.erase(std::unique(g.neg.begin(), g.neg.end()), g.neg.end());
    return true;
}

bool in_model(Example const &e, int atom) { return e.model[static_cast<std::size_t>(atom)] != 0; }

class Learner {
public:
    Learner(LearningTask const &task, LearnOptions const &options, LearnStats &stats)
    : task_(task)
    , options_(options)
    , stats_(stats) { }

    Hypothesis run();

private:
    void prepare_examples(std::vector<Rule> const &space);
    void prepare_candidates(std::vector<Rule> const &space);
    bool covered(Example const &e, std::vector<std::size_t> const &chosen, std::size_t extra_from = 0,
                 std::size_t budget = 0) const;
    bool check(std::vector<std::size_t> const &chosen, std::vector<std::size_t> const &heuristics);
    bool check_example(std::size_t index, std::vector<std::size_t> const &chosen,
                       std::vector<std::size_t> const &heuristics) const;
    bool search(std::size_t cost);
    bool dfs(std::size_t start, std::size_t used, std::size_t target, std::vector<std::size_t> &chosen);

    LearningTask const &task_;
    LearnOptions const &options_;
    LearnStats &stats_;
    std::vector<Example> examples_;
    std::vector<std::size_t> order_;
    std::vector<Candidate> candidates_;
    std::vector<Atom> heuristic_atoms_;
    std::vector<std::vector<std::size_t>> heuristic_sets_;
    std::vector<std::size_t> required_heads_;
    std::vector<std::size_t> last_of_head_;
    bool uses_heuristics_ = false;
    std::uint64_t nodes_ = 0;
    std::optional<Hypothesis> found_;
};

void Learner::prepare_examples(std::vector<Rule> const &space) {
    std::set<std::string> head_predicates;
    for (auto const &m : task_.bias.head) { head_predicates.insert(m.predicate); }
    bool background_defines_heads = std::any_of(task_.background.rules().begin(), task_.background.rules().end(),
                                                [&](Rule const &r) { return r.head && head_predicates.count(r.head->predicate) != 0; });

    std::vector<Rule> all_rules = task_.background.rules();
    all_rules.insert(all_rules.end(), space.begin(), space.end());
    asp::Program declared(space);

    auto add = [&](CdpiExample const &source) {
        source.validate();
        Example e;
        e.positive = source.polarity == Polarity::positive;
        asp::Grounder g(source.context);
        g.declare(task_.background);
        g.declare(declared);
        for (auto const &h : heuristic_atoms_) { g.declare(asp::Program({}, {h})); }
        g.saturate(all_rules);
        e.base = g.fact_rules();
        for (auto const &r : task_.background.rules()) {
            auto inst = g.instantiate(r);
            e.base.insert(e.base.end(), inst.begin(), inst.end());
        }
        for (auto const &a : source.inclusions) {
            auto id = g.find(a);
            if (id) { e.inclusions.push_back(*id); }
            else { e.impossible = true; }
        }
        for (auto const &a : source.exclusions) {
            if (auto id = g.find(a)) { e.exclusions.push_back(*id); }
        }
        for (auto const &h : heuristic_atoms_) { e.heuristic_ids.push_back(g.instantiate_heuristic(h)); }
        for (auto const &h : task_.background.heuristics()) {
            auto ids = g.instantiate_heuristic(h);
            e.background_heuristics.insert(e.background_heuristics.end(), ids.begin(), ids.end());
        }
        std::sort(e.background_heuristics.begin(), e.background_heuristics.end());
        e.background_heuristics.erase(std::unique(e.background_heuristics.begin(), e.background_heuristics.end()),
                                      e.background_heuristics.end());
        e.atoms = g.atom_count();

        // Fully labelled examples: the only candidate answer set is the one
        // of the background plus the labelled head atoms.
        bool labels_only = std::all_of(source.inclusions.begin(), source.inclusions.end(),
                                       [&](Atom const &a) { return head_predicates.count(a.predicate) != 0; }) &&
                           std::all_of(source.exclusions.begin(), source.exclusions.end(),
                                       [&](Atom const &a) { return head_predicates.count(a.predicate) != 0; }) &&
                           std::none_of(source.context.begin(), source.context.end(),
                                        [&](Atom const &a) { return head_predicates.count(a.predicate) != 0; });
        std::vector<int> head_atoms;
        bool labelled = labels_only && !background_defines_heads && !e.impossible;
        for (std::size_t id = 0; id < e.atoms && labelled; ++id) {
            auto atom = g.atom(static_cast<int>(id));
            if (head_predicates.count(atom.predicate) == 0) { continue; }
            head_atoms.push_back(static_cast<int>(id));
            labelled = source.inclusions.count(atom) != 0 || source.exclusions.count(atom) != 0;
        }
        if (labelled) {
            asp::Solver solver(e.atoms);
            solver.add_rules(e.base);
            for (int id : e.inclusions) { solver.add_rule(GroundRule{id, {}, {}}); }
            auto sets = solver.all();
            if (sets.size() == 1) {
                e.model.assign(e.atoms, 0);
                for (int id : sets[0]) { e.model[static_cast<std::size_t>(id)] = 1; }
                bool matches = std::all_of(head_atoms.begin(), head_atoms.end(), [&](int id) {
                    bool included = std::find(e.inclusions.begin(), e.inclusions.end(), id) != e.inclusions.end();
                    return in_model(e, id) == included;
                });
                if (matches) {
                    e.total = true;
                    e.targets = e.inclusions;
                    for (auto const &r : e.base) {
                        bool blocked = std::any_of(r.neg.begin(), r.neg.end(), [&](int n) { return in_model(e, n); });
                        bool possible = std::all_of(r.pos.begin(), r.pos.end(), [&](int p) { return in_model(e, p); });
                        if (!blocked && possible && r.head != GroundRule::bottom) { e.base_firing.push_back({r.head, r.pos}); }
                    }
                }
            }
        }
        examples_.push_back(std::move(e));
    };
    for (auto const &p : task_.positives) { add(p); }
    for (auto const &n : task_.negatives) { add(n); }
}

void Learner::prepare_candidates(std::vector<Rule> const &space) {
    std::vector<std::vector<char>> facts;
    for (auto const &e : examples_) {
        std::vector<char> is_fact(e.atoms, 0);
        for (auto const &r : e.base) {
            if (r.pos.empty() && r.neg.empty() && r.head != GroundRule::bottom) { is_fact[static_cast<std::size_t>(r.head)] = 1; }
        }
        facts.push_back(std::move(is_fact));
    }
    std::map<std::string, std::size_t> head_modes;
    for (std::size_t i = 0; i < task_.bias.head.size(); ++i) { head_modes.emplace(task_.bias.head[i].predicate, i); }

    using Signature = std::vector<std::vector<GroundRule>>;
    std::map<Signature, std::size_t> seen;
    // One grounder per example again, since instantiation needs the atom table.
    std::vector<asp::Grounder> grounders;
    std::vector<Rule> all_rules = task_.background.rules();
    all_rules.insert(all_rules.end(), space.begin(), space.end());
    asp::Program declared(space);
    auto sources = task_.positives;
    sources.insert(sources.end(), task_.negatives.begin(), task_.negatives.end());
    for (auto const &source : sources) {
        asp::Grounder g(source.context);
        g.declare(task_.background);
        g.declare(declared);
        for (auto const &h : heuristic_atoms_) { g.declare(asp::Program({}, {h})); }
        g.saturate(all_rules);
        grounders.push_back(std::move(g));
    }

    for (auto const &rule : space) {
        options_.deadline.check();
        Candidate c;
        c.rule = rule;
        c.cost = rule.length();
        c.head_mode = head_modes.at(rule.head->predicate);
        bool consistent = true;
        bool useful = false;
        Signature signature;
        for (std::size_t k = 0; k < examples_.size() && consistent; ++k) {
            auto const &e = examples_[k];
            auto inst = grounders[k].instantiate(rule);
            if (grounders[k].atom_count() != e.atoms) { throw std::logic_error("atom table grew after saturation"); }
            std::vector<GroundRule> kept;
            for (auto &g : inst) {
                if (simplify(g, facts[k])) { kept.push_back(std::move(g)); }
            }
            std::sort(kept.begin(), kept.end());
            kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
            std::vector<Firing> fires;
            if (e.total) {
                for (auto const &g : kept) {
                    bool blocked = std::any_of(g.neg.begin(), g.neg.end(), [&](int n) { return in_model(e, n); });
                    bool possible = std::all_of(g.pos.begin(), g.pos.end(), [&](int p) { return in_model(e, p); });
                    if (blocked || !possible) { continue; }
                    if (!in_model(e, g.head)) {
                        consistent = false;
                        break;
                    }
                    fires.push_back({g.head, g.pos});
                }
                // Positive labelled examples need the candidate answer set to survive.
                if (!consistent && !e.positive) { consistent = true; }
            }
            useful = useful || !kept.empty();
            if (e.total && e.positive && !uses_heuristics_) {
                std::vector<GroundRule> sig;
                for (auto const &f : fires) { sig.push_back(GroundRule{f.head, f.pos, {}}); }
                signature.push_back(std::move(sig));
            }
            else {
                signature.push_back(kept);
            }
            c.instances.push_back(std::move(kept));
            c.firing.push_back(std::move(fires));
        }
        if (!consistent || !useful) { continue; }
        auto [it, inserted] = seen.emplace(std::move(signature), candidates_.size());
        if (inserted) { candidates_.push_back(std::move(c)); }
        else if (c.cost < candidates_[it->second].cost) { candidates_[it->second] = std::move(c); }
    }
}

bool Learner::covered(Example const &e, std::vector<std::size_t> const &chosen, std::size_t extra_from,
                      std::size_t budget) const {
    std::vector<char> derived(e.atoms, 0);
    for (auto const &r : e.base_firing) {
        if (r.pos.empty()) { derived[static_cast<std::size_t>(r.head)] = 1; }
    }
    std::vector<Firing const *> rules;
    for (auto const &r : e.base_firing) { rules.push_back(&r); }
    auto k = static_cast<std::size_t>(&e - examples_.data());
    for (auto i : chosen) {
        for (auto const &f : candidates_[i].firing[k]) { rules.push_back(&f); }
    }
    for (std::size_t i = extra_from; budget > 0 && i < candidates_.size(); ++i) {
        if (candidates_[i].cost > budget) { continue; }
        for (auto const &f : candidates_[i].firing[k]) { rules.push_back(&f); }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const *r : rules) {
            auto &h = derived[static_cast<std::size_t>(r->head)];
            if (h != 0) { continue; }
            if (std::all_of(r->pos.begin(), r->pos.end(), [&](int p) { return derived[static_cast<std::size_t>(p)] != 0; })) {
                h = 1;
                changed = true;
            }
        }
    }
    return std::all_of(e.targets.begin(), e.targets.end(), [&](int t) { return derived[static_cast<std::size_t>(t)] != 0; });
}

bool Learner::check_example(std::size_t k, std::vector<std::size_t> const &chosen,
                            std::vector<std::size_t> const &heuristics) const {
    auto const &e = examples_[k];
    if (e.impossible) { return false; }
    std::vector<int> projection = e.background_heuristics;
    for (auto h : heuristics) { projection.insert(projection.end(), e.heuristic_ids[h].begin(), e.heuristic_ids[h].end()); }
    std::sort(projection.begin(), projection.end());
    projection.erase(std::unique(projection.begin(), projection.end()), projection.end());
    bool minimize = uses_heuristics_ && (!heuristics.empty() || !e.background_heuristics.empty());

    if (e.total && e.positive) {
        if (!covered(e, chosen)) { return false; }
        if (!minimize) { return true; }
    }
    asp::Solver solver(e.atoms);
    solver.set_deadline(options_.deadline);
    solver.add_rules(e.base);
    for (auto i : chosen) { solver.add_rules(candidates_[i].instances[k]); }
    if (e.total && e.positive) {
        // The candidate answer set is minimal iff nothing has a strictly smaller projection.
        GroundRule below{GroundRule::bottom, {}, {}};
        for (int id : projection) {
            if (in_model(e, id)) { below.pos.push_back(id); }
            else { solver.assume(id, false); }
        }
        solver.add_rule(below);
        return !solver.first().has_value();
    }
    if (!minimize) {
        for (int id : e.inclusions) { solver.assume(id, true); }
        for (int id : e.exclusions) { solver.assume(id, false); }
        return solver.first().has_value();
    }
    auto sets = asp::minimal_by_projection(solver.all(), projection);
    return std::any_of(sets.begin(), sets.end(), [&](std::vector<int> const &s) {
        auto has = [&](int id) { return std::binary_search(s.begin(), s.end(), id); };
        return std::all_of(e.inclusions.begin(), e.inclusions.end(), has) &&
               std::none_of(e.exclusions.begin(), e.exclusions.end(), has);
    });
}

bool Learner::check(std::vector<std::size_t> const &chosen, std::vector<std::size_t> const &heuristics) {
    ++stats_.checked;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        auto k = order_[pos];
        bool accepted = check_example(k, chosen, heuristics);
        if (accepted != examples_[k].positive) {
            // Move the failing example forward so that it is tried early next time.
            std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(pos),
                        order_.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
            return false;
        }
    }
    return true;
}

bool Learner::dfs(std::size_t start, std::size_t used, std::size_t target, std::vector<std::size_t> &chosen) {
    if ((++nodes_ & 255U) == 0) { options_.deadline.check(); }
    bool heads_ok = true;
    for (auto h : required_heads_) {
        bool has = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t i) { return candidates_[i].head_mode == h; });
        if (!has) {
            heads_ok = false;
            if (start > last_of_head_[h] || last_of_head_[h] == static_cast<std::size_t>(-1)) { return false; }
        }
    }
    if (heads_ok) {
        for (auto const &hs : heuristic_sets_) {
            if (used + hs.size() == target && check(chosen, hs)) {
                Hypothesis h;
                for (auto i : chosen) { h.rules.push_back(candidates_[i].rule); }
                for (auto i : hs) { h.heuristics.push_back(heuristic_atoms_[i]); }
                h.cost = target;
                found_ = std::move(h);
                return true;
            }
        }
    }
    if (used >= target) { return false; }
    // Coverage is monotone, so a subtree whose best case misses a label can be skipped.
    if (chosen.size() <= 1) {
        for (auto const &e : examples_) {
            if (e.total && e.positive && !covered(e, chosen, start, target - used)) { return false; }
        }
    }
    for (std::size_t i = start; i < candidates_.size(); ++i) {
        if (used + candidates_[i].cost > target) { continue; }
        chosen.push_back(i);
        bool done = dfs(i + 1, used + candidates_[i].cost, target, chosen);
        chosen.pop_back();
        if (done) { return true; }
    }
    return false;
}

bool Learner::search(std::size_t target) {
    std::vector<std::size_t> chosen;
    return dfs(0, 0, target, chosen);
}

Hypothesis Learner::run() {
    uses_heuristics_ = task_.learn_heuristics || !task_.background.heuristics().empty();
    heuristic_sets_.push_back({});
    if (task_.learn_heuristics) {
        for (auto const &m : task_.bias.head) {
            Atom a(m.predicate);
            for (std::size_t i = 0; i < m.arity; ++i) { a.args.push_back(Term::var(variable_name(static_cast<int>(i)))); }
            heuristic_atoms_.push_back(std::move(a));
        }
        // Subsets by size, then in mode order.
        auto n = heuristic_atoms_.size();
        for (std::size_t size = 1; size <= n; ++size) {
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
            do {
                std::vector<std::size_t> set;
                for (std::size_t i = 0; i < n; ++i) {
                    if (pick[i]) { set.push_back(i); }
                }
                heuristic_sets_.push_back(set);
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
    }

    auto space = enumerate_space(task_.bias, options_.max_body, options_.max_vars);
    stats_.space = space.size();
    prepare_examples(space);
    prepare_candidates(space);
    stats_.candidates = candidates_.size();
    order_.resize(examples_.size());
    std::iota(order_.begin(), order_.end(), 0);

    // A labelled positive needs a rule for every head predicate it labels true.
    std::set<std::size_t> required;
    for (std::size_t k = 0; k < examples_.size(); ++k) {
        if (!examples_[k].positive) { continue; }
        for (auto const &a : (k < task_.positives.size() ? task_.positives[k].inclusions : asp::Interpretation{})) {
            for (std::size_t h = 0; h < task_.bias.head.size(); ++h) {
                if (task_.bias.head[h].predicate == a.predicate && task_.bias.head[h].arity == a.arity()) { required.insert(h); }
            }
        }
    }
    required_heads_.assign(required.begin(), required.end());
    last_of_head_.assign(task_.bias.head.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < candidates_.size(); ++i) { last_of_head_[candidates_[i].head_mode] = i; }

    std::size_t reachable = heuristic_atoms_.size();
    for (auto const &c : candidates_) { reachable += c.cost; }
    for (std::size_t target = 0; target <= std::min(options_.max_cost, reachable); ++target) {
        if (search(target)) { return *found_; }
    }
    throw Unsatisfiable("no hypothesis of cost at most " + std::to_string(std::min(options_.max_cost, reachable)) +
                        " covers the examples");
}

} // namespace

Hypothesis learn(LearningTask const &task, LearnOptions const &options, LearnStats *stats) {
    LearnStats local;
    Learner learner(task, options, stats != nullptr ? *stats : local);
    return learner.run();
}

// {{{1 example generation

CdpiExample labelling_example(Framework const &framework, Extension const &extension, Polarity polarity) {
    CdpiExample e;
    e.polarity = polarity;
    e.context = to_facts(framework);
    for (auto const &name : framework.arguments()) {
        bool in = extension.count(name) != 0;
        e.inclusions.insert(Atom::ground(in ? "in" : "out", {name}));
        if (polarity == Polarity::positive) { e.exclusions.insert(Atom::ground(in ? "out" : "in", {name})); }
    }
    return e;
}

ExampleSet generate_examples(Semantics semantics, std::vector<Framework> const &frameworks, std::size_t n_pos,
                             std::size_t n_neg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::size_t, std::uint64_t>> good;
    std::vector<std::pair<std::size_t, std::uint64_t>> bad;
    for (std::size_t i = 0; i < frameworks.size(); ++i) {
        auto const &f = frameworks[i];
        if (n_pos == 0 && n_neg == 0) { break; }
        auto masks = oracle::extension_masks(f, semantics);
        for (auto m : masks) { good.emplace_back(i, m); }
        if (n_neg > 0) {
            if (f.size() > 16) { throw ResourceLimit("framework too large to enumerate non-extensions"); }
            for (std::uint64_t m = 0; m < (1ULL << f.size()); ++m) {
                if (!std::binary_search(masks.begin(), masks.end(), m)) { bad.emplace_back(i, m); }
            }
        }
    }
    if (good.size() < n_pos) {
        throw Error("only " + std::to_string(good.size()) + " labelled extensions available, " +
                    std::to_string(n_pos) + " requested");
    }
    if (bad.size() < n_neg) {
        throw Error("only " + std::to_string(bad.size()) + " non-extensions available, " + std::to_string(n_neg) +
                    " requested");
    }
    std::shuffle(good.begin(), good.end(), rng);
    std::shuffle(bad.begin(), bad.end(), rng);
    ExampleSet out;
    for (std::size_t i = 0; i < n_pos; ++i) {
        auto const &f = frameworks[good[i].first];
        out.positives.push_back(labelling_example(f, oracle::to_extension(f, good[i].second), Polarity::positive));
    }
    for (std::size_t i = 0; i < n_neg; ++i) {
        auto const &f = frameworks[bad[i].first];
        out.negatives.push_back(labelling_example(f, oracle::to_extension(f, bad[i].second), Polarity::negative));
    }
    return out;
}

} // namespace argil::las
