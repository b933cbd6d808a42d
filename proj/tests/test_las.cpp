#include <catch2/catch_amalgamated.hpp>

#include <argil/asp/parser.hpp>
#include <argil/encodings.hpp>
#include <argil/las.hpp>
#include <argil/oracle.hpp>

#include <algorithm>
#include <random>

using namespace argil;
using las::Polarity;

namespace {

las::CdpiExample sorted(las::CdpiExample e) {
    std::sort(e.context.begin(), e.context.end());
    return e;
}

Framework framework_of(las::CdpiExample const &e) {
    FrameworkBuilder b;
    for (auto const &f : e.context) {
        if (f.predicate == "arg") { b.argument(f.args[0].name); }
        else if (f.predicate == "att") { b.attack(f.args[0].name, f.args[1].name); }
    }
    return b.build();
}

las::LearningTask task_for(Semantics s) {
    auto examples = las::fixture_examples(s);
    las::LearningTask t;
    t.background = encodings::background(FrameworkKind::aaf);
    t.positives = examples.positives;
    t.negatives = examples.negatives;
    t.learn_heuristics = s == Semantics::grounded || s == Semantics::preferred;
    return t;
}

void check_sound(las::LearningTask const &t, las::Hypothesis const &h) {
    auto p = t.background + h.program();
    for (auto const &e : t.positives) {
        INFO(e.str());
        CHECK(las::accepts(p, e));
    }
    for (auto const &e : t.negatives) {
        INFO(e.str());
        CHECK_FALSE(las::accepts(p, e));
    }
}

// Rules as sorted literal strings over X/Y, minimized over the swap of X and Y.
std::set<std::vector<std::string>> brute_space(las::ModeBias const &bias, std::size_t max_body) {
    std::vector<std::string> const vars{"X", "Y"};
    struct Lit {
        std::string text;
        std::set<std::string> vars;
        bool negated;
    };
    auto atoms = [&](las::Mode const &m) {
        std::vector<std::pair<std::string, std::set<std::string>>> out;
        if (m.arity == 1) {
            for (auto const &v : vars) { out.push_back({m.predicate + "(" + v + ")", {v}}); }
        }
        else {
            for (auto const &v : vars) {
                for (auto const &w : vars) { out.push_back({m.predicate + "(" + v + "," + w + ")", {v, w}}); }
            }
        }
        return out;
    };
    std::vector<Lit> lits;
    for (auto const &m : bias.body) {
        for (auto const &[t, vs] : atoms(m)) {
            lits.push_back({t, vs, false});
            if (!m.positive_only) { lits.push_back({"not " + t, vs, true}); }
        }
    }
    auto swap = [](std::string s) {
        for (auto &c : s) {
            if (c == 'X') { c = 'Y'; }
            else if (c == 'Y') { c = 'X'; }
        }
        return s;
    };
    std::set<std::vector<std::string>> out;
    for (auto const &hm : bias.head) {
        for (auto const &[head, hvars] : atoms(hm)) {
            std::vector<Lit const *> body;
            auto visit = [&]() {
                std::set<std::string> bound;
                for (auto const *l : body) {
                    if (!l->negated) { bound.insert(l->vars.begin(), l->vars.end()); }
                }
                bool safe = std::includes(bound.begin(), bound.end(), hvars.begin(), hvars.end());
                for (auto const *l : body) {
                    if (l->negated) { safe = safe && std::includes(bound.begin(), bound.end(), l->vars.begin(), l->vars.end()); }
                }
                if (!safe) { return; }
                std::vector<std::string> a{"H " + head};
                std::vector<std::string> b{"H " + swap(head)};
                for (auto const *l : body) {
                    a.push_back(l->text);
                    b.push_back(swap(l->text));
                }
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                out.insert(std::min(a, b));
            };
            auto rec = [&](auto &self, std::size_t from) -> void {
                visit();
                if (body.size() == max_body) { return; }
                for (std::size_t i = from; i < lits.size(); ++i) {
                    body.push_back(&lits[i]);
                    self(self, i + 1);
                    body.pop_back();
                }
            };
            rec(rec, 0);
        }
    }
    return out;
}

} // namespace

// {{{1 examples

TEST_CASE("example files", "[las]") {
    auto adm = las::fixture_examples(Semantics::admissible);
    CHECK(adm.positives.size() == 5);
    CHECK(adm.negatives.size() == 2);
    CHECK(adm.positives[3].str() ==
          "#pos({in(a), in(c), out(b)}, {in(b), out(a), out(c)}, {arg(a). arg(b). arg(c). att(a,b). att(b,c).}).");
    auto again = las::parse_examples(adm.str());
    CHECK(again.positives == adm.positives);
    CHECK(again.negatives == adm.negatives);

    CHECK(las::fixture_examples(Semantics::stable).size() <= 8);
    CHECK(las::fixture_examples(Semantics::complete).size() <= 8);
    CHECK(las::fixture_examples(Semantics::preferred).size() <= 16);
    CHECK(las::fixture_examples(Semantics::grounded).size() <= 27);
    CHECK_THROWS_AS(las::fixture_examples(Semantics::conflict_free), Error);

    auto parsed = las::parse_examples("% comment\n#neg({}, {}, {arg(a).}).\n");
    REQUIRE(parsed.negatives.size() == 1);
    CHECK(parsed.negatives[0].inclusions.empty());
    CHECK(parsed.negatives[0].context.size() == 1);
}

TEST_CASE("example parse errors", "[las]") {
    CHECK_THROWS_AS(las::parse_examples("#foo({}, {}, {})."), ParseError);
    CHECK_THROWS_AS(las::parse_examples("#pos({in(X)}, {}, {arg(a).})."), ParseError);
    CHECK_THROWS_AS(las::parse_examples("#pos({in(a)}, {in(a)}, {arg(a).})."), ParseError);
    CHECK_THROWS_AS(las::parse_examples("#pos({in(a)}, {}, {arg(a). in(a).})."), ParseError);
    CHECK_THROWS_AS(las::parse_examples("#pos({in(b)}, {}, {arg(a).})."), ParseError);
    CHECK_THROWS_AS(las::parse_examples("#pos({in(a)}, {}, {arg(a).})"), ParseError);
    CHECK_THROWS_AS(las::parse_examples("#pos({in(a)} {}, {arg(a).})."), ParseError);
    try {
        (void)las::parse_examples("#pos({}, {}, {}).\n#pos({in(a)}, {in(a)}, {arg(a).}).");
        FAIL("no error");
    }
    catch (ParseError const &e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("labelling examples", "[las]") {
    auto adm = las::fixture_examples(Semantics::admissible);
    for (auto const &e : adm.positives) {
        Extension ext;
        for (auto const &a : e.inclusions) {
            if (a.predicate == "in") { ext.insert(a.args[0].name); }
        }
        CHECK(las::labelling_example(framework_of(e), ext, Polarity::positive) == sorted(e));
    }
    for (auto const &e : adm.negatives) {
        Extension ext;
        for (auto const &a : e.inclusions) {
            if (a.predicate == "in") { ext.insert(a.args[0].name); }
        }
        CHECK(las::labelling_example(framework_of(e), ext, Polarity::negative) == sorted(e));
    }
}

// {{{1 hypothesis space

TEST_CASE("hypothesis space", "[las]") {
    auto bias = las::ModeBias::arguments();
    auto space = las::enumerate_space(bias, 3, 2);
    std::set<std::string> text;
    for (auto const &r : space) { text.insert(r.str()); }
    CHECK(text.size() == space.size());
    CHECK(text.count("out(X) :- defeated(X).") == 1);
    CHECK(text.count("out(X) :- arg(X), not in(X).") == 1);
    CHECK(text.count("in(X) :- arg(X), not out(X), not not_defended(X).") == 1);
    for (auto const &r : space) {
        INFO(r.str());
        CHECK(r.unsafe_variables().empty());
        CHECK(r.pos.size() + r.neg.size() <= 3);
        CHECK(r.variables().size() <= 2);
        CHECK(std::none_of(r.neg.begin(), r.neg.end(), [](asp::Atom const &a) { return a.predicate == "arg"; }));
    }
    for (std::size_t i = 1; i < space.size(); ++i) { CHECK(space[i - 1].length() <= space[i].length()); }

    for (auto const &r : las::enumerate_space(bias, 3, 1)) {
        INFO(r.str());
        CHECK(r.variables().size() == 1);
    }
    CHECK(las::enumerate_space(bias, 3, 0).empty());
    CHECK(las::enumerate_space(bias, 0, 2).empty());
}

TEST_CASE("hypothesis space matches brute force", "[las]") {
    las::ModeBias small;
    small.head = {{"p", 1, false}};
    small.body = {{"q", 1, false}, {"r", 1, false}};
    CHECK(las::enumerate_space(small, 1, 1).size() == 2);
    CHECK(las::enumerate_space(small, 2, 1).size() == 7);

    auto bias = las::ModeBias::arguments();
    for (std::size_t body = 1; body <= 3; ++body) {
        CAPTURE(body);
        CHECK(las::enumerate_space(bias, body, 2).size() == brute_space(bias, body).size());
    }
}

TEST_CASE("hypothesis cost", "[las]") {
    auto reference = encodings::learned(Semantics::admissible);
    CHECK(las::cost(reference.rules()) == 9);
    auto grounded = encodings::learned(Semantics::grounded);
    CHECK(las::cost(grounded.rules(), grounded.heuristics()) == 6);
}

// {{{1 acceptance

TEST_CASE("accepts", "[las]") {
    auto adm = las::fixture_examples(Semantics::admissible);
    auto p = encodings::full_semantics(FrameworkKind::aaf, Semantics::admissible);
    for (auto const &e : adm.positives) { CHECK(las::accepts(p, e)); }
    for (auto const &e : adm.negatives) { CHECK_FALSE(las::accepts(p, e)); }

    auto stable = encodings::full_semantics(FrameworkKind::aaf, Semantics::stable);
    auto cycle = las::parse_examples("#pos({}, {}, {arg(a). arg(b). arg(c). att(a,b). att(b,c). att(c,a).})."
                                     "#pos({in(a)}, {}, {arg(a).}).");
    CHECK_FALSE(las::accepts(stable, cycle.positives[0]));
    CHECK(las::accepts(stable, cycle.positives[1]));

    // Only minimal answer sets count under heuristics.
    auto grounded = encodings::full_semantics(FrameworkKind::aaf, Semantics::grounded);
    auto pair = las::parse_examples("#pos({in(a)}, {}, {arg(a). arg(b). att(a,b). att(b,a).})."
                                    "#pos({out(a), out(b)}, {}, {arg(a). arg(b). att(a,b). att(b,a).}).");
    CHECK_FALSE(las::accepts(grounded, pair.positives[0]));
    CHECK(las::accepts(grounded, pair.positives[1]));
}

// {{{1 learning

TEST_CASE("learn trivial tasks", "[las]") {
    las::LearningTask empty;
    auto h = las::learn(empty);
    CHECK(h.rules.empty());
    CHECK(h.heuristics.empty());
    CHECK(h.cost == 0);

    las::LearningTask none;
    none.bias.head.clear();
    none.negatives.push_back(las::CdpiExample{Polarity::negative, {}, {}, {}});
    CHECK_THROWS_AS(las::learn(none), Unsatisfiable);

    las::LearningTask late = task_for(Semantics::admissible);
    las::LearnOptions options;
    options.deadline = Deadline::after(0);
    CHECK_THROWS_AS(las::learn(late, options), Timeout);

    las::LearningTask capped = task_for(Semantics::admissible);
    las::LearnOptions small;
    small.max_cost = 8;
    CHECK_THROWS_AS(las::learn(capped, small), Unsatisfiable);
}

TEST_CASE("learn admissible from the seven examples", "[las]") {
    auto t = task_for(Semantics::admissible);
    las::LearnStats stats;
    auto h = las::learn(t, {}, &stats);
    CHECK(h.cost == 9);
    CHECK(h.program() == encodings::learned(Semantics::admissible));
    CHECK(stats.candidates <= stats.space);
    CHECK(stats.checked > 0);
    check_sound(t, h);
    CHECK(las::learn(t).str() == h.str());
}

TEST_CASE("learn stored tasks", "[las]") {
    for (auto s : {Semantics::stable, Semantics::complete, Semantics::grounded, Semantics::preferred}) {
        CAPTURE(to_string(s));
        auto t = task_for(s);
        auto h = las::learn(t);
        check_sound(t, h);
        CHECK(h.cost == las::cost(h.rules, h.heuristics));
        CHECK(h.cost <= las::cost(encodings::learned(s).rules(), encodings::learned(s).heuristics()));
        CHECK(h.heuristics.size() == encodings::learned(s).heuristics().size());
    }
}

TEST_CASE("learned cost is optimal", "[las]") {
    auto t = task_for(Semantics::stable);
    las::LearnOptions options;
    options.max_body = 2;
    options.max_vars = 1;
    auto h = las::learn(t, options);
    check_sound(t, h);
    auto space = las::enumerate_space(t.bias, 2, 1);
    // Every rule set of smaller cost fails some example.
    std::size_t tried = 0;
    auto fails = [&](std::vector<asp::Rule> const &rules) {
        ++tried;
        auto p = t.background + asp::Program(rules);
        for (auto const &e : t.positives) {
            if (!las::accepts(p, e)) { return true; }
        }
        for (auto const &e : t.negatives) {
            if (las::accepts(p, e)) { return true; }
        }
        return false;
    };
    CHECK(fails({}));
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i].length() >= h.cost) { continue; }
        CHECK(fails({space[i]}));
        for (std::size_t j = i + 1; j < space.size(); ++j) {
            if (space[i].length() + space[j].length() >= h.cost) { continue; }
            CHECK(fails({space[i], space[j]}));
        }
    }
    CHECK(tried > 1);
}

TEST_CASE("learned hypotheses are sound on generated tasks", "[las]") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 6; ++round) {
        std::vector<Framework> frameworks;
        for (int k = 0; k < 3; ++k) {
            FrameworkBuilder b;
            std::bernoulli_distribution edge(0.3);
            for (char c : std::string("abc")) { b.argument(std::string(1, c)); }
            for (char x : std::string("abc")) {
                for (char y : std::string("abc")) {
                    if (edge(rng)) { b.attack(std::string(1, x), std::string(1, y)); }
                }
            }
            frameworks.push_back(b.build());
        }
        auto examples = las::generate_examples(Semantics::complete, frameworks, 2, 2, rng());
        las::LearningTask t;
        t.background = encodings::background(FrameworkKind::aaf);
        t.positives = examples.positives;
        t.negatives = examples.negatives;
        auto h = las::learn(t);
        check_sound(t, h);
        CHECK(h.cost <= 6);
    }
}

// {{{1 generation

TEST_CASE("generate examples", "[las]") {
    auto cycle = FrameworkBuilder().argument("a").argument("b").argument("c")
                     .attack("a", "b").attack("b", "c").attack("c", "a").build();
    CHECK_THROWS_AS(las::generate_examples(Semantics::stable, {cycle}, 1, 0), Error);
    CHECK(las::generate_examples(Semantics::stable, {cycle}, 0, 0).size() == 0);

    auto chain = FrameworkBuilder().argument("a").argument("b").argument("c").attack("a", "b").attack("b", "c").build();
    auto a = las::generate_examples(Semantics::admissible, {cycle, chain}, 3, 4, 5);
    auto b = las::generate_examples(Semantics::admissible, {cycle, chain}, 3, 4, 5);
    CHECK(a.str() == b.str());
    REQUIRE(a.positives.size() == 3);
    REQUIRE(a.negatives.size() == 4);
    auto p = encodings::full_semantics(FrameworkKind::aaf, Semantics::admissible);
    for (auto const &e : a.positives) { CHECK(las::accepts(p, e)); }
    for (auto const &e : a.negatives) { CHECK_FALSE(las::accepts(p, e)); }
    CHECK_THROWS_AS(las::generate_examples(Semantics::admissible, {chain}, 4, 0), Error);
    CHECK_THROWS_AS(las::generate_examples(Semantics::admissible, {chain}, 0, 6), Error);
    CHECK_NOTHROW(las::generate_examples(Semantics::admissible, {chain}, 3, 5));
}
