#include <catch2/catch_amalgamated.hpp>

#include <argil/asp/ground.hpp>
#include <argil/asp/parser.hpp>
#include <argil/asp/solver.hpp>
#include <argil/error.hpp>

#include "support/naive_asp.hpp"

using namespace argil;
using namespace argil::asp;

namespace {

std::vector<std::string> strs(std::vector<Interpretation> const &sets) {
    std::vector<std::string> out;
    for (auto const &s : sets) { out.push_back(str(s)); }
    return out;
}

} // namespace

TEST_CASE("parser", "[asp]") {
    SECTION("rules and constraints round trip") {
        auto p = parse_program("in(X) :- arg(X), not out(X).\n:- in(X), in(Y), att(X,Y).\n% comment\nfoo.");
        REQUIRE(p.rules().size() == 3);
        CHECK(p.rules()[0].str() == "in(X) :- arg(X), not out(X).");
        CHECK(p.rules()[1].str() == ":- in(X), in(Y), att(X,Y).");
        CHECK(p.rules()[2].is_fact());
        CHECK(parse_program(p.str()) == p);
    }
    SECTION("heuristics") {
        auto p = parse_program("#heuristic in(X). [1@1, false]");
        REQUIRE(p.heuristics().size() == 1);
        CHECK(heuristic_str(p.heuristics()[0]) == "#heuristic in(X). [1@1, false]");
        CHECK_THROWS_AS(parse_program("#heuristic in(X). [1, true]"), ParseError);
    }
    SECTION("unsafe rules are rejected") {
        CHECK_THROWS_AS(parse_program("in(X) :- not out(X)."), ParseError);
        CHECK_THROWS_AS(Program({Rule{Atom("p", {Term::var("X")}), {}, {}}}), ValidationError);
    }
    SECTION("syntax errors carry a position") {
        try {
            (void)parse_program("p(a).\nq(a :- r.");
            FAIL("expected a parse error");
        }
        catch (ParseError const &e) {
            CHECK(e.line() == 2);
        }
    }
    SECTION("facts must be ground") {
        CHECK(parse_facts("arg(a). att(a,b).").size() == 2);
        CHECK_THROWS_AS(parse_facts("arg(X)."), ParseError);
    }
}

TEST_CASE("grounding", "[asp]") {
    auto facts = parse_facts("arg(a). arg(b). att(a,b).");
    SECTION("all instances over the constants") {
        auto g = ground(parse_program("defeated(X) :- in(Y), att(Y,X)."), facts);
        auto instances = std::count_if(g.rules().begin(), g.rules().end(), [](Rule const &r) { return !r.is_fact(); });
        CHECK(instances == 4);
        CHECK(g.rules().size() == 7);
    }
    SECTION("variable free programs stay as they are") {
        auto g = ground(parse_program("p :- not q."), facts);
        CHECK(g.rules().size() == 4);
        CHECK(g.rules().back().str() == "p :- not q.");
    }
    SECTION("arity mismatch") {
        CHECK_THROWS_AS(ground(parse_program("p(X) :- arg(X, X)."), facts), ValidationError);
        CHECK_THROWS_AS(instantiate(parse_program("p(X) :- arg(X, X)."), facts), ValidationError);
    }
    SECTION("atom cap") {
        CHECK_THROWS_AS(instantiate(parse_program("p(X,Y) :- arg(X), arg(Y)."), facts, 4), ResourceLimit);
    }
}

TEST_CASE("reduct", "[asp]") {
    auto g = parse_program("in(a) :- not out(a).\n:- in(a), in(b).");
    SECTION("blocked rules are dropped") {
        auto r = reduct(g, {Atom::ground("out", {"a"})});
        REQUIRE(r.size() == 1);
        CHECK(str(r[0]) == "#false :- in(a), in(b).");
    }
    SECTION("negative literals are removed") {
        auto r = reduct(g, {});
        REQUIRE(r.size() == 2);
        CHECK(str(r[0]) == "in(a).");
    }
    SECTION("least model and bottom") {
        auto m = least_model(reduct(parse_program("a. b :- a. :- b."), {}));
        CHECK(m.bottom);
        CHECK(m.atoms.size() == 2);
    }
}

TEST_CASE("answer sets", "[asp]") {
    SECTION("stable encoding on a mutual attack") {
        auto p = parse_program("defeated(X) :- in(Y), att(Y,X).\n"
                               "not_defended(X) :- att(Y,X), not defeated(Y).\n"
                               "out(X) :- defeated(X).\n"
                               "in(X) :- arg(X), not out(X).");
        auto facts = parse_facts("arg(a). arg(b). att(a,b). att(b,a).");
        auto sets = answer_sets(p, facts);
        CHECK(sets == test::naive_answer_sets(p, facts));
        REQUIRE(sets.size() == 2);
        // defeated(a) sorts before defeated(b)
        CHECK(sets[1].count(Atom::ground("in", {"a"})) == 1);
        CHECK(sets[1].count(Atom::ground("out", {"b"})) == 1);
        CHECK(sets[1].count(Atom::ground("defeated", {"b"})) == 1);
        CHECK(sets[0].count(Atom::ground("in", {"b"})) == 1);
    }
    SECTION("empty program") {
        auto sets = answer_sets(Program{}, {});
        REQUIRE(sets.size() == 1);
        CHECK(sets[0].empty());
    }
    SECTION("odd loop") {
        CHECK(answer_sets(parse_program("a :- not a."), {}).empty());
    }
    SECTION("even loop") {
        CHECK(strs(answer_sets(parse_program("a :- not b. b :- not a."), {})) == std::vector<std::string>{"{a}", "{b}"});
    }
    SECTION("positive loops are unfounded") {
        CHECK(strs(answer_sets(parse_program("a :- b. b :- a. c :- not a."), {})) == std::vector<std::string>{"{c}"});
    }
}

TEST_CASE("minimal answer sets", "[asp]") {
    auto aaf = "defeated(X) :- in(Y), att(Y,X).\nnot_defended(X) :- att(Y,X), not defeated(Y).\n";
    auto facts = parse_facts("arg(a). arg(b). att(a,b). att(b,a).");
    SECTION("grounded on a mutual attack") {
        auto p = parse_program(std::string(aaf) + "in(X) :- arg(X), not not_defended(X).\n"
                                                  "out(X) :- not_defended(X).\n#heuristic in(X). [1@1, false]");
        auto sets = minimal_answer_sets(p, facts);
        REQUIRE(sets.size() == 1);
        CHECK(test::project(sets[0], p.heuristics()).empty());
        auto first = first_minimal_answer_set(p, facts);
        REQUIRE(first);
        CHECK(*first == sets[0]);
    }
    SECTION("preferred on a mutual attack") {
        auto p = parse_program(std::string(aaf) + "in(X) :- arg(X), not defeated(X), not not_defended(X).\n"
                                                  "out(X) :- not_defended(X).\n#heuristic out(X). [1@1, false]");
        auto sets = minimal_answer_sets(p, facts);
        REQUIRE(sets.size() == 2);
        CHECK(sets[0].count(Atom::ground("in", {"b"})) == 1);
        CHECK(sets[1].count(Atom::ground("in", {"a"})) == 1);
    }
    SECTION("no heuristics") {
        auto p = parse_program("a :- not b. b :- not a.");
        CHECK(minimal_answer_sets(p, {}) == answer_sets(p, {}));
    }
    SECTION("projection filter") {
        CHECK(minimal_by_projection({{1, 2}, {1}, {3}, {0, 1}}, {1, 2}) ==
              std::vector<std::vector<int>>{{3}});
        CHECK(minimal_by_projection({{1, 2}, {1}, {0, 1}}, {1, 2}) == std::vector<std::vector<int>>{{1}, {0, 1}});
    }
}

TEST_CASE("solver agrees with subset enumeration", "[asp][property]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        auto [program, facts] = test::random_program(rng);
        INFO(program.str());
        auto expected = test::naive_answer_sets(program, facts);
        auto sets = answer_sets(program, facts);
        CHECK(sets == expected);
        auto minimal = minimal_answer_sets(program, facts);
        CHECK(minimal == test::naive_minimal(expected, program.heuristics()));
        auto first = first_minimal_answer_set(program, facts);
        CHECK(first.has_value() == !minimal.empty());
        if (first) { CHECK(std::find(minimal.begin(), minimal.end(), *first) != minimal.end()); }
    }
}

TEST_CASE("deadline", "[asp]") {
    auto p = parse_program("in(X) :- arg(X), not out(X). out(X) :- arg(X), not in(X).");
    std::vector<Atom> facts;
    for (int i = 0; i < 30; ++i) { facts.push_back(Atom::ground("arg", {"a" + std::to_string(i)})); }
    EngineOptions options;
    options.deadline = Deadline::after(0);
    CHECK_THROWS_AS(answer_sets(p, facts, options), Timeout);
}
