#include <catch2/catch_amalgamated.hpp>

#include <argil/error.hpp>
#include <argil/framework.hpp>

#include <random>

using namespace argil;

namespace {

std::vector<std::string> fact_strings(Framework const &f) {
    std::vector<std::string> out;
    for (auto const &a : to_facts(f)) { out.push_back(a.str()); }
    return out;
}

} // namespace

TEST_CASE("apx", "[framework]") {
    SECTION("mutual attack") {
        auto f = parse_apx("arg(a). arg(b). att(a,b). att(b,a).");
        CHECK(f.kind() == FrameworkKind::aaf);
        CHECK(f.arguments() == std::vector<std::string>{"a", "b"});
        CHECK(f.attacks() == std::set<Edge>{{0, 1}, {1, 0}});
        CHECK(fact_strings(f) == std::vector<std::string>{"arg(a)", "arg(b)", "att(a,b)", "att(b,a)"});
    }
    SECTION("empty") {
        auto f = parse_apx("");
        CHECK(f.size() == 0);
        CHECK(to_facts(f).empty());
    }
    SECTION("undeclared argument") {
        CHECK_THROWS_WITH(parse_apx("arg(a). att(a,b)."), Catch::Matchers::ContainsSubstring("b"));
        CHECK_THROWS_AS(parse_apx("arg(a).\natt(a,b)."), Error);
    }
    SECTION("kind inference") {
        auto baf = parse_apx("arg(a). arg(b). arg(c). att(b,c). support(a,b).");
        CHECK(baf.kind() == FrameworkKind::baf);
        CHECK(fact_strings(baf) ==
              std::vector<std::string>{"arg(a)", "arg(b)", "arg(c)", "att(b,c)", "support(a,b)"});
        auto vaf = parse_apx("arg(a). val(a,u). % comment\nvalpref(u,v).");
        CHECK(vaf.kind() == FrameworkKind::vaf);
        CHECK(vaf.values() == std::vector<std::string>{"u"});
    }
    SECTION("invariants") {
        CHECK_THROWS_AS(parse_apx("arg(a). arg(b). att(a,b). support(a,b)."), Error);
        CHECK_THROWS_AS(parse_apx("arg(a). arg(b). val(a,u)."), Error);
        CHECK_THROWS_AS(parse_apx("arg(a). val(a,u). val(a,v)."), Error);
        CHECK_THROWS_AS(parse_apx("arg(a). val(a,u). valpref(u,v). valpref(v,w). valpref(w,u)."), Error);
        CHECK_NOTHROW(parse_apx("arg(a). val(a,u). valpref(u,v). valpref(v,w)."));
        CHECK_THROWS_AS(parse_apx("arg(A)."), Error);
        CHECK_THROWS_AS(parse_apx("arg(a). foo(a)."), ParseError);
        CHECK_THROWS_AS(parse_apx("arg(a) arg(b)."), ParseError);
        CHECK_NOTHROW(parse_apx("arg(a). arg(a)."));
    }
    SECTION("syntax errors report line and column") {
        try {
            (void)parse_apx("arg(a).\narg(b\n");
            FAIL("expected a parse error");
        }
        catch (ParseError const &e) {
            CHECK(e.line() >= 2);
            CHECK(e.column() > 0);
        }
    }
}

TEST_CASE("iccma", "[framework]") {
    auto f = parse_iccma("p af 2\n1 2\n2 1");
    CHECK(f.arguments() == std::vector<std::string>{"a1", "a2"});
    CHECK(f.attacks() == std::set<Edge>{{0, 1}, {1, 0}});
    CHECK(parse_iccma("# c\np af 3\n").size() == 3);
    CHECK(parse_iccma("p af 3\n").attacks().empty());
    CHECK_THROWS_WITH(parse_iccma("p af 2\n3 1"), Catch::Matchers::ContainsSubstring("out of range"));
    CHECK_THROWS_AS(parse_iccma("1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_iccma(""), ParseError);
    CHECK_THROWS_AS(parse_iccma("p af x\n"), ParseError);
    CHECK_THROWS_AS(parse_iccma("p af 2\n1\n"), ParseError);

    SECTION("arguments follow name order") {
        auto g = parse_iccma("p af 10\n10 2\n");
        REQUIRE(g.attacks().size() == 1);
        auto e = *g.attacks().begin();
        CHECK(g.name(e.from) == "a10");
        CHECK(g.name(e.to) == "a2");
        auto facts = fact_strings(g);
        CHECK(std::count_if(facts.begin(), facts.end(), [](auto const &s) { return s.rfind("arg(", 0) == 0; }) == 10);
    }
}

TEST_CASE("apx round trip", "[framework][property]") {
    std::mt19937_64 rng(11);
    std::bernoulli_distribution coin(0.3);
    for (int i = 0; i < 200; ++i) {
        auto n = static_cast<int>(rng() % 6);
        FrameworkBuilder b;
        for (int x = 0; x < n; ++x) { b.argument("x" + std::to_string(x)); }
        int kind = static_cast<int>(rng() % 3);
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                auto sx = "x" + std::to_string(x);
                auto sy = "x" + std::to_string(y);
                if (coin(rng)) { b.attack(sx, sy); }
                else if (kind == 1 && coin(rng)) { b.support(sx, sy); }
            }
            if (kind == 2) { b.value(("x" + std::to_string(x)), "v" + std::to_string(rng() % 3)); }
        }
        if (kind == 2 && coin(rng)) { b.value_preference("v0", "v1"); }
        auto f = b.build();
        CHECK(parse_apx(to_apx(f)) == f);
    }
}

TEST_CASE("aba", "[framework]") {
    SECTION("worked example") {
        auto aba = parse_aba("assumption p\nassumption q\ncontrary p t\ncontrary q r\nrule r s t\nrule s p\nrule t q");
        CHECK(aba.language() == std::set<std::string>{"p", "q", "r", "s", "t"});
        CHECK(aba.assumptions() == std::set<std::string>{"p", "q"});
        CHECK(aba.contrary().at("p") == "t");
        CHECK(aba.contrary().at("q") == "r");
        REQUIRE(aba.rules().size() == 3);
        CHECK(aba.rules()[0] == AbaRule{"r", {"s", "t"}});
    }
    SECTION("self contrary") {
        auto aba = parse_aba("assumption p\ncontrary p p");
        CHECK(aba.language() == std::set<std::string>{"p"});
    }
    SECTION("errors") {
        CHECK_THROWS_WITH(parse_aba("assumption p\ncontrary p t\nrule p q"),
                          Catch::Matchers::ContainsSubstring("non-flat"));
        CHECK_THROWS_AS(parse_aba("assumption p\n"), ValidationError);
        CHECK_THROWS_AS(parse_aba("assumption p\ncontrary p t\ncontrary p s"), ParseError);
        CHECK_THROWS_AS(parse_aba("contrary p t\n"), ValidationError);
        CHECK_THROWS_AS(parse_aba(""), ValidationError);
        CHECK_THROWS_AS(parse_aba("assume p\n"), ParseError);
    }
}
