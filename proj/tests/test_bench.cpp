#include <catch2/catch_amalgamated.hpp>

#include <argil/bench.hpp>
#include <argil/oracle.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace argil;
using namespace argil::bench;

namespace {

RunResult solved(double s) {
    RunResult r;
    r.seconds = s;
    return r;
}

RunResult timed_out(double s = 1200) {
    RunResult r;
    r.outcome = Outcome::timeout;
    r.seconds = s;
    return r;
}

Framework mutual() { return FrameworkBuilder().argument("a").argument("b").attack("a", "b").attack("b", "a").build(); }

Framework cycle3() {
    return FrameworkBuilder().argument("a").argument("b").argument("c").attack("a", "b").attack("b", "c").attack("c", "a").build();
}

} // namespace

TEST_CASE("par2", "[bench]") {
    CHECK(par2({timed_out()}) == 2400);
    CHECK(par2({solved(3.5)}) == 3.5);
    CHECK(par2({timed_out(), solved(3.5)}) == Catch::Approx(1201.75).margin(1e-9));
    RunResult err;
    err.outcome = Outcome::error;
    CHECK(par2({err, solved(1)}, 10) == Catch::Approx(10.5).margin(1e-9));
    CHECK_THROWS_AS(par2({}), ValidationError);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> time(0, 1200);
    for (int round = 0; round < 200; ++round) {
        std::vector<RunResult> runs;
        for (int i = 0; i < 5; ++i) { runs.push_back(solved(time(rng))); }
        double before = par2(runs);
        runs[rng() % runs.size()] = timed_out();
        CHECK(par2(runs) >= before);
    }
}

TEST_CASE("mcc", "[bench]") {
    CHECK(mcc({5, 7, 0, 0}) == 1);
    CHECK(mcc({0, 0, 3, 4}) == -1);
    CHECK(mcc({1, 1, 1, 1}) == 0);
    CHECK(mcc({0, 0, 1, 1}) == -1);
    CHECK(mcc({0, 0, 5, 0}) == 0);
    // tp=6 tn=3 fp=1 fn=2: (18-2)/sqrt(7*8*4*5)
    CHECK(mcc({6, 3, 1, 2}) == Catch::Approx(16 / std::sqrt(1120.0)));

    std::mt19937_64 rng(8);
    for (int round = 0; round < 500; ++round) {
        ConfusionCounts c{rng() % 20, rng() % 20, rng() % 20, rng() % 20};
        double m = mcc(c);
        CHECK(m >= -1 - 1e-12);
        CHECK(m <= 1 + 1e-12);
        CHECK(mcc({c.tn, c.tp, c.fn, c.fp}) == Catch::Approx(m).margin(1e-12));
    }

    ConfusionCounts c;
    c.add(true, true);
    c.add(false, false);
    c.add(true, false);
    c.add(false, true);
    c.add(true, true);
    CHECK(c == ConfusionCounts{2, 1, 1, 1});
    CHECK(c.total() == 5);
}

TEST_CASE("random frameworks", "[bench]") {
    auto empty = gen_random_af(6, 0, 1);
    CHECK(empty.size() == 6);
    CHECK(empty.attacks().empty());
    CHECK(gen_random_af(6, 1, 1).attacks().size() == 36);
    CHECK(gen_random_af(5, 0.25, 42).attacks() == gen_random_af(5, 0.25, 42).attacks());
    CHECK(gen_random_af(3, 0.5, 0).arguments() == std::vector<std::string>{"a1", "a2", "a3"});
    CHECK_THROWS_AS(gen_random_af(3, 1.5, 0), ValidationError);
    CHECK_THROWS_AS(gen_random_af(3, -0.1, 0), ValidationError);

    std::size_t total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) { total += gen_random_af(10, 0.25, seed).attacks().size(); }
    CHECK(total > 4500);
    CHECK(total < 5500);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto b = gen_random_baf(6, 0.3, 0.3, seed);
        CHECK(b.kind() == FrameworkKind::baf);
        for (auto const &s : b.supports()) { CHECK(b.attacks().count(s) == 0); }
        auto v = gen_random_vaf(6, 0.3, 3, seed);
        CHECK(v.kind() == FrameworkKind::vaf);
        CHECK(v.values().size() == 6);
    }
}

TEST_CASE("single runs", "[bench]") {
    auto ext = find_extension(Engine::learned, mutual(), Semantics::stable);
    REQUIRE(ext);
    CHECK((*ext == Extension{"a"} || *ext == Extension{"b"}));
    CHECK_FALSE(find_extension(Engine::learned, cycle3(), Semantics::stable));
    CHECK(find_extension(Engine::oracle, cycle3(), Semantics::grounded) == Extension{});
    CHECK(find_extension(Engine::aspartix_adm, mutual(), Semantics::admissible));
    CHECK_THROWS_AS(find_extension(Engine::aspartix_adm, mutual(), Semantics::stable), ValidationError);

    CHECK(all_extensions(Engine::learned, mutual(), Semantics::admissible) ==
          std::vector<Extension>{{}, {"a"}, {"b"}});
    CHECK(all_extensions(Engine::aspartix_adm, mutual(), Semantics::admissible) ==
          std::vector<Extension>{{}, {"a"}, {"b"}});

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto f = gen_random_af(3 + seed % 6, 0.25, seed);
        for (auto s : learned_semantics) {
            auto found = find_extension(Engine::learned, f, s);
            auto all = oracle::extensions(f, s);
            if (found) { CHECK(oracle::is_extension(f, s, *found)); }
            else { CHECK(all.empty()); }
        }
    }
}

TEST_CASE("suites", "[bench]") {
    std::vector<Instance> instances{{"mutual", mutual()}, {"cycle", cycle3()}};
    std::vector<Engine> engines{Engine::oracle, Engine::learned, Engine::aspartix_adm};
    std::vector<Semantics> sems{Semantics::stable, Semantics::admissible};
    SuiteOptions options;
    options.timeout = 30;
    auto results = run_suite(instances, engines, sems, options);
    REQUIRE(results.size() == 12);
    CHECK(results.front().instance == "cycle");
    for (auto const &r : results) {
        INFO(r.instance << " " << to_string(r.engine) << " " << to_string(r.semantics));
        if (r.engine == Engine::aspartix_adm && r.semantics == Semantics::stable) {
            CHECK(r.outcome == Outcome::error);
            CHECK_FALSE(r.message.empty());
            continue;
        }
        CHECK(r.outcome == Outcome::solved);
        if (r.instance == "cycle" && r.semantics == Semantics::stable) { CHECK_FALSE(r.extension); }
        else { CHECK(r.extension); }
    }

    auto csv = to_csv(results);
    CHECK(csv.rfind("instance,engine,semantics,outcome,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    CHECK(csv.find("\ncycle,learned,stable,solved,") != std::string::npos);

    options.workers = 3;
    auto parallel = run_suite(instances, engines, sems, options);
    REQUIRE(parallel.size() == results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        CHECK(parallel[i].instance == results[i].instance);
        CHECK(parallel[i].engine == results[i].engine);
        CHECK(parallel[i].semantics == results[i].semantics);
        CHECK(parallel[i].outcome == results[i].outcome);
    }

    options.timeout = 0;
    auto late = run_suite(instances, {Engine::learned}, sems, options);
    for (auto const &r : late) {
        CHECK(r.outcome == Outcome::timeout);
        CHECK(r.seconds >= 0);
    }
    CHECK(par2(late) == 2400);
}

TEST_CASE("credulous accuracy", "[bench]") {
    std::vector<Framework> frameworks;
    for (std::uint64_t seed = 0; seed < 15; ++seed) { frameworks.push_back(gen_random_af(5 + seed % 8, 0.25, seed)); }
    for (auto s : learned_semantics) {
        CAPTURE(to_string(s));
        CHECK(mcc_eval(Engine::oracle, s, frameworks) == 1);
        CHECK(mcc_eval(Engine::learned, s, frameworks) == 1);
        CHECK(confusion(Engine::learned, s, frameworks).total() == confusion(Engine::oracle, s, frameworks).total());
    }
    auto lone = FrameworkBuilder().argument("a").attack("a", "a").build();
    auto c = confusion(Engine::learned, Semantics::admissible, {lone});
    CHECK(c == ConfusionCounts{0, 1, 0, 0});
    CHECK(mcc(c) == 0);
}

TEST_CASE("instance directories and timeouts", "[bench]") {
    auto dir = std::filesystem::temp_directory_path() / "argil_bench_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "b.apx") << "arg(a). arg(b). att(a,b).\n";
    std::ofstream(dir / "a.af") << "p af 2\n1 2\n2 1\n";
    std::ofstream(dir / "notes.txt") << "ignored\n";
    auto instances = load_instances(dir);
    REQUIRE(instances.size() == 2);
    CHECK(instances[0].id == "a.af");
    CHECK(instances[0].framework.attacks().size() == 2);
    CHECK(instances[1].id == "b.apx");
    std::ofstream(dir / "c.apx") << "arg(a). att(a,b).\n";
    CHECK_THROWS_AS(load_instances(dir), Error);
    std::filesystem::remove_all(dir);

    ::unsetenv("ARGIL_TIMEOUT");
    CHECK(default_timeout() == 1200);
    ::setenv("ARGIL_TIMEOUT", "2.5", 1);
    CHECK(default_timeout() == 2.5);
    ::setenv("ARGIL_TIMEOUT", "soon", 1);
    CHECK_THROWS_AS(default_timeout(), ValidationError);
    ::unsetenv("ARGIL_TIMEOUT");
}
