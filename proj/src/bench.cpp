#include <argil/asp/solver.hpp>
#include <argil/bench.hpp>
#include <argil/encodings.hpp>
#include <argil/oracle.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <set>
#include <thread>
#include <tuple>

namespace argil::bench {

// {{{1 names

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::learned: return "learned";
        case Engine::aspartix_adm: return "aspartix_adm";
        case Engine::oracle: return "oracle";
    }
    return "?";
}

std::optional<Engine> parse_engine(std::string_view text) {
    if (text == "learned") { return Engine::learned; }
    if (text == "aspartix" || text == "aspartix_adm" || text == "aspartix-adm") { return Engine::aspartix_adm; }
    if (text == "oracle") { return Engine::oracle; }
    return std::nullopt;
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::solved: return "solved";
        case Outcome::timeout: return "timeout";
        case Outcome::error: return "error";
    }
    return "?";
}

// {{{1 metrics

void ConfusionCounts::add(bool predicted, bool gold) {
    if (predicted && gold) { ++tp; }
    else if (!predicted && !gold) { ++tn; }
    else if (predicted) { ++fp; }
    else { ++fn; }
}

double par2(std::vector<RunResult> const &results, double threshold) {
    if (results.empty()) { throw ValidationError("par2 needs at least one result"); }
    double sum = 0;
    for (auto const &r : results) { sum += r.outcome == Outcome::solved ? r.seconds : 2 * threshold; }
    return sum / static_cast<double>(results.size());
}

double mcc(ConfusionCounts const &c) {
    auto tp = static_cast<double>(c.tp);
    auto tn = static_cast<double>(c.tn);
    auto fp = static_cast<double>(c.fp);
    auto fn = static_cast<double>(c.fn);
    double denominator = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denominator == 0) { return 0; }
    return (tp * tn - fp * fn) / std::sqrt(denominator);
}

// {{{1 generators

namespace {

std::string arg_name(std::size_t i) { return "a" + std::to_string(i + 1); }

void check_probability(double p, char const *what) {
    if (!(p >= 0 && p <= 1)) { throw ValidationError(std::string(what) + " must lie in [0, 1]"); }
}

FrameworkBuilder random_attacks(std::size_t n, double attack_prob, std::mt19937_64 &rng,
                                std::set<std::pair<std::size_t, std::size_t>> *edges = nullptr) {
    check_probability(attack_prob, "attack probability");
    FrameworkBuilder b;
    for (std::size_t i = 0; i < n; ++i) { b.argument(arg_name(i)); }
    std::bernoulli_distribution edge(attack_prob);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!edge(rng)) { continue; }
            b.attack(arg_name(i), arg_name(j));
            if (edges != nullptr) { edges->emplace(i, j); }
        }
    }
    return b;
}

} // namespace

Framework gen_random_af(std::size_t n_args, double attack_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_attacks(n_args, attack_prob, rng).build(FrameworkKind::aaf);
}

Framework gen_random_baf(std::size_t n_args, double attack_prob, double support_prob, std::uint64_t seed) {
    check_probability(support_prob, "support probability");
    std::mt19937_64 rng(seed);
    std::set<std::pair<std::size_t, std::size_t>> attacks;
    auto b = random_attacks(n_args, attack_prob, rng, &attacks);
    std::bernoulli_distribution edge(support_prob);
    for (std::size_t i = 0; i < n_args; ++i) {
        for (std::size_t j = 0; j < n_args; ++j) {
            if (i == j || attacks.count({i, j}) != 0) { continue; }
            if (edge(rng)) { b.support(arg_name(i), arg_name(j)); }
        }
    }
    return b.build(FrameworkKind::baf);
}

Framework gen_random_vaf(std::size_t n_args, double attack_prob, std::size_t values, std::uint64_t seed) {
    if (values == 0) { throw ValidationError("a value-based framework needs at least one value"); }
    std::mt19937_64 rng(seed);
    auto b = random_attacks(n_args, attack_prob, rng);
    std::uniform_int_distribution<std::size_t> pick(0, values - 1);
    for (std::size_t i = 0; i < n_args; ++i) { b.value(arg_name(i), "v" + std::to_string(pick(rng) + 1)); }
    // Pairs of a random total order, each kept with probability one half.
    std::vector<std::size_t> order(values);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution keep(0.5);
    for (std::size_t i = 0; i < values; ++i) {
        for (std::size_t j = i + 1; j < values; ++j) {
            if (keep(rng)) { b.value_preference("v" + std::to_string(order[i]), "v" + std::to_string(order[j])); }
        }
    }
    return b.build(FrameworkKind::vaf);
}

// {{{1 instances

std::vector<Instance> load_instances(std::filesystem::path const &dir) {
    std::vector<std::filesystem::path> files;
    for (auto const &entry : std::filesystem::directory_iterator(dir)) {
        auto ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".apx" || ext == ".af" || ext == ".iccma")) { files.push_back(entry.path()); }
    }
    std::sort(files.begin(), files.end());
    std::vector<Instance> out;
    for (auto const &file : files) {
        std::ifstream in(file);
        if (!in) { throw Error("cannot read " + file.string()); }
        std::stringstream text;
        text << in.rdbuf();
        auto f = file.extension() == ".apx" ? parse_apx(text.str()) : parse_iccma(text.str());
        out.push_back({file.filename().string(), std::move(f)});
    }
    return out;
}

double default_timeout(double fallback) {
    char const *env = std::getenv("ARGIL_TIMEOUT");
    if (env == nullptr || *env == '\0') { return fallback; }
    char *end = nullptr;
    double value = std::strtod(env, &end);
    if (*end != '\0' || !(value >= 0)) { throw ValidationError(std::string("invalid ARGIL_TIMEOUT '") + env + "'"); }
    return value;
}

// {{{1 engines

namespace {

asp::Program engine_program(Engine engine, Framework const &framework, Semantics semantics) {
    if (engine == Engine::aspartix_adm) {
        if (semantics != Semantics::admissible) {
            throw ValidationError("the aspartix engine only supports admissible semantics");
        }
        if (framework.kind() != FrameworkKind::aaf) {
            throw ValidationError("the aspartix engine only supports abstract frameworks");
        }
        return encodings::aspartix_admissible();
    }
    return encodings::full_semantics(framework.kind(), semantics);
}

Extension in_atoms(asp::Interpretation const &as) {
    Extension e;
    for (auto const &a : as) {
        if (a.predicate == "in" && a.arity() == 1) { e.insert(a.args[0].name); }
    }
    return e;
}

oracle::Options oracle_options(Framework const &framework, Deadline const &deadline) {
    oracle::Options o;
    o.max_args = std::max<std::size_t>(o.max_args, framework.size());
    o.deadline = deadline;
    return o;
}

} // namespace

std::optional<Extension> find_extension(Engine engine, Framework const &framework, Semantics semantics,
                                        Deadline const &deadline) {
    if (engine == Engine::oracle) {
        auto all = oracle::extensions(framework, semantics, oracle_options(framework, deadline));
        if (all.empty()) { return std::nullopt; }
        return all.front();
    }
    asp::EngineOptions options;
    options.deadline = deadline;
    auto as = asp::first_minimal_answer_set(engine_program(engine, framework, semantics), to_facts(framework), options);
    if (!as) { return std::nullopt; }
    return in_atoms(*as);
}

std::vector<Extension> all_extensions(Engine engine, Framework const &framework, Semantics semantics,
                                      Deadline const &deadline) {
    if (engine == Engine::oracle) { return oracle::extensions(framework, semantics, oracle_options(framework, deadline)); }
    asp::EngineOptions options;
    options.deadline = deadline;
    std::set<Extension> out;
    for (auto const &as : asp::minimal_answer_sets(engine_program(engine, framework, semantics), to_facts(framework), options)) {
        out.insert(in_atoms(as));
    }
    return {out.begin(), out.end()};
}

// {{{1 suites

namespace {

RunResult run_one(Instance const &instance, Engine engine, Semantics semantics, double timeout) {
    RunResult r;
    r.instance = instance.id;
    r.engine = engine;
    r.semantics = semantics;
    auto start = std::chrono::steady_clock::now();
    try {
        r.extension = find_extension(engine, instance.framework, semantics, Deadline::after(timeout));
        r.outcome = Outcome::solved;
    }
    catch (Timeout const &) {
        r.outcome = Outcome::timeout;
    }
    catch (std::exception const &e) {
        r.outcome = Outcome::error;
        r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.outcome == Outcome::solved && r.seconds >= timeout) {
        r.outcome = Outcome::timeout;
        r.extension.reset();
    }
    if (r.outcome == Outcome::timeout) { r.seconds = std::max(r.seconds, timeout); }
    return r;
}

} // namespace

std::vector<RunResult> run_suite(std::vector<Instance> const &instances, std::vector<Engine> const &engines,
                                 std::vector<Semantics> const &semantics, SuiteOptions const &options) {
    struct Job {
        std::size_t instance;
        Engine engine;
        Semantics semantics;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (auto e : engines) {
            for (auto s : semantics) { jobs.push_back({i, e, s}); }
        }
    }
    std::vector<RunResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            auto const &job = jobs[k];
            results[k] = run_one(instances[job.instance], job.engine, job.semantics, options.timeout);
        }
    };
    std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> threads;
    for (std::size_t w = 1; w < workers; ++w) { threads.emplace_back(work); }
    work();
    for (auto &t : threads) { t.join(); }
    std::sort(results.begin(), results.end(), [](RunResult const &a, RunResult const &b) {
        return std::tie(a.instance, a.engine, a.semantics) < std::tie(b.instance, b.engine, b.semantics);
    });
    return results;
}

std::string to_csv(std::vector<RunResult> const &results) {
    std::ostringstream out;
    out << "instance,engine,semantics,outcome,seconds\n";
    for (auto const &r : results) {
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.6f", r.seconds);
        out << r.instance << ',' << to_string(r.engine) << ',' << to_string(r.semantics) << ',' << to_string(r.outcome)
            << ',' << seconds << '\n';
    }
    return out.str();
}

// {{{1 accuracy

ConfusionCounts confusion(Engine engine, Semantics semantics, std::vector<Framework> const &frameworks,
                          Deadline const &deadline) {
    ConfusionCounts c;
    for (auto const &f : frameworks) {
        std::set<std::string> predicted;
        for (auto const &e : all_extensions(engine, f, semantics, deadline)) { predicted.insert(e.begin(), e.end()); }
        std::set<std::string> gold;
        for (auto const &e : all_extensions(Engine::oracle, f, semantics, deadline)) { gold.insert(e.begin(), e.end()); }
        for (auto const &a : f.arguments()) { c.add(predicted.count(a) != 0, gold.count(a) != 0); }
    }
    return c;
}

double mcc_eval(Engine engine, Semantics semantics, std::vector<Framework> const &frameworks, Deadline const &deadline) {
    return mcc(confusion(engine, semantics, frameworks, deadline));
}

} // namespace argil::bench

namespace argil::bench {

// {{{1 equivalence sweeps

namespace {

bool agrees(asp::Program const &program, Framework const &f, Semantics semantics, Deadline const &deadline) {
    asp::EngineOptions options;
    options.deadline = deadline;
    std::set<Extension> got;
    for (auto const &as : asp::minimal_answer_sets(program, to_facts(f), options)) { got.insert(in_atoms(as)); }
    auto want = oracle::extensions(f, semantics, oracle_options(f, deadline));
    return std::equal(got.begin(), got.end(), want.begin(), want.end());
}

Framework from_bits(std::size_t n, std::uint64_t bits) {
    FrameworkBuilder b;
    for (std::size_t i = 0; i < n; ++i) { b.argument(arg_name(i)); }
    for (std::size_t k = 0; k < n * n; ++k) {
        if ((bits >> k & 1U) != 0) { b.attack(arg_name(k / n), arg_name(k % n)); }
    }
    return b.build(FrameworkKind::aaf);
}

} // namespace

Sweep verify_exhaustive(asp::Program const &program, Semantics semantics, std::size_t max_args, Deadline const &deadline) {
    if (max_args > 5) { throw ResourceLimit("exhaustive sweeps are limited to 5 arguments"); }
    Sweep sweep;
    for (std::size_t n = 0; n <= max_args; ++n) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
            auto f = from_bits(n, bits);
            ++sweep.frameworks;
            if (!agrees(program, f, semantics, deadline)) {
                sweep.counterexample = std::move(f);
                return sweep;
            }
        }
    }
    return sweep;
}

Sweep verify_sampled(asp::Program const &program, Semantics semantics, std::size_t max_args, std::size_t samples,
                     std::uint64_t seed, Deadline const &deadline) {
    if (max_args == 0 || max_args > 8) { throw ValidationError("sampled sweeps need 1 to 8 arguments"); }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size(1, max_args);
    Sweep sweep;
    for (std::size_t i = 0; i < samples; ++i) {
        auto n = size(rng);
        auto bits = n * n == 64 ? rng() : rng() & ((std::uint64_t{1} << (n * n)) - 1);
        auto f = from_bits(n, bits);
        ++sweep.frameworks;
        if (!agrees(program, f, semantics, deadline)) {
            sweep.counterexample = std::move(f);
            return sweep;
        }
    }
    return sweep;
}

} // namespace argil::bench
