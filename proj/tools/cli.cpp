#include <argil/aba.hpp>
#include <argil/asp/solver.hpp>
#include <argil/bench.hpp>
#include <argil/cli.hpp>
#include <argil/encodings.hpp>
#include <argil/las.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

namespace argil::cli {

namespace {

//! Bad flags or unreadable input; reported with exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(std::string const &path) {
    std::ifstream in(path);
    if (!in) { throw UsageError("cannot read " + path); }
    std::stringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_file(std::string const &path, std::string const &text) {
    std::ofstream out(path);
    if (!out) { throw UsageError("cannot write " + path); }
    out << text;
}

Semantics semantics_of(std::string const &text) {
    auto s = parse_semantics(text);
    if (!s) { throw UsageError("unknown semantics '" + text + "'"); }
    return *s;
}

FrameworkKind kind_of(std::string const &text) {
    auto k = parse_kind(text);
    if (!k) { throw UsageError("unknown framework kind '" + text + "'"); }
    return *k;
}

bench::Engine engine_of(std::string const &text) {
    auto e = bench::parse_engine(text);
    if (!e) { throw UsageError("unknown engine '" + text + "'"); }
    return *e;
}

Framework load_framework(std::string const &path, std::string format) {
    if (format.empty()) {
        auto dot = path.rfind('.');
        auto ext = dot == std::string::npos ? "" : path.substr(dot);
        format = ext == ".af" || ext == ".iccma" ? "iccma" : "apx";
    }
    auto text = read_file(path);
    if (format == "apx") { return parse_apx(text); }
    if (format == "iccma") { return parse_iccma(text); }
    throw UsageError("unknown format '" + format + "'");
}

Deadline deadline_for(double seconds) { return seconds > 0 ? Deadline::after(seconds) : Deadline(); }

// {{{1 commands

struct SolveArgs {
    std::string file;
    std::string semantics;
    std::string format;
    std::string engine = "learned";
    std::size_t count = 0;
    double timeout = 0;
};

int solve(SolveArgs const &a, std::ostream &out) {
    auto s = semantics_of(a.semantics);
    auto engine = engine_of(a.engine);
    if (engine == bench::Engine::aspartix_adm && s != Semantics::admissible) {
        throw UsageError("the aspartix engine requires --semantics admissible");
    }
    auto f = load_framework(a.file, a.format);
    auto deadline = deadline_for(a.timeout);
    std::vector<Extension> found;
    if (a.count == 1) {
        if (auto e = bench::find_extension(engine, f, s, deadline)) { found.push_back(*e); }
    }
    else {
        found = bench::all_extensions(engine, f, s, deadline);
        if (a.count > 0 && found.size() > a.count) { found.resize(a.count); }
    }
    if (found.empty()) { out << "NO EXTENSION\n"; }
    for (auto const &e : found) { out << str(e) << '\n'; }
    return 0;
}

int enumerate(SolveArgs const &a, std::ostream &out) {
    auto s = semantics_of(a.semantics);
    auto f = load_framework(a.file, a.format);
    asp::EngineOptions options;
    options.deadline = deadline_for(a.timeout);
    auto sets = asp::minimal_answer_sets(encodings::full_semantics(f.kind(), s), to_facts(f), options);
    if (sets.empty()) { out << "NO ANSWER SET\n"; }
    for (auto const &as : sets) { out << asp::str(as) << '\n'; }
    return 0;
}

struct TranslateArgs {
    std::string file;
    std::string table;
};

int translate_aba(TranslateArgs const &a, std::ostream &out) {
    auto t = aba::translate(parse_aba(read_file(a.file)));
    out << to_apx(t.framework);
    if (!a.table.empty()) { write_file(a.table, aba::table_csv(t.arguments)); }
    return 0;
}

struct LearnArgs {
    std::string semantics;
    std::string examples;
    std::string kind = "aaf";
    bool heuristics = false;
    std::size_t max_body = 3;
    std::size_t max_vars = 2;
    std::size_t max_cost = 12;
    double timeout = 0;
    std::size_t verify = 0;
};

int learn(LearnArgs const &a, std::ostream &out, std::ostream &err) {
    auto s = semantics_of(a.semantics);
    auto kind = kind_of(a.kind);
    auto examples = a.examples.empty() ? las::fixture_examples(s) : las::parse_examples(read_file(a.examples));
    if (a.verify > 0 && kind != FrameworkKind::aaf) { throw UsageError("--verify needs --kind aaf"); }
    las::LearningTask task;
    task.background = encodings::background(kind);
    task.positives = examples.positives;
    task.negatives = examples.negatives;
    task.learn_heuristics = a.heuristics;
    las::LearnOptions options;
    options.max_body = a.max_body;
    options.max_vars = a.max_vars;
    options.max_cost = a.max_cost;
    options.deadline = deadline_for(a.timeout);
    las::Hypothesis h;
    try {
        h = las::learn(task, options);
    }
    catch (Unsatisfiable const &e) {
        out << "UNSATISFIABLE\n";
        err << "argil: " << e.what() << '\n';
        return 1;
    }
    out << h.str() << "% cost " << h.cost << '\n';
    if (a.verify == 0) { return 0; }
    auto sweep = bench::verify_exhaustive(task.background + h.program(), s, a.verify);
    if (sweep.passed()) {
        out << "% verify " << a.verify << ": PASS (" << sweep.frameworks << " frameworks)\n";
        return 0;
    }
    std::string apx = to_apx(*sweep.counterexample);
    std::replace(apx.begin(), apx.end(), '\n', ' ');
    out << "% verify " << a.verify << ": FAIL on " << apx << '\n';
    return 1;
}

struct GenArgs {
    std::string semantics;
    std::size_t positives = 4;
    std::size_t negatives = 4;
    std::size_t frameworks = 10;
    std::size_t args = 4;
    double attack_prob = 0.25;
    std::uint64_t seed = 0;
};

int gen_examples(GenArgs const &a, std::ostream &out) {
    auto s = semantics_of(a.semantics);
    std::vector<Framework> frameworks;
    for (std::size_t i = 0; i < a.frameworks; ++i) {
        frameworks.push_back(bench::gen_random_af(a.args, a.attack_prob, a.seed + i));
    }
    out << las::generate_examples(s, frameworks, a.positives, a.negatives, a.seed).str();
    return 0;
}

struct ShowArgs {
    std::string kind = "aaf";
    std::string semantics;
    bool aspartix = false;
};

int show_encoding(ShowArgs const &a, std::ostream &out) {
    if (a.aspartix) {
        out << encodings::source("aspartix_adm");
        return 0;
    }
    if (a.semantics.empty()) { throw UsageError("--semantics is required unless --aspartix is given"); }
    auto s = semantics_of(a.semantics);
    if (s == Semantics::conflict_free) { throw UsageError("no stored encoding for conflict_free semantics"); }
    out << encodings::full_semantics_source(kind_of(a.kind), s);
    return 0;
}

struct BenchArgs {
    std::string dir;
    std::size_t random = 0;
    std::size_t min_args = 5;
    std::size_t max_args = 25;
    double attack_prob = 0.25;
    std::uint64_t seed = 0;
    std::vector<std::string> engines{"learned"};
    std::vector<std::string> semantics{"admissible", "complete", "grounded", "preferred", "stable"};
    std::optional<double> timeout;
    std::size_t workers = 1;
    double threshold = 1200;
    std::string csv;
    bool mcc = false;
};

int run_bench(BenchArgs const &a, std::ostream &out, std::ostream &err) {
    if (a.dir.empty() == (a.random == 0)) { throw UsageError("give exactly one of --dir and --random"); }
    if (a.min_args > a.max_args) { throw UsageError("--min-args exceeds --max-args"); }
    std::vector<bench::Instance> instances;
    if (!a.dir.empty()) {
        if (!std::filesystem::is_directory(a.dir)) { throw UsageError("not a directory: " + a.dir); }
        instances = bench::load_instances(a.dir);
    }
    else {
        std::mt19937_64 rng(a.seed);
        std::uniform_int_distribution<std::size_t> size(a.min_args, a.max_args);
        for (std::size_t i = 0; i < a.random; ++i) {
            auto n = size(rng);
            char id[32];
            std::snprintf(id, sizeof id, "random_%04zu", i + 1);
            instances.push_back({id, bench::gen_random_af(n, a.attack_prob, rng())});
        }
    }
    std::vector<bench::Engine> engines;
    for (auto const &e : a.engines) { engines.push_back(engine_of(e)); }
    std::vector<Semantics> sems;
    for (auto const &s : a.semantics) { sems.push_back(semantics_of(s)); }

    if (a.mcc) {
        std::vector<Framework> frameworks;
        for (auto const &i : instances) { frameworks.push_back(i.framework); }
        out << "engine,semantics,tp,tn,fp,fn,mcc\n";
        for (auto e : engines) {
            for (auto s : sems) {
                auto c = bench::confusion(e, s, frameworks);
                char value[32];
                std::snprintf(value, sizeof value, "%.6f", bench::mcc(c));
                out << bench::to_string(e) << ',' << to_string(s) << ',' << c.tp << ',' << c.tn << ',' << c.fp << ','
                    << c.fn << ',' << value << '\n';
            }
        }
        return 0;
    }

    bench::SuiteOptions options;
    options.timeout = a.timeout ? *a.timeout : bench::default_timeout();
    options.workers = a.workers;
    auto results = bench::run_suite(instances, engines, sems, options);
    auto csv = bench::to_csv(results);
    if (a.csv.empty()) { out << csv; }
    else { write_file(a.csv, csv); }
    auto &summary = a.csv.empty() ? err : out;
    for (auto e : engines) {
        for (auto s : sems) {
            std::vector<bench::RunResult> subset;
            for (auto const &r : results) {
                if (r.engine == e && r.semantics == s) { subset.push_back(r); }
            }
            if (subset.empty()) { continue; }
            char value[32];
            std::snprintf(value, sizeof value, "%.3f", bench::par2(subset, a.threshold));
            summary << "par2 " << bench::to_string(e) << ' ' << to_string(s) << ' ' << value << '\n';
        }
    }
    return 0;
}

} // namespace

// {{{1 entry point

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Argumentation semantics in answer set programming", "argil"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto *solve_cmd = app.add_subcommand("solve", "Print extensions of a framework");
    SolveArgs enum_args;
    auto *enum_cmd = app.add_subcommand("enumerate", "Print the answer sets of the encoding for a framework");
    for (auto [cmd, target] : {std::pair{solve_cmd, &solve_args}, std::pair{enum_cmd, &enum_args}}) {
        cmd->add_option("file", target->file, "Framework file")->required();
        cmd->add_option("-s,--semantics", target->semantics, "Semantics")->required();
        cmd->add_option("-f,--format", target->format, "apx or iccma (default: from the file extension)");
        cmd->add_option("-t,--timeout", target->timeout, "Seconds, 0 for none");
    }
    solve_cmd->add_option("-e,--engine", solve_args.engine, "learned, aspartix or oracle");
    solve_cmd->add_option("-n", solve_args.count, "Number of extensions, 0 for all");

    TranslateArgs translate_args;
    auto *translate_cmd = app.add_subcommand("translate-aba", "Translate a flat ABA framework to APX");
    translate_cmd->add_option("file", translate_args.file, "ABA file")->required();
    translate_cmd->add_option("--table", translate_args.table, "Write the argument table as CSV");

    LearnArgs learn_args;
    auto *learn_cmd = app.add_subcommand("learn", "Learn a semantics from examples");
    learn_cmd->add_option("-s,--semantics", learn_args.semantics, "Semantics")->required();
    learn_cmd->add_option("--examples", learn_args.examples, "Example file (default: the stored set)");
    learn_cmd->add_option("--kind", learn_args.kind, "Background: aaf, baf or vaf");
    learn_cmd->add_flag("--learn-heuristics", learn_args.heuristics, "Also learn heuristic statements");
    learn_cmd->add_option("--max-body", learn_args.max_body, "Body literals per rule");
    learn_cmd->add_option("--max-vars", learn_args.max_vars, "Variables per rule");
    learn_cmd->add_option("--max-cost", learn_args.max_cost, "Largest hypothesis cost");
    learn_cmd->add_option("-t,--timeout", learn_args.timeout, "Seconds, 0 for none");
    learn_cmd->add_option("--verify", learn_args.verify, "Check against the oracle on all frameworks up to N arguments");

    GenArgs gen_args;
    auto *gen_cmd = app.add_subcommand("gen-examples", "Generate labelled examples from random frameworks");
    gen_cmd->add_option("-s,--semantics", gen_args.semantics, "Semantics")->required();
    gen_cmd->add_option("--pos", gen_args.positives, "Positive examples");
    gen_cmd->add_option("--neg", gen_args.negatives, "Negative examples");
    gen_cmd->add_option("--frameworks", gen_args.frameworks, "Frameworks to sample from");
    gen_cmd->add_option("--args", gen_args.args, "Arguments per framework");
    gen_cmd->add_option("--attack-prob", gen_args.attack_prob, "Attack probability");
    gen_cmd->add_option("--seed", gen_args.seed, "Random seed");

    ShowArgs show_args;
    auto *show_cmd = app.add_subcommand("show-encoding", "Print a stored encoding with its background");
    show_cmd->add_option("--kind", show_args.kind, "aaf, baf or vaf");
    show_cmd->add_option("-s,--semantics", show_args.semantics, "Semantics");
    show_cmd->add_flag("--aspartix", show_args.aspartix, "Print the reference admissible encoding");

    BenchArgs bench_args;
    auto *bench_cmd = app.add_subcommand("bench", "Time engines on a set of frameworks");
    bench_cmd->add_option("--dir", bench_args.dir, "Directory of .apx and ICCMA files");
    bench_cmd->add_option("--random", bench_args.random, "Number of random frameworks");
    bench_cmd->add_option("--min-args", bench_args.min_args, "Smallest random framework");
    bench_cmd->add_option("--max-args", bench_args.max_args, "Largest random framework");
    bench_cmd->add_option("--attack-prob", bench_args.attack_prob, "Attack probability");
    bench_cmd->add_option("--seed", bench_args.seed, "Random seed");
    bench_cmd->add_option("--engines", bench_args.engines, "learned, aspartix, oracle")->delimiter(',');
    bench_cmd->add_option("--semantics", bench_args.semantics, "Semantics to run")->delimiter(',');
    bench_cmd->add_option("-t,--timeout", bench_args.timeout, "Seconds per run (default: ARGIL_TIMEOUT or 1200)");
    bench_cmd->add_option("--workers", bench_args.workers, "Parallel runs");
    bench_cmd->add_option("--threshold", bench_args.threshold, "PAR-2 threshold in seconds");
    bench_cmd->add_option("--csv", bench_args.csv, "Write the CSV here instead of standard output");
    bench_cmd->add_flag("--mcc", bench_args.mcc, "Report credulous acceptance accuracy instead of timings");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::ParseError const &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve_cmd) { return solve(solve_args, out); }
        if (*enum_cmd) { return enumerate(enum_args, out); }
        if (*translate_cmd) { return translate_aba(translate_args, out); }
        if (*learn_cmd) { return learn(learn_args, out, err); }
        if (*gen_cmd) { return gen_examples(gen_args, out); }
        if (*show_cmd) { return show_encoding(show_args, out); }
        if (*bench_cmd) { return run_bench(bench_args, out, err); }
    }
    catch (UsageError const &e) {
        err << "argil: " << e.what() << '\n';
        return 2;
    }
    catch (ParseError const &e) {
        err << "argil: " << e.what() << '\n';
        return 2;
    }
    catch (ValidationError const &e) {
        err << "argil: " << e.what() << '\n';
        return 2;
    }
    catch (Timeout const &) {
        out << "TIMEOUT\n";
        err << "argil: deadline exceeded\n";
        return 1;
    }
    catch (std::exception const &e) {
        err << "argil: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace argil::cli
