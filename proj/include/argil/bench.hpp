#pragma once

#include <argil/asp/syntax.hpp>
#include <argil/error.hpp>
#include <argil/framework.hpp>
#include <argil/semantics.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace argil::bench {

enum class Engine { learned, aspartix_adm, oracle };

std::string_view to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view text);

enum class Outcome { solved, timeout, error };

std::string_view to_string(Outcome outcome);

struct RunResult {
    std::string instance;
    Engine engine = Engine::learned;
    Semantics semantics = Semantics::stable;
    double seconds = 0;
    Outcome outcome = Outcome::solved;
    //! Empty for a solved run means no extension exists.
    std::optional<Extension> extension;
    std::string message;
};

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    void add(bool predicted, bool gold);
    [[nodiscard]] std::uint64_t total() const { return tp + tn + fp + fn; }

    friend bool operator==(ConfusionCounts const &, ConfusionCounts const &) = default;
};

//! Penalised average runtime; timeouts and errors count twice the threshold.
//!
//! Throws ValidationError on empty input.
double par2(std::vector<RunResult> const &results, double threshold = 1200);

//! Matthews correlation coefficient, 0 when the denominator vanishes.
double mcc(ConfusionCounts const &counts);

//! Arguments a1..an, each ordered pair attacking independently with probability `attack_prob`.
Framework gen_random_af(std::size_t n_args, double attack_prob, std::uint64_t seed);

//! Bipolar and value-based variants: supports on pairs that do not attack,
//! values from a pool of `values` names with a random strict order on them.
Framework gen_random_baf(std::size_t n_args, double attack_prob, double support_prob, std::uint64_t seed);
Framework gen_random_vaf(std::size_t n_args, double attack_prob, std::size_t values, std::uint64_t seed);

struct Instance {
    std::string id;
    Framework framework;
};

//! Every `.apx` and ICCMA (`.af`, `.iccma`) file in `dir`, sorted by file name.
std::vector<Instance> load_instances(std::filesystem::path const &dir);

//! Timeout from ARGIL_TIMEOUT, else `fallback`.
double default_timeout(double fallback = 1200);

//! One extension, or nothing if none exists.
//!
//! The aspartix engine supports admissible semantics on abstract frameworks only.
std::optional<Extension> find_extension(Engine engine, Framework const &framework, Semantics semantics,
                                        Deadline const &deadline = {});

//! All extensions, sorted.
std::vector<Extension> all_extensions(Engine engine, Framework const &framework, Semantics semantics,
                                      Deadline const &deadline = {});

struct SuiteOptions {
    double timeout = 1200;
    std::size_t workers = 1;
};

//! Runs every engine and semantics on every instance; rows sorted by instance, engine, semantics.
std::vector<RunResult> run_suite(std::vector<Instance> const &instances, std::vector<Engine> const &engines,
                                 std::vector<Semantics> const &semantics, SuiteOptions const &options = {});

std::string to_csv(std::vector<RunResult> const &results);

//! Credulous acceptance of every argument under `engine` against the oracle.
ConfusionCounts confusion(Engine engine, Semantics semantics, std::vector<Framework> const &frameworks,
                          Deadline const &deadline = {});

double mcc_eval(Engine engine, Semantics semantics, std::vector<Framework> const &frameworks,
                Deadline const &deadline = {});

//! Outcome of comparing a program against the oracle on many frameworks.
struct Sweep {
    std::size_t frameworks = 0;
    //! First framework where the in-projections of the answer sets differ from the extensions.
    std::optional<Framework> counterexample;

    [[nodiscard]] bool passed() const { return !counterexample; }
};

//! Every abstract framework on arguments a1..an for n up to `max_args`.
Sweep verify_exhaustive(asp::Program const &program, Semantics semantics, std::size_t max_args,
                        Deadline const &deadline = {});

//! `samples` frameworks with 1..max_args arguments, every attack relation equally likely.
Sweep verify_sampled(asp::Program const &program, Semantics semantics, std::size_t max_args, std::size_t samples,
                     std::uint64_t seed, Deadline const &deadline = {});

} // namespace argil::bench
