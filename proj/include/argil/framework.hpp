#pragma once

#include <argil/asp/syntax.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace argil {

enum class FrameworkKind { aaf, baf, vaf };

std::string_view to_string(FrameworkKind kind);
//! Accepts `aaf`, `baf`, `vaf` in any case.
std::optional<FrameworkKind> parse_kind(std::string_view text);

//! An ordered pair of argument indices.
struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;

    friend auto operator<=>(Edge const &, Edge const &) = default;
};

//! True for tokens usable as argument, value, or ABA atom names: a lowercase
//! letter followed by letters, digits, and underscores.
bool is_symbol(std::string_view name);

//! A set of argument names.
using Extension = std::set<std::string>;

//! Renders `{a,b}` with members in lexicographic order.
std::string str(Extension const &extension);

//! An abstract, bipolar, or value-based argumentation framework.
//!
//! Arguments are kept in lexicographic order and relations refer to them by
//! index. Instances are immutable; use FrameworkBuilder to create them.
class Framework {
public:
    Framework() = default;

    [[nodiscard]] FrameworkKind kind() const { return kind_; }
    [[nodiscard]] std::size_t size() const { return arguments_.size(); }
    [[nodiscard]] std::vector<std::string> const &arguments() const { return arguments_; }
    [[nodiscard]] std::string const &name(std::size_t index) const { return arguments_.at(index); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

    [[nodiscard]] std::set<Edge> const &attacks() const { return attacks_; }
    [[nodiscard]] std::set<Edge> const &supports() const { return supports_; }
    //! Value of every argument, by index; empty unless the framework is a VAF.
    [[nodiscard]] std::vector<std::string> const &values() const { return values_; }
    //! Pairs (preferred value, less preferred value) as given, not closed.
    [[nodiscard]] std::set<std::pair<std::string, std::string>> const &value_preferences() const { return valprefs_; }

    friend bool operator==(Framework const &, Framework const &) = default;

private:
    friend class FrameworkBuilder;

    FrameworkKind kind_ = FrameworkKind::aaf;
    std::vector<std::string> arguments_;
    std::set<Edge> attacks_;
    std::set<Edge> supports_;
    std::vector<std::string> values_;
    std::set<std::pair<std::string, std::string>> valprefs_;
};

class FrameworkBuilder {
public:
    FrameworkBuilder &argument(std::string name);
    FrameworkBuilder &attack(std::string from, std::string to);
    FrameworkBuilder &support(std::string from, std::string to);
    FrameworkBuilder &value(std::string argument, std::string value);
    FrameworkBuilder &value_preference(std::string preferred, std::string other);

    //! Validates and builds the framework.
    //!
    //! Without an explicit kind it is inferred: VAF if values or value
    //! preferences were given, else BAF if supports were given, else AAF.
    //! Throws ValidationError when an invariant does not hold.
    [[nodiscard]] Framework build(std::optional<FrameworkKind> kind = std::nullopt) const;

private:
    std::set<std::string> arguments_;
    std::set<std::pair<std::string, std::string>> attacks_;
    std::set<std::pair<std::string, std::string>> supports_;
    std::vector<std::pair<std::string, std::string>> values_;
    std::set<std::pair<std::string, std::string>> valprefs_;
};

//! Parses `arg/1`, `att/2`, `support/2`, `val/2` and `valpref/2` facts.
Framework parse_apx(std::string_view text);

//! Parses the `p af <n>` format; argument i becomes `a<i>`.
Framework parse_iccma(std::string_view text);

//! The facts encoding a framework, in lexicographic order.
std::vector<asp::Atom> to_facts(Framework const &framework);

//! Renders `to_facts` as APX text, one fact per line.
std::string to_apx(Framework const &framework);

struct AbaRule {
    std::string head;
    std::vector<std::string> body;

    friend auto operator<=>(AbaRule const &, AbaRule const &) = default;
};

//! A flat assumption-based argumentation framework.
class AbaFramework {
public:
    //! Validates flatness, the contrary map, and that there is at least one assumption.
    AbaFramework(std::vector<AbaRule> rules, std::set<std::string> assumptions,
                 std::map<std::string, std::string> contrary);

    [[nodiscard]] std::set<std::string> const &language() const { return language_; }
    [[nodiscard]] std::vector<AbaRule> const &rules() const { return rules_; }
    [[nodiscard]] std::set<std::string> const &assumptions() const { return assumptions_; }
    [[nodiscard]] std::map<std::string, std::string> const &contrary() const { return contrary_; }

    friend bool operator==(AbaFramework const &, AbaFramework const &) = default;

private:
    std::set<std::string> language_;
    std::vector<AbaRule> rules_;
    std::set<std::string> assumptions_;
    std::map<std::string, std::string> contrary_;
};

//! Parses `assumption <a>`, `contrary <a> <c>` and `rule <head> <body...>` lines.
AbaFramework parse_aba(std::string_view text);

} // namespace argil
