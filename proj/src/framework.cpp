#include <argil/asp/lexer.hpp>
#include <argil/asp/parser.hpp>
#include <argil/error.hpp>
#include <argil/framework.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace argil {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void require_symbol(std::string const &name, char const *what) {
    if (!is_symbol(name)) { throw ValidationError(std::string("invalid ") + what + " name '" + name + "'"); }
}

// Transitive closure of a relation over strings.
std::set<std::pair<std::string, std::string>> closure(std::set<std::pair<std::string, std::string>> rel) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<std::string, std::string>> added;
        for (auto const &[a, b] : rel) {
            for (auto it = rel.lower_bound({b, ""}); it != rel.end() && it->first == b; ++it) {
                if (rel.count({a, it->second}) == 0) { added.emplace_back(a, it->second); }
            }
        }
        for (auto &p : added) { changed |= rel.insert(std::move(p)).second; }
    }
    return rel;
}

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    for (std::string w; in >> w;) { words.push_back(w); }
    return words;
}

} // namespace

std::string_view to_string(FrameworkKind kind) {
    switch (kind) {
        case FrameworkKind::aaf: return "aaf";
        case FrameworkKind::baf: return "baf";
        case FrameworkKind::vaf: return "vaf";
    }
    return "aaf";
}

std::optional<FrameworkKind> parse_kind(std::string_view text) {
    auto t = lower(text);
    if (t == "aaf") { return FrameworkKind::aaf; }
    if (t == "baf") { return FrameworkKind::baf; }
    if (t == "vaf") { return FrameworkKind::vaf; }
    return std::nullopt;
}

bool is_symbol(std::string_view name) {
    if (name.empty() || std::islower(static_cast<unsigned char>(name.front())) == 0) { return false; }
    return std::all_of(name.begin(), name.end(),
                       [](unsigned char c) { return std::isalnum(c) != 0 || c == '_'; });
}

std::string str(Extension const &extension) {
    std::string out = "{";
    for (auto const &name : extension) {
        if (out.size() > 1) { out += ','; }
        out += name;
    }
    return out + "}";
}

// {{{1 Framework

std::optional<std::size_t> Framework::index_of(std::string_view name) const {
    auto it = std::lower_bound(arguments_.begin(), arguments_.end(), name);
    if (it == arguments_.end() || *it != name) { return std::nullopt; }
    return static_cast<std::size_t>(it - arguments_.begin());
}

FrameworkBuilder &FrameworkBuilder::argument(std::string name) {
    arguments_.insert(std::move(name));
    return *this;
}

FrameworkBuilder &FrameworkBuilder::attack(std::string from, std::string to) {
    attacks_.emplace(std::move(from), std::move(to));
    return *this;
}

FrameworkBuilder &FrameworkBuilder::support(std::string from, std::string to) {
    supports_.emplace(std::move(from), std::move(to));
    return *this;
}

FrameworkBuilder &FrameworkBuilder::value(std::string argument, std::string value) {
    values_.emplace_back(std::move(argument), std::move(value));
    return *this;
}

FrameworkBuilder &FrameworkBuilder::value_preference(std::string preferred, std::string other) {
    valprefs_.emplace(std::move(preferred), std::move(other));
    return *this;
}

Framework FrameworkBuilder::build(std::optional<FrameworkKind> kind) const {
    bool valued = !values_.empty() || !valprefs_.empty();
    FrameworkKind inferred = valued ? FrameworkKind::vaf : !supports_.empty() ? FrameworkKind::baf : FrameworkKind::aaf;
    FrameworkKind k = kind.value_or(inferred);
    if (k != FrameworkKind::vaf && valued) {
        throw ValidationError("values and value preferences are only allowed in a VAF");
    }
    if (k != FrameworkKind::baf && !supports_.empty()) { throw ValidationError("supports are only allowed in a BAF"); }

    Framework f;
    f.kind_ = k;
    for (auto const &a : arguments_) { require_symbol(a, "argument"); }
    f.arguments_.assign(arguments_.begin(), arguments_.end());

    auto index = [&](std::string const &name, char const *relation, std::pair<std::string, std::string> const &p) {
        auto i = f.index_of(name);
        if (!i) {
            throw ValidationError("argument " + name + " in " + relation + "(" + p.first + "," + p.second +
                                  ") is not declared");
        }
        return *i;
    };
    for (auto const &p : attacks_) { f.attacks_.insert({index(p.first, "att", p), index(p.second, "att", p)}); }
    for (auto const &p : supports_) {
        Edge e{index(p.first, "support", p), index(p.second, "support", p)};
        if (f.attacks_.count(e) != 0) {
            throw ValidationError("support(" + p.first + "," + p.second + ") is also declared as an attack");
        }
        f.supports_.insert(e);
    }

    if (k == FrameworkKind::vaf) {
        std::vector<std::optional<std::string>> values(f.size());
        for (auto const &[arg, value] : values_) {
            require_symbol(value, "value");
            auto i = f.index_of(arg);
            if (!i) { throw ValidationError("argument " + arg + " in val(" + arg + "," + value + ") is not declared"); }
            if (values[*i] && *values[*i] != value) {
                throw ValidationError("argument " + arg + " has two values: " + *values[*i] + " and " + value);
            }
            values[*i] = value;
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!values[i]) { throw ValidationError("argument " + f.arguments_[i] + " has no value"); }
            f.values_.push_back(*values[i]);
        }
        for (auto const &[u, v] : valprefs_) {
            require_symbol(u, "value");
            require_symbol(v, "value");
        }
        for (auto const &[u, v] : closure(valprefs_)) {
            if (u == v) { throw ValidationError("value preference is cyclic through value " + u); }
        }
        f.valprefs_ = valprefs_;
    }
    return f;
}

// {{{1 parsers

Framework parse_apx(std::string_view text) {
    asp::Lexer lexer(text);
    FrameworkBuilder builder;
    while (lexer.peek().kind != asp::TokenKind::End) {
        auto line = lexer.peek().line;
        auto column = lexer.peek().column;
        auto atom = asp::parse_atom(lexer);
        lexer.expect(asp::TokenKind::Dot);
        if (!atom.is_ground()) { throw ParseError("fact " + atom.str() + " contains a variable", line, column); }
        auto arg = [&](std::size_t i) { return atom.args[i].name; };
        auto const &p = atom.predicate;
        try {
            if (p == "arg" && atom.arity() == 1) {
                require_symbol(arg(0), "argument");
                builder.argument(arg(0));
            }
            else if (p == "att" && atom.arity() == 2) {
                builder.attack(arg(0), arg(1));
            }
            else if (p == "support" && atom.arity() == 2) {
                builder.support(arg(0), arg(1));
            }
            else if (p == "val" && atom.arity() == 2) {
                builder.value(arg(0), arg(1));
            }
            else if (p == "valpref" && atom.arity() == 2) {
                builder.value_preference(arg(0), arg(1));
            }
            else {
                throw ParseError("unknown fact " + p + "/" + std::to_string(atom.arity()), line, column);
            }
        }
        catch (ValidationError const &e) {
            throw ParseError(e.what(), line, column);
        }
    }
    return builder.build();
}

Framework parse_iccma(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::optional<std::size_t> n;
    FrameworkBuilder builder;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) { line.erase(hash); }
        auto words = split_words(line);
        if (words.empty()) { continue; }
        if (!n) {
            if (words.size() != 3 || words[0] != "p" || words[1] != "af") {
                throw ParseError("expected header 'p af <n>'", lineno, 1);
            }
            try {
                std::size_t used = 0;
                long long count = std::stoll(words[2], &used);
                if (used != words[2].size() || count < 0) { throw std::invalid_argument("count"); }
                n = static_cast<std::size_t>(count);
            }
            catch (std::exception const &) {
                throw ParseError("malformed argument count '" + words[2] + "'", lineno, 1);
            }
            for (std::size_t i = 1; i <= *n; ++i) { builder.argument("a" + std::to_string(i)); }
            continue;
        }
        if (words.size() != 2) { throw ParseError("expected '<i> <j>'", lineno, 1); }
        std::size_t ends[2];
        for (int k = 0; k < 2; ++k) {
            auto const &w = words[static_cast<std::size_t>(k)];
            bool digits = !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); });
            if (!digits) { throw ParseError("malformed argument index '" + w + "'", lineno, 1); }
            auto value = w.size() > 18 ? *n + 1 : static_cast<std::size_t>(std::stoull(w));
            if (value < 1 || value > *n) {
                throw ParseError("index " + w + " out of range 1.." + std::to_string(*n), lineno, 1);
            }
            ends[k] = value;
        }
        builder.attack("a" + std::to_string(ends[0]), "a" + std::to_string(ends[1]));
    }
    if (!n) { throw ParseError("missing header 'p af <n>'", 0, 0); }
    return builder.build(FrameworkKind::aaf);
}

std::vector<asp::Atom> to_facts(Framework const &f) {
    using asp::Atom;
    std::vector<Atom> facts;
    for (auto const &a : f.arguments()) { facts.push_back(Atom::ground("arg", {a})); }
    for (auto const &e : f.attacks()) { facts.push_back(Atom::ground("att", {f.name(e.from), f.name(e.to)})); }
    for (auto const &e : f.supports()) { facts.push_back(Atom::ground("support", {f.name(e.from), f.name(e.to)})); }
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        facts.push_back(Atom::ground("val", {f.name(i), f.values()[i]}));
    }
    for (auto const &[u, v] : f.value_preferences()) { facts.push_back(Atom::ground("valpref", {u, v})); }
    std::sort(facts.begin(), facts.end());
    return facts;
}

std::string to_apx(Framework const &framework) {
    std::string out;
    for (auto const &fact : to_facts(framework)) { out += fact.str() + ".\n"; }
    return out;
}

// {{{1 ABA

AbaFramework::AbaFramework(std::vector<AbaRule> rules, std::set<std::string> assumptions,
                           std::map<std::string, std::string> contrary)
: rules_(std::move(rules))
, assumptions_(std::move(assumptions))
, contrary_(std::move(contrary)) {
    if (assumptions_.empty()) { throw ValidationError("an ABA framework needs at least one assumption"); }
    for (auto const &a : assumptions_) {
        require_symbol(a, "assumption");
        language_.insert(a);
        auto it = contrary_.find(a);
        if (it == contrary_.end()) { throw ValidationError("assumption " + a + " has no contrary"); }
    }
    for (auto const &[a, c] : contrary_) {
        if (assumptions_.count(a) == 0) { throw ValidationError("contrary given for non-assumption " + a); }
        require_symbol(c, "atom");
        language_.insert(c);
    }
    for (auto const &r : rules_) {
        require_symbol(r.head, "atom");
        if (assumptions_.count(r.head) != 0) {
            throw ValidationError("rule with head " + r.head + " makes the framework non-flat");
        }
        language_.insert(r.head);
        for (auto const &b : r.body) {
            require_symbol(b, "atom");
            language_.insert(b);
        }
    }
}

AbaFramework parse_aba(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<AbaRule> rules;
    std::set<std::string> assumptions;
    std::map<std::string, std::string> contrary;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto pct = line.find('%'); pct != std::string::npos) { line.erase(pct); }
        auto words = split_words(line);
        if (words.empty()) { continue; }
        auto fail = [&](std::string const &message) -> void { throw ParseError(message, lineno, 1); };
        for (auto const &w : words) {
            if (&w != &words.front() && !is_symbol(w)) { fail("invalid atom name '" + w + "'"); }
        }
        auto const &keyword = words.front();
        if (keyword == "assumption") {
            if (words.size() != 2) { fail("expected 'assumption <atom>'"); }
            assumptions.insert(words[1]);
        }
        else if (keyword == "contrary") {
            if (words.size() != 3) { fail("expected 'contrary <assumption> <atom>'"); }
            if (!contrary.emplace(words[1], words[2]).second) { fail("duplicate contrary for " + words[1]); }
        }
        else if (keyword == "rule") {
            if (words.size() < 2) { fail("expected 'rule <head> <body...>'"); }
            rules.push_back(AbaRule{words[1], {words.begin() + 2, words.end()}});
        }
        else {
            fail("unknown statement '" + keyword + "'");
        }
    }
    return AbaFramework(std::move(rules), std::move(assumptions), std::move(contrary));
}

} // namespace argil
