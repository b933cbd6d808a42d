#include <argil/asp/parser.hpp>
#include <argil/error.hpp>

#include <cctype>

namespace argil::asp {

namespace {

Term parse_term(Lexer &lexer) {
    auto const &tok = lexer.peek();
    if (tok.kind == TokenKind::Variable) { return Term::var(lexer.next().text); }
    if (tok.kind == TokenKind::Identifier) { return Term::constant(lexer.next().text); }
    lexer.fail("expected a term, found '" + tok.text + "'");
}

void parse_heuristic(Lexer &lexer, Program &program) {
    auto atom = parse_atom(lexer);
    lexer.expect(TokenKind::Dot);
    lexer.expect(TokenKind::LBracket);
    auto weight = lexer.expect(TokenKind::Identifier);
    lexer.expect(TokenKind::At);
    auto priority = lexer.expect(TokenKind::Identifier);
    lexer.expect(TokenKind::Comma);
    auto modifier = lexer.expect(TokenKind::Identifier);
    if (weight.text != "1" || priority.text != "1" || modifier.text != "false") {
        throw ParseError("unsupported heuristic modifier [" + weight.text + "@" + priority.text + ", " + modifier.text +
                             "]; only [1@1, false] is supported",
                         weight.line, weight.column);
    }
    lexer.expect(TokenKind::RBracket);
    program.add_heuristic(std::move(atom));
}

Rule parse_rule(Lexer &lexer) {
    Rule rule;
    if (lexer.peek().kind != TokenKind::If) { rule.head = parse_atom(lexer); }
    if (lexer.accept(TokenKind::If)) {
        do {
            if (lexer.peek().kind == TokenKind::Identifier && lexer.peek().text == "not") {
                lexer.next();
                rule.neg.push_back(parse_atom(lexer));
            }
            else {
                rule.pos.push_back(parse_atom(lexer));
            }
        } while (lexer.accept(TokenKind::Comma));
    }
    else if (!rule.head) {
        lexer.fail("expected a rule");
    }
    lexer.expect(TokenKind::Dot);
    return rule;
}

} // namespace

Atom parse_atom(Lexer &lexer) {
    auto const &tok = lexer.peek();
    if (tok.kind != TokenKind::Identifier || std::isdigit(static_cast<unsigned char>(tok.text.front())) != 0) {
        lexer.fail("expected a predicate name, found '" + tok.text + "'");
    }
    Atom atom(lexer.next().text);
    if (lexer.accept(TokenKind::LParen)) {
        do { atom.args.push_back(parse_term(lexer)); } while (lexer.accept(TokenKind::Comma));
        lexer.expect(TokenKind::RParen);
    }
    return atom;
}

Program parse_program(std::string_view text) {
    Lexer lexer(text);
    Program program;
    while (lexer.peek().kind != TokenKind::End) {
        auto const &tok = lexer.peek();
        if (tok.kind == TokenKind::Directive) {
            if (tok.text != "#heuristic") { lexer.fail("unsupported directive '" + tok.text + "'"); }
            lexer.next();
            parse_heuristic(lexer, program);
            continue;
        }
        auto line = tok.line;
        auto column = tok.column;
        auto rule = parse_rule(lexer);
        if (auto unsafe = rule.unsafe_variables(); !unsafe.empty()) {
            throw ParseError("unsafe variable " + unsafe.front() + " in rule " + rule.str(), line, column);
        }
        program.add(std::move(rule));
    }
    return program;
}

std::vector<Atom> parse_facts(std::string_view text) {
    Lexer lexer(text);
    std::vector<Atom> facts;
    while (lexer.peek().kind != TokenKind::End) {
        auto line = lexer.peek().line;
        auto column = lexer.peek().column;
        auto atom = parse_atom(lexer);
        if (!atom.is_ground()) { throw ParseError("fact " + atom.str() + " is not ground", line, column); }
        lexer.expect(TokenKind::Dot);
        facts.push_back(std::move(atom));
    }
    return facts;
}

} // namespace argil::asp
