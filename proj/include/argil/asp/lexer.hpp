#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace argil::asp {

enum class TokenKind {
    Identifier, // lowercase-initial name or integer
    Variable,   // uppercase-initial name
    Directive,  // `#name`
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Dot,
    If, // `:-`
    At,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

char const *describe(TokenKind kind);

//! Tokenizer for the fact and rule syntax. `%` starts a comment running to the end of the line.
class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    [[nodiscard]] Token const &peek() const { return current_; }
    Token next();
    //! Consumes the current token if it has the given kind.
    bool accept(TokenKind kind);
    //! Consumes a token of the given kind or throws a ParseError.
    Token expect(TokenKind kind);
    [[noreturn]] void fail(std::string const &message) const;

private:
    void advance();
    void skip_space();

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    Token current_;
};

} // namespace argil::asp
