#include <argil/asp/lexer.hpp>
#include <argil/error.hpp>

#include <cctype>

namespace argil::asp {

namespace {

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

} // namespace

char const *describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Variable: return "variable";
        case TokenKind::Directive: return "directive";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LBracket: return "'['";
        case TokenKind::RBracket: return "']'";
        case TokenKind::Comma: return "','";
        case TokenKind::Dot: return "'.'";
        case TokenKind::If: return "':-'";
        case TokenKind::At: return "'@'";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

Token Lexer::next() {
    Token t = current_;
    advance();
    return t;
}

bool Lexer::accept(TokenKind kind) {
    if (current_.kind != kind) { return false; }
    advance();
    return true;
}

Token Lexer::expect(TokenKind kind) {
    if (current_.kind != kind) {
        std::string found = current_.kind == TokenKind::End ? "end of input" : "'" + current_.text + "'";
        fail(std::string("expected ") + describe(kind) + ", found " + found);
    }
    return next();
}

void Lexer::fail(std::string const &message) const { throw ParseError(message, current_.line, current_.column); }

void Lexer::skip_space() {
    while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (c == '%') {
            while (pos_ < text_.size() && text_[pos_] != '\n') { ++pos_; }
        }
        else if (c == '\n') {
            ++pos_;
            ++line_;
            column_ = 1;
        }
        else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            ++pos_;
            ++column_;
        }
        else {
            break;
        }
    }
}

void Lexer::advance() {
    skip_space();
    current_ = Token{TokenKind::End, "", line_, column_};
    if (pos_ >= text_.size()) { return; }
    std::size_t start = pos_;
    char c = text_[pos_];
    auto single = [&](TokenKind kind) {
        current_.kind = kind;
        current_.text = std::string(1, c);
        ++pos_;
        ++column_;
    };
    switch (c) {
        case '(': return single(TokenKind::LParen);
        case ')': return single(TokenKind::RParen);
        case '{': return single(TokenKind::LBrace);
        case '}': return single(TokenKind::RBrace);
        case '[': return single(TokenKind::LBracket);
        case ']': return single(TokenKind::RBracket);
        case ',': return single(TokenKind::Comma);
        case '.': return single(TokenKind::Dot);
        case '@': return single(TokenKind::At);
        default: break;
    }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        current_.kind = TokenKind::If;
        current_.text = ":-";
        pos_ += 2;
        column_ += 2;
        return;
    }
    if (c == '#' || is_name_char(c)) {
        ++pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) { ++pos_; }
        current_.text = std::string(text_.substr(start, pos_ - start));
        column_ += pos_ - start;
        if (c == '#') {
            if (current_.text.size() == 1) { fail("expected directive name after '#'"); }
            current_.kind = TokenKind::Directive;
        }
        else if (std::isupper(static_cast<unsigned char>(c)) != 0) {
            current_.kind = TokenKind::Variable;
        }
        else if (c == '_') {
            fail("anonymous variables are not supported");
        }
        else {
            if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
                for (char d : current_.text) {
                    if (std::isdigit(static_cast<unsigned char>(d)) == 0) { fail("malformed number '" + current_.text + "'"); }
                }
            }
            current_.kind = TokenKind::Identifier;
        }
        return;
    }
    current_.text = std::string(1, c);
    fail("unexpected character '" + current_.text + "'");
}

} // namespace argil::asp
