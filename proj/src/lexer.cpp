#include "wawk/lexer.hpp"

#include <array>
#include <charconv>

namespace wawk {

std::string to_string(const SourceLoc& loc)
{
    return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

SyntaxError::SyntaxError(Kind kind, SourceLoc loc, const std::string& message)
    : Error(to_string(loc) + ": " + message), kind_(kind), loc_(loc), message_(message)
{
}

namespace {

constexpr std::array<std::string_view, 11> reserved_words = {
    "when", "in-group", "in-groups", "groups", "resolve-group", "reval",
    "step", "load", "map", "mapa", "function",
};

bool ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool ident_char(char c)
{
    return ident_start(c) || (c >= '0' && c <= '9');
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (at_end())
                return out;
            out.push_back(next_token());
        }
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    SourceLoc here() const { return {line_, col_}; }

    char advance()
    {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_trivia()
    {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n')
                    advance();
            } else {
                return;
            }
        }
    }

    Token make(TokenKind kind, SourceLoc loc, std::string text) const
    {
        return Token{kind, std::move(text), 0, loc};
    }

    Token next_token()
    {
        const SourceLoc loc = here();
        const char c = peek();
        if (ident_start(c))
            return identifier(loc);
        if (c >= '0' && c <= '9')
            return number(loc);
        if (c == '"')
            return string(loc);

        advance();
        auto two = [&](char second, TokenKind yes, TokenKind no) {
            if (peek() == second) {
                advance();
                return make(yes, loc, std::string{c, second});
            }
            return make(no, loc, std::string{c});
        };
        switch (c) {
        case ':': return make(TokenKind::Colon, loc, ":");
        case ',': return make(TokenKind::Comma, loc, ",");
        case ';': return make(TokenKind::Semicolon, loc, ";");
        case '{': return make(TokenKind::LBrace, loc, "{");
        case '}': return make(TokenKind::RBrace, loc, "}");
        case '(': return make(TokenKind::LParen, loc, "(");
        case ')': return make(TokenKind::RParen, loc, ")");
        case '[': return make(TokenKind::LBracket, loc, "[");
        case ']': return make(TokenKind::RBracket, loc, "]");
        case '@': return make(TokenKind::At, loc, "@");
        case '+': return make(TokenKind::Plus, loc, "+");
        case '-': return make(TokenKind::Minus, loc, "-");
        case '*': return make(TokenKind::Star, loc, "*");
        case '/': return make(TokenKind::Slash, loc, "/");
        case '=': return two('=', TokenKind::Eq, TokenKind::Assign);
        case '!': return two('=', TokenKind::Ne, TokenKind::Not);
        case '<': return two('=', TokenKind::Le, TokenKind::Lt);
        case '>': return two('=', TokenKind::Ge, TokenKind::Gt);
        case '&':
            if (peek() == '&') {
                advance();
                return make(TokenKind::AndAnd, loc, "&&");
            }
            break;
        case '|':
            if (peek() == '|') {
                advance();
                return make(TokenKind::OrOr, loc, "||");
            }
            break;
        default:
            break;
        }
        throw SyntaxError(SyntaxError::Kind::IllegalCharacter, loc,
                          "illegal character '" + std::string(1, c) + "'");
    }

    Token identifier(SourceLoc loc)
    {
        // Hyphenated WAL keywords would otherwise lex as subtraction.
        for (auto word : {std::string_view("in-groups"), std::string_view("in-group"),
                          std::string_view("resolve-group")}) {
            if (src_.substr(pos_, word.size()) == word && !ident_char(peek(word.size()))) {
                for (std::size_t k = 0; k < word.size(); ++k)
                    advance();
                return make(TokenKind::Reserved, loc, std::string(word));
            }
        }

        std::string text;
        for (;;) {
            while (ident_char(peek()))
                text += advance();
            if (peek() == '.' && ident_char(peek(1))) {
                text += advance();
                continue;
            }
            break;
        }
        if (text == "BEGIN")
            return make(TokenKind::KwBegin, loc, text);
        if (text == "END")
            return make(TokenKind::KwEnd, loc, text);
        if (text == "if")
            return make(TokenKind::KwIf, loc, text);
        if (text == "else")
            return make(TokenKind::KwElse, loc, text);
        if (text == "INDEX")
            return make(TokenKind::KwIndex, loc, text);
        if (is_reserved_keyword(text))
            return make(TokenKind::Reserved, loc, text);
        return make(TokenKind::Identifier, loc, text);
    }

    Token number(SourceLoc loc)
    {
        std::string text;
        int base = 10;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            text += advance();
            text += advance();
            base = 16;
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            text += advance();
            text += advance();
            base = 2;
        }
        while (ident_char(peek()))
            text += advance();
        const std::string_view digits = std::string_view(text).substr(base == 10 ? 0 : 2);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
            throw SyntaxError(SyntaxError::Kind::BadLiteral, loc, "malformed integer literal '" + text + "'");
        // Hex and binary literals may fill all 64 bits (two's complement);
        // decimal literals must fit in a signed 64-bit integer.
        if (base == 10 && value > static_cast<std::uint64_t>(INT64_MAX))
            throw SyntaxError(SyntaxError::Kind::BadLiteral, loc, "integer literal out of range '" + text + "'");
        Token t = make(TokenKind::Integer, loc, text);
        t.int_value = static_cast<std::int64_t>(value);
        return t;
    }

    Token string(SourceLoc loc)
    {
        advance();
        std::string text;
        for (;;) {
            if (at_end() || peek() == '\n')
                throw SyntaxError(SyntaxError::Kind::UnterminatedString, loc, "unterminated string literal");
            const char c = advance();
            if (c == '"')
                break;
            if (c != '\\') {
                text += c;
                continue;
            }
            if (at_end())
                throw SyntaxError(SyntaxError::Kind::UnterminatedString, loc, "unterminated string literal");
            const SourceLoc esc = here();
            switch (const char e = advance()) {
            case 'n': text += '\n'; break;
            case 't': text += '\t'; break;
            case 'r': text += '\r'; break;
            case '0': text += '\0'; break;
            case '\\': text += '\\'; break;
            case '"': text += '"'; break;
            case '\'': text += '\''; break;
            default:
                throw SyntaxError(SyntaxError::Kind::BadLiteral, esc,
                                  "unknown escape '\\" + std::string(1, e) + "'");
            }
        }
        return make(TokenKind::String, loc, std::move(text));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

bool is_reserved_keyword(std::string_view word)
{
    for (auto r : reserved_words)
        if (r == word)
            return true;
    return false;
}

std::string_view describe(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::KwBegin: return "'BEGIN'";
    case TokenKind::KwEnd: return "'END'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwIndex: return "'INDEX'";
    case TokenKind::Reserved: return "reserved keyword";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::At: return "'@'";
    case TokenKind::Assign: return "'='";
    case TokenKind::Eq: return "'=='";
    case TokenKind::Ne: return "'!='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Ge: return "'>='";
    case TokenKind::AndAnd: return "'&&'";
    case TokenKind::OrOr: return "'||'";
    case TokenKind::Not: return "'!'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::EndOfInput: return "end of input";
    }
    return "token";
}

} // namespace wawk
