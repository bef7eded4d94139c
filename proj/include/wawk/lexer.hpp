#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wawk/error.hpp"

namespace wawk {

/// Lexical or grammatical error in a WAWK script.
class SyntaxError : public Error {
public:
    enum class Kind { UnterminatedString, IllegalCharacter, BadLiteral, UnexpectedToken, ReservedKeyword };

    SyntaxError(Kind kind, SourceLoc loc, const std::string& message);

    Kind kind() const { return kind_; }
    SourceLoc loc() const { return loc_; }
    const std::string& message() const { return message_; }

private:
    Kind kind_;
    SourceLoc loc_;
    std::string message_;
};

enum class TokenKind {
    Identifier, // possibly dotted: TOP.servant_sim.dut.cpu.clk
    Integer,
    String,     // text holds the unescaped contents
    KwBegin,
    KwEnd,
    KwIf,
    KwElse,
    KwIndex,
    Reserved,   // WAL keyword outside the supported subset
    Colon,
    Comma,
    Semicolon,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    At,
    Assign,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
    AndAnd,
    OrOr,
    Not,
    Plus,
    Minus,
    Star,
    Slash,
    EndOfInput,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::int64_t int_value = 0;
    SourceLoc loc;
};

std::string_view describe(TokenKind kind);

/// Token list for `source`. The returned list does not include an
/// end-of-input token; parse_program appends one.
std::vector<Token> tokenize(std::string_view source);

/// WAL keywords rejected by the parser.
bool is_reserved_keyword(std::string_view word);

} // namespace wawk
