#include "wawk/parser.hpp"

#include <fstream>
#include <initializer_list>
#include <iterator>

namespace wawk {

namespace ast {

std::optional<SymbolId> Program::find_symbol(std::string_view text) const
{
    for (SymbolId id = 0; id < symbols.size(); ++id)
        if (symbols[id] == text)
            return id;
    return std::nullopt;
}

SymbolId Program::intern(std::string_view text)
{
    if (auto id = find_symbol(text))
        return *id;
    symbols.emplace_back(text);
    return symbols.size() - 1;
}

} // namespace ast

namespace {

using namespace ast;

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens))
    {
        SourceLoc end{1, 1};
        if (!toks_.empty()) {
            end = toks_.back().loc;
            end.column += toks_.back().text.size();
        }
        toks_.push_back(Token{TokenKind::EndOfInput, "", 0, end});
    }

    Program run()
    {
        while (!check(TokenKind::EndOfInput))
            prog_.statements.push_back(statement());
        return std::move(prog_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool check(TokenKind k) const { return peek().kind == k; }

    const Token& advance()
    {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size())
            ++pos_;
        return t;
    }

    bool accept(TokenKind k)
    {
        if (!check(k))
            return false;
        advance();
        return true;
    }

    [[noreturn]] void unexpected(std::initializer_list<TokenKind> expected) const
    {
        const Token& t = peek();
        if (t.kind == TokenKind::Reserved)
            throw SyntaxError(SyntaxError::Kind::ReservedKeyword, t.loc,
                              "unsupported WAL feature '" + t.text + "'");
        std::string msg = "unexpected " + std::string(describe(t.kind));
        if (!t.text.empty() && t.kind != TokenKind::String)
            msg += " '" + t.text + "'";
        msg += ", expected ";
        bool first = true;
        for (auto k : expected) {
            if (!first)
                msg += " or ";
            msg += describe(k);
            first = false;
        }
        throw SyntaxError(SyntaxError::Kind::UnexpectedToken, t.loc, msg);
    }

    const Token& expect(TokenKind k)
    {
        if (!check(k))
            unexpected({k});
        return advance();
    }

    Name name_from(const Token& t)
    {
        return Name{t.text, prog_.intern(t.text)};
    }

    Statement statement()
    {
        Statement s;
        s.loc = peek().loc;
        if (accept(TokenKind::KwBegin)) {
            s.trigger = Trigger::Begin;
        } else if (accept(TokenKind::KwEnd)) {
            s.trigger = Trigger::End;
        } else {
            s.trigger = Trigger::Conditions;
            s.conditions.push_back(expression());
            while (accept(TokenKind::Comma))
                s.conditions.push_back(expression());
        }
        expect(TokenKind::Colon);
        s.action = block();
        return s;
    }

    Block block()
    {
        expect(TokenKind::LBrace);
        Block out;
        while (!check(TokenKind::RBrace)) {
            if (check(TokenKind::EndOfInput))
                unexpected({TokenKind::RBrace});
            if (accept(TokenKind::Semicolon))
                continue;
            out.push_back(stmt());
        }
        advance();
        return out;
    }

    Block body()
    {
        if (check(TokenKind::LBrace))
            return block();
        Block out;
        out.push_back(stmt());
        return out;
    }

    Stmt stmt()
    {
        const SourceLoc loc = peek().loc;
        if (accept(TokenKind::KwIf)) {
            expect(TokenKind::LParen);
            If node;
            node.condition = expression();
            expect(TokenKind::RParen);
            node.then_block = body();
            // Nearest-if binding: the innermost open `if` consumes `else`.
            if (accept(TokenKind::KwElse))
                node.else_block = body();
            accept(TokenKind::Semicolon);
            return Stmt{std::move(node), loc};
        }
        if (check(TokenKind::Identifier) && peek(1).kind == TokenKind::Assign) {
            Name target = name_from(advance());
            advance();
            ExprPtr value = expression();
            expect(TokenKind::Semicolon);
            return Stmt{Assign{std::move(target), std::move(value)}, loc};
        }
        ExprPtr e = expression();
        expect(TokenKind::Semicolon);
        return Stmt{ExprStmt{std::move(e)}, loc};
    }

    static ExprPtr make(Expr::Node node, SourceLoc loc)
    {
        return std::make_unique<Expr>(Expr{std::move(node), loc});
    }

    ExprPtr expression() { return logical_or(); }

    ExprPtr logical_or()
    {
        ExprPtr lhs = logical_and();
        while (check(TokenKind::OrOr)) {
            const SourceLoc loc = advance().loc;
            lhs = make(Binary{BinaryOp::Or, std::move(lhs), logical_and()}, loc);
        }
        return lhs;
    }

    ExprPtr logical_and()
    {
        ExprPtr lhs = comparison();
        while (check(TokenKind::AndAnd)) {
            const SourceLoc loc = advance().loc;
            lhs = make(Binary{BinaryOp::And, std::move(lhs), comparison()}, loc);
        }
        return lhs;
    }

    ExprPtr comparison()
    {
        ExprPtr lhs = additive();
        for (;;) {
            BinaryOp op;
            switch (peek().kind) {
            case TokenKind::Eq: op = BinaryOp::Eq; break;
            case TokenKind::Ne: op = BinaryOp::Ne; break;
            case TokenKind::Lt: op = BinaryOp::Lt; break;
            case TokenKind::Gt: op = BinaryOp::Gt; break;
            case TokenKind::Le: op = BinaryOp::Le; break;
            case TokenKind::Ge: op = BinaryOp::Ge; break;
            default: return lhs;
            }
            const SourceLoc loc = advance().loc;
            lhs = make(Binary{op, std::move(lhs), additive()}, loc);
        }
    }

    ExprPtr additive()
    {
        ExprPtr lhs = multiplicative();
        for (;;) {
            BinaryOp op;
            if (check(TokenKind::Plus))
                op = BinaryOp::Add;
            else if (check(TokenKind::Minus))
                op = BinaryOp::Sub;
            else
                return lhs;
            const SourceLoc loc = advance().loc;
            lhs = make(Binary{op, std::move(lhs), multiplicative()}, loc);
        }
    }

    ExprPtr multiplicative()
    {
        ExprPtr lhs = unary();
        for (;;) {
            BinaryOp op;
            if (check(TokenKind::Star))
                op = BinaryOp::Mul;
            else if (check(TokenKind::Slash))
                op = BinaryOp::Div;
            else
                return lhs;
            const SourceLoc loc = advance().loc;
            lhs = make(Binary{op, std::move(lhs), unary()}, loc);
        }
    }

    ExprPtr unary()
    {
        const SourceLoc loc = peek().loc;
        if (accept(TokenKind::Not))
            return make(Unary{UnaryOp::Not, unary()}, loc);
        if (accept(TokenKind::Minus))
            return make(Unary{UnaryOp::Negate, unary()}, loc);
        return postfix();
    }

    ExprPtr postfix()
    {
        ExprPtr e = primary();
        for (;;) {
            const SourceLoc loc = peek().loc;
            if (accept(TokenKind::At)) {
                auto* name = std::get_if<Name>(&e->node);
                if (!name)
                    throw SyntaxError(SyntaxError::Kind::UnexpectedToken, loc,
                                      "'@' offset applies only to a signal or alias name");
                bool negative = accept(TokenKind::Minus);
                if (!negative)
                    accept(TokenKind::Plus);
                const Token& k = expect(TokenKind::Integer);
                std::int64_t offset = negative ? -k.int_value : k.int_value;
                e = make(OffsetRef{std::move(*name), offset}, e->loc);
            } else if (accept(TokenKind::LBracket)) {
                ExprPtr index = expression();
                expect(TokenKind::RBracket);
                e = make(Subscript{std::move(e), std::move(index)}, loc);
            } else {
                return e;
            }
        }
    }

    std::vector<ExprPtr> arguments()
    {
        std::vector<ExprPtr> args;
        expect(TokenKind::LParen);
        if (accept(TokenKind::RParen))
            return args;
        args.push_back(expression());
        while (accept(TokenKind::Comma))
            args.push_back(expression());
        expect(TokenKind::RParen);
        return args;
    }

    ExprPtr primary()
    {
        const Token& t = peek();
        const SourceLoc loc = t.loc;
        switch (t.kind) {
        case TokenKind::Integer:
            advance();
            return make(IntLit{t.int_value}, loc);
        case TokenKind::String:
            advance();
            return make(StrLit{t.text}, loc);
        case TokenKind::KwIndex:
            advance();
            return make(CurrentIndex{}, loc);
        case TokenKind::Identifier: {
            Name name = name_from(advance());
            if (check(TokenKind::LParen))
                return make(Call{std::move(name), arguments()}, loc);
            return make(std::move(name), loc);
        }
        case TokenKind::LParen: {
            advance();
            ExprPtr e = expression();
            expect(TokenKind::RParen);
            return e;
        }
        case TokenKind::LBracket: {
            advance();
            ListLit list;
            if (!accept(TokenKind::RBracket)) {
                list.elements.push_back(expression());
                while (accept(TokenKind::Comma))
                    list.elements.push_back(expression());
                expect(TokenKind::RBracket);
            }
            return make(std::move(list), loc);
        }
        default:
            unexpected({TokenKind::Identifier, TokenKind::Integer, TokenKind::String, TokenKind::KwIndex,
                        TokenKind::LParen, TokenKind::LBracket});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Program prog_;
};

} // namespace

ast::Program parse_program(std::vector<Token> tokens)
{
    if (!tokens.empty() && tokens.back().kind == TokenKind::EndOfInput)
        tokens.pop_back();
    return Parser(std::move(tokens)).run();
}

ast::Program parse_script(std::string_view source)
{
    return parse_program(tokenize(source));
}

ast::Program parse_script_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open script '" + path.string() + "'");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_script(text);
}

} // namespace wawk
