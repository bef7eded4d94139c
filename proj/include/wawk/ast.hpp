#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wawk/error.hpp"

namespace wawk::ast {

/// Index into Program::symbols. Every name in a program is interned so the
/// interpreter can resolve it through flat tables.
using SymbolId = std::size_t;

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Mul, Div, Add, Sub, Eq, Ne, Lt, Gt, Le, Ge, And, Or };

struct IntLit {
    std::int64_t value;
};

struct StrLit {
    std::string value;
};

struct ListLit {
    std::vector<ExprPtr> elements;
};

/// Variable, alias, signal, or native module; which one is decided at run time.
struct Name {
    std::string text;
    SymbolId symbol;
};

/// `name@k`: the signal value k indices away from INDEX.
struct OffsetRef {
    Name target;
    std::int64_t offset;
};

struct Unary {
    UnaryOp op;
    ExprPtr operand;
};

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Subscript {
    ExprPtr base;
    ExprPtr index;
};

struct Call {
    Name callee;
    std::vector<ExprPtr> args;
};

/// The INDEX keyword.
struct CurrentIndex {};

struct Expr {
    using Node = std::variant<IntLit, StrLit, ListLit, Name, OffsetRef, Unary, Binary, Subscript, Call,
                              CurrentIndex>;
    Node node;
    SourceLoc loc;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign {
    Name target;
    ExprPtr value;
};

struct ExprStmt {
    ExprPtr expr;
};

struct If {
    ExprPtr condition;
    Block then_block;
    std::optional<Block> else_block;
};

struct Stmt {
    using Node = std::variant<Assign, ExprStmt, If>;
    Node node;
    SourceLoc loc;
};

enum class Trigger { Begin, End, Conditions };

/// `trigger: { action }`. Conditions are a left-to-right conjunction.
struct Statement {
    Trigger trigger = Trigger::Conditions;
    std::vector<ExprPtr> conditions;
    Block action;
    SourceLoc loc;
};

struct Program {
    std::vector<Statement> statements;
    std::vector<std::string> symbols;

    std::optional<SymbolId> find_symbol(std::string_view text) const;
    SymbolId intern(std::string_view text);
};

std::string_view to_string(BinaryOp op);
std::string_view to_string(UnaryOp op);

/// Fully parenthesized WAWK source; parsing it yields the same tree.
std::string to_source(const Program& program);
std::string to_source(const Expr& expr);

/// S-expression rendering of the tree shape. Two trees are structurally
/// identical iff their dumps are equal.
std::string dump(const Program& program);
std::string dump(const Expr& expr);
std::string dump(const Stmt& stmt);

} // namespace wawk::ast
