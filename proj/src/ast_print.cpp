#include <sstream>

#include "wawk/ast.hpp"

namespace wawk::ast {

std::string_view to_string(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    }
    return "?";
}

std::string_view to_string(UnaryOp op)
{
    return op == UnaryOp::Not ? "!" : "-";
}

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        case '\0': out += "\\0"; break;
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        default: out += c;
        }
    }
    return out + "\"";
}

// Negative literals only arise from full-width hex; keep them hex so the
// text re-lexes as one literal rather than a negation.
std::string int_source(std::int64_t v)
{
    if (v >= 0)
        return std::to_string(v);
    static constexpr char digits[] = "0123456789abcdef";
    auto u = static_cast<std::uint64_t>(v);
    std::string hex;
    for (int k = 60; k >= 0; k -= 4)
        hex += digits[(u >> k) & 0xf];
    return "0x" + hex;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

class SourceWriter {
public:
    std::string expr(const Expr& e)
    {
        return std::visit(
            overloaded{
                [](const IntLit& n) { return int_source(n.value); },
                [](const StrLit& n) { return quote(n.value); },
                [this](const ListLit& n) {
                    std::string s = "[";
                    for (std::size_t k = 0; k < n.elements.size(); ++k)
                        s += (k ? ", " : "") + expr(*n.elements[k]);
                    return s + "]";
                },
                [](const Name& n) { return n.text; },
                [](const OffsetRef& n) { return n.target.text + "@" + std::to_string(n.offset); },
                [this](const Unary& n) {
                    return "(" + std::string(to_string(n.op)) + expr(*n.operand) + ")";
                },
                [this](const Binary& n) {
                    return "(" + expr(*n.lhs) + " " + std::string(to_string(n.op)) + " " + expr(*n.rhs) + ")";
                },
                [this](const Subscript& n) { return expr(*n.base) + "[" + expr(*n.index) + "]"; },
                [this](const Call& n) {
                    std::string s = n.callee.text + "(";
                    for (std::size_t k = 0; k < n.args.size(); ++k)
                        s += (k ? ", " : "") + expr(*n.args[k]);
                    return s + ")";
                },
                [](const CurrentIndex&) { return std::string("INDEX"); },
            },
            e.node);
    }

    void block(const Block& b, int depth)
    {
        out_ << "{\n";
        for (const auto& s : b)
            stmt(s, depth + 1);
        indent(depth);
        out_ << "}";
    }

    void stmt(const Stmt& s, int depth)
    {
        indent(depth);
        std::visit(overloaded{
                       [&](const Assign& n) { out_ << n.target.text << " = " << expr(*n.value) << ";\n"; },
                       [&](const ExprStmt& n) { out_ << expr(*n.expr) << ";\n"; },
                       [&](const If& n) {
                           out_ << "if (" << expr(*n.condition) << ") ";
                           block(n.then_block, depth);
                           if (n.else_block) {
                               out_ << " else ";
                               block(*n.else_block, depth);
                           }
                           out_ << ";\n";
                       },
                   },
                   s.node);
    }

    void program(const Program& p)
    {
        for (const auto& st : p.statements) {
            switch (st.trigger) {
            case Trigger::Begin: out_ << "BEGIN"; break;
            case Trigger::End: out_ << "END"; break;
            case Trigger::Conditions:
                for (std::size_t k = 0; k < st.conditions.size(); ++k)
                    out_ << (k ? ", " : "") << expr(*st.conditions[k]);
                break;
            }
            out_ << ": ";
            block(st.action, 0);
            out_ << "\n";
        }
    }

    std::string str() const { return out_.str(); }

private:
    void indent(int depth)
    {
        for (int k = 0; k < depth; ++k)
            out_ << "  ";
    }

    std::ostringstream out_;
};

class Dumper {
public:
    std::string expr(const Expr& e)
    {
        return std::visit(
            overloaded{
                [](const IntLit& n) { return "(int " + std::to_string(n.value) + ")"; },
                [](const StrLit& n) { return "(str " + quote(n.value) + ")"; },
                [this](const ListLit& n) {
                    std::string s = "(list";
                    for (const auto& el : n.elements)
                        s += " " + expr(*el);
                    return s + ")";
                },
                [](const Name& n) { return "(name " + n.text + ")"; },
                [](const OffsetRef& n) {
                    return "(offset (name " + n.target.text + ") " + std::to_string(n.offset) + ")";
                },
                [this](const Unary& n) {
                    return "(" + std::string(n.op == UnaryOp::Not ? "not" : "neg") + " " + expr(*n.operand) + ")";
                },
                [this](const Binary& n) {
                    return "(" + std::string(to_string(n.op)) + " " + expr(*n.lhs) + " " + expr(*n.rhs) + ")";
                },
                [this](const Subscript& n) { return "(subscript " + expr(*n.base) + " " + expr(*n.index) + ")"; },
                [this](const Call& n) {
                    std::string s = "(call " + n.callee.text;
                    for (const auto& a : n.args)
                        s += " " + expr(*a);
                    return s + ")";
                },
                [](const CurrentIndex&) { return std::string("(INDEX)"); },
            },
            e.node);
    }

    std::string block(const Block& b)
    {
        std::string s = "(block";
        for (const auto& st : b)
            s += " " + stmt(st);
        return s + ")";
    }

    std::string stmt(const Stmt& s)
    {
        return std::visit(overloaded{
                              [&](const Assign& n) { return "(assign " + n.target.text + " " + expr(*n.value) + ")"; },
                              [&](const ExprStmt& n) { return "(expr " + expr(*n.expr) + ")"; },
                              [&](const If& n) {
                                  std::string r = "(if " + expr(*n.condition) + " " + block(n.then_block);
                                  if (n.else_block)
                                      r += " " + block(*n.else_block);
                                  return r + ")";
                              },
                          },
                          s.node);
    }

    std::string program(const Program& p)
    {
        std::string s = "(program";
        for (const auto& st : p.statements) {
            s += "\n (statement ";
            switch (st.trigger) {
            case Trigger::Begin: s += "BEGIN"; break;
            case Trigger::End: s += "END"; break;
            case Trigger::Conditions:
                s += "(conditions";
                for (const auto& c : st.conditions)
                    s += " " + expr(*c);
                s += ")";
                break;
            }
            s += " " + block(st.action) + ")";
        }
        return s + ")";
    }
};

} // namespace

std::string to_source(const Program& program)
{
    SourceWriter w;
    w.program(program);
    return w.str();
}

std::string to_source(const Expr& expr)
{
    return SourceWriter().expr(expr);
}

std::string dump(const Program& program)
{
    return Dumper().program(program);
}

std::string dump(const Expr& expr)
{
    return Dumper().expr(expr);
}

std::string dump(const Stmt& stmt)
{
    return Dumper().stmt(stmt);
}

} // namespace wawk::ast
