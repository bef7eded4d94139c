#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "wawk/cpi_script.hpp"
#include "wawk/lexer.hpp"
#include "wawk/parser.hpp"

using namespace wawk;

namespace {

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::filesystem::path scripts_dir = WAWK_TEST_SCRIPTS_DIR;

SyntaxError syntax_error(std::string_view src)
{
    try {
        parse_script(src);
    } catch (const SyntaxError& e) {
        return e;
    }
    FAIL("expected a SyntaxError");
    throw;
}

std::string expr_dump(std::string_view src)
{
    const auto p = parse_script(std::string(src) + ": {}");
    REQUIRE(p.statements.size() == 1);
    REQUIRE(p.statements[0].conditions.size() == 1);
    return ast::dump(*p.statements[0].conditions[0]);
}

} // namespace

TEST_CASE("tokenize a Listing-style statement")
{
    const auto toks = tokenize("clk, fire: { start = INDEX; }");
    REQUIRE(toks.size() == 10);
    CHECK(toks[0].kind == TokenKind::Identifier);
    CHECK(toks[1].kind == TokenKind::Comma);
    CHECK(toks[7].kind == TokenKind::KwIndex);
    CHECK(toks.back().kind == TokenKind::RBrace);
    CHECK(toks[5].loc.line == 1);
    CHECK(toks[5].loc.column == 14);
}

TEST_CASE("tokenizer details")
{
    CHECK(tokenize("// comment\n").empty());

    auto t = tokenize("TOP.servant_sim.dut.cpu.clk extern.decode");
    REQUIRE(t.size() == 2);
    CHECK(t[0].text == "TOP.servant_sim.dut.cpu.clk");
    CHECK(t[1].text == "extern.decode");

    t = tokenize("0x00000033 0b101 42");
    CHECK(t[0].int_value == 0x33);
    CHECK(t[1].int_value == 5);
    CHECK(t[2].int_value == 42);

    t = tokenize(R"("a\tb\n\"q\"\\")");
    REQUIRE(t.size() == 1);
    CHECK(t[0].text == "a\tb\n\"q\"\\");

    t = tokenize("== != <= >= < > && || ! = @ in-group groups");
    CHECK(t[8].kind == TokenKind::Not);
    CHECK(t[9].kind == TokenKind::Assign);
    CHECK(t[11].kind == TokenKind::Reserved);
    CHECK(t[11].text == "in-group");
    CHECK(t[12].kind == TokenKind::Reserved);
}

TEST_CASE("lexical errors carry line and column")
{
    try {
        tokenize("\"unterminated");
        FAIL("expected error");
    } catch (const SyntaxError& e) {
        CHECK(e.kind() == SyntaxError::Kind::UnterminatedString);
        CHECK(e.loc().line == 1);
    }
    try {
        tokenize("x = 1;\n  y # 2");
        FAIL("expected error");
    } catch (const SyntaxError& e) {
        CHECK(e.kind() == SyntaxError::Kind::IllegalCharacter);
        CHECK(e.loc().line == 2);
        CHECK(e.loc().column == 5);
    }
    CHECK_THROWS_AS(tokenize("0x"), SyntaxError);
    CHECK_THROWS_AS(tokenize("99999999999999999999"), SyntaxError);
    CHECK_THROWS_AS(tokenize(R"("bad \q escape")"), SyntaxError);
}

TEST_CASE("Listing 1 parses to four statements")
{
    const auto p = parse_script(read_file(scripts_dir / "listing1.wawk"));
    REQUIRE(p.statements.size() == 4);
    CHECK(p.statements[0].trigger == ast::Trigger::Begin);
    CHECK(p.statements[1].trigger == ast::Trigger::Conditions);
    CHECK(p.statements[1].conditions.size() == 4);
    CHECK(p.statements[2].trigger == ast::Trigger::Conditions);
    CHECK(p.statements[2].conditions.size() == 2);
    CHECK(p.statements[3].trigger == ast::Trigger::End);
    CHECK(ast::dump(*p.statements[1].conditions[2]) == "(offset (name fire) 2)");
    CHECK(ast::dump(*p.statements[1].conditions[1]) == "(not (name fire))");
    CHECK(ast::dump(*p.statements[1].conditions[3]) == "(== (name op) (subscript (name args) (int 0)))");
    CHECK(ast::dump(p.statements[1].action[0]) ==
          "(assign cpis (+ (name cpis) (/ (- (INDEX) (name start)) (int 2))))");
}

TEST_CASE("minimal programs")
{
    auto p = parse_script("BEGIN: {}");
    REQUIRE(p.statements.size() == 1);
    CHECK(p.statements[0].trigger == ast::Trigger::Begin);
    CHECK(p.statements[0].action.empty());
    CHECK(parse_script("").statements.empty());
    CHECK(parse_script("END: { ; ; }").statements[0].action.empty());
}

TEST_CASE("precedence and associativity")
{
    CHECK(expr_dump("fire@2") == "(offset (name fire) 2)");
    CHECK(expr_dump("fire@-1") == "(offset (name fire) -1)");
    CHECK(expr_dump("!fire@2") == "(not (offset (name fire) 2))");
    CHECK(expr_dump("-a * b") == "(* (neg (name a)) (name b))");
    CHECK(expr_dump("a - b - c") == "(- (- (name a) (name b)) (name c))");
    CHECK(expr_dump("a + b * c") == "(+ (name a) (* (name b) (name c)))");
    CHECK(expr_dump("a + b == c") == "(== (+ (name a) (name b)) (name c))");
    CHECK(expr_dump("a == b && c < d") == "(&& (== (name a) (name b)) (< (name c) (name d)))");
    CHECK(expr_dump("a || b && c") == "(|| (name a) (&& (name b) (name c)))");
    CHECK(expr_dump("xs[1][0]") == "(subscript (subscript (name xs) (int 1)) (int 0))");
    CHECK(expr_dump("min([1, 2])") == "(call min (list (int 1) (int 2)))");
    CHECK(expr_dump("(a)") == "(name a)");
}

TEST_CASE("dangling else binds to the nearest if")
{
    const auto p = parse_script("END: { if (a) if (b) x = 1; else x = 2; }");
    CHECK(ast::dump(p.statements[0].action[0]) ==
          "(if (name a) (block (if (name b) (block (assign x (int 1))) (block (assign x (int 2))))))");
}

TEST_CASE("syntax errors")
{
    auto e = syntax_error("BEGIN { }");
    CHECK(e.kind() == SyntaxError::Kind::UnexpectedToken);
    CHECK(e.message().find("expected ':'") != std::string::npos);
    CHECK(e.loc().column == 7);

    e = syntax_error("BEGIN: { groups(x); }");
    CHECK(e.kind() == SyntaxError::Kind::ReservedKeyword);
    CHECK(e.message().find("unsupported WAL feature") != std::string::npos);

    e = syntax_error("when, x: {}");
    CHECK(e.kind() == SyntaxError::Kind::ReservedKeyword);

    e = syntax_error("BEGIN: { x = 1 }");
    CHECK(e.kind() == SyntaxError::Kind::UnexpectedToken);
    CHECK(e.loc().line == 1);

    CHECK(syntax_error("x@y: {}").kind() == SyntaxError::Kind::UnexpectedToken);
    CHECK(syntax_error("(a+b)@2: {}").kind() == SyntaxError::Kind::UnexpectedToken);
    CHECK(syntax_error("BEGIN: {").kind() == SyntaxError::Kind::UnexpectedToken);
    CHECK(syntax_error("BEGIN: { INDEX = 3; }").kind() == SyntaxError::Kind::UnexpectedToken);
    CHECK(syntax_error(": {}").kind() == SyntaxError::Kind::UnexpectedToken);
}

TEST_CASE("bundled script matches scripts/cpi.wawk")
{
    CHECK(read_file(scripts_dir / ".." / ".." / "scripts" / "cpi.wawk") == cpi_script());
}

TEST_CASE("parse-print-parse fixpoint over the script corpus")
{
    std::vector<std::string> corpus = {
        std::string(cpi_script()),
        "BEGIN: {}",
        "x@-3, !(a || b), -(c) == 0xffffffffffffffff: { s = \"t\\t\\\"q\\\"\\n\"; xs = [[], [1, [2]]]; }",
        "END: { if (a) { if (b) x = 1; else { x = 2; }; } }",
    };
    for (const auto& entry : std::filesystem::directory_iterator(scripts_dir))
        if (entry.path().extension() == ".wawk")
            corpus.push_back(read_file(entry.path()));
    REQUIRE(corpus.size() >= 6);

    for (const auto& src : corpus) {
        const auto first = parse_script(src);
        const auto printed = ast::to_source(first);
        const auto second = parse_script(printed);
        CHECK(ast::dump(first) == ast::dump(second));
        CHECK(ast::to_source(second) == printed);
    }
}
