#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "wawk/ast.hpp"
#include "wawk/lexer.hpp"

namespace wawk {

/// Grammar:
///   program   := statement*
///   statement := trigger ':' block
///   trigger   := 'BEGIN' | 'END' | expr (',' expr)*
///   block     := '{' stmt* '}'
///   stmt      := name '=' expr ';' | 'if' '(' expr ')' body ('else' body)? ';'? | expr ';' | ';'
///   body      := block | stmt
/// Expression precedence from tightest: postfix (@ [] call), unary ! -,
/// * /, + -, comparisons, &&, ||.
ast::Program parse_program(std::vector<Token> tokens);
ast::Program parse_script(std::string_view source);
ast::Program parse_script_file(const std::filesystem::path& path);

} // namespace wawk
