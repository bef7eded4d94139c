#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wawk/ast.hpp"
#include "wawk/error.hpp"
#include "wawk/runtime_value.hpp"
#include "wawk/waveform.hpp"

namespace wawk {

class RuntimeError : public Error {
public:
    enum class Kind {
        UnknownName,
        UnknownSignal,
        XZConversion,
        TypeMismatch,
        DivisionByZero,
        Overflow,
        EmptyList,
        IndexOutOfRange,
        RedefinedAlias,
        UnknownModule,
        UnknownFunction,
        ArityMismatch,
        FormatArityMismatch,
        FormatTypeMismatch,
    };

    RuntimeError(Kind kind, std::string message, SourceLoc loc = {});

    Kind kind() const { return kind_; }
    SourceLoc loc() const { return loc_; }
    const std::string& message() const { return message_; }
    /// "statement N (line L) at INDEX i", filled in by the interpreter.
    const std::string& context() const { return context_; }

    RuntimeError with_location(SourceLoc loc) const;
    RuntimeError with_context(std::string context) const;

private:
    void refresh();

    Kind kind_;
    std::string message_;
    SourceLoc loc_;
    std::string context_;
    std::string formatted_;
};

using NativeFunction = std::function<RuntimeValue(std::span<const RuntimeValue>)>;

struct NativeModule {
    std::map<std::string, NativeFunction, std::less<>> functions;
};

/// Native modules reachable through import(name) / call(name.fn, ...).
class ModuleRegistry {
public:
    /// Registry holding `extern` with `decode` (RV32I word -> mnemonic).
    static ModuleRegistry with_defaults();

    void add(std::string name, NativeModule module);
    const NativeModule* find(std::string_view name) const;

private:
    std::map<std::string, NativeModule, std::less<>> modules_;
};

/// Converts an Int or fully known Logic to a 64-bit integer, throwing
/// XZConversion/TypeMismatch otherwise. Shared with native functions.
std::int64_t to_integer(const RuntimeValue& v);

/// One evaluation of a program over a waveform. The waveform must outlive
/// the interpreter; several interpreters may share one waveform.
class Interpreter {
public:
    Interpreter(const ast::Program& program, const Waveform& waveform, std::vector<std::string> args,
                std::ostream& out, ModuleRegistry modules = ModuleRegistry::with_defaults());

    /// BEGIN blocks, then the sweep over every index, then END blocks.
    /// Throws RuntimeError with context on failure.
    void execute();

    RuntimeValue eval(const ast::Expr& e);

    /// Value of a global after (or during) execution; Unbound if never set.
    RuntimeValue global(std::string_view name) const;
    std::size_t current_index() const { return index_; }

private:
    void run_block(const ast::Block& block);
    void run_stmt(const ast::Stmt& stmt);
    bool conditions_hold(const ast::Statement& st);
    bool test(const ast::Expr& e);
    void run_statement(const ast::Statement& st, std::size_t number);

    std::optional<SignalId> signal_for(const ast::Name& name);
    const LogicValue* sample(SignalId id, std::int64_t offset);

    RuntimeValue eval_name(const ast::Name& n, SourceLoc loc);
    RuntimeValue eval_offset(const ast::OffsetRef& n, SourceLoc loc);
    RuntimeValue eval_unary(const ast::Unary& n, SourceLoc loc);
    RuntimeValue eval_binary(const ast::Binary& n, SourceLoc loc);
    RuntimeValue eval_subscript(const ast::Subscript& n, SourceLoc loc);
    RuntimeValue eval_call(const ast::Call& n, SourceLoc loc);

    RuntimeValue builtin_alias(const ast::Call& n, SourceLoc loc);
    RuntimeValue builtin_import(const ast::Call& n, SourceLoc loc);
    RuntimeValue builtin_call(const ast::Call& n, SourceLoc loc);
    RuntimeValue builtin_printf(const ast::Call& n, SourceLoc loc);
    RuntimeValue builtin_aggregate(const ast::Call& n, SourceLoc loc);

    const ast::Program& program_;
    const Waveform& wave_;
    std::ostream& out_;
    ModuleRegistry modules_;

    std::vector<RuntimeValue> globals_;        // by symbol
    std::vector<std::optional<SignalId>> aliases_; // by symbol
    std::vector<std::optional<SignalId>> full_names_; // by symbol, resolved up front
    std::vector<std::size_t> hints_;           // by signal, INDEX lookups
    std::vector<std::size_t> offset_hints_;    // by signal, offset lookups
    std::vector<std::string> imported_;

    std::size_t index_ = 0;
    bool in_condition_ = false;
};

/// Runs `program` and maps failures to an exit status: 0 on success, 1 on a
/// runtime error (message written to `err`).
int run(const ast::Program& program, const Waveform& waveform, std::vector<std::string> args,
        std::ostream& out, std::ostream& err, ModuleRegistry modules = ModuleRegistry::with_defaults());

} // namespace wawk
