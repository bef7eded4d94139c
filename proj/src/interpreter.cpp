#include "wawk/interpreter.hpp"

#include <algorithm>
#include <ostream>

#include "wawk/riscv.hpp"

namespace wawk {

namespace {

using Kind = RuntimeValue::Kind;
using ErrKind = RuntimeError::Kind;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void fail(ErrKind kind, std::string msg, SourceLoc loc = {})
{
    throw RuntimeError(kind, std::move(msg), loc);
}

bool is_numeric(const RuntimeValue& v)
{
    return v.is(Kind::Int) || v.is(Kind::Logic);
}

template <class Op>
std::int64_t checked(Op op, std::int64_t a, std::int64_t b, SourceLoc loc)
{
    std::int64_t r = 0;
    if (op(a, b, &r))
        fail(ErrKind::Overflow, "integer overflow", loc);
    return r;
}

bool add_overflows(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_add_overflow(a, b, r); }
bool sub_overflows(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_sub_overflow(a, b, r); }
bool mul_overflows(std::int64_t a, std::int64_t b, std::int64_t* r) { return __builtin_mul_overflow(a, b, r); }

__extension__ using int128 = __int128;

/// Round-half-up mean, i.e. floor(sum/n + 1/2), exact for any int64 inputs.
std::int64_t rounded_mean(const RuntimeValue::List& items)
{
    int128 sum = 0;
    for (const auto& v : items)
        sum += v.as_int();
    const auto n = static_cast<int128>(items.size());
    const int128 num = 2 * sum + n;
    const int128 den = 2 * n;
    int128 q = num / den;
    if ((num % den != 0) && (num < 0))
        --q;
    return static_cast<std::int64_t>(q);
}

std::string_view trigger_name(ast::Trigger t)
{
    switch (t) {
    case ast::Trigger::Begin: return "BEGIN ";
    case ast::Trigger::End: return "END ";
    case ast::Trigger::Conditions: return "";
    }
    return "";
}

} // namespace

RuntimeError::RuntimeError(Kind kind, std::string message, SourceLoc loc)
    : Error(message), kind_(kind), message_(std::move(message)), loc_(loc)
{
    refresh();
}

void RuntimeError::refresh()
{
    formatted_.clear();
    if (!context_.empty())
        formatted_ += context_ + ": ";
    if (loc_.line != 0)
        formatted_ += to_string(loc_) + ": ";
    formatted_ += message_;
    static_cast<std::runtime_error&>(*this) = std::runtime_error(formatted_);
}

RuntimeError RuntimeError::with_location(SourceLoc loc) const
{
    RuntimeError e = *this;
    e.loc_ = loc;
    e.refresh();
    return e;
}

RuntimeError RuntimeError::with_context(std::string context) const
{
    RuntimeError e = *this;
    e.context_ = std::move(context);
    e.refresh();
    return e;
}

std::int64_t to_integer(const RuntimeValue& v)
{
    if (v.is(Kind::Int))
        return v.as_int();
    if (v.is(Kind::Logic)) {
        const auto& logic = v.as_logic();
        if (!logic.is_known())
            fail(ErrKind::XZConversion, "signal value contains x/z");
        auto u = logic.to_uint();
        if (!u)
            fail(ErrKind::Overflow, "signal value wider than 64 bits");
        return static_cast<std::int64_t>(*u);
    }
    fail(ErrKind::TypeMismatch, "expected a number, got " + std::string(to_string(v.kind())));
}

ModuleRegistry ModuleRegistry::with_defaults()
{
    ModuleRegistry r;
    NativeModule ext;
    ext.functions.emplace("decode", [](std::span<const RuntimeValue> args) {
        if (args.size() != 1)
            fail(ErrKind::ArityMismatch, "decode expects 1 argument, got " + std::to_string(args.size()));
        const std::int64_t word = to_integer(args[0]);
        if (word < 0 || word > 0xffffffffLL)
            fail(ErrKind::TypeMismatch, "decode expects a 32-bit instruction word");
        return RuntimeValue::string(std::string(riscv::decode(static_cast<std::uint32_t>(word))));
    });
    r.add("extern", std::move(ext));
    return r;
}

void ModuleRegistry::add(std::string name, NativeModule module)
{
    modules_[std::move(name)] = std::move(module);
}

const NativeModule* ModuleRegistry::find(std::string_view name) const
{
    auto it = modules_.find(name);
    return it == modules_.end() ? nullptr : &it->second;
}

Interpreter::Interpreter(const ast::Program& program, const Waveform& waveform, std::vector<std::string> args,
                         std::ostream& out, ModuleRegistry modules)
    : program_(program), wave_(waveform), out_(out), modules_(std::move(modules))
{
    const std::size_t nsym = program_.symbols.size();
    globals_.resize(nsym);
    aliases_.resize(nsym);
    full_names_.resize(nsym);
    for (std::size_t s = 0; s < nsym; ++s)
        full_names_[s] = wave_.find(program_.symbols[s]);
    hints_.assign(wave_.series_count(), SignalSeries::npos);
    offset_hints_.assign(wave_.series_count(), SignalSeries::npos);

    if (auto sym = program_.find_symbol("args")) {
        RuntimeValue::List items;
        for (auto& a : args)
            items.push_back(RuntimeValue::string(std::move(a)));
        globals_[*sym] = RuntimeValue::list(std::move(items));
    }
}

RuntimeValue Interpreter::global(std::string_view name) const
{
    if (auto sym = program_.find_symbol(name))
        return globals_[*sym];
    return {};
}

void Interpreter::run_statement(const ast::Statement& st, std::size_t number)
{
    try {
        if (st.trigger != ast::Trigger::Conditions || conditions_hold(st)) {
            in_condition_ = false;
            run_block(st.action);
        }
    } catch (const RuntimeError& e) {
        std::string ctx = std::string(trigger_name(st.trigger)) + "statement " + std::to_string(number) +
                          " (line " + std::to_string(st.loc.line) + ")";
        if (st.trigger == ast::Trigger::Conditions)
            ctx += " at INDEX " + std::to_string(index_);
        throw e.with_context(std::move(ctx));
    }
}

void Interpreter::execute()
{
    const auto& stmts = program_.statements;
    std::vector<std::size_t> sweep;
    index_ = 0;
    for (std::size_t k = 0; k < stmts.size(); ++k) {
        if (stmts[k].trigger == ast::Trigger::Begin)
            run_statement(stmts[k], k + 1);
        else if (stmts[k].trigger == ast::Trigger::Conditions)
            sweep.push_back(k);
    }
    const std::size_t count = wave_.index_count();
    if (!sweep.empty()) {
        for (std::size_t i = 0; i < count; ++i) {
            index_ = i;
            for (std::size_t k : sweep)
                run_statement(stmts[k], k + 1);
        }
    }
    index_ = count == 0 ? 0 : count - 1;
    for (std::size_t k = 0; k < stmts.size(); ++k)
        if (stmts[k].trigger == ast::Trigger::End)
            run_statement(stmts[k], k + 1);
}

bool Interpreter::conditions_hold(const ast::Statement& st)
{
    in_condition_ = true;
    for (const auto& c : st.conditions)
        if (!test(*c))
            return false;
    return true;
}

// Truthiness with a fast path for bare signal reads, which dominate sweeps.
bool Interpreter::test(const ast::Expr& e)
{
    if (const auto* n = std::get_if<ast::Name>(&e.node)) {
        if (globals_[n->symbol].is(Kind::Unbound)) {
            if (auto id = signal_for(*n)) {
                const LogicValue* v = sample(*id, 0);
                return v && v->truthy();
            }
        }
    } else if (const auto* u = std::get_if<ast::Unary>(&e.node); u && u->op == ast::UnaryOp::Not) {
        return !test(*u->operand);
    }
    return eval(e).truthy();
}

std::optional<SignalId> Interpreter::signal_for(const ast::Name& name)
{
    if (aliases_[name.symbol])
        return aliases_[name.symbol];
    return full_names_[name.symbol];
}

const LogicValue* Interpreter::sample(SignalId id, std::int64_t offset)
{
    const auto at = static_cast<std::int64_t>(index_) + offset;
    if (at < 0 || static_cast<std::uint64_t>(at) >= wave_.index_count())
        return nullptr;
    const SignalSeries& s = wave_.series(id);
    std::size_t& hint = offset == 0 ? hints_[id] : offset_hints_[id];
    hint = s.locate(static_cast<std::size_t>(at), hint);
    return &s.value_at_position(hint);
}

void Interpreter::run_block(const ast::Block& block)
{
    for (const auto& s : block)
        run_stmt(s);
}

void Interpreter::run_stmt(const ast::Stmt& stmt)
{
    std::visit(overloaded{
                   [&](const ast::Assign& a) {
                       // `xs = xs + v` on a list appends in place.
                       if (const auto* bin = std::get_if<ast::Binary>(&a.value->node);
                           bin && bin->op == ast::BinaryOp::Add && globals_[a.target.symbol].is(Kind::List)) {
                           if (const auto* lhs = std::get_if<ast::Name>(&bin->lhs->node);
                               lhs && lhs->symbol == a.target.symbol) {
                               RuntimeValue item = eval(*bin->rhs);
                               globals_[a.target.symbol].mutable_list().push_back(std::move(item));
                               return;
                           }
                       }
                       globals_[a.target.symbol] = eval(*a.value);
                   },
                   [&](const ast::ExprStmt& s) { eval(*s.expr); },
                   [&](const ast::If& s) {
                       if (eval(*s.condition).truthy())
                           run_block(s.then_block);
                       else if (s.else_block)
                           run_block(*s.else_block);
                   },
               },
               stmt.node);
}

RuntimeValue Interpreter::eval(const ast::Expr& e)
{
    const SourceLoc loc = e.loc;
    try {
        return std::visit(
            overloaded{
                [](const ast::IntLit& n) { return RuntimeValue::integer(n.value); },
                [](const ast::StrLit& n) { return RuntimeValue::string(n.value); },
                [this](const ast::ListLit& n) {
                    RuntimeValue::List items;
                    items.reserve(n.elements.size());
                    for (const auto& el : n.elements)
                        items.push_back(eval(*el));
                    return RuntimeValue::list(std::move(items));
                },
                [&](const ast::Name& n) { return eval_name(n, loc); },
                [&](const ast::OffsetRef& n) { return eval_offset(n, loc); },
                [&](const ast::Unary& n) { return eval_unary(n, loc); },
                [&](const ast::Binary& n) { return eval_binary(n, loc); },
                [&](const ast::Subscript& n) { return eval_subscript(n, loc); },
                [&](const ast::Call& n) { return eval_call(n, loc); },
                [this](const ast::CurrentIndex&) { return RuntimeValue::integer(static_cast<std::int64_t>(index_)); },
            },
            e.node);
    } catch (const RuntimeError& err) {
        if (err.loc().line == 0)
            throw err.with_location(loc);
        throw;
    }
}

RuntimeValue Interpreter::eval_name(const ast::Name& n, SourceLoc loc)
{
    const RuntimeValue& g = globals_[n.symbol];
    if (!g.is(Kind::Unbound))
        return g;
    if (auto id = signal_for(n)) {
        const LogicValue* v = sample(*id, 0);
        return v ? RuntimeValue::logic(*v) : RuntimeValue::out_of_range();
    }
    if (modules_.find(n.text))
        fail(ErrKind::TypeMismatch, "module '" + n.text + "' is not a value", loc);
    if (in_condition_)
        return RuntimeValue::unbound();
    fail(ErrKind::UnknownName, "unknown name '" + n.text + "'", loc);
}

RuntimeValue Interpreter::eval_offset(const ast::OffsetRef& n, SourceLoc loc)
{
    if (!globals_[n.target.symbol].is(Kind::Unbound))
        fail(ErrKind::TypeMismatch, "'@' offset applied to variable '" + n.target.text + "'", loc);
    auto id = signal_for(n.target);
    if (!id) {
        if (in_condition_)
            return RuntimeValue::unbound();
        fail(ErrKind::UnknownName, "unknown signal '" + n.target.text + "'", loc);
    }
    const LogicValue* v = sample(*id, n.offset);
    return v ? RuntimeValue::logic(*v) : RuntimeValue::out_of_range();
}

RuntimeValue Interpreter::eval_unary(const ast::Unary& n, SourceLoc loc)
{
    if (n.op == ast::UnaryOp::Not)
        return RuntimeValue::integer(test(*n.operand) ? 0 : 1);
    const std::int64_t v = to_integer(eval(*n.operand));
    return RuntimeValue::integer(checked(sub_overflows, 0, v, loc));
}

RuntimeValue Interpreter::eval_binary(const ast::Binary& n, SourceLoc loc)
{
    using Op = ast::BinaryOp;
    if (n.op == Op::And)
        return RuntimeValue::integer(test(*n.lhs) && test(*n.rhs) ? 1 : 0);
    if (n.op == Op::Or)
        return RuntimeValue::integer(test(*n.lhs) || test(*n.rhs) ? 1 : 0);

    RuntimeValue lhs = eval(*n.lhs);
    RuntimeValue rhs = eval(*n.rhs);

    switch (n.op) {
    case Op::Eq:
    case Op::Ne:
    case Op::Lt:
    case Op::Gt:
    case Op::Le:
    case Op::Ge: {
        // Absent operands compare false under every operator.
        if (lhs.is_absent() || rhs.is_absent())
            return RuntimeValue::integer(0);
        int cmp;
        if (is_numeric(lhs) && is_numeric(rhs)) {
            const auto a = to_integer(lhs);
            const auto b = to_integer(rhs);
            cmp = a < b ? -1 : (a > b ? 1 : 0);
        } else if (lhs.is(Kind::Str) && rhs.is(Kind::Str)) {
            const int c = lhs.as_str().compare(rhs.as_str());
            cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
        } else {
            fail(ErrKind::TypeMismatch,
                 "cannot compare " + std::string(to_string(lhs.kind())) + " with " +
                     std::string(to_string(rhs.kind())),
                 loc);
        }
        bool r = false;
        switch (n.op) {
        case Op::Eq: r = cmp == 0; break;
        case Op::Ne: r = cmp != 0; break;
        case Op::Lt: r = cmp < 0; break;
        case Op::Gt: r = cmp > 0; break;
        case Op::Le: r = cmp <= 0; break;
        case Op::Ge: r = cmp >= 0; break;
        default: break;
        }
        return RuntimeValue::integer(r ? 1 : 0);
    }
    case Op::Add:
        if (lhs.is(Kind::List)) {
            lhs.mutable_list().push_back(std::move(rhs));
            return lhs;
        }
        if (lhs.is(Kind::Str) && rhs.is(Kind::Str))
            return RuntimeValue::string(lhs.as_str() + rhs.as_str());
        break;
    default:
        break;
    }

    if (!is_numeric(lhs) || !is_numeric(rhs))
        fail(ErrKind::TypeMismatch,
             "operator '" + std::string(ast::to_string(n.op)) + "' on " + std::string(to_string(lhs.kind())) +
                 " and " + std::string(to_string(rhs.kind())),
             loc);
    const std::int64_t a = to_integer(lhs);
    const std::int64_t b = to_integer(rhs);
    switch (n.op) {
    case Op::Add: return RuntimeValue::integer(checked(add_overflows, a, b, loc));
    case Op::Sub: return RuntimeValue::integer(checked(sub_overflows, a, b, loc));
    case Op::Mul: return RuntimeValue::integer(checked(mul_overflows, a, b, loc));
    case Op::Div:
        if (b == 0)
            fail(ErrKind::DivisionByZero, "division by zero", loc);
        if (a == INT64_MIN && b == -1)
            fail(ErrKind::Overflow, "integer overflow", loc);
        return RuntimeValue::integer(a / b);
    default:
        break;
    }
    fail(ErrKind::TypeMismatch, "unsupported operator", loc);
}

RuntimeValue Interpreter::eval_subscript(const ast::Subscript& n, SourceLoc loc)
{
    RuntimeValue base = eval(*n.base);
    const std::int64_t i = to_integer(eval(*n.index));
    if (base.is(Kind::List)) {
        const auto& items = base.as_list();
        if (i < 0 || static_cast<std::uint64_t>(i) >= items.size())
            fail(ErrKind::IndexOutOfRange,
                 "list index " + std::to_string(i) + " out of range (length " + std::to_string(items.size()) + ")",
                 loc);
        return items[static_cast<std::size_t>(i)];
    }
    if (base.is(Kind::Str)) {
        const auto& s = base.as_str();
        if (i < 0 || static_cast<std::uint64_t>(i) >= s.size())
            fail(ErrKind::IndexOutOfRange, "string index " + std::to_string(i) + " out of range", loc);
        return RuntimeValue::string(std::string(1, s[static_cast<std::size_t>(i)]));
    }
    fail(ErrKind::TypeMismatch, "cannot index a " + std::string(to_string(base.kind())), loc);
}

RuntimeValue Interpreter::eval_call(const ast::Call& n, SourceLoc loc)
{
    const std::string& f = n.callee.text;
    if (f == "alias")
        return builtin_alias(n, loc);
    if (f == "import")
        return builtin_import(n, loc);
    if (f == "call")
        return builtin_call(n, loc);
    if (f == "printf")
        return builtin_printf(n, loc);
    if (f == "min" || f == "max" || f == "average" || f == "length")
        return builtin_aggregate(n, loc);
    fail(ErrKind::UnknownFunction, "unknown function '" + f + "'", loc);
}

namespace {

const ast::Name& name_argument(const ast::Call& n, std::size_t k, SourceLoc loc)
{
    const auto* name = std::get_if<ast::Name>(&n.args[k]->node);
    if (!name)
        fail(ErrKind::TypeMismatch, n.callee.text + " expects a name as argument " + std::to_string(k + 1), loc);
    return *name;
}

void expect_arity(const ast::Call& n, std::size_t arity, SourceLoc loc)
{
    if (n.args.size() != arity)
        fail(ErrKind::ArityMismatch,
             n.callee.text + " expects " + std::to_string(arity) + " argument(s), got " +
                 std::to_string(n.args.size()),
             loc);
}

} // namespace

RuntimeValue Interpreter::builtin_alias(const ast::Call& n, SourceLoc loc)
{
    expect_arity(n, 2, loc);
    const ast::Name& shorthand = name_argument(n, 0, loc);
    const ast::Name& target = name_argument(n, 1, loc);
    if (aliases_[shorthand.symbol])
        fail(ErrKind::RedefinedAlias, "alias '" + shorthand.text + "' already defined", loc);
    auto id = signal_for(target);
    if (!id)
        fail(ErrKind::UnknownSignal, "unknown signal '" + target.text + "'", loc);
    aliases_[shorthand.symbol] = id;
    return {};
}

RuntimeValue Interpreter::builtin_import(const ast::Call& n, SourceLoc loc)
{
    expect_arity(n, 1, loc);
    const ast::Name& module = name_argument(n, 0, loc);
    if (!modules_.find(module.text))
        fail(ErrKind::UnknownModule, "unknown module '" + module.text + "'", loc);
    if (std::find(imported_.begin(), imported_.end(), module.text) == imported_.end())
        imported_.push_back(module.text);
    return {};
}

RuntimeValue Interpreter::builtin_call(const ast::Call& n, SourceLoc loc)
{
    if (n.args.empty())
        fail(ErrKind::ArityMismatch, "call expects a module function", loc);
    const ast::Name& target = name_argument(n, 0, loc);
    const auto dot = target.text.rfind('.');
    if (dot == std::string::npos)
        fail(ErrKind::UnknownFunction, "call target '" + target.text + "' is not module.function", loc);
    const std::string_view module_name = std::string_view(target.text).substr(0, dot);
    const std::string_view fn_name = std::string_view(target.text).substr(dot + 1);
    const NativeModule* module = modules_.find(module_name);
    if (!module || std::find(imported_.begin(), imported_.end(), module_name) == imported_.end())
        fail(ErrKind::UnknownModule, "module '" + std::string(module_name) + "' is not imported", loc);
    auto fn = module->functions.find(fn_name);
    if (fn == module->functions.end())
        fail(ErrKind::UnknownFunction, "module '" + std::string(module_name) + "' has no function '" +
                                            std::string(fn_name) + "'",
             loc);
    std::vector<RuntimeValue> args;
    args.reserve(n.args.size() - 1);
    for (std::size_t k = 1; k < n.args.size(); ++k)
        args.push_back(eval(*n.args[k]));
    return fn->second(args);
}

RuntimeValue Interpreter::builtin_printf(const ast::Call& n, SourceLoc loc)
{
    if (n.args.empty())
        fail(ErrKind::FormatArityMismatch, "printf expects a format string", loc);
    const RuntimeValue fmt = eval(*n.args[0]);
    if (!fmt.is(Kind::Str))
        fail(ErrKind::FormatTypeMismatch, "printf format must be a string", loc);
    std::vector<RuntimeValue> args;
    for (std::size_t k = 1; k < n.args.size(); ++k)
        args.push_back(eval(*n.args[k]));

    std::string text;
    std::size_t next = 0;
    const std::string& f = fmt.as_str();
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] != '%') {
            text += f[k];
            continue;
        }
        if (k + 1 >= f.size())
            fail(ErrKind::FormatTypeMismatch, "dangling '%' in format", loc);
        const char d = f[++k];
        if (d == '%') {
            text += '%';
            continue;
        }
        if (d != 's' && d != 'd')
            fail(ErrKind::FormatTypeMismatch, std::string("unsupported directive '%") + d + "'", loc);
        if (next >= args.size())
            fail(ErrKind::FormatArityMismatch, "too few arguments for format", loc);
        const RuntimeValue& v = args[next++];
        if (d == 's') {
            text += v.display();
        } else {
            if (!is_numeric(v))
                fail(ErrKind::FormatTypeMismatch, "%d expects a number, got " + std::string(to_string(v.kind())),
                     loc);
            text += std::to_string(to_integer(v));
        }
    }
    if (next != args.size())
        fail(ErrKind::FormatArityMismatch, "too many arguments for format", loc);
    out_ << text;
    return {};
}

RuntimeValue Interpreter::builtin_aggregate(const ast::Call& n, SourceLoc loc)
{
    expect_arity(n, 1, loc);
    const std::string& f = n.callee.text;
    const RuntimeValue v = eval(*n.args[0]);
    if (f == "length") {
        if (v.is(Kind::List))
            return RuntimeValue::integer(static_cast<std::int64_t>(v.as_list().size()));
        if (v.is(Kind::Str))
            return RuntimeValue::integer(static_cast<std::int64_t>(v.as_str().size()));
        fail(ErrKind::TypeMismatch, "length expects a list or string", loc);
    }
    if (!v.is(Kind::List))
        fail(ErrKind::TypeMismatch, f + " expects a list", loc);
    const auto& items = v.as_list();
    if (items.empty())
        fail(ErrKind::EmptyList, f + " of an empty list", loc);
    for (const auto& item : items)
        if (!item.is(Kind::Int))
            fail(ErrKind::TypeMismatch, f + " expects a list of integers", loc);
    if (f == "average")
        return RuntimeValue::integer(rounded_mean(items));
    auto cmp = [](const RuntimeValue& a, const RuntimeValue& b) { return a.as_int() < b.as_int(); };
    if (f == "min")
        return *std::min_element(items.begin(), items.end(), cmp);
    return *std::max_element(items.begin(), items.end(), cmp);
}

int run(const ast::Program& program, const Waveform& waveform, std::vector<std::string> args, std::ostream& out,
        std::ostream& err, ModuleRegistry modules)
{
    try {
        Interpreter interp(program, waveform, std::move(args), out, std::move(modules));
        interp.execute();
    } catch (const RuntimeError& e) {
        out.flush();
        err << "runtime error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace wawk
