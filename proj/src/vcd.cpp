#include "wawk/vcd.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace wawk::vcd {

namespace {

std::string_view kind_name(ParseError::Kind kind)
{
    switch (kind) {
    case ParseError::Kind::MalformedHeader: return "malformed header";
    case ParseError::Kind::UnknownIdCode: return "unknown id code";
    case ParseError::Kind::WidthMismatch: return "width mismatch";
    case ParseError::Kind::BadTimestamp: return "bad timestamp";
    case ParseError::Kind::BadValue: return "bad value";
    case ParseError::Kind::Unsupported: return "unsupported";
    case ParseError::Kind::Io: return "i/o error";
    }
    return "error";
}

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_bit(char c)
{
    switch (c) {
    case '0': case '1': case 'x': case 'X': case 'z': case 'Z':
        return true;
    default:
        return false;
    }
}

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    /// Next whitespace-delimited token; empty at end of input.
    std::string_view next()
    {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            if (text_[pos_] == '\n')
                ++line_;
            ++pos_;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !is_space(text_[pos_]))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::size_t line() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : scan_(text) {}

    Document run()
    {
        parse_header();
        parse_body();
        return Document{std::move(header_), std::move(builder_).finish()};
    }

private:
    [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const
    {
        throw ParseError(kind, scan_.line(), msg);
    }

    /// Tokens up to the closing $end of the current directive.
    std::vector<std::string_view> until_end(std::string_view directive)
    {
        std::vector<std::string_view> out;
        for (;;) {
            auto tok = scan_.next();
            if (tok.empty())
                fail(ParseError::Kind::MalformedHeader,
                     "unterminated " + std::string(directive) + " (missing $end)");
            if (tok == "$end")
                return out;
            out.push_back(tok);
        }
    }

    void parse_timescale(const std::vector<std::string_view>& toks)
    {
        std::string joined;
        for (auto t : toks)
            joined += t;
        std::size_t digits = 0;
        while (digits < joined.size() && joined[digits] >= '0' && joined[digits] <= '9')
            ++digits;
        const std::string_view mag(joined.data(), digits);
        const std::string_view unit = std::string_view(joined).substr(digits);
        Timescale ts;
        if (mag == "1" || mag.empty())
            ts.magnitude = 1;
        else if (mag == "10")
            ts.magnitude = 10;
        else if (mag == "100")
            ts.magnitude = 100;
        else
            fail(ParseError::Kind::MalformedHeader, "bad timescale magnitude '" + std::string(mag) + "'");
        static const std::pair<std::string_view, TimeUnit> units[] = {
            {"s", TimeUnit::s}, {"ms", TimeUnit::ms}, {"us", TimeUnit::us},
            {"ns", TimeUnit::ns}, {"ps", TimeUnit::ps}, {"fs", TimeUnit::fs},
        };
        bool found = false;
        for (auto& [name, u] : units)
            if (unit == name) {
                ts.unit = u;
                found = true;
            }
        if (!found)
            fail(ParseError::Kind::MalformedHeader, "bad timescale unit '" + std::string(unit) + "'");
        header_.timescale = ts;
    }

    std::string scope_path() const
    {
        std::string path;
        for (const auto& s : scope_stack_) {
            if (!path.empty())
                path += '.';
            path += s;
        }
        return path;
    }

    void parse_var(const std::vector<std::string_view>& toks)
    {
        // type width id reference [range]
        if (toks.size() < 4)
            fail(ParseError::Kind::MalformedHeader, "incomplete $var declaration");
        const std::string_view type = toks[0];
        if (type == "real" || type == "realtime")
            fail(ParseError::Kind::Unsupported, "real-valued variables are not supported");
        std::size_t width = 0;
        auto [ptr, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), width);
        if (ec != std::errc() || ptr != toks[1].data() + toks[1].size() || width == 0)
            fail(ParseError::Kind::MalformedHeader, "bad $var width '" + std::string(toks[1]) + "'");
        std::string name(toks[3]);
        for (std::size_t k = 4; k < toks.size(); ++k) {
            // A "[msb:lsb]" range restates the width; a "[n]" bit select is part
            // of the name.
            if (toks[k].find(':') == std::string_view::npos)
                name += toks[k];
        }
        std::string full = scope_path();
        if (!full.empty())
            full += '.';
        full += name;

        const std::string code(toks[2]);
        SignalId id;
        if (auto it = ids_.find(code); it != ids_.end()) {
            id = it->second;
            if (builder_.signal_width(id) != width)
                fail(ParseError::Kind::MalformedHeader,
                     "id code '" + code + "' redeclared with a different width");
        } else {
            id = builder_.add_signal(width);
            ids_.emplace(code, id);
        }
        if (!builder_.bind_name(full, id))
            fail(ParseError::Kind::MalformedHeader, "duplicate signal name '" + full + "'");
        header_.vars.push_back(VarDecl{code, width, std::move(full)});
    }

    void add_scope(std::string kind, std::string name)
    {
        std::vector<Scope>* level = &header_.scopes;
        for (std::size_t d = 0; d < scope_stack_.size(); ++d)
            level = &level->back().children;
        level->push_back(Scope{std::move(kind), name, {}});
        scope_stack_.push_back(std::move(name));
    }

    void parse_header()
    {
        for (;;) {
            auto tok = scan_.next();
            if (tok.empty())
                fail(ParseError::Kind::MalformedHeader, "missing $enddefinitions");
            if (tok == "$enddefinitions") {
                until_end(tok);
                if (!scope_stack_.empty())
                    fail(ParseError::Kind::MalformedHeader, "unclosed $scope at $enddefinitions");
                return;
            }
            if (tok == "$timescale") {
                parse_timescale(until_end(tok));
            } else if (tok == "$scope") {
                auto toks = until_end(tok);
                if (toks.size() != 2)
                    fail(ParseError::Kind::MalformedHeader, "bad $scope declaration");
                add_scope(std::string(toks[0]), std::string(toks[1]));
            } else if (tok == "$upscope") {
                until_end(tok);
                if (scope_stack_.empty())
                    fail(ParseError::Kind::MalformedHeader, "$upscope without open scope");
                scope_stack_.pop_back();
            } else if (tok == "$var") {
                parse_var(until_end(tok));
            } else if (tok == "$comment" || tok == "$date" || tok == "$version") {
                until_end(tok);
            } else if (tok[0] == '$') {
                fail(ParseError::Kind::Unsupported, "unsupported header directive " + std::string(tok));
            } else {
                fail(ParseError::Kind::MalformedHeader,
                     "unexpected '" + std::string(tok) + "' before $enddefinitions");
            }
        }
    }

    SignalId lookup(std::string_view code)
    {
        auto it = ids_.find(std::string(code));
        if (it == ids_.end())
            fail(ParseError::Kind::UnknownIdCode, "change for undeclared id code '" + std::string(code) + "'");
        return it->second;
    }

    void apply(SignalId id, LogicValue value)
    {
        if (builder_.index_count() == 0) {
            // Values before the first timestamp become the index-0 state.
            pending_.emplace_back(id, std::move(value));
            return;
        }
        builder_.set(id, std::move(value));
    }

    void open_timestamp(std::string_view tok)
    {
        std::uint64_t t = 0;
        const auto digits = tok.substr(1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
        if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
            fail(ParseError::Kind::BadTimestamp, "bad timestamp '" + std::string(tok) + "'");
        if (last_time_) {
            if (t < *last_time_)
                fail(ParseError::Kind::BadTimestamp, "timestamp #" + std::to_string(t) +
                                                         " precedes #" + std::to_string(*last_time_));
            if (t == *last_time_)
                return;
        }
        builder_.open_index(t);
        last_time_ = t;
        if (!pending_.empty()) {
            for (auto& [id, v] : pending_)
                builder_.set(id, std::move(v));
            pending_.clear();
        }
    }

    void parse_body()
    {
        for (;;) {
            auto tok = scan_.next();
            if (tok.empty())
                return;
            const char c = tok[0];
            if (c == '#') {
                open_timestamp(tok);
            } else if (is_bit(c)) {
                const auto code = tok.substr(1);
                if (code.empty())
                    fail(ParseError::Kind::BadValue, "scalar change without id code");
                const SignalId id = lookup(code);
                apply(id, extend_literal(tok.substr(0, 1), builder_.signal_width(id), scan_.line()));
            } else if (c == 'b' || c == 'B') {
                const auto literal = tok.substr(1);
                const auto code = scan_.next();
                if (code.empty())
                    fail(ParseError::Kind::BadValue, "vector change without id code");
                const SignalId id = lookup(code);
                apply(id, extend_literal(literal, builder_.signal_width(id), scan_.line()));
            } else if (c == 'r' || c == 'R') {
                fail(ParseError::Kind::Unsupported, "real-number value changes are not supported");
            } else if (tok == "$dumpvars" || tok == "$dumpall" || tok == "$dumpon" || tok == "$dumpoff" ||
                       tok == "$end") {
                // Value changes inside these blocks are ordinary changes.
            } else if (tok == "$comment") {
                until_end(tok);
            } else {
                fail(ParseError::Kind::BadValue, "unexpected token '" + std::string(tok) + "'");
            }
        }
    }

    Scanner scan_;
    Header header_;
    WaveformBuilder builder_;
    std::unordered_map<std::string, SignalId> ids_;
    std::vector<std::string> scope_stack_;
    std::vector<std::pair<SignalId, LogicValue>> pending_;
    std::optional<std::uint64_t> last_time_;
};

} // namespace

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
    : Error("vcd:" + std::to_string(line) + ": " + std::string(kind_name(kind)) + ": " + what),
      kind_(kind), line_(line)
{
}

LogicValue extend_literal(std::string_view literal, std::size_t width, std::size_t line)
{
    if (literal.empty())
        throw ParseError(ParseError::Kind::BadValue, line, "empty vector literal");
    for (char c : literal)
        if (!is_bit(c))
            throw ParseError(ParseError::Kind::BadValue, line,
                             "bad bit '" + std::string(1, c) + "' in vector literal");
    if (literal.size() > width)
        throw ParseError(ParseError::Kind::WidthMismatch, line,
                         "literal of " + std::to_string(literal.size()) + " bits for " +
                             std::to_string(width) + "-bit signal");
    char fill = '0';
    if (literal[0] == 'x' || literal[0] == 'X')
        fill = 'x';
    else if (literal[0] == 'z' || literal[0] == 'Z')
        fill = 'z';
    std::string bits(width - literal.size(), fill);
    bits += literal;
    return LogicValue::from_bits(bits);
}

std::string_view to_string(TimeUnit unit)
{
    switch (unit) {
    case TimeUnit::s: return "s";
    case TimeUnit::ms: return "ms";
    case TimeUnit::us: return "us";
    case TimeUnit::ns: return "ns";
    case TimeUnit::ps: return "ps";
    case TimeUnit::fs: return "fs";
    }
    return "?";
}

Document parse_document(std::string_view text)
{
    return Parser(text).run();
}

Waveform parse(std::string_view text)
{
    return parse_document(text).waveform;
}

Waveform parse_stream(std::istream& in)
{
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad())
        throw ParseError(ParseError::Kind::Io, 0, "read failed");
    return parse(text);
}

Waveform parse_file(const std::filesystem::path& path)
{
    if (path == "-")
        return parse_stream(std::cin);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(ParseError::Kind::Io, 0, "cannot open '" + path.string() + "'");
    return parse_stream(in);
}

} // namespace wawk::vcd
