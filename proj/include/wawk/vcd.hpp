#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wawk/error.hpp"
#include "wawk/waveform.hpp"

namespace wawk::vcd {

class ParseError : public Error {
public:
    enum class Kind {
        MalformedHeader,
        UnknownIdCode,
        WidthMismatch,
        BadTimestamp,
        BadValue,
        Unsupported,
        Io,
    };

    ParseError(Kind kind, std::size_t line, const std::string& what);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

enum class TimeUnit { s, ms, us, ns, ps, fs };

struct Timescale {
    std::uint32_t magnitude = 1;
    TimeUnit unit = TimeUnit::ns;
};

struct Scope {
    std::string kind;
    std::string name;
    std::vector<Scope> children;
};

struct VarDecl {
    std::string id_code;
    std::size_t width = 1;
    std::string hierarchical_name;
};

struct Header {
    Timescale timescale;
    std::vector<Scope> scopes;
    std::vector<VarDecl> vars;
};

struct Document {
    Header header;
    Waveform waveform;
};

Document parse_document(std::string_view text);
Waveform parse(std::string_view text);
Waveform parse_stream(std::istream& in);
/// Reads `path`, or standard input when path is "-".
Waveform parse_file(const std::filesystem::path& path);

/// Expands a vector literal to `width` bits: leading 0/1 zero-extend, leading
/// x/z replicate. Throws ParseError (WidthMismatch/BadValue).
LogicValue extend_literal(std::string_view literal, std::size_t width, std::size_t line = 0);

std::string_view to_string(TimeUnit unit);

} // namespace wawk::vcd
