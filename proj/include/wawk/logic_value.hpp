#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wawk {

/// Four-state logic vector. Bits are stored most-significant first as the
/// characters '0', '1', 'x' and 'z'.
class LogicValue {
public:
    LogicValue() = default;

    /// Builds a value from a bit string; upper-case X/Z are normalized.
    /// Throws std::invalid_argument on any other character or an empty string.
    static LogicValue from_bits(std::string_view bits);
    static LogicValue all_x(std::size_t width);
    static LogicValue from_uint(std::size_t width, std::uint64_t value);

    std::size_t width() const { return bits_.size(); }
    std::string_view bits() const { return bits_; }
    char bit(std::size_t msb_index) const { return bits_[msb_index]; }

    /// True when every bit is 0 or 1.
    bool is_known() const;

    /// Unsigned integer value; empty if any bit is x/z or a set bit lies
    /// above bit 63.
    std::optional<std::uint64_t> to_uint() const;

    /// Defined only for known values: nonzero. Unknown values are false.
    bool truthy() const;

    friend bool operator==(const LogicValue&, const LogicValue&) = default;

private:
    explicit LogicValue(std::string bits) : bits_(std::move(bits)) {}

    std::string bits_;
};

} // namespace wawk
