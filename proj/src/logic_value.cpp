#include "wawk/logic_value.hpp"

#include <stdexcept>

namespace wawk {

namespace {

char normalize_bit(char c)
{
    switch (c) {
    case '0':
    case '1':
    case 'x':
    case 'z':
        return c;
    case 'X':
        return 'x';
    case 'Z':
        return 'z';
    default:
        throw std::invalid_argument(std::string("invalid logic bit '") + c + "'");
    }
}

} // namespace

LogicValue LogicValue::from_bits(std::string_view bits)
{
    if (bits.empty())
        throw std::invalid_argument("empty logic value");
    std::string out(bits);
    for (char& c : out)
        c = normalize_bit(c);
    return LogicValue(std::move(out));
}

LogicValue LogicValue::all_x(std::size_t width)
{
    return LogicValue(std::string(width, 'x'));
}

LogicValue LogicValue::from_uint(std::size_t width, std::uint64_t value)
{
    std::string out(width, '0');
    for (std::size_t i = 0; i < width && i < 64; ++i)
        if ((value >> i) & 1u)
            out[width - 1 - i] = '1';
    return LogicValue(std::move(out));
}

bool LogicValue::is_known() const
{
    return bits_.find_first_of("xz") == std::string::npos;
}

std::optional<std::uint64_t> LogicValue::to_uint() const
{
    std::uint64_t v = 0;
    const std::size_t n = bits_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char c = bits_[i];
        if (c == '0')
            continue;
        if (c != '1')
            return std::nullopt;
        const std::size_t pos = n - 1 - i;
        if (pos >= 64)
            return std::nullopt;
        v |= std::uint64_t{1} << pos;
    }
    return v;
}

bool LogicValue::truthy() const
{
    if (!is_known())
        return false;
    return bits_.find('1') != std::string::npos;
}

} // namespace wawk
