#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "wawk/logic_value.hpp"

namespace wawk {

/// Value of a WAWK expression. Lists share storage and copy on write.
class RuntimeValue {
public:
    enum class Kind { Unbound, OutOfRange, Int, Str, List, Logic };
    using List = std::vector<RuntimeValue>;

    RuntimeValue() = default;
    static RuntimeValue unbound() { return {}; }
    static RuntimeValue out_of_range();
    static RuntimeValue integer(std::int64_t v);
    static RuntimeValue string(std::string s);
    static RuntimeValue list(List items = {});
    static RuntimeValue logic(LogicValue v);

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is(Kind k) const { return kind() == k; }
    /// Unbound or OutOfRange.
    bool is_absent() const { return kind() == Kind::Unbound || kind() == Kind::OutOfRange; }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    const std::string& as_str() const { return std::get<std::string>(v_); }
    const List& as_list() const { return *std::get<std::shared_ptr<List>>(v_); }
    const LogicValue& as_logic() const { return std::get<LogicValue>(v_); }

    /// Mutable access to list storage, detaching from other holders first.
    List& mutable_list();

    bool truthy() const;

    /// Text used by printf's %s: strings raw, known logic as decimal.
    std::string display() const;

    friend bool operator==(const RuntimeValue& a, const RuntimeValue& b);

private:
    struct UnboundTag {
        bool operator==(const UnboundTag&) const = default;
    };
    struct OutOfRangeTag {
        bool operator==(const OutOfRangeTag&) const = default;
    };

    std::variant<UnboundTag, OutOfRangeTag, std::int64_t, std::string, std::shared_ptr<List>, LogicValue> v_;
};

std::string_view to_string(RuntimeValue::Kind kind);

} // namespace wawk
