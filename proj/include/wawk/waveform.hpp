#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wawk/error.hpp"
#include "wawk/logic_value.hpp"

namespace wawk {

class WaveformError : public Error {
public:
    enum class Kind { UnknownSignal, IndexOutOfRange, InvalidConstruction };

    WaveformError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

using SignalId = std::size_t;

/// Change list of one signal on the waveform's index axis.
class SignalSeries {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit SignalSeries(std::size_t width) : width_(width), undriven_(LogicValue::all_x(width)) {}

    std::size_t width() const { return width_; }
    std::size_t change_count() const { return indices_.size(); }
    std::size_t change_index(std::size_t n) const { return indices_[n]; }
    const LogicValue& change_value(std::size_t n) const { return values_[n]; }

    /// Position in the change list of the latest change at index <= i, or
    /// npos. `hint` is a previous result for the same caller; sequential
    /// sweeps resolve in O(1).
    std::size_t locate(std::size_t i, std::size_t hint = npos) const;

    /// Value at index i given a locate() result.
    const LogicValue& value_at_position(std::size_t position) const
    {
        return position == npos ? undriven_ : values_[position];
    }

    const LogicValue& value_at(std::size_t i) const { return value_at_position(locate(i)); }

private:
    friend class WaveformBuilder;

    std::size_t width_;
    LogicValue undriven_;
    std::vector<std::size_t> indices_;
    std::vector<LogicValue> values_;
};

/// Immutable time-indexed signal database. INDEX i is the position of the
/// i-th distinct timestamp, not the raw timestamp. Safe for concurrent
/// readers.
class Waveform {
public:
    std::size_t index_count() const { return timestamps_.size(); }
    std::span<const std::uint64_t> timestamps() const { return timestamps_; }
    std::uint64_t timestamp_of(std::size_t i) const;

    std::optional<SignalId> find(std::string_view name) const;
    SignalId require(std::string_view name) const;
    const SignalSeries& series(SignalId id) const { return series_[id]; }
    std::size_t series_count() const { return series_.size(); }

    /// Hierarchical names in declaration order; aliased VCD ids give several
    /// names for one series.
    const std::vector<std::string>& names() const { return names_; }

    const LogicValue& value_at(std::string_view name, std::size_t i) const;

    /// Value at i + offset, or empty when the shifted index is off the axis.
    std::optional<LogicValue> value_at_offset(std::string_view name, std::size_t i,
                                              std::int64_t offset) const;

private:
    friend class WaveformBuilder;

    std::vector<std::uint64_t> timestamps_;
    std::vector<SignalSeries> series_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, SignalId> by_name_;
};

/// Append-only construction of a Waveform. Indices are opened in strictly
/// increasing timestamp order; changes target the most recently opened
/// index.
class WaveformBuilder {
public:
    SignalId add_signal(std::size_t width);
    /// Binds a hierarchical name to an existing series. Returns false if the
    /// name is already bound.
    bool bind_name(std::string name, SignalId id);

    std::size_t signal_width(SignalId id) const { return wave_.series_[id].width(); }
    std::size_t index_count() const { return wave_.timestamps_.size(); }

    /// Opens a new index. Throws WaveformError if timestamp is not greater
    /// than the previous one.
    void open_index(std::uint64_t timestamp);
    /// Records a change at the current index; a second change of the same
    /// signal at the same index replaces the first.
    void set(SignalId id, LogicValue value);

    Waveform finish() &&;

private:
    Waveform wave_;
};

} // namespace wawk
