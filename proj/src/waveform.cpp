#include "wawk/waveform.hpp"

#include <algorithm>

namespace wawk {

std::size_t SignalSeries::locate(std::size_t i, std::size_t hint) const
{
    const std::size_t n = indices_.size();
    auto fits = [&](std::size_t p) {
        return indices_[p] <= i && (p + 1 == n || indices_[p + 1] > i);
    };
    if (hint != npos && hint < n) {
        if (fits(hint))
            return hint;
        if (hint + 1 < n && fits(hint + 1))
            return hint + 1;
    }
    auto it = std::upper_bound(indices_.begin(), indices_.end(), i);
    if (it == indices_.begin())
        return npos;
    return static_cast<std::size_t>(it - indices_.begin()) - 1;
}

std::uint64_t Waveform::timestamp_of(std::size_t i) const
{
    if (i >= timestamps_.size())
        throw WaveformError(WaveformError::Kind::IndexOutOfRange,
                            "index " + std::to_string(i) + " out of range (index count " +
                                std::to_string(timestamps_.size()) + ")");
    return timestamps_[i];
}

std::optional<SignalId> Waveform::find(std::string_view name) const
{
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

SignalId Waveform::require(std::string_view name) const
{
    if (auto id = find(name))
        return *id;
    throw WaveformError(WaveformError::Kind::UnknownSignal,
                        "unknown signal '" + std::string(name) + "'");
}

const LogicValue& Waveform::value_at(std::string_view name, std::size_t i) const
{
    const SignalId id = require(name);
    if (i >= timestamps_.size())
        throw WaveformError(WaveformError::Kind::IndexOutOfRange,
                            "index " + std::to_string(i) + " out of range (index count " +
                                std::to_string(timestamps_.size()) + ")");
    return series_[id].value_at(i);
}

std::optional<LogicValue> Waveform::value_at_offset(std::string_view name, std::size_t i,
                                                    std::int64_t offset) const
{
    const SignalId id = require(name);
    const auto shifted = static_cast<std::int64_t>(i) + offset;
    if (shifted < 0 || static_cast<std::uint64_t>(shifted) >= timestamps_.size())
        return std::nullopt;
    return series_[id].value_at(static_cast<std::size_t>(shifted));
}

SignalId WaveformBuilder::add_signal(std::size_t width)
{
    if (width == 0)
        throw WaveformError(WaveformError::Kind::InvalidConstruction, "signal width must be >= 1");
    wave_.series_.emplace_back(width);
    return wave_.series_.size() - 1;
}

bool WaveformBuilder::bind_name(std::string name, SignalId id)
{
    if (wave_.by_name_.contains(name))
        return false;
    wave_.by_name_.emplace(name, id);
    wave_.names_.push_back(std::move(name));
    return true;
}

void WaveformBuilder::open_index(std::uint64_t timestamp)
{
    if (!wave_.timestamps_.empty() && timestamp <= wave_.timestamps_.back())
        throw WaveformError(WaveformError::Kind::InvalidConstruction,
                            "timestamp " + std::to_string(timestamp) + " does not follow " +
                                std::to_string(wave_.timestamps_.back()));
    wave_.timestamps_.push_back(timestamp);
}

void WaveformBuilder::set(SignalId id, LogicValue value)
{
    if (wave_.timestamps_.empty())
        throw WaveformError(WaveformError::Kind::InvalidConstruction, "no index opened");
    SignalSeries& s = wave_.series_.at(id);
    if (value.width() != s.width())
        throw WaveformError(WaveformError::Kind::InvalidConstruction, "value width mismatch");
    const std::size_t index = wave_.timestamps_.size() - 1;
    if (!s.indices_.empty() && s.indices_.back() == index) {
        s.values_.back() = std::move(value);
        return;
    }
    s.indices_.push_back(index);
    s.values_.push_back(std::move(value));
}

Waveform WaveformBuilder::finish() &&
{
    return std::move(wave_);
}

} // namespace wawk
