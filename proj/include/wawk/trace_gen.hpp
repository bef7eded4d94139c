#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wawk/error.hpp"

namespace wawk::trace {

class InvalidSpec : public Error {
public:
    using Error::Error;
};

struct Instruction {
    std::uint32_t word = 0;
    /// Value the CPI script reports for this instruction.
    std::uint32_t cycles = 1;
};

/// Synthetic SERV-like trace description.
///
/// Timing model: every clock cycle spans two indices (clk=1 sample, then
/// clk=0 sample). Cycle 0 is idle. Instruction n's `i_ibus_ack` is high for
/// exactly one cycle starting at cycle a_n, with a_0 = 1 and
/// a_{n+1} = a_n + cycles_n + 1. The CPI script measures from the ack
/// posedge (index 2*a_n) to the last posedge before the next ack
/// (index 2*(a_{n+1} - 1)), and (INDEX - start) / 2 then equals cycles_n.
/// `i_ibus_rdt` holds the word of the most recent ack (0 before the first).
struct TraceSpec {
    std::vector<Instruction> instructions;
    std::uint64_t clock_half_period = 5;
    /// Extra unrelated signals under TOP.servant_sim.dut that toggle
    /// pseudo-randomly, to check analyses ignore unrelated activity.
    std::size_t noise_signals = 0;
    std::uint64_t noise_seed = 1;
};

inline constexpr std::string_view clk_signal = "TOP.servant_sim.dut.cpu.clk";
inline constexpr std::string_view ack_signal = "TOP.servant_sim.dut.cpu.i_ibus_ack";
inline constexpr std::string_view rdt_signal = "TOP.servant_sim.dut.cpu.i_ibus_rdt";

struct InstructionTruth {
    std::string mnemonic;
    std::size_t ack_index = 0;
    /// Empty for the final instruction: no following ack closes it.
    std::optional<std::int64_t> formula_value;
};

struct GroundTruth {
    std::vector<InstructionTruth> instructions;
    std::size_t index_count = 0;
};

struct GeneratedTrace {
    std::string vcd;
    GroundTruth truth;
};

/// Throws InvalidSpec for an empty instruction list, zero cycles, or a zero
/// half period.
GeneratedTrace generate(const TraceSpec& spec);

/// Instruction mix reproducing the published SERV per-instruction CPI table.
TraceSpec table1_spec();

/// `<hex word> <cycles>` per line; `#` starts a comment. Throws InvalidSpec.
TraceSpec parse_spec(std::string_view text);

} // namespace wawk::trace
