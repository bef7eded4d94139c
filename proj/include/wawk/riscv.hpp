#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace wawk::riscv {

struct DecodedInstruction {
    std::string_view mnemonic; // lower-case, or "unknown"
    std::uint8_t opcode = 0;   // bits [6:0]
    std::uint8_t funct3 = 0;   // bits [14:12]
    std::optional<std::uint8_t> funct7; // bits [31:25], for R-type and shift-immediates
};

/// RV32I base mnemonics recognized by decode(), in encoding-table order.
inline constexpr std::array<std::string_view, 40> rv32i_mnemonics = {
    "lui",  "auipc", "jal",   "jalr", "beq",  "bne",  "blt",  "bge",  "bltu", "bgeu",
    "lb",   "lh",    "lw",    "lbu",  "lhu",  "sb",   "sh",   "sw",   "addi", "slti",
    "sltiu", "xori", "ori",   "andi", "slli", "srli", "srai", "add",  "sub",  "sll",
    "slt",  "sltu",  "xor",   "srl",  "sra",  "or",   "and",  "fence", "ecall", "ebreak",
};

/// Total: every 32-bit word yields a mnemonic or "unknown".
DecodedInstruction decode_fields(std::uint32_t word);

inline std::string_view decode(std::uint32_t word)
{
    return decode_fields(word).mnemonic;
}

} // namespace wawk::riscv
