#include "wawk/riscv.hpp"

namespace wawk::riscv {

namespace {

constexpr std::uint8_t op_lui = 0b0110111;
constexpr std::uint8_t op_auipc = 0b0010111;
constexpr std::uint8_t op_jal = 0b1101111;
constexpr std::uint8_t op_jalr = 0b1100111;
constexpr std::uint8_t op_branch = 0b1100011;
constexpr std::uint8_t op_load = 0b0000011;
constexpr std::uint8_t op_store = 0b0100011;
constexpr std::uint8_t op_imm = 0b0010011;
constexpr std::uint8_t op_reg = 0b0110011;
constexpr std::uint8_t op_misc_mem = 0b0001111;
constexpr std::uint8_t op_system = 0b1110011;

constexpr std::string_view unknown = "unknown";

std::string_view branch(std::uint8_t f3)
{
    switch (f3) {
    case 0: return "beq";
    case 1: return "bne";
    case 4: return "blt";
    case 5: return "bge";
    case 6: return "bltu";
    case 7: return "bgeu";
    default: return unknown;
    }
}

std::string_view load(std::uint8_t f3)
{
    switch (f3) {
    case 0: return "lb";
    case 1: return "lh";
    case 2: return "lw";
    case 4: return "lbu";
    case 5: return "lhu";
    default: return unknown;
    }
}

std::string_view store(std::uint8_t f3)
{
    switch (f3) {
    case 0: return "sb";
    case 1: return "sh";
    case 2: return "sw";
    default: return unknown;
    }
}

std::string_view op_immediate(std::uint8_t f3, std::uint8_t f7)
{
    switch (f3) {
    case 0: return "addi";
    case 2: return "slti";
    case 3: return "sltiu";
    case 4: return "xori";
    case 6: return "ori";
    case 7: return "andi";
    case 1: return f7 == 0 ? "slli" : unknown;
    case 5:
        // bit 30 selects arithmetic shift
        if (f7 == 0)
            return "srli";
        if (f7 == 0b0100000)
            return "srai";
        return unknown;
    }
    return unknown;
}

std::string_view op_register(std::uint8_t f3, std::uint8_t f7)
{
    if (f7 == 0) {
        static constexpr std::string_view names[8] = {"add", "sll", "slt", "sltu", "xor", "srl", "or", "and"};
        return names[f3];
    }
    if (f7 == 0b0100000) {
        if (f3 == 0)
            return "sub";
        if (f3 == 5)
            return "sra";
    }
    return unknown;
}

} // namespace

DecodedInstruction decode_fields(std::uint32_t word)
{
    DecodedInstruction d;
    d.opcode = static_cast<std::uint8_t>(word & 0x7f);
    d.funct3 = static_cast<std::uint8_t>((word >> 12) & 0x7);
    const auto f7 = static_cast<std::uint8_t>(word >> 25);

    switch (d.opcode) {
    case op_lui: d.mnemonic = "lui"; break;
    case op_auipc: d.mnemonic = "auipc"; break;
    case op_jal: d.mnemonic = "jal"; break;
    case op_jalr: d.mnemonic = d.funct3 == 0 ? "jalr" : unknown; break;
    case op_branch: d.mnemonic = branch(d.funct3); break;
    case op_load: d.mnemonic = load(d.funct3); break;
    case op_store: d.mnemonic = store(d.funct3); break;
    case op_imm:
        if (d.funct3 == 1 || d.funct3 == 5)
            d.funct7 = f7;
        d.mnemonic = op_immediate(d.funct3, f7);
        break;
    case op_reg:
        d.funct7 = f7;
        d.mnemonic = op_register(d.funct3, f7);
        break;
    case op_misc_mem: d.mnemonic = d.funct3 == 0 ? "fence" : unknown; break;
    case op_system:
        // Only the two exact environment-call encodings; CSR ops are not RV32I base.
        if (word == 0x00000073u)
            d.mnemonic = "ecall";
        else if (word == 0x00100073u)
            d.mnemonic = "ebreak";
        else
            d.mnemonic = unknown;
        break;
    default: d.mnemonic = unknown; break;
    }
    return d;
}

} // namespace wawk::riscv
