#include "wawk/trace_gen.hpp"

#include <charconv>
#include <random>
#include <sstream>

#include "wawk/riscv.hpp"

namespace wawk::trace {

namespace {

std::string id_code(std::size_t n)
{
    // Printable VCD identifier characters '!'..'~'.
    std::string s;
    do {
        s += static_cast<char>('!' + n % 94);
        n /= 94;
    } while (n != 0);
    return s;
}

std::string binary(std::uint32_t v)
{
    std::string s(32, '0');
    for (int b = 0; b < 32; ++b)
        if ((v >> b) & 1u)
            s[31 - b] = '1';
    return s;
}

void validate(const TraceSpec& spec)
{
    if (spec.instructions.empty())
        throw InvalidSpec("trace spec has no instructions");
    if (spec.clock_half_period == 0)
        throw InvalidSpec("clock half period must be positive");
    for (std::size_t k = 0; k < spec.instructions.size(); ++k)
        if (spec.instructions[k].cycles == 0)
            throw InvalidSpec("instruction " + std::to_string(k) + " has zero cycles");
}

} // namespace

GeneratedTrace generate(const TraceSpec& spec)
{
    validate(spec);

    GeneratedTrace out;
    auto& truth = out.truth;

    // Ack start cycles.
    std::vector<std::uint64_t> ack_cycle;
    ack_cycle.reserve(spec.instructions.size());
    std::uint64_t cycle = 1;
    for (const auto& ins : spec.instructions) {
        ack_cycle.push_back(cycle);
        cycle += std::uint64_t{ins.cycles} + 1;
    }
    const std::uint64_t total_cycles = cycle;

    for (std::size_t k = 0; k < spec.instructions.size(); ++k) {
        InstructionTruth t;
        t.mnemonic = std::string(riscv::decode(spec.instructions[k].word));
        t.ack_index = static_cast<std::size_t>(2 * ack_cycle[k]);
        if (k + 1 < spec.instructions.size())
            t.formula_value = static_cast<std::int64_t>((2 * (ack_cycle[k + 1] - 1) - 2 * ack_cycle[k]) / 2);
        truth.instructions.push_back(std::move(t));
    }
    truth.index_count = static_cast<std::size_t>(2 * total_cycles);

    std::ostringstream vcd;
    vcd << "$version serv-trace-gen $end\n"
        << "$timescale 1ns $end\n"
        << "$scope module TOP $end\n"
        << "$scope module servant_sim $end\n"
        << "$scope module dut $end\n";
    std::vector<std::string> noise_ids;
    for (std::size_t k = 0; k < spec.noise_signals; ++k) {
        noise_ids.push_back(id_code(3 + k));
        vcd << "$var wire 1 " << noise_ids.back() << " noise" << k << " $end\n";
    }
    vcd << "$scope module cpu $end\n"
        << "$var wire 1 ! clk $end\n"
        << "$var wire 1 \" i_ibus_ack $end\n"
        << "$var wire 32 # i_ibus_rdt [31:0] $end\n"
        << "$upscope $end\n"
        << "$upscope $end\n"
        << "$upscope $end\n"
        << "$upscope $end\n"
        << "$enddefinitions $end\n";

    std::mt19937_64 rng(spec.noise_seed);
    std::vector<char> noise_state(spec.noise_signals, '0');

    std::size_t next = 0;
    bool ack = false;
    for (std::uint64_t c = 0; c < total_cycles; ++c) {
        for (int phase = 0; phase < 2; ++phase) {
            const std::uint64_t index = 2 * c + static_cast<std::uint64_t>(phase);
            vcd << '#' << index * spec.clock_half_period << '\n';
            if (index == 0)
                vcd << "$dumpvars\n";
            vcd << (phase == 0 ? '1' : '0') << "!\n";
            if (phase == 0) {
                const bool starts = next < ack_cycle.size() && ack_cycle[next] == c;
                if (starts) {
                    vcd << "b" << binary(spec.instructions[next].word) << " #\n";
                    ++next;
                }
                if (starts != ack || index == 0)
                    vcd << (starts ? '1' : '0') << "\"\n";
                ack = starts;
                if (index == 0)
                    vcd << "b0 #\n";
            }
            for (std::size_t k = 0; k < noise_state.size(); ++k) {
                if (index == 0 || (rng() & 3u) == 0) {
                    if (index != 0)
                        noise_state[k] = noise_state[k] == '0' ? '1' : '0';
                    vcd << noise_state[k] << noise_ids[k] << '\n';
                }
            }
            if (index == 0)
                vcd << "$end\n";
        }
    }
    out.vcd = vcd.str();
    return out;
}

TraceSpec table1_spec()
{
    // Words from an RV32I assembler listing, one representative per mnemonic.
    struct Row {
        std::uint32_t word;
        std::vector<std::uint32_t> cycles;
    };
    const std::vector<Row> rows = {
        {0xfffff317u, {35, 35}},                          // auipc x6, 0xfffff
        {0x123452b7u, {35, 35}},                          // lui x5, 0x12345
        {0x003100b3u, {35, 35}},                          // add x1, x2, x3
        {0x80010093u, {35, 35}},                          // addi x1, x2, -2048
        {0x40628233u, {35, 35}},                          // sub x4, x5, x6
        {0x01eefe33u, {35, 35}},                          // and x28, x29, x30
        {0x0ff67593u, {35, 35}},                          // andi x11, x12, 255
        {0x01bd6cb3u, {35, 35}},                          // or x25, x26, x27
        {0x7ff56493u, {35, 35}},                          // ori x9, x10, 0x7ff
        {0x0128c833u, {35, 35}},                          // xor x16, x17, x18
        {0xfff44393u, {35, 35}},                          // xori x7, x8, -1
        {0x00000073u, {35, 35}},                          // ecall
        {0x00c5a533u, {68, 68}},                          // slt x10, x11, x12
        {0x00522193u, {68, 68}},                          // slti x3, x4, 5
        {0x00f736b3u, {68, 68}},                          // sltu x13, x14, x15
        {0x00133293u, {68, 68}},                          // sltiu x5, x6, 1
        {0x009413b3u, {68, 68}},                          // sll x7, x8, x9
        {0x01f71693u, {68, 68}},                          // slli x13, x14, 31
        {0x418bdb33u, {68, 68, 68, 99, 68, 68, 68, 99, 68}}, // sra x22, x23, x24
        {0x40795893u, {68, 68, 68, 68, 68, 68, 68, 99, 68, 68, 68, 68, 68, 68, 68, 68}}, // srai x17, x18, 7
        {0x015a59b3u, {68, 99, 68, 68, 68, 68, 99, 68, 68}}, // srl x19, x20, x21
        {0x00185793u, {68, 68, 99, 68, 68, 68, 68, 99, 68}}, // srli x15, x16, 1
        {0x001000efu, {68, 70, 68, 68, 68}},              // jal x1, 2048
        {0x00c100e7u, {68, 70}},                          // jalr x1, 12(x2)
        {0x00208863u, {68, 68, 70, 68, 68}},              // beq x1, x2, 16
        {0xfe83dee3u, {70, 68}},                          // bge x7, x8, -4
        {0x7ec5ffe3u, {68, 70}},                          // bgeu x11, x12, 4094
        {0x0262c063u, {68, 68, 68, 70, 68}},              // blt x5, x6, 32
        {0x00a4e463u, {70, 68}},                          // bltu x9, x10, 8
        {0xfe4198e3u, {68, 68, 68, 68, 70}},              // bne x3, x4, -16
        {0xfff10083u, {69, 69}},                          // lb x1, -1(x2)
        {0x00221183u, {69, 70, 69}},                      // lh x3, 2(x4)
        {0x01055483u, {70, 69, 69}},                      // lhu x9, 16(x10)
        {0x00432283u, {69, 69, 70}},                      // lw x5, 4(x6)
        {0x00321123u, {69, 70, 69}},                      // sh x3, 2(x4)
        {0x7e532fa3u, {69, 69, 70}},                      // sw x5, 2047(x6)
    };

    // Interleave rows round-robin so instances of one mnemonic are not
    // adjacent, then close the last measurement with a fence.
    TraceSpec spec;
    std::size_t longest = 0;
    for (const auto& r : rows)
        longest = std::max(longest, r.cycles.size());
    for (std::size_t round = 0; round < longest; ++round)
        for (const auto& r : rows)
            if (round < r.cycles.size())
                spec.instructions.push_back({r.word, r.cycles[round]});
    spec.instructions.push_back({0x0330000fu, 35}); // fence rw, rw
    return spec;
}

TraceSpec parse_spec(std::string_view text)
{
    TraceSpec spec;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::istringstream in{std::string(line)};
        std::string word_tok, cycles_tok, extra;
        if (!(in >> word_tok))
            continue;
        auto bad = [&](const std::string& why) {
            return InvalidSpec("spec line " + std::to_string(line_no) + ": " + why);
        };
        if (!(in >> cycles_tok))
            throw bad("expected '<hex word> <cycles>'");
        if (in >> extra)
            throw bad("unexpected trailing '" + extra + "'");

        std::string_view hex = word_tok;
        if (hex.starts_with("0x") || hex.starts_with("0X"))
            hex.remove_prefix(2);
        std::uint32_t word = 0;
        auto [wp, wec] = std::from_chars(hex.data(), hex.data() + hex.size(), word, 16);
        if (hex.empty() || wec != std::errc() || wp != hex.data() + hex.size())
            throw bad("bad instruction word '" + word_tok + "'");
        std::uint32_t cycles = 0;
        auto [cp, cec] = std::from_chars(cycles_tok.data(), cycles_tok.data() + cycles_tok.size(), cycles);
        if (cec != std::errc() || cp != cycles_tok.data() + cycles_tok.size())
            throw bad("bad cycle count '" + cycles_tok + "'");
        if (cycles == 0)
            throw bad("cycle count must be positive");
        spec.instructions.push_back({word, cycles});
    }
    if (spec.instructions.empty())
        throw InvalidSpec("trace spec has no instructions");
    return spec;
}

} // namespace wawk::trace
