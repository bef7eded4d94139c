#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "wawk/cpi_script.hpp"
#include "wawk/interpreter.hpp"
#include "wawk/parser.hpp"
#include "wawk/riscv.hpp"
#include "wawk/trace_gen.hpp"
#include "wawk/vcd.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct RunOptions {
    std::vector<std::string> operands;
    bool all = false;
    unsigned jobs = 0;
};

int run_all(const wawk::ast::Program& program, const wawk::Waveform& wave, unsigned jobs)
{
    const auto& mnemonics = wawk::riscv::rv32i_mnemonics;
    std::vector<std::string> outputs(mnemonics.size());
    std::vector<std::string> errors(mnemonics.size());
    std::vector<int> status(mnemonics.size(), exit_ok);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < mnemonics.size(); k = next++) {
            std::ostringstream out, err;
            status[k] = wawk::run(program, wave, {std::string(mnemonics[k])}, out, err);
            outputs[k] = out.str();
            errors[k] = err.str();
        }
    };
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(mnemonics.size()));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    int rc = exit_ok;
    for (std::size_t k = 0; k < mnemonics.size(); ++k) {
        std::cout << outputs[k];
        std::cerr << errors[k];
        rc = std::max(rc, status[k]);
    }
    return rc;
}

int cmd_run(const RunOptions& opt)
{
    std::string script_path;
    std::string trace_path;
    std::vector<std::string> args;
    const auto& ops = opt.operands;
    if (opt.all && ops.size() == 1) {
        trace_path = ops[0];
    } else if (ops.size() >= 2 && !(opt.all && ops.size() > 2)) {
        script_path = ops[0];
        trace_path = ops[1];
        args.assign(ops.begin() + 2, ops.end());
    } else {
        std::cerr << "usage: wawk run <script.wawk> <trace.vcd> [args...]\n"
                     "       wawk run --all [<script.wawk>] <trace.vcd>\n";
        return exit_usage;
    }

    wawk::ast::Program program;
    try {
        program = script_path.empty() ? wawk::parse_script(wawk::cpi_script())
                                      : wawk::parse_script_file(script_path);
    } catch (const wawk::SyntaxError& e) {
        std::cerr << script_path << ":" << e.what() << "\n";
        return exit_usage;
    } catch (const wawk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    if (trace_path != "-" && !std::filesystem::exists(trace_path)) {
        std::cerr << "error: waveform file not found: " << trace_path << "\n";
        return exit_usage;
    }
    wawk::Waveform wave;
    try {
        wave = wawk::vcd::parse_file(trace_path);
    } catch (const wawk::Error& e) {
        std::cerr << trace_path << ": " << e.what() << "\n";
        return exit_usage;
    }

    if (opt.all)
        return run_all(program, wave, opt.jobs);
    return wawk::run(program, wave, std::move(args), std::cout, std::cerr);
}

int write_trace(const wawk::trace::TraceSpec& spec, const std::string& out_path)
{
    const auto trace = wawk::trace::generate(spec);
    if (out_path == "-") {
        std::cout << trace.vcd;
        return exit_ok;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << trace.vcd)) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return exit_runtime;
    }
    return exit_ok;
}

int cmd_decode(const std::string& text)
{
    std::string_view hex = text;
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.remove_prefix(2);
    std::uint32_t word = 0;
    auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), word, 16);
    if (hex.empty() || ec != std::errc() || ptr != hex.data() + hex.size()) {
        std::cerr << "error: '" << text << "' is not a 32-bit hex word\n";
        return exit_usage;
    }
    std::cout << wawk::riscv::decode(word) << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Waveform analysis with WAWK condition-action scripts"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Evaluate a script over a VCD waveform");
    run->add_flag("--all", run_opt.all,
                  "Run once per RV32I mnemonic (args[0]); the script defaults to the bundled CPI analysis");
    run->add_option("-j,--jobs", run_opt.jobs, "Worker threads for --all (default: hardware concurrency)");
    run->add_option("operands", run_opt.operands, "<script.wawk> <trace.vcd> [args...]")->required();
    run->positionals_at_end();

    std::size_t noise = 0;
    std::uint64_t half_period = 5;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic SERV-like VCD trace");
    gen->require_subcommand(1);
    gen->add_option("--noise", noise, "Number of unrelated toggling signals to add");
    gen->add_option("--half-period", half_period, "Clock half period in timestamp units")->check(CLI::PositiveNumber);
    std::string table1_out;
    auto* gen_table1 = gen->add_subcommand("table1", "Instruction mix reproducing the SERV CPI table");
    gen_table1->add_option("out", table1_out, "Output VCD path, or - for stdout")->required();
    std::string spec_path, spec_out;
    auto* gen_spec = gen->add_subcommand("spec", "Instructions from a '<hex word> <cycles>' file");
    gen_spec->add_option("spec", spec_path, "Spec file")->required();
    gen_spec->add_option("out", spec_out, "Output VCD path, or - for stdout")->required();

    std::string word;
    auto* decode = app.add_subcommand("decode", "Print the RV32I mnemonic of an instruction word");
    decode->add_option("word", word, "32-bit hex word, e.g. 0x00000033")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*run)
            return cmd_run(run_opt);
        if (*decode)
            return cmd_decode(word);
        if (*gen) {
            wawk::trace::TraceSpec spec;
            std::string out_path;
            if (*gen_table1) {
                spec = wawk::trace::table1_spec();
                out_path = table1_out;
            } else {
                std::ifstream in(spec_path, std::ios::binary);
                if (!in) {
                    std::cerr << "error: cannot open spec file " << spec_path << "\n";
                    return exit_usage;
                }
                std::stringstream text;
                text << in.rdbuf();
                spec = wawk::trace::parse_spec(text.str());
                out_path = spec_out;
            }
            spec.noise_signals = noise;
            spec.clock_half_period = half_period;
            return write_trace(spec, out_path);
        }
    } catch (const wawk::trace::InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const wawk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_usage;
}
