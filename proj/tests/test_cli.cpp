#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "support/process.hpp"

namespace fs = std::filesystem;
using wawk::test::shell_quote;
using wawk::test::run_command;

namespace {

const std::string cli = WAWK_CLI_PATH;
const std::string cpi_script = std::string(WAWK_REPO_SCRIPTS_DIR) + "/cpi.wawk";

std::string cli_cmd(const std::string& args)
{
    return shell_quote(cli) + " " + args;
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("wawk-cli-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

const TempDir& scratch()
{
    static TempDir dir;
    return dir;
}

const std::string& table1_vcd()
{
    static const std::string path = [] {
        auto p = scratch().file("table1.vcd");
        REQUIRE(run_command(cli_cmd("gen table1 " + shell_quote(p))).status == 0);
        return p;
    }();
    return path;
}

} // namespace

TEST_CASE("decode")
{
    auto r = run_command(cli_cmd("decode 0x00000033"));
    CHECK(r.status == 0);
    CHECK(r.out == "add\n");
    CHECK(run_command(cli_cmd("decode FFFFFFFF")).out == "unknown\n");
    CHECK(run_command(cli_cmd("decode 0x100000000 2>/dev/null")).status == 2);
    CHECK(run_command(cli_cmd("decode zz 2>/dev/null")).status == 2);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run_command(cli_cmd("2>/dev/null")).status == 2);
    CHECK(run_command(cli_cmd("frobnicate 2>/dev/null")).status == 2);
    CHECK(run_command(cli_cmd("run 2>/dev/null")).status == 2);
    CHECK(run_command(cli_cmd("run " + shell_quote(cpi_script) + " 2>/dev/null")).status == 2);
    CHECK(run_command(cli_cmd("gen 2>/dev/null")).status == 2);
}

TEST_CASE("missing waveform file")
{
    auto r = run_command(cli_cmd("run " + shell_quote(cpi_script) + " /nonexistent/trace.vcd add 2>&1"));
    CHECK(r.status == 2);
    CHECK(r.out.find("waveform file not found") != std::string::npos);
}

TEST_CASE("script errors")
{
    const auto bad = scratch().file("bad.wawk");
    std::ofstream(bad) << "BEGIN: { x = ; }\n";
    auto r = run_command(cli_cmd("run " + shell_quote(bad) + " " + shell_quote(table1_vcd()) + " 2>&1"));
    CHECK(r.status == 2);
    CHECK(r.out.find("1:") != std::string::npos);

    const auto failing = scratch().file("failing.wawk");
    std::ofstream(failing) << "END: { printf(\"%d\\n\", 1 / 0); }\n";
    r = run_command(cli_cmd("run " + shell_quote(failing) + " " + shell_quote(table1_vcd()) + " 2>&1"));
    CHECK(r.status == 1);
    CHECK(r.out.find("runtime error") != std::string::npos);
}

TEST_CASE("run the CPI script on the table1 trace")
{
    auto r = run_command(cli_cmd("run " + shell_quote(cpi_script) + " " + shell_quote(table1_vcd()) + " add"));
    CHECK(r.status == 0);
    CHECK(r.out == "add: 35\n");
    r = run_command(cli_cmd("run " + shell_quote(cpi_script) + " " + shell_quote(table1_vcd()) + " sra"));
    CHECK(r.out == "sra: avg=75 min=68 max=99\n");
}

TEST_CASE("run --all with the bundled script")
{
    auto r = run_command(cli_cmd("run --all -j 4 " + shell_quote(table1_vcd())));
    CHECK(r.status == 0);
    CHECK(r.out.find("lui: 35\n") == 0);
    CHECK(r.out.find("jalr: avg=69 min=68 max=70\n") != std::string::npos);
    // Mnemonics absent from the mix print nothing.
    CHECK(r.out.find("lbu") == std::string::npos);
    auto explicit_script = run_command(cli_cmd("run --all " + shell_quote(cpi_script) + " " + shell_quote(table1_vcd())));
    CHECK(explicit_script.out == r.out);
}

TEST_CASE("gen spec, stdin and stdout")
{
    const auto spec = scratch().file("three.spec");
    std::ofstream(spec) << "# three adds\n0x003100b3 12\n0x003100b3 14\n0x00000013 1\n";
    auto r = run_command(cli_cmd("gen spec " + shell_quote(spec) + " - | " + cli_cmd("run " + shell_quote(cpi_script) + " - add")));
    CHECK(r.status == 0);
    CHECK(r.out == "add: avg=13 min=12 max=14\n");

    r = run_command(cli_cmd("gen --noise 4 --half-period 3 spec " + shell_quote(spec) + " -"));
    CHECK(r.status == 0);
    CHECK(r.out.find("noise3") != std::string::npos);
    CHECK(r.out.find("#3\n") != std::string::npos);

    std::ofstream(spec) << "0x33 0\n";
    CHECK(run_command(cli_cmd("gen spec " + shell_quote(spec) + " - 2>/dev/null")).status == 2);
    CHECK(run_command(cli_cmd("gen spec /nonexistent.spec - 2>/dev/null")).status == 2);
}
