#include <sstream>
#include <thread>

#include "doctest.h"

#include "wawk/interpreter.hpp"
#include "wawk/parser.hpp"

using namespace wawk;
using K = RuntimeError::Kind;

namespace {

/// `top.s` follows `pattern` ('0'/'1'/'x' per index); `top.w` is a 32-bit bus
/// holding 0x33 except at index 1 where it is all x.
Waveform make_wave(std::string_view pattern)
{
    WaveformBuilder b;
    const auto s = b.add_signal(1);
    const auto w = b.add_signal(32);
    b.bind_name("top.s", s);
    b.bind_name("top.w", w);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        b.open_index(10 * i);
        b.set(s, LogicValue::from_bits(std::string(1, pattern[i])));
        b.set(w, i == 1 ? LogicValue::all_x(32) : LogicValue::from_uint(32, 0x33));
    }
    return std::move(b).finish();
}

struct Outcome {
    std::string out;
    std::optional<RuntimeError> error;
};

Outcome run_script(std::string_view src, const Waveform& w, std::vector<std::string> args = {},
                   ModuleRegistry modules = ModuleRegistry::with_defaults())
{
    const auto program = parse_script(src);
    std::ostringstream out;
    Interpreter interp(program, w, std::move(args), out, std::move(modules));
    Outcome r;
    try {
        interp.execute();
    } catch (const RuntimeError& e) {
        r.error = e;
    }
    r.out = out.str();
    return r;
}

std::string output(std::string_view src, const Waveform& w = {}, std::vector<std::string> args = {})
{
    auto r = run_script(src, w, std::move(args));
    if (r.error)
        FAIL("unexpected runtime error: " << r.error->what());
    return r.out;
}

K error_of(std::string_view src, const Waveform& w = {}, std::vector<std::string> args = {})
{
    auto r = run_script(src, w, std::move(args));
    if (!r.error)
        FAIL("expected a runtime error");
    return r.error->kind();
}

/// Module `probe` whose `count` function increments *counter and returns 1.
ModuleRegistry with_probe(int* counter)
{
    auto modules = ModuleRegistry::with_defaults();
    NativeModule probe;
    probe.functions.emplace("count", [counter](std::span<const RuntimeValue>) {
        ++*counter;
        return RuntimeValue::integer(1);
    });
    modules.add("probe", std::move(probe));
    return modules;
}

} // namespace

TEST_CASE("empty program produces no output")
{
    CHECK(output("", make_wave("0101")).empty());
}

TEST_CASE("BEGIN and END run on a zero-index waveform")
{
    CHECK(output("BEGIN: { x = 1; } END: { printf(\"%d\", x); }") == "1");
}

TEST_CASE("BEGIN and END execute exactly once")
{
    for (std::string_view pattern : {"", "0", "01101"}) {
        int count = 0;
        const auto w = make_wave(pattern);
        auto r = run_script("BEGIN: { import(probe); call(probe.count); } END: { call(probe.count); }"
                            "BEGIN: { call(probe.count); }",
                            w, {}, with_probe(&count));
        CHECK_FALSE(r.error);
        CHECK(count == 3);
    }
}

TEST_CASE("statements sweep every index in source order")
{
    const auto w = make_wave("0110");
    CHECK(output("INDEX >= 0: { printf(\"a%d \", INDEX); } top.s: { printf(\"b%d \", INDEX); }", w) ==
          "a0 a1 b1 a2 b2 a3 ");
    // Later statements at the same index see earlier mutations.
    CHECK(output("BEGIN: { n = 0; } top.s: { n = n + 1; } top.s: { printf(\"%d\", n); }", w) == "12");
}

TEST_CASE("Listing 1 formula evaluates with integer division")
{
    const auto w = make_wave(std::string(20, '0'));
    CHECK(output("BEGIN: { start = 10; } INDEX == 18: { printf(\"%d\", (INDEX - start) / 2); }", w) == "4");
    CHECK(output("END: { printf(\"%d %d %d\", -7 / 2, 7 / -2, 2 * 3 - 4); }") == "-3 -3 2");
}

TEST_CASE("list append and truthiness")
{
    CHECK(output("BEGIN: { cpis = []; cpis = cpis + 5; printf(\"%s\", cpis); if (cpis) printf(\" yes\"); }") ==
          "[5] yes");
    CHECK(output("BEGIN: { xs = []; if (xs) printf(\"no\"); else printf(\"empty\"); }") == "empty");
    // Appending through a second name copies rather than aliasing.
    CHECK(output("BEGIN: { a = [1]; b = a; a = a + 2; b = b + 3; printf(\"%s %s\", a, b); }") == "[1, 2] [1, 3]");
    CHECK(output("BEGIN: { a = [1] + [2]; printf(\"%s %d\", a, length(a)); }") == "[1, [2]] 2");
    CHECK(output("BEGIN: { if (\"\") printf(\"no\"); if (\"s\") printf(\"str\"); if (0) printf(\"no\"); }") ==
          "str");
}

TEST_CASE("offset references")
{
    const auto w = make_wave("0011");
    CHECK(output("top.s@1: { printf(\"%d \", INDEX); }", w) == "1 2 ");
    CHECK(output("!top.s@-1: { printf(\"%d \", INDEX); }", w) == "0 1 2 ");
    // The final index has no sample two ahead: OutOfRange is falsy.
    CHECK(output("INDEX == 3, top.s@2: { printf(\"hit\"); } INDEX == 3, !top.s@2: { printf(\"miss\"); }", w) == "miss");
    CHECK(output("INDEX == 3: { x = top.s@2; if (x) printf(\"t\"); else printf(\"f\"); }", w) == "f");
    CHECK(output("INDEX == 3: { if (top.s@2 == 1) printf(\"t\"); else printf(\"f\"); }", w) == "f");
    CHECK(error_of("BEGIN: { s = 1; } s@1: {}", w) == K::TypeMismatch);
}

TEST_CASE("fire@2-style guard is false near the end of the trace")
{
    const auto w = make_wave("10101");
    // Conjunction with an offset reaching past the end never fires there.
    CHECK(output("top.s, top.s@2: { printf(\"%d \", INDEX); }", w) == "0 2 ");
}

TEST_CASE("aggregates")
{
    CHECK(output("END: { xs = [68, 99, 68]; printf(\"%d %d\", min(xs), max(xs)); }") == "68 99");
    CHECK(output("END: { printf(\"%d\", average([35])); }") == "35");
    CHECK(output("END: { printf(\"%d\", average([68, 70])); }") == "69");
    // Round half up, including for negative means.
    CHECK(output("END: { printf(\"%d %d %d\", average([1, 2]), average([-1, -2]), average([1, 1, 2])); }") ==
          "2 -1 1");
    CHECK(output("END: { printf(\"%d %d\", length([]), length(\"abc\")); }") == "0 3");
    CHECK(error_of("END: { min([]); }") == K::EmptyList);
    CHECK(error_of("END: { average([]); }") == K::EmptyList);
    CHECK(error_of("END: { max([1, \"a\"]); }") == K::TypeMismatch);
    CHECK(error_of("END: { min(3); }") == K::TypeMismatch);
    CHECK(error_of("END: { min([1], [2]); }") == K::ArityMismatch);
}

TEST_CASE("alias")
{
    const auto w = make_wave("0110");
    CHECK(output("BEGIN: { alias(fire, top.s); } fire: { printf(\"%d\", INDEX); }", w) == "12");
    CHECK(error_of("BEGIN: { alias(fire, top.nope); }", w) == K::UnknownSignal);
    CHECK(error_of("BEGIN: { alias(fire, top.s); alias(fire, top.w); }", w) == K::RedefinedAlias);
    CHECK(error_of("BEGIN: { alias(fire, 3); }", w) == K::TypeMismatch);
}

TEST_CASE("alias transparency")
{
    const auto w = make_wave("0110100111");
    const std::string body = "SIG, !SIG@-1: { edges = edges + [INDEX]; } END: { printf(\"%s\", edges); }";
    auto with = [&](const std::string& sig, const std::string& prelude) {
        std::string src = "BEGIN: { edges = []; " + prelude + " } " + body;
        for (auto pos = src.find("SIG"); pos != std::string::npos; pos = src.find("SIG"))
            src.replace(pos, 3, sig);
        return output(src, w);
    };
    const auto direct = with("top.s", "");
    CHECK(direct == "[[1], [4], [7]]");
    CHECK(with("fire", "alias(fire, top.s);") == direct);
    CHECK(with("x", "alias(x, top.s);") == direct);
}

TEST_CASE("import and call")
{
    const auto w = make_wave("00");
    CHECK(output("BEGIN: { import(extern); printf(\"%s\", call(extern.decode, 0x00000033)); }") == "add");
    CHECK(output("INDEX == 0: { import(extern); printf(\"%s\", call(extern.decode, top.w)); }", w) == "add");
    CHECK(error_of("INDEX == 1: { import(extern); call(extern.decode, top.w); }", w) == K::XZConversion);
    CHECK(error_of("BEGIN: { call(extern.decode, 0x33); }") == K::UnknownModule);
    CHECK(error_of("BEGIN: { import(nothing); }") == K::UnknownModule);
    CHECK(error_of("BEGIN: { import(extern); call(extern.nope, 1); }") == K::UnknownFunction);
    CHECK(error_of("BEGIN: { import(extern); call(extern.decode); }") == K::ArityMismatch);
    CHECK(error_of("BEGIN: { import(extern); call(extern.decode, -1); }") == K::TypeMismatch);
    CHECK(error_of("BEGIN: { frobnicate(1); }") == K::UnknownFunction);
    CHECK(error_of("BEGIN: { import(extern); x = extern; }") == K::TypeMismatch);
}

TEST_CASE("printf")
{
    CHECK(output("END: { printf(\"%s: %d\\n\", \"add\", 35); }") == "add: 35\n");
    CHECK(output("END: { printf(\"100%%\"); }") == "100%");
    CHECK(output("END: { printf(\"%s %s\", 7, [\"a\"]); }") == "7 [\"a\"]");
    CHECK(error_of("END: { printf(\"%d\", \"str\"); }") == K::FormatTypeMismatch);
    CHECK(error_of("END: { printf(\"%d %d\", 1); }") == K::FormatArityMismatch);
    CHECK(error_of("END: { printf(\"%d\", 1, 2); }") == K::FormatArityMismatch);
    CHECK(error_of("END: { printf(\"%q\", 1); }") == K::FormatTypeMismatch);
    CHECK(error_of("END: { printf(3); }") == K::FormatTypeMismatch);
    CHECK(error_of("END: { printf(); }") == K::FormatArityMismatch);
}

TEST_CASE("comparisons")
{
    const auto w = make_wave("1");
    CHECK(output("INDEX == 0: { printf(\"%d%d%d\", top.s == 1, top.w == 0x33, top.w > top.s); }", w) == "111");
    CHECK(output("END: { printf(\"%d%d%d\", \"a\" < \"b\", \"add\" == \"add\", \"a\" != \"a\"); }") == "110");
    CHECK(output("END: { printf(\"%d%d\", 1 <= 1, 2 >= 3); }") == "10");
    CHECK(error_of("END: { x = \"a\" == 1; }") == K::TypeMismatch);
    CHECK(error_of("END: { x = [] == []; }") == K::TypeMismatch);
}

TEST_CASE("x/z values")
{
    const auto w = make_wave("0x1");
    CHECK(output("top.s: { printf(\"%d\", INDEX); }", w) == "2");
    CHECK(output("!top.s: { printf(\"%d\", INDEX); }", w) == "01");
    CHECK(error_of("INDEX == 1, top.s == 0: {}", w) == K::XZConversion);
    CHECK(error_of("INDEX == 1: { x = top.s + 1; }", w) == K::XZConversion);
    CHECK(error_of("INDEX == 1: { printf(\"%d\", top.w); }", w) == K::XZConversion);
}

TEST_CASE("unbound names")
{
    const auto w = make_wave("11");
    // Conditions tolerate names that are not yet assigned.
    CHECK(output("op == \"add\": { printf(\"no\"); } INDEX == 0: { op = \"add\"; } op == \"add\": { printf(\"%d\", INDEX); }",
                 w) == "0no1");
    CHECK(output("undefined_thing: { printf(\"no\"); } !undefined_thing: { printf(\"y\"); }", w) == "yy");
    CHECK(error_of("INDEX - start > 0: {}", w) == K::TypeMismatch);
    CHECK(error_of("END: { x = y; }") == K::UnknownName);
    CHECK(error_of("END: { if (y) x = 1; }") == K::UnknownName);
    CHECK(error_of("END: { x = nosuch@1; }") == K::UnknownName);
}

TEST_CASE("arithmetic errors")
{
    CHECK(error_of("END: { x = 1 / 0; }") == K::DivisionByZero);
    CHECK(error_of("END: { x = 0x7fffffffffffffff + 1; }") == K::Overflow);
    CHECK(error_of("END: { x = \"a\" - 1; }") == K::TypeMismatch);
    CHECK(error_of("END: { x = -\"a\"; }") == K::TypeMismatch);
    CHECK(output("END: { printf(\"%s\", \"ab\" + \"cd\"); }") == "abcd");
}

TEST_CASE("subscripts")
{
    CHECK(output("END: { printf(\"%s %d\", args[1], [4, 5][1]); }", {}, {"a", "b"}) == "b 5");
    CHECK(output("END: { printf(\"%s\", \"xyz\"[2]); }") == "z");
    CHECK(error_of("END: { x = args[0]; }") == K::IndexOutOfRange);
    CHECK(error_of("END: { x = [1][-1]; }") == K::IndexOutOfRange);
    CHECK(error_of("END: { x = 3[0]; }") == K::TypeMismatch);
}

TEST_CASE("conjunction short-circuits left to right")
{
    const auto w = make_wave("0101100");
    int count = 0;
    auto r = run_script("BEGIN: { import(probe); } top.s, call(probe.count): {}", w, {}, with_probe(&count));
    CHECK_FALSE(r.error);
    CHECK(count == 3);

    count = 0;
    r = run_script("BEGIN: { import(probe); } top.s && call(probe.count) || call(probe.count): {}", w, {},
                   with_probe(&count));
    CHECK_FALSE(r.error);
    CHECK(count == 7);

    count = 0;
    r = run_script("BEGIN: { import(probe); } 0, call(probe.count): {} END: { x = 1 || call(probe.count); }", w,
                   {}, with_probe(&count));
    CHECK_FALSE(r.error);
    CHECK(count == 0);
}

TEST_CASE("runtime errors name the statement and index")
{
    const auto w = make_wave("0001");
    auto r = run_script("BEGIN: { n = 0; }\ntop.s: { n = 1 / 0; }", w);
    REQUIRE(r.error);
    CHECK(r.error->kind() == K::DivisionByZero);
    CHECK(r.error->context() == "statement 2 (line 2) at INDEX 3");
    CHECK(std::string(r.error->what()).find("statement 2 (line 2) at INDEX 3: 2:") == 0);

    const auto program = parse_script("END: { printf(\"partial\"); x = q; }");
    std::ostringstream out, err;
    CHECK(run(program, w, {}, out, err) == 1);
    CHECK(out.str() == "partial");
    CHECK(err.str().find("END statement 1") != std::string::npos);
    CHECK(err.str().find("unknown name 'q'") != std::string::npos);
}

TEST_CASE("globals are inspectable after a run")
{
    const auto program = parse_script("BEGIN: { xs = []; } INDEX >= 0: { xs = xs + INDEX; }");
    const auto w = make_wave("0000");
    std::ostringstream out;
    Interpreter interp(program, w, {}, out);
    interp.execute();
    const auto xs = interp.global("xs");
    REQUIRE(xs.is(RuntimeValue::Kind::List));
    CHECK(xs.as_list().size() == 4);
    CHECK(xs.as_list()[3] == RuntimeValue::integer(3));
    CHECK(interp.global("never").is(RuntimeValue::Kind::Unbound));
}

TEST_CASE("repeated and concurrent runs are byte-identical")
{
    std::string pattern;
    for (int i = 0; i < 5000; ++i)
        pattern += (i * 7 % 3 == 0) ? '1' : '0';
    const auto w = make_wave(pattern);
    const auto program = parse_script(
        "BEGIN: { gaps = []; last = 0; } top.s, !top.s@-1: { if (last) gaps = gaps + (INDEX - last); last = INDEX; }"
        "END: { printf(\"%d %d %d %d\\n\", length(gaps), min(gaps), max(gaps), average(gaps)); }");
    auto once = [&] {
        std::ostringstream out;
        Interpreter(program, w, {}, out).execute();
        return out.str();
    };
    const auto reference = once();
    CHECK_FALSE(reference.empty());
    std::vector<std::string> results(4);
    std::vector<std::thread> threads;
    for (auto& r : results)
        threads.emplace_back([&r, &once] { r = once(); });
    for (auto& t : threads)
        t.join();
    for (const auto& r : results)
        CHECK(r == reference);
}
