#include "support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace sectcat;

namespace {

std::string m1_text()
{
    for (const auto& g : golden_models())
        if (g.name == "M1") return g.text;
    return {};
}

std::string replace(std::string s, const std::string& from, const std::string& to)
{
    auto at = s.find(from);
    if (at != std::string::npos) s.replace(at, from.size(), to);
    return s;
}

ParseError parse_failure(const std::string& text)
{
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "expected a parse error";
    return ParseError(0, 0, "", "");
}

RunResult go(std::string command, std::string model, std::vector<std::string> classes = {}, bool json = false,
             unsigned threads = 1)
{
    RunOptions o;
    o.command = std::move(command);
    o.model = std::move(model);
    o.classes = std::move(classes);
    o.json = json;
    o.threads = threads;
    return run(o);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / ("sectcat_" + name + ".dga");
    std::ofstream(path) << text;
    return path;
}

struct Process {
    int status;
    std::string out;
};

Process shell(const std::string& args)
{
    std::string cmd = std::string(SECTCAT_CLI_PATH) + " " + args + " 2>/dev/null";
    Process p{-1, {}};
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
    int st = pclose(f);
    p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}

}  // namespace

TEST(Parse, M1Text)
{
    Presentation p = parse_model(m1_text());
    EXPECT_EQ(p.name, "M1");
    ASSERT_EQ(p.generators.size(), 3u);
    EXPECT_EQ(p.generators[2], (Generator{"z", 5}));
    EXPECT_EQ(p.truncation, 8);
    EXPECT_EQ(p.space_dim, 8);
    EXPECT_TRUE(p.simply_connected);
    ASSERT_EQ(p.differentials.size(), 1u);
    EXPECT_EQ(p.differentials[0].first, "z");
    EXPECT_TRUE(validate(compile_free_cdga(p).dga()).empty());
}

TEST(Parse, DegreeMismatch)
{
    auto e = parse_failure(replace(m1_text(), "d z = a*b", "d z = a"));
    EXPECT_NE(std::string(e.what()).find("6 ≠ 3"), std::string::npos) << e.what();
    EXPECT_EQ(e.token(), "a");
    EXPECT_GT(e.line(), 1);
    EXPECT_GT(e.column(), 1);
    // a degree-4 right-hand side against the expected 6
    std::string text = replace(m1_text(), "generator z degree 5", "generator z degree 5\n  generator c degree 4");
    auto e4 = parse_failure(replace(text, "d z = a*b", "d z = c"));
    EXPECT_NE(std::string(e4.what()).find("6 ≠ 4"), std::string::npos) << e4.what();
}

TEST(Parse, GeneratorDegreeZeroRejected)
{
    auto e = parse_failure("algebra X { truncate 3 generator a degree 0 }");
    EXPECT_EQ(e.token(), "0");
    EXPECT_EQ(e.line(), 1);
}

TEST(Parse, OtherErrors)
{
    EXPECT_EQ(parse_failure("algebra X { generator a degree 2 }").token(), "}");
    EXPECT_EQ(parse_failure("algebra X { truncate 4 generator a degree 2 d a = q*q }").token(), "q");
    auto inh = parse_failure("algebra X { truncate 6\n generator a degree 2\n generator b degree 3\n d b = a*a + a }");
    EXPECT_NE(std::string(inh.what()).find("inhomogeneous"), std::string::npos);
    EXPECT_EQ(inh.line(), 4);
    EXPECT_EQ(parse_failure("algebra X { truncate 4 truncate 5 }").token(), "truncate");
    EXPECT_EQ(parse_failure("algebra X { field R truncate 4 }").token(), "R");
    EXPECT_EQ(parse_failure("algebra X { truncate 4 generator a degree 2 generator a degree 3 }").token(), "a");
    EXPECT_EQ(parse_failure("algebra X { truncate 4 @ }").token(), "@");
}

TEST(Parse, CommentsLayoutAndCoefficients)
{
    Presentation p = parse_model("# leading comment\nalgebra Y{truncate 6 generator a degree 2 generator b degree 3 "
                                 "d b = -3/6*a*a # trailing\n alias t = 0 }");
    ASSERT_EQ(p.differentials.size(), 1u);
    EXPECT_EQ(p.differentials[0].second[0].coeff, make_rational(-1, 2));
    ASSERT_EQ(p.aliases.size(), 1u);
    EXPECT_TRUE(p.aliases[0].second.empty());
}

TEST(Golden, Registry)
{
    EXPECT_EQ(golden_models().size(), 4u);
    for (const char* n : {"M1", "M2", "M3e", "M3o"}) EXPECT_TRUE(golden_model(n)) << n;
    EXPECT_FALSE(golden_model("M4"));
    auto m3 = support::compiled("M3e");
    EXPECT_EQ(CohomologyRing(m3.dga_ptr()).dim(7), 1u);
    auto m2 = support::compiled("M2");
    EXPECT_EQ(CohomologyRing(m2.dga_ptr()).dim(1), 3u);
}

TEST(Golden, RoundTrip)
{
    for (const auto& g : golden_models()) {
        Presentation p = parse_model(g.text);
        EXPECT_EQ(parse_model(print_model(p)), p) << g.name;
        EXPECT_EQ(print_model(parse_model(print_model(p))), print_model(p));
    }
}

TEST(Run, BoundsM1)
{
    auto r = go("bounds", "M1");
    EXPECT_EQ(r.exit_code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("TC lower 5, TC upper 5"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("cat lower 3, cat upper 3"), std::string::npos) << r.out;
}

TEST(Run, MasseyM1)
{
    auto r = go("massey", "M1", {"a", "a", "b"});
    EXPECT_EQ(r.exit_code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("= H^8_0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("nonzero"), std::string::npos);
    auto byname = go("massey", "M1", {"H^3_0", "H^3_0", "H^3_1"});
    EXPECT_EQ(byname.exit_code, kExitOk);
    auto aliased = go("massey", "M3e", {"alpha", "alpha", "beta"});
    EXPECT_EQ(aliased.exit_code, kExitOk);
    EXPECT_NE(aliased.out.find("= H^5_1"), std::string::npos) << aliased.out;
}

TEST(Run, MachineReportKeys)
{
    auto r = go("bounds", "M2", {}, true);
    ASSERT_EQ(r.exit_code, kExitOk) << r.err;
    for (const char* key : {"\"model\"", "\"cohomology\"", "\"massey\"", "\"zcl\"", "\"weights\"", "\"ledger\"",
                            "\"truncated\"", "\"certificates\""})
        EXPECT_NE(r.out.find(key), std::string::npos) << key;
    // keys appear in sorted order at the top level
    EXPECT_LT(r.out.find("\n  \"cohomology\""), r.out.find("\n  \"ledger\""));
    EXPECT_LT(r.out.find("\n  \"massey\""), r.out.find("\n  \"model\""));
    EXPECT_LT(r.out.find("\n  \"weights\""), r.out.find("\n  \"zcl\""));
}

TEST(Run, ExitCodes)
{
    EXPECT_EQ(go("validate", "M1").exit_code, kExitOk);
    EXPECT_EQ(go("cohomology", "M3o").exit_code, kExitOk);
    EXPECT_EQ(go("zcl", "M2").exit_code, kExitOk);

    // computation-level assertions
    auto s3s3 = write_temp("s3s3", "algebra P { truncate 8 generator a degree 3 generator b degree 3 }");
    auto undefined = go("massey", s3s3.string(), {"a", "b", "a"});
    EXPECT_EQ(undefined.exit_code, kExitAssertion);
    EXPECT_NE(undefined.out.find("undefined"), std::string::npos);
    EXPECT_EQ(go("massey", "M3e", {"alpha", "u", "beta"}).exit_code, kExitAssertion);

    // input errors
    auto broken = write_temp("broken", replace(m1_text(), "d z = a*b", "d z = a*b\n  generator w degree 4\n  d w = z"));
    auto bad = go("validate", broken.string());
    EXPECT_EQ(bad.exit_code, kExitInput);
    EXPECT_NE(bad.err.find("d^2=0"), std::string::npos) << bad.err;
    auto syntax = write_temp("syntax", "algebra X { truncate }");
    EXPECT_EQ(go("validate", syntax.string()).exit_code, kExitInput);
    auto circle = write_temp("circle", "algebra C { truncate 1 simply-connected true generator x degree 1 }");
    EXPECT_EQ(go("cohomology", circle.string()).exit_code, kExitInput);
    EXPECT_EQ(go("validate", "no-such-model").exit_code, kExitInput);
    EXPECT_EQ(go("massey", "M1", {"a", "a", "nope"}).exit_code, kExitInput);
    EXPECT_EQ(go("massey", "M1", {"a", "z", "b"}).exit_code, kExitInput);
    EXPECT_EQ(go("massey", "M1", {"a", "a"}).exit_code, kExitInput);
    EXPECT_EQ(go("frobnicate", "M1").exit_code, kExitInput);
}

TEST(Run, DeterministicAcrossRunsAndThreads)
{
    for (const char* n : {"M1", "M2", "M3e", "M3o"}) {
        auto a = go("bounds", n, {}, true, 1);
        auto b = go("bounds", n, {}, true, 1);
        auto c = go("bounds", n, {}, true, 4);
        EXPECT_EQ(a.out, b.out) << n;
        EXPECT_EQ(a.out, c.out) << n;
        auto t1 = go("bounds", n, {}, false, 1);
        auto t4 = go("bounds", n, {}, false, 3);
        EXPECT_EQ(t1.out, t4.out) << n;
    }
}

TEST(Binary, ExitCodesAndOutput)
{
    auto ok = shell("bounds M1 --quiet");
    EXPECT_EQ(ok.status, 0);
    EXPECT_NE(ok.out.find("TC lower 5, TC upper 5"), std::string::npos) << ok.out;
    EXPECT_EQ(shell("massey M3e alpha u beta").status, 1);
    EXPECT_EQ(shell("validate no-such-model").status, 2);
    EXPECT_EQ(shell("massey M1 a a").status, 2);
    EXPECT_EQ(shell("").status, 2);
    EXPECT_EQ(shell("bounds M1 --threads 0").status, 2);
    auto j1 = shell("bounds M3e --json --threads 1");
    auto j4 = shell("bounds M3e --json --threads 4");
    EXPECT_EQ(j1.status, 0);
    EXPECT_EQ(j1.out, j4.out);
}
