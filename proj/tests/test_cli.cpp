#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "gg/cli.hpp"
#include "gg/report.hpp"

using namespace gg;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "ggverify");
    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("ggverify_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<VerificationReport> sample_reports()
{
    VerificationReport pass{"4.15", {{"k", 2}, {"l", 4}, {"m", 4}}, 0, CheckStatus::pass, std::nullopt, 0.125};
    VerificationReport fail{"3.3", {}, 81, CheckStatus::fail,
                            Mismatch{Mismatch::Kind::series, Exponent{7, 2, 1}, 0, "0", "-1"}, 1.0 / 3.0};
    VerificationReport count{"thm3", {{"n", 50}}, 0, CheckStatus::fail,
                             Mismatch{Mismatch::Kind::count, {}, 12, "4", "5"}, 17.5};
    return {pass, fail, count};
}

}  // namespace

TEST(Report, JsonRoundTrip)
{
    const std::vector<VerificationReport> in = sample_reports();
    const std::vector<VerificationReport> out = parse_json(emit_json(in));
    ASSERT_EQ(out.size(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        EXPECT_TRUE(out[i].same_outcome(in[i])) << in[i].id;
        EXPECT_EQ(out[i].elapsed_ms, in[i].elapsed_ms);
    }
    EXPECT_EQ(emit_json(out), emit_json(in));
}

TEST(Report, JsonShape)
{
    const std::string text = emit_json(sample_reports());
    EXPECT_NE(text.find("\"version\": 1"), std::string::npos);
    EXPECT_NE(text.find("\"first_mismatch\": \"e2=7,dz=2,dw=1,expected=0,got=-1\""), std::string::npos);
    EXPECT_NE(text.find("\"first_mismatch\": \"n=12,expected=4,got=5\""), std::string::npos);
}

TEST(Report, RejectsMalformed)
{
    EXPECT_THROW((void)parse_json("{"), std::invalid_argument);
    EXPECT_THROW((void)parse_json("{\"version\": 1}"), std::invalid_argument);
    EXPECT_THROW((void)parse_json("{\"version\": 9, \"checks\": []}"), std::invalid_argument);
    EXPECT_THROW((void)parse_json(R"({"version": 1, "checks": [{"id": "1.1", "params": {}, "order2": 201,
        "status": "fail", "elapsed_ms": 1.0}]})"),
                 std::invalid_argument);
}

TEST(Report, CsvAndText)
{
    const std::string csv = emit_csv(sample_reports());
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "id,params,order2,status,first_mismatch,elapsed_ms");
    std::getline(lines, line);
    EXPECT_EQ(line, "4.15,k=2;l=4;m=4,0,pass,,0.125");
    std::getline(lines, line);
    EXPECT_EQ(line, "3.3,,81,fail,\"e2=7,dz=2,dw=1,expected=0,got=-1\",0.333");
    EXPECT_NE(emit_text(sample_reports()).find("1 passed, 2 failed"), std::string::npos);
}

TEST(Report, ByteDeterministicWithoutTimings)
{
    auto run = [] {
        std::vector<VerificationReport> r = run_checks(plan(Level::quick), 2);
        for (VerificationReport& x : r)
            x.elapsed_ms = 0;
        return r;
    };
    const auto a = run();
    const auto b = run();
    for (OutputFormat f : {OutputFormat::json, OutputFormat::csv, OutputFormat::text})
        EXPECT_EQ(emit(a, f), emit(b, f)) << to_string(f);
}

TEST(Cli, Verify)
{
    CliRun r = cli({"verify", "--id", "1.1", "--order", "100"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("order2=201"), std::string::npos) << r.out;

    r = cli({"verify", "--id", "4.15", "--k", "2", "--l", "4", "--m", "4", "--emit", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto reports = parse_json(r.out);
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_EQ(reports[0].params, (CheckParams{{"k", 2}, {"l", 4}, {"m", 4}}));

    r = cli({"verify", "--id", "4.17", "--param", "b=-1", "--m", "1", "--a", "0"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, UsageErrors)
{
    CliRun r = cli({"verify", "--id", "bogus"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("valid ids:"), std::string::npos);
    EXPECT_NE(r.err.find("lemma2"), std::string::npos);

    EXPECT_EQ(cli({"verify", "--id", "1.1", "--k", "3"}).code, 2);
    EXPECT_EQ(cli({"verify", "--id", "thm1", "--i", "2"}).code, 2);
    EXPECT_EQ(cli({"verify", "--id", "1.1", "--param", "oops"}).code, 2);
    EXPECT_EQ(cli({"verify"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"verify-all", "--parallelism", "0"}).code, 2);
    EXPECT_EQ(cli({"verify-all", "--emit", "yaml"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, Count)
{
    CliRun r = cli({"count", "--family", "Q2", "--max", "6"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "Q2: 1,1,0,1,2,2,1\n");

    r = cli({"count", "--family", "P", "--max", "9"});
    EXPECT_EQ(r.out, "P: 1,0,0,1,1,0,0,1,2,1\n");

    r = cli({"count", "--family", "residue:12:3,4,8,9:6:3", "--max", "9"});
    EXPECT_EQ(r.out, "residue:12:3,4,8,9:6:3: 1,0,0,1,1,0,0,1,2,1\n");

    r = cli({"count", "--family", "S-weighted", "--max", "5", "--emit", "csv"});
    EXPECT_EQ(r.out, "n,count\n0,1\n1,1\n2,0\n3,1\n4,2\n5,2\n");

    r = cli({"count", "--family", "GG", "--max", "3", "--emit", "json"});
    EXPECT_NE(r.out.find("\"counts\""), std::string::npos);

    EXPECT_EQ(cli({"count", "--family", "Q7"}).code, 2);
    EXPECT_EQ(cli({"count", "--family", "residue:x"}).code, 2);
    EXPECT_EQ(cli({"count", "--family", "P", "--max", "-1"}).code, 2);
}

TEST(Cli, Bijection)
{
    CliRun r = cli({"bijection", "--n", "5", "--trace"});
    EXPECT_EQ(r.code, 0);
    std::size_t traces = 0;
    for (std::size_t pos = r.out.find("choice"); pos != std::string::npos; pos = r.out.find("choice", pos + 1))
        ++traces;
    EXPECT_EQ(traces, 2u);
    EXPECT_NE(r.out.find("members=1 pairs=2 triples=2 round-trip=ok"), std::string::npos) << r.out;

    r = cli({"bijection", "--n", "30"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find("choice"), std::string::npos);
}

TEST(Cli, VerifyAll)
{
    CliRun r = cli({"verify-all", "--level", "quick", "--emit", "json", "--parallelism", "2"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(parse_json(r.out).size(), check_catalog().size());

    r = cli({"verify-all", "--mutate", "thm4"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("thm4       fail"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("1 failed"), std::string::npos);

    EXPECT_EQ(cli({"verify-all", "--mutate", "bogus"}).code, 2);
}

TEST(Cli, OutFileAndReport)
{
    const auto path = temp_file("report.json");
    CliRun r = cli({"verify-all", "--mutate", "1.3", "--emit", "json", "--out", path.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "FAIL 1.3\n");
    const auto saved = parse_json(slurp(path));
    EXPECT_EQ(saved.size(), check_catalog().size());

    r = cli({"report", path.string(), "--emit", "csv"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, emit_csv(saved));

    EXPECT_EQ(cli({"report", (path.string() + ".missing")}).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, ConfigFileAndEnvironment)
{
    const auto path = temp_file("config.json");
    {
        std::ofstream f(path);
        f << R"({"default_order2": 41, "parallelism": 2, "output_format": "csv"})";
    }
    CliRun r = cli({"verify", "--id", "1.2", "--config", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1.2,,41,pass"), std::string::npos) << r.out;

    // flags win over the file
    r = cli({"verify", "--id", "1.2", "--config", path.string(), "--order", "30", "--emit", "text"});
    EXPECT_NE(r.out.find("order2=61"), std::string::npos) << r.out;

    ::setenv(kConfigEnv, path.string().c_str(), 1);
    r = cli({"verify", "--id", "1.2"});
    ::unsetenv(kConfigEnv);
    EXPECT_NE(r.out.find("1.2,,41,pass"), std::string::npos) << r.out;

    {
        std::ofstream f(path);
        f << R"({"parallelism": "many"})";
    }
    EXPECT_EQ(cli({"verify", "--id", "1.2", "--config", path.string()}).code, 2);
    EXPECT_THROW((void)load_config(temp_file("absent.json").string()), std::invalid_argument);
    std::filesystem::remove(path);
}
