#include "run_config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace twave::cli {
namespace {

struct CliRun {
    int status;
    std::string out;
    std::string log;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "twave");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream log;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, log);
    return {status, out.str(), log.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            row.push_back(cell.empty() ? 0.0 : std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, DumpTemperedCoefficients) {
    const auto r = run({"dump-coeffs", "--kind", "tempered", "--beta", "1", "--lambda", "0",
                        "--count", "4"});
    ASSERT_EQ(r.status, 0) << r.log;
    EXPECT_EQ(r.out.substr(0, 4), "k,l\n");
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    const double expected[] = {2.0 / 3, 8.0 / 9, 26.0 / 27, 80.0 / 81};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(rows[k][1], expected[k], 1e-16);
    }
}

TEST(Cli, DumpRieszWeights) {
    const auto r = run({"dump-coeffs", "--kind", "riesz", "--alpha", "2", "--count", "5"});
    ASSERT_EQ(r.status, 0) << r.log;
    EXPECT_EQ(r.out, "m,w\n0,1\n1,-2\n2,1\n3,0\n4,0\n");
}

TEST(Cli, ConvergeReproducesFirstTableColumn) {
    const auto r = run({"converge", "--alpha", "1.5", "--gamma", "2", "--lambda", "0.1",
                        "--resolutions", "20,40,80,160"});
    ASSERT_EQ(r.status, 0) << r.log;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    const double expected[] = {5.2886e-05, 1.4084e-05, 3.6352e-06, 9.2322e-07};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(rows[i][2] / expected[i], 1.0, 0.02);
    }
}

TEST(Cli, JsonRecordHasDocumentedFields) {
    const auto r = run({"converge", "--resolutions", "20,40", "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.log;
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"params", "rows", "wall_ms", "version"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["params"]["subcommand"], "converge");
    EXPECT_EQ(j["rows"].size(), 2u);
    EXPECT_TRUE(j["rows"][0]["rate"].is_null());
}

TEST(Cli, UsageErrorsExitTwoAndNameTheFlag) {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"solve", "--alpha", "2.5"}, "--alpha"},
        {{"solve", "--gamma", "1"}, "--gamma"},
        {{"solve", "--lambda", "-1"}, "--lambda"},
        {{"solve", "--m", "2"}, "--m"},
        {{"solve", "--t-final", "0"}, "--t-final"},
        {{"solve", "--domain", "0,2"}, "--domain"},
        {{"solve", "--problem", "nope"}, "--problem"},
        {{"converge", "--resolutions", "20"}, "--resolutions"},
        {{"converge", "--resolutions", "3,6"}, "--resolutions"},
        {{"dump-coeffs", "--beta", "1.5"}, "--beta"},
        {{"solve", "--format", "xml"}, "--output-format"},
    };
    for (const auto& [args, flag] : cases) {
        const auto r = run(args);
        EXPECT_EQ(r.status, 2) << args[0] << " " << args[1];
        EXPECT_NE(r.log.find(flag), std::string::npos) << r.log;
    }
    EXPECT_EQ(run({"frobnicate"}).status, 2);
    EXPECT_EQ(run({"solve", "--bogus"}).status, 2);
    EXPECT_EQ(run({}).status, 2);
}

TEST(Cli, RuntimeFailureExitsOne) {
    const auto r = run({"solve", "--output", "/nonexistent-dir/sub/run"});
    EXPECT_EQ(r.status, 1);
}

TEST(Cli, SolveWritesFieldAndErrors) {
    const auto dir = std::filesystem::temp_directory_path() / "twave_cli_solve";
    std::filesystem::create_directories(dir);
    const auto base = (dir / "run").string();
    const auto r = run({"solve", "--problem", "manufactured", "--m", "20", "--n", "10", "--output", base});
    ASSERT_EQ(r.status, 0) << r.log;
    const auto rows = parse_csv(slurp(base + ".csv"));
    ASSERT_EQ(rows.size(), 21u);
    EXPECT_EQ(rows.front()[1], 0.0);
    EXPECT_EQ(rows.back()[0], 1.0);
    const auto rec = nlohmann::json::parse(slurp(base + ".json"));
    EXPECT_NEAR(rec["errors"]["max_error"].get<double>() / 5.2886e-05, 1.0, 1e-4);
}

TEST(Cli, JsonRecordReplaysToIdenticalCsv) {
    const auto dir = std::filesystem::temp_directory_path() / "twave_cli_replay";
    std::filesystem::create_directories(dir);
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"solve", "--alpha", "1.3", "--gamma", "1.7", "--m", "32", "--n", "16"},
          std::vector<std::string>{"converge", "--alpha", "1.7", "--gamma", "1.3", "--lambda", "0",
                                   "--resolutions", "20,40"},
          std::vector<std::string>{"dump-coeffs", "--kind", "tempered", "--gamma", "1.4", "--tau",
                                   "0.01", "--count", "9"}}) {
        const auto base = (dir / args[0]).string();
        auto first = args;
        first.insert(first.end(), {"--output", base});
        ASSERT_EQ(run(first).status, 0);
        const std::string csv = slurp(base + ".csv");

        const auto again = run({"--config", base + ".json"});
        ASSERT_EQ(again.status, 0) << again.log;
        EXPECT_EQ(again.out, csv) << args[0];

        const RunConfig replay = config_from_json(nlohmann::json::parse(slurp(base + ".json")));
        std::ostringstream out;
        std::ostringstream log;
        ASSERT_EQ(dispatch(replay, out, log), 0);
        EXPECT_EQ(out.str(), csv);
    }
}

TEST(Cli, ConfigErrors) {
    EXPECT_EQ(run({"--config", "/nonexistent/record.json"}).status, 2);
    EXPECT_THROW((void)config_from_json(nlohmann::json{{"subcommand", "dance"}}), UsageError);
}

} // namespace
} // namespace twave::cli
