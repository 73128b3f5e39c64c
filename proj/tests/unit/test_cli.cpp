#include <antcloud/cli.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using namespace antcloud;

const std::string kDir = ANTCLOUD_SCENARIO_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(Cli, ValidateAcceptsAGoodScenario) {
    const auto r = cli({"validate", kDir + "/consolidation.json"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out.rfind("valid: 10 nodes", 0), 0u);
}

TEST(Cli, UsageErrorsExitWithTwo) {
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"compare", kDir + "/spike.json", "--policies", "ant"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", kDir + "/spike.json", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", kDir + "/spike.json", "--policy", "greedy"}).code, kExitUsage);
}

TEST(Cli, BadFilesExitWithOne) {
    EXPECT_EQ(cli({"validate", kDir + "/missing.json"}).code, kExitRuntime);
    EXPECT_EQ(cli({"trace-check", kDir + "/spike.json"}).code, kExitRuntime);
    const auto r = cli({"run", kDir + "/missing.json"});
    EXPECT_EQ(r.code, kExitRuntime);
    EXPECT_NE(r.err.find("missing.json"), std::string::npos);
}

TEST(Cli, TraceCheck) {
    const auto r = cli({"trace-check", kDir + "/office_trace.csv"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out.rfind("ok: ", 0), 0u);
}

TEST(Cli, RunIsByteIdenticalAcrossInvocations) {
    const auto a = cli({"run", kDir + "/spike.json", "--format", "json"});
    const auto b = cli({"run", kDir + "/spike.json", "--format", "json"});
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    const auto c = cli({"run", kDir + "/spike.json", "--format", "json", "--seed", "11"});
    EXPECT_NE(c.out.find("\"seed\": 11"), std::string::npos);
}

TEST(Cli, RunWritesSideFiles) {
    const auto dir = std::filesystem::temp_directory_path() / "antcloud_cli_test";
    std::filesystem::create_directories(dir);
    const auto r = cli({"run", kDir + "/spike.json", "--format", "csv", "--output", (dir / "r.csv").string(), "--plot",
                        (dir / "p.svg").string(), "--actions", (dir / "a.log").string()});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(slurp(dir / "r.csv").empty());
    EXPECT_NE(slurp(dir / "p.svg").find("<svg"), std::string::npos);
    EXPECT_NE(slurp(dir / "a.log").find(" clone "), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Cli, CompareTwoPolicies) {
    const auto r = cli({"compare", kDir + "/spike.json", "--policies", "ant,first_fit"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("fleet_energy_j"), std::string::npos);
}

} // namespace
