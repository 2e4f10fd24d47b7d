#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "cavc/ingest.hpp"
#include "report.hpp"
#include "support.hpp"

using namespace cavc;
using namespace cavc::testing;
using nlohmann::json;

namespace {

struct RunResult {
    int exitCode = -1;
    std::string out;
};

RunResult runVc(const std::string& args) {
    const std::string cmd = std::string(CAVC_VC_BINARY) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string dataFile(const char* name) { return std::string(CAVC_TEST_DATA_DIR) + "/" + name; }

std::string writeTemp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(ResultDocument, Fields) {
    SolverConfig cfg;
    cfg.recordCover = true;
    auto r = solve(walkthroughGraph(), cfg);
    auto doc = tools::resultDocument(r, cfg, true);
    EXPECT_EQ(doc["cover_size"], 3);
    EXPECT_EQ(doc["found"], true);
    EXPECT_EQ(doc["exact"], true);
    EXPECT_EQ(doc["cover"], json::array({1, 4, 7}));
    for (const char* key : {"tree_nodes_visited", "component_branches", "components_per_branch", "rule_counts",
                            "root_vertices_before", "root_vertices_after", "degree_width", "worklist_pushes",
                            "worklist_pops", "phase_seconds"})
        EXPECT_TRUE(doc["stats"].contains(key)) << key;
}

TEST(ResultDocument, PvcNotFound) {
    SolverConfig cfg;
    cfg.mode = Mode::PVC;
    cfg.k = 5;
    auto doc = tools::resultDocument(solve(petersen(), cfg), cfg, false);
    EXPECT_EQ(doc["found"], false);
    EXPECT_TRUE(doc["cover_size"].is_null());
    EXPECT_EQ(doc["k"], 5);
    EXPECT_FALSE(doc.contains("stats"));
}

TEST(Cli, MvcOnMatrixMarket) {
    auto r = runVc("--mode mvc " + dataFile("walkthrough.mtx"));
    ASSERT_EQ(r.exitCode, 0);
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["cover_size"], 3);
}

TEST(Cli, PvcReportsFoundFlag) {
    auto yes = json::parse(runVc("--mode pvc -k 3 --workers 8 " + dataFile("walkthrough.txt")).out);
    EXPECT_EQ(yes["found"], true);
    auto no = runVc("--mode pvc -k 2 --workers 8 " + dataFile("walkthrough.txt"));
    EXPECT_EQ(no.exitCode, 0);
    EXPECT_EQ(json::parse(no.out)["found"], false);
}

TEST(Cli, RecordCover) {
    auto doc = json::parse(runVc("--record-cover " + dataFile("walkthrough.txt")).out);
    EXPECT_EQ(doc["cover"], json::array({1, 4, 7}));
}

TEST(Cli, DeterministicStatsAreByteIdentical) {
    Rng rng(5);
    auto g = disjointUnion(randomGraph(14, 0.5, rng), randomGraph(14, 0.5, rng));
    auto path = writeTemp("cavc_cli_det.txt", writeEdgeList(g));
    const std::string args = "--mode mvc --no-components --deterministic --stats " + path;
    auto a = runVc(args), b = runVc(args);
    ASSERT_EQ(a.exitCode, 0);
    auto da = json::parse(a.out), db = json::parse(b.out);
    EXPECT_GT(da["stats"]["tree_nodes_visited"].get<long>(), 0);
    EXPECT_EQ(da["stats"].dump(), db["stats"].dump());
    EXPECT_TRUE(da.contains("phase_seconds"));
    std::filesystem::remove(path);
}

TEST(Cli, ErrorsHaveDistinctExitCodes) {
    auto malformed = writeTemp("cavc_cli_bad.txt", "0 1\n1 two\n");
    const int parse = runVc(malformed).exitCode;
    const int missing = runVc("/nonexistent/graph.txt").exitCode;
    const int unknownFlag = runVc("--bogus " + dataFile("walkthrough.txt")).exitCode;
    const int noK = runVc("--mode pvc " + dataFile("walkthrough.txt")).exitCode;
    EXPECT_NE(parse, 0);
    EXPECT_NE(missing, 0);
    EXPECT_NE(unknownFlag, 0);
    EXPECT_NE(noK, 0);
    EXPECT_NE(parse, missing);
    EXPECT_NE(parse, unknownFlag);
    EXPECT_NE(missing, unknownFlag);
    std::filesystem::remove(malformed);
}
