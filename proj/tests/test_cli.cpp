#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/commands.hpp"
#include "helpers.hpp"
#include "sphan/json_io.hpp"

using namespace testing_support;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult runCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string dataFile(const std::string& name) { return std::string(SPHAN_TEST_DATA) + "/" + name; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("sphan_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

std::vector<Json> ndjson(const std::string& text) {
  std::vector<Json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST_F(CliTest, AnalyzeP2) {
  RunResult r = runCli({"analyze", dataFile("p2_fan.json"), "--epsilon", "9/10"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["is_complete"]);
  EXPECT_TRUE(j["is_q_gorenstein"]);
  EXPECT_TRUE(j["is_fano"]);
  EXPECT_EQ(j["index"], 1);
  EXPECT_EQ(j["mld_all"], "1/1");
  EXPECT_EQ(j["mld_exceptional"], "2/1");
  EXPECT_TRUE(j["epsilon_lt"]);
  EXPECT_EQ(sphan::json::readPolytope(j["fano_polytope"]), hull({{1, 0}, {0, 1}, {-1, -1}}));
  RunResult big = runCli({"analyze", dataFile("p2_fan.json"), "--epsilon", "6/5"});
  EXPECT_FALSE(Json::parse(big.out)["epsilon_lt"]);
}

TEST_F(CliTest, AnalyzePolytopeInput) {
  std::string p = write("square.json", R"({"rank": 2, "vertices": [[1,0],[0,1],[-1,0],[0,-1]]})");
  RunResult r = runCli({"analyze", p});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["is_fano"]);
  EXPECT_EQ(j["mld_exceptional"], "2/1");
  EXPECT_FALSE(j.contains("epsilon_lt"));
}

TEST_F(CliTest, AnalyzeIncompleteFan) {
  RunResult r = runCli({"analyze", dataFile("quadrant_fan.json"), "--epsilon", "1/2"});
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_FALSE(j["is_complete"]);
  EXPECT_FALSE(j["is_fano"]);
  for (const char* key : {"mld_all", "mld_exceptional", "fano_polytope", "epsilon_lt"}) EXPECT_FALSE(j.contains(key)) << key;
}

TEST_F(CliTest, InputErrors) {
  RunResult malformed = runCli({"analyze", write("bad.json", "{\"rank\": 2, \"rays\": [[1,0]\n")});
  EXPECT_EQ(malformed.code, 1);
  EXPECT_NE(malformed.err.find("bad.json:"), std::string::npos) << malformed.err;
  EXPECT_EQ(runCli({"analyze", dataFile("p2_fan.json"), "--epsilon", "0.9"}).code, 1);
  EXPECT_EQ(runCli({"analyze", path("missing.json")}).code, 1);
  EXPECT_EQ(runCli({"analyze", write("ray.json", R"({"rank": 2, "rays": [[2,0],[0,1]], "cones": [[0,1]]})")}).code, 1);
  EXPECT_EQ(runCli({"no-such-command"}).code, 1);
  EXPECT_EQ(runCli({"classify", "--rank", "3", "--epsilon", "1", "--box", "1"}).code, 2);
}

TEST_F(CliTest, ClassifyReflexiveBoxFour) {
  std::string db = path("db.ndjson");
  RunResult r = runCli({"classify", "--rank", "2", "--epsilon", "1", "--box", "4", "--index", "1", "--out", db});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("box-bounded"), std::string::npos);
  auto records = ndjson(slurp(db));
  EXPECT_EQ(records.size(), 16u);
  for (const auto& rec : records) {
    EXPECT_EQ(rec["index"], 1);
    EXPECT_EQ(rec["eps_tested"], "1/1");
    EXPECT_EQ(rec["box"], 4);
    for (const char* key : {"key", "vertices", "mld_all"}) EXPECT_TRUE(rec.contains(key)) << key;
  }
  std::string again = path("again.ndjson");
  runCli({"classify", "--epsilon", "1", "--box", "4", "--index", "1", "--jobs", "3", "--out", again});
  EXPECT_EQ(slurp(db), slurp(again));
}

TEST_F(CliTest, ClassifyEpsilonTwoIsEmpty) {
  RunResult r = runCli({"classify", "--epsilon", "2", "--box", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, ClassifyRecordsRoundTrip) {
  RunResult r = runCli({"classify", "--epsilon", "1", "--box", "2"});
  for (const auto& rec : ndjson(r.out)) {
    std::vector<LatticePoint> vs;
    for (const auto& v : rec["vertices"]) vs.push_back(sphan::json::readLatticePoint(v, 2, "vertex"));
    Polytope qp = Polytope::convexHull(2, vs);
    EXPECT_EQ(Json(sphan::json::write(normalForm(qp))["matrix"]), rec["key"]);
    EXPECT_EQ(sphan::json::readRational(rec["mld_all"], "mld_all"), mld(faceFan(qp), MldVariant::All));
  }
}

TEST_F(CliTest, ColoredCheckP2) {
  RunResult r = runCli({"colored-check", dataFile("p2_colored.json"), "--epsilon", "9/10"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["validation"]["valid"]);
  EXPECT_TRUE(j["complete"]);
  EXPECT_TRUE(j["fano"]["ok"]);
  EXPECT_TRUE(j["epsilon_lt"]);
  Polytope tri = hull({{1, 0}, {0, 1}, {-1, -1}});
  EXPECT_EQ(sphan::json::readPolytope(j["Q"]), tri);
  EXPECT_TRUE(j["P"]["bounded"]);
  EXPECT_EQ(sphan::json::readPolytope(j["P"]), tri);
}

TEST_F(CliTest, ColoredCheckInteriorFailure) {
  std::string p = write("cf.json", R"({"rank": 2, "valuation_cone": {"facets": [[0,1],[-1,0]]},
    "colors": [{"name": "D", "rho": [1,0], "a": 1}], "cones": [{"generators": [[0,1]], "colors": ["D"]}]})");
  RunResult r = runCli({"colored-check", p});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_FALSE(j["validation"]["valid"]);
  bool found = false;
  for (const auto& c : j["validation"]["checks"])
    if (!c["passed"].get<bool>()) {
      found = true;
      EXPECT_EQ(c["witness_functional"], Json::parse("[1,0]"));
    }
  EXPECT_TRUE(found);
}

TEST_F(CliTest, ColoredCheckDegenerateQ) {
  std::string p = write("deg.json", R"({"rank": 1, "valuation_cone": {"facets": [[1]]},
    "colors": [{"name": "D", "rho": [1], "a": 2}], "cones": [{"generators": [[1]], "colors": []}]})");
  RunResult r = runCli({"colored-check", p});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_FALSE(j["fano"]["ok"]);
  EXPECT_EQ(j["fano"]["error"], "DegenerateQ");
}

TEST_F(CliTest, ColoredCheckRankOneFixture) {
  RunResult r = runCli({"colored-check", dataFile("rank1_colored.json"), "--epsilon", "3/2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["fano"]["ok"]);
  EXPECT_FALSE(j["P"]["bounded"]);
  EXPECT_FALSE(j["epsilon_lt"]);
  EXPECT_FALSE(j["epsilon_q"]);
}

TEST_F(CliTest, FanoSearch) {
  RunResult r = runCli({"fano-search", "--toric-rank", "2", "--height", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["best_mld"], "2/1");
  Fan witness = sphan::json::readFan(j["witness"]);
  EXPECT_TRUE(isFano(witness).isFano);
  EXPECT_EQ(Json::parse(runCli({"fano-search", "--toric-rank", "1", "--height", "1"}).out)["best_mld"], "2/1");
  Json none = Json::parse(runCli({"fano-search", "--toric-rank", "2", "--height", "0"}).out);
  EXPECT_EQ(none["status"], "no_fano_found");
  EXPECT_TRUE(none["best_mld"].is_null());
  EXPECT_EQ(runCli({"fano-search", "--height", "1"}).code, 1);
}

TEST_F(CliTest, FanoSearchColored) {
  RunResult r = runCli({"fano-search", "--colored", dataFile("rank1_skeleton.json"), "--height", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["best_mld"], "2/1");
  ColoredFan cf = sphan::json::readColoredFan(j["witness"]);
  EXPECT_TRUE(validateColoredFan(cf).valid());
}

TEST_F(CliTest, LemmaFixtures) {
  std::string data = write("data.json", R"({"pi": [[1,0]], "tilde_v": {"facets": [[1]]}, "a": 1, "tilde_d": [[-2]]})");
  std::string cand = write("cand.json", R"({"d_points": [{"index": 0, "lift": [-2,0]}], "v_points": [[1,1],[1,-1]]})");
  RunResult ok = runCli({"lemma", "--data", data, "--candidate", cand, "--epsilon", "1/3"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  Json j = Json::parse(ok.out);
  EXPECT_EQ(j["threshold"], "1/2");
  EXPECT_TRUE(j["verdict"]);
  RunResult pre = runCli({"lemma", "--data", data, "--candidate", cand, "--epsilon", "2/3"});
  EXPECT_EQ(pre.code, 2);
  EXPECT_NE(pre.err.find("PreconditionViolated"), std::string::npos) << pre.err;

  std::string inside = write("inside.json", R"({"pi": [[1,0]], "tilde_v": {"facets": [[1]]}, "a": 2, "tilde_d": [[3]]})");
  std::string cand2 = write("cand2.json", R"({"d_points": [{"index": 0, "lift": ["3", "1/2"]}], "v_points": [[1,0],[0,1],[0,-1]]})");
  for (const char* eps : {"1/3", "1", "7/2"}) {
    RunResult r = runCli({"lemma", "--data", inside, "--candidate", cand2, "--epsilon", eps});
    ASSERT_EQ(r.code, 0) << r.err;
    Json k = Json::parse(r.out);
    EXPECT_EQ(k["threshold"], "+inf");
    EXPECT_TRUE(k["verdict"]);
  }
}

TEST_F(CliTest, NormformAndManifest) {
  std::string a = write("a.json", R"({"rank": 2, "vertices": [[1,0],[0,1],[-1,-1]]})");
  std::string b = write("b.json", R"({"rank": 2, "vertices": [[2,1],[1,1],[-3,-2]]})");
  RunResult ra = runCli({"normform", a});
  RunResult rb = runCli({"normform", b});
  ASSERT_EQ(ra.code, 0) << ra.err;
  EXPECT_EQ(ra.out, rb.out);
  std::string m1 = path("m1.json"), m2 = path("m2.json");
  runCli({"--manifest", m1, "normform", a});
  runCli({"--manifest", m2, "normform", a});
  EXPECT_EQ(slurp(m1), slurp(m2));
  Json m = Json::parse(slurp(m1));
  EXPECT_EQ(m["command"], "normform");
  EXPECT_EQ(m["inputs_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_TRUE(m.contains("tool_version"));
  runCli({"--manifest", m2, "normform", b});
  EXPECT_NE(Json::parse(slurp(m2))["inputs_digest"], m["inputs_digest"]);
}

TEST_F(CliTest, OutputsAreDeterministic) {
  std::vector<std::vector<std::string>> commands{
      {"analyze", dataFile("p2_fan.json"), "--epsilon", "1/2"},
      {"colored-check", dataFile("rank1_colored.json"), "--epsilon", "1/2"},
      {"fano-search", "--toric-rank", "2", "--height", "2"},
      {"classify", "--epsilon", "2/3", "--box", "2"},
  };
  for (const auto& c : commands) EXPECT_EQ(runCli(c).out, runCli(c).out) << c[0];
}
