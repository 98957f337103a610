#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thinspace/cli.hpp"

using namespace thinspace;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("thinspace_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = (dir_ / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  std::string write_graph(const std::string& name, const GraphSpec& g) { return write(name, graph_to_json(g)); }

  struct Result {
    int code;
    std::string out;
    Json json() const { return Json::parse(out); }
  };
  Result invoke(const RunConfig& cfg) {
    std::ostringstream out, err;
    int code = run(cfg, out, err);
    return {code, out.str()};
  }

  fs::path dir_;
};

}  // namespace

TEST(GraphJson, ParsesIdsAndEdges) {
  auto g = parse_graph_json(R"({"vertices": ["a", 7, "c"], "edges": [["a", 7, 1.5], [7, "c", 2]]})");
  EXPECT_EQ(g.ids, (std::vector<std::string>{"a", "7", "c"}));
  auto s = g.build();
  EXPECT_DOUBLE_EQ(s.dist(s.vertex("a"), s.vertex("c")), 3.5);
  auto implicit = parse_graph_json(R"({"edges": [["x", "y", 1], ["y", "z", 1]]})");
  EXPECT_EQ(implicit.ids, (std::vector<std::string>{"x", "y", "z"}));
  auto round = parse_graph_json(graph_to_json(graphs::cycle(5)));
  EXPECT_EQ(round.ids, graphs::cycle(5).ids);
  EXPECT_EQ(round.edges.size(), 5u);
}

TEST(GraphJson, Errors) {
  for (const char* bad : {"{oops", "[]", R"({"vertices": []})", R"({"edges": [["a", "b"]]})",
                          R"({"edges": [["a", {"x": 1}, 1]]})"}) {
    try {
      parse_graph_json(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
    }
  }
}

TEST(Points, KnnGraph) {
  auto g = points_to_knn_graph("x,y\n0,0\n1,0\n3,0\n3,4\n", 1);
  EXPECT_EQ(g.ids.size(), 4u);
  // Nearest pairs: (0,1), (1,0), (2,1), (3,2) -> undirected {01, 12, 23}.
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.edges[0].u, "p0");
  EXPECT_EQ(g.edges[1].v, "p2");
  EXPECT_DOUBLE_EQ(g.edges[1].length, 2.0);
  EXPECT_DOUBLE_EQ(g.edges[2].length, 4.0);
  try {
    points_to_knn_graph("0,0\n1\n", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
  }
  try {
    points_to_knn_graph("0,0\n0,0\n", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveEdge);
  }
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(fnv1a64(""), "cbf29ce484222325");
}

TEST(VolumeGrowth, PathFromEndpoint) {
  auto s = graphs::path(1000).build();
  std::vector<double> grid;
  for (double t = 1; t <= 500; t += 0.5) grid.push_back(t);
  auto v = volume_growth(s, 0, grid);
  for (const auto& smp : v.samples) EXPECT_EQ(smp.count, static_cast<std::size_t>(std::floor(smp.t)) + 1);
  EXPECT_NEAR(v.slope, 1.0, 1e-3);
}

TEST(VolumeGrowth, CylinderIsLinearGridIsNot) {
  auto cyl = graphs::cylinder(12, 4000).build();
  std::vector<double> grid;
  for (double t = 10; t <= 1000; t += 10) grid.push_back(t);
  auto v = volume_growth(cyl, 2000 * 12, grid);
  EXPECT_EQ(v.growth, GrowthClass::Linear);
  EXPECT_DOUBLE_EQ(v.slope, 24.0);
  EXPECT_EQ(v.samples.front().count, 180u);  // 24 t - 60 once t >= 6
  auto grid41 = graphs::grid(41, 41).build();
  std::vector<double> g2;
  for (double t = 1; t <= 20; t += 1) g2.push_back(t);
  auto w = volume_growth(grid41, 20 * 41 + 20, g2);
  EXPECT_EQ(w.samples.back().count, 2u * 20 * 20 + 2 * 20 + 1);
  EXPECT_GT(w.max_relative_residual, kNonlinearResidual);
  EXPECT_EQ(w.growth, GrowthClass::Superlinear);
}

TEST_F(CliTest, ThinCheckExitCodes) {
  RunConfig cfg;
  cfg.graph = write_graph("p.json", graphs::path(300));
  cfg.R = 20;
  cfg.D = 1;
  auto pass = invoke(cfg);
  EXPECT_EQ(pass.code, 0);
  EXPECT_EQ(pass.json()["schema_version"], "1");
  EXPECT_EQ(pass.json()["report"]["verdict"], "pass");
  EXPECT_EQ(pass.json()["seed"], 0);

  cfg.graph = write_graph("tripod.json", graphs::tripod(100));
  auto fail = invoke(cfg);
  EXPECT_EQ(fail.code, 2);
  auto w = fail.json()["report"]["witness"];
  EXPECT_DOUBLE_EQ(w["dist_x_r"].get<double>(), 100.0);

  cfg.output = write("witness.json", "");
  EXPECT_EQ(invoke(cfg).code, 2);
  RunConfig replay;
  replay.command = Command::Replay;
  replay.report = cfg.output;
  auto ok = invoke(replay);
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.json()["valid"].get<bool>());
}

TEST_F(CliTest, ReplayRejectsTamperedWitness) {
  RunConfig cfg;
  cfg.graph = write_graph("tripod.json", graphs::tripod(100));
  cfg.R = 20;
  cfg.D = 1;
  auto doc = invoke(cfg).json();
  doc["report"]["witness"]["dist_x_r"] = 150.0;
  RunConfig replay;
  replay.command = Command::Replay;
  replay.report = write("bad.json", doc.dump());
  auto res = invoke(replay);
  EXPECT_EQ(res.code, 2);
  EXPECT_FALSE(res.json()["valid"].get<bool>());
  // A changed input graph is reported as such.
  doc = invoke(cfg).json();
  write("tripod.json", graph_to_json(graphs::tripod(101)));
  replay.report = write("stale.json", doc.dump());
  auto stale = invoke(replay);
  EXPECT_EQ(stale.code, 2);
  EXPECT_FALSE(stale.json()["input_matches"].get<bool>());
}

TEST_F(CliTest, Errors) {
  RunConfig cfg;
  cfg.graph = write("bad.json", "{not json");
  cfg.R = 20;
  cfg.D = 1;
  auto res = invoke(cfg);
  EXPECT_EQ(res.code, 1);
  EXPECT_EQ(res.json()["error"]["code"], "E_PARSE");
  cfg.graph = (dir_ / "missing.json").string();
  EXPECT_EQ(invoke(cfg).json()["error"]["code"], "E_IO");
  cfg.graph = write_graph("p.json", graphs::path(50));
  cfg.D = 2;  // R < 20 D
  EXPECT_EQ(invoke(cfg).json()["error"]["code"], "E_BAD_PARAMETERS");
  cfg.points = cfg.graph;
  EXPECT_EQ(invoke(cfg).json()["error"]["code"], "E_USAGE");
  GraphSpec two;
  two.ids = {"a", "b", "c", "d"};
  two.add_edge(0, 1, 1);
  two.add_edge(2, 3, 1);
  RunConfig disc;
  disc.graph = write_graph("two.json", two);
  disc.R = 20;
  disc.D = 1;
  EXPECT_EQ(invoke(disc).json()["error"]["code"], "E_DISCONNECTED_GRAPH");
}

TEST_F(CliTest, SkeletonThenUrysohn) {
  RunConfig sk;
  sk.command = Command::Skeleton;
  sk.graph = write_graph("c.json", graphs::cycle(2000));
  sk.R = 20;
  sk.D = 1;
  sk.budget = 50;
  sk.output = (dir_ / "sk.json").string();
  ASSERT_EQ(invoke(sk).code, 0);
  auto doc = Json::parse(read_file(sk.output));
  EXPECT_EQ(doc["skeleton"]["kind"], "circle");
  EXPECT_EQ(doc["skeleton"]["covering_radius"], 0.0);
  EXPECT_EQ(doc["skeleton"]["circle"]["distortion"], 0.0);

  RunConfig ur;
  ur.command = Command::Urysohn;
  ur.graph = sk.graph;
  ur.skeleton = sk.output;
  ur.R = 0.05;
  ur.csv = (dir_ / "values.csv").string();
  auto res = invoke(ur);
  ASSERT_EQ(res.code, 0) << res.out;
  auto map = res.json()["map"];
  EXPECT_EQ(map["case"], "circle");
  EXPECT_TRUE(map["within_bound"].get<bool>());
  auto csv = read_file(ur.csv);
  EXPECT_EQ(csv.substr(0, 13), "vertex,value\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2001);

  // A skeleton from another graph is rejected.
  ur.graph = write_graph("p.json", graphs::path(10));
  EXPECT_EQ(invoke(ur).json()["error"]["code"], "E_UNKNOWN_VERTEX");
}

TEST_F(CliTest, SkeletonOfTripodFailsWithEvidence) {
  RunConfig sk;
  sk.command = Command::Skeleton;
  sk.graph = write_graph("t.json", graphs::tripod(100));
  sk.R = 20;
  sk.D = 1;
  sk.output = (dir_ / "sk.json").string();
  EXPECT_EQ(invoke(sk).code, 2);
  RunConfig replay;
  replay.command = Command::Replay;
  replay.report = sk.output;
  EXPECT_EQ(invoke(replay).code, 0);
}

TEST_F(CliTest, CurvatureCommands) {
  RunConfig scan;
  scan.command = Command::CurvatureScan;
  scan.r_grid = {1, 2, 4};
  scan.seed = 7;
  auto csv = invoke(scan);
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, 8), "r,F,err\n");
  EXPECT_NE(csv.out.find("\n1,0.7353813228"), std::string::npos);
  scan.format = OutputFormat::Json;
  auto js = invoke(scan).json();
  EXPECT_EQ(js["seed"], 7);
  EXPECT_EQ(js["scan"]["entries"].size(), 3u);
  scan.family = "torus";
  EXPECT_EQ(invoke(scan).json()["error"]["code"], "E_USAGE");
  scan.family = "paraboloid";
  scan.base_point = {1, 0};
  EXPECT_EQ(invoke(scan).json()["error"]["code"], "E_UNSUPPORTED_BASE");

  RunConfig l14;
  l14.command = Command::CurvatureL14;
  l14.n = 3;
  l14.k = 2;
  l14.trials = 5000;
  l14.seed = 7;
  auto v = invoke(l14).json();
  EXPECT_EQ(v["verdict"], "no violation");
  l14.eps_prime = 0.9;
  auto bad = invoke(l14).json();
  EXPECT_EQ(bad["verdict"], "violation found");
  EXPECT_LT(bad["counterexample"]["lhs"].get<double>(), bad["counterexample"]["rhs"].get<double>());
}

TEST_F(CliTest, VolumeGrowthCommand) {
  RunConfig cfg;
  cfg.command = Command::VolumeGrowth;
  cfg.graph = write_graph("p.json", graphs::path(100));
  cfg.base = "v0";
  cfg.t_max = 10;
  cfg.t_step_volume = 2.5;
  cfg.format = OutputFormat::Csv;
  EXPECT_EQ(invoke(cfg).out, "t,count\n2.5,3\n5,6\n7.5,8\n10,11\n");
}

TEST_F(CliTest, PointsInput) {
  std::string csv = "x,y\n";
  for (int i = 0; i < 200; ++i) csv += std::to_string(i) + ",0\n";
  RunConfig cfg;
  cfg.points = write("pts.csv", csv);
  cfg.knn = 2;
  cfg.R = 20;
  cfg.D = 1;
  auto res = invoke(cfg);
  EXPECT_EQ(res.code, 0);
  EXPECT_EQ(res.json()["input"]["kind"], "points");
  EXPECT_EQ(res.json()["input"]["k"], 2);
}

TEST_F(CliTest, ByteIdenticalReruns) {
  const auto graph = write_graph("t.json", graphs::tripod(60));
  std::vector<RunConfig> configs(6);
  configs[0].graph = graph;
  configs[0].R = 20;
  configs[0].D = 1;
  configs[1] = configs[0];
  configs[1].command = Command::Profile;
  configs[1].R_grid = {20, 40};
  configs[1].D_grid = {0.5, 1, 2};
  configs[2].command = Command::CurvatureScan;
  configs[2].method = "monte-carlo";
  configs[2].r_grid = {1, 3, 9};
  configs[2].seed = 3;
  configs[2].format = OutputFormat::Json;
  configs[3].command = Command::CurvatureL14;
  configs[3].trials = 3000;
  configs[3].eps_prime = 0.9;
  configs[3].n = 4;
  configs[3].k = 2;
  configs[4].command = Command::VolumeGrowth;
  configs[4].graph = graph;
  configs[4].t_grid = {1, 5, 50};
  configs[5] = configs[0];
  configs[5].budget = 5;
  for (const auto& cfg : configs) {
    auto first = invoke(cfg).out;
    for (unsigned threads : {1u, 3u}) {
      RunConfig again = cfg;
      again.threads = threads;
      EXPECT_EQ(invoke(again).out, first) << command_name(cfg.command);
    }
  }
}
