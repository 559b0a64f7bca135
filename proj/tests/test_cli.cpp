// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "epsobol/bench.hpp"
#include "epsobol/cli.hpp"
#include "epsobol/csv.hpp"
#include "epsobol/report_json.hpp"
#include "oracles.hpp"

using namespace epsobol;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "epsobol_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

/// Ishigami sample written as a CSV fixture; generated once per run.
const std::string& ishigami_csv(std::int64_t n = 4000) {
  static const std::string path = [n] {
    const fs::path p = work_dir() / "ishigami.csv";
    const BenchModel model = ishigami_model();
    Rng rng(2026);
    std::ofstream os(p);
    os << "x1,x2,x3,y\n";
    char buf[160];
    for (std::int64_t i = 0; i < n; ++i) {
      const Eigen::VectorXd x = model.sample_input(rng);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x(0), x(1),
                    x(2), model.f(x));
      os << buf;
    }
    return p.string();
  }();
  return path;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream os(p);
  os << content;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

nlohmann::json run_and_load(std::vector<std::string> args,
                            const std::string& out_name) {
  const std::string out = (work_dir() / out_name).string();
  args.push_back("--out");
  args.push_back(out);
  REQUIRE(cli::run_cli(args) == cli::kOk);
  return nlohmann::json::parse(slurp(out));
}

}  // namespace

TEST_CASE("csv parser accepts clean tables and flags broken ones", "[cli]") {
  std::istringstream good("a,b\n1,2\n3,4.5\n\n");
  const CsvTable t = read_csv(good);
  CHECK(t.columns == std::vector<std::string>{"a", "b"});
  CHECK(t.rows() == 2);
  CHECK(t.values(1, 1) == 4.5);
  CHECK(t.dropped_rows == 0);

  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(ragged), CsvError);

  std::istringstream alpha("a,b\n1,two\n");
  CHECK_THROWS_AS(read_csv(alpha), CsvError);

  std::istringstream missing("a,b\n1,\n2,3\n");
  CHECK_THROWS_AS(read_csv(missing), CsvError);
  std::istringstream missing2("a,b\n1,\n2,3\n");
  const CsvTable dropped = read_csv(missing2, ',', true);
  CHECK(dropped.rows() == 1);
  CHECK(dropped.dropped_rows == 1);

  std::istringstream tabs("a\tb\n1\t2\n");
  CHECK(read_csv(tabs, '\t').values(0, 1) == 2.0);
}

TEST_CASE("test reports survive a json round trip", "[cli]") {
  TestReport r;
  r.method = TestMethod::TsvdChi2;
  r.statistic = 3.25;
  r.p_value = 0.125;
  r.dof = 4;
  r.seed = 123456789012345ull;
  r.design_digest = "00ff00ff00ff00ff";
  r.k_points = 10;
  r.tau = 0.01;
  r.threshold = 0.125;
  nlohmann::json j = r;
  CHECK(j.get<TestReport>() == r);

  TestReport m;
  m.method = TestMethod::McWeightedChi2;
  m.statistic = 0.5;
  m.p_value = 0.999;
  m.weights = {3.0, 1.0, 0.25};
  m.mc_draws = 10000;
  m.seed = 7;
  m.design_digest = "abc123abc123abc1";
  m.k_points = 3;
  nlohmann::json jm = m;
  CHECK(jm.get<TestReport>() == m);

  // through the disk: a report computed in memory survives file round trip
  Rng rng(61);
  Eigen::VectorXd y(50);
  Eigen::MatrixXd x(50, 2);
  for (Eigen::Index i = 0; i < 50; ++i) {
    y(i) = rng.normal();
    x(i, 0) = rng.uniform01();
    x(i, 1) = rng.uniform01();
  }
  const Sample s(y, x);
  const Design d = Design::uniform_box(x.colwise().minCoeff(),
                                       x.colwise().maxCoeff(), 6, 19);
  const TestReport in_memory = stat_normalized(s, SubsetMask::of(2, {0}), d);
  const std::string path = (work_dir() / "roundtrip.json").string();
  {
    std::ofstream os(path);
    os << nlohmann::json(in_memory).dump(2) << '\n';
  }
  const TestReport reread = nlohmann::json::parse(slurp(path)).get<TestReport>();
  CHECK(reread == in_memory);
}

TEST_CASE("cli test runs a hypothesis end to end", "[cli]") {
  const nlohmann::json j = run_and_load(
      {"test", "--input", ishigami_csv(), "--response", "y", "--u", "x1",
       "--v", "x1,x3", "--seed", "11"},
      "test_x13.json");
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "test");
  CHECK(j["hypothesis"]["u"] == nlohmann::json::array({"x1"}));
  CHECK(j["hypothesis"]["v"] == nlohmann::json::array({"x1", "x3"}));
  CHECK(j["input"]["n"] == 4000);
  CHECK(j["design"]["provenance"] == "uniform-box");
  const TestReport r = j["report"].get<TestReport>();
  CHECK(r.method == TestMethod::TsvdChi2);
  CHECK(r.p_value >= 0.0);
  CHECK(r.p_value <= 1.0);
  CHECK(r.dof >= 1);
  CHECK(j["reject"] == (r.p_value <= j["alpha"].get<double>()));
}

TEST_CASE("cli restricts to the declared inputs", "[cli]") {
  const nlohmann::json j = run_and_load(
      {"test", "--input", ishigami_csv(), "--response", "y", "--inputs",
       "x1,x3", "--u", "x1", "--seed", "13"},
      "test_inputs.json");
  CHECK(j["input"]["inputs"] == nlohmann::json::array({"x1", "x3"}));
  CHECK(j["hypothesis"]["v"] == nlohmann::json::array({"x1", "x3"}));
}

TEST_CASE("cli mc method records draws and weights", "[cli]") {
  const nlohmann::json j = run_and_load(
      {"test", "--input", ishigami_csv(), "--response", "y", "--v", "x3",
       "--method", "mc", "--mc-draws", "2000", "--seed", "5"},
      "test_mc.json");
  const TestReport r = j["report"].get<TestReport>();
  CHECK(r.method == TestMethod::McWeightedChi2);
  CHECK(r.mc_draws == 2000);
  CHECK(r.weights.size() == 10);
  CHECK(r.p_value > 0.05);  // x3 alone has no influence on this model
}

TEST_CASE("cli exit codes distinguish the error classes", "[cli]") {
  const std::string csv = ishigami_csv();
  // missing file
  CHECK(cli::run_cli({"test", "--input", (work_dir() / "nope.csv").string(),
                      "--response", "y"}) == cli::kIo);
  // missing column
  CHECK(cli::run_cli({"test", "--input", csv, "--response", "z"}) == cli::kColumns);
  CHECK(cli::run_cli({"test", "--input", csv, "--response", "y", "--u", "x9"}) ==
        cli::kColumns);
  // u not inside v
  CHECK(cli::run_cli({"test", "--input", csv, "--response", "y", "--u", "x1",
                      "--v", "x2,x3"}) == cli::kColumns);
  // vacuous hypothesis
  CHECK(cli::run_cli({"test", "--input", csv, "--response", "y", "--u", "x3",
                      "--v", "x3"}) == cli::kColumns);
  // non-numeric cell
  const std::string bad = write_file("bad.csv", "x1,y\n1,2\nfoo,3\n");
  CHECK(cli::run_cli({"test", "--input", bad, "--response", "y"}) == cli::kData);
  // missing cell: strict vs dropping
  const std::string holes = write_file("holes.csv", "x1,y\n1,2\n,3\n4,5\n2,1\n");
  CHECK(cli::run_cli({"test", "--input", holes, "--response", "y"}) == cli::kData);
  const nlohmann::json j = run_and_load(
      {"test", "--input", holes, "--response", "y", "--drop-missing", "--K", "3"},
      "holes.json");
  CHECK(j["input"]["dropped_rows"] == 1);
  // degenerate data: identical rows carry no variance at any design point
  std::string flat = "x1,y\n";
  for (int i = 0; i < 10; ++i) flat += "1.5,2\n";
  const std::string flat_path = write_file("flat.csv", flat);
  CHECK(cli::run_cli({"test", "--input", flat_path, "--response", "y"}) ==
        cli::kDegenerate);
  // usage errors
  CHECK(cli::run_cli({"test", "--input", csv, "--response", "y", "--method",
                      "bogus"}) == cli::kUsage);
  CHECK(cli::run_cli({"test", "--input", csv, "--response", "y", "--alpha",
                      "1.5"}) == cli::kUsage);
  CHECK(cli::run_cli({"bench", "--scenario", "nope"}) == cli::kUnknownScenario);
}

TEST_CASE("cli output is byte-identical for a fixed seed", "[cli]") {
  const std::vector<std::string> base = {"test",       "--input", ishigami_csv(),
                                         "--response", "y",       "--v",
                                         "x3",         "--seed",  "21"};
  auto a = base;
  a.push_back("--out");
  a.push_back((work_dir() / "det_a.json").string());
  auto b = base;
  b.push_back("--out");
  b.push_back((work_dir() / "det_b.json").string());
  REQUIRE(cli::run_cli(a) == cli::kOk);
  REQUIRE(cli::run_cli(b) == cli::kOk);
  CHECK(slurp((work_dir() / "det_a.json").string()) ==
        slurp((work_dir() / "det_b.json").string()));
}

TEST_CASE("cli accepts an explicit design file", "[cli]") {
  const std::string design = write_file(
      "design.csv", "x3,x1\n0.1,-2.0\n0.5,0.0\n-1.0,2.0\n2.5,1.0\n");
  const nlohmann::json j = run_and_load(
      {"test", "--input", ishigami_csv(), "--response", "y", "--u", "x1",
       "--v", "x1,x3", "--design-file", design, "--seed", "3"},
      "designfile.json");
  CHECK(j["design"]["provenance"] == "user-supplied");
  CHECK(j["design"]["k_points"] == 4);

  // design file lacking a v column
  const std::string short_design = write_file("design2.csv", "x1\n0.0\n1.0\n");
  CHECK(cli::run_cli({"test", "--input", ishigami_csv(), "--response", "y",
                      "--u", "x1", "--v", "x1,x3", "--design-file",
                      short_design}) == cli::kColumns);
}

TEST_CASE("cli sample-rows design sits behind an override flag", "[cli]") {
  const nlohmann::json j = run_and_load(
      {"test", "--input", ishigami_csv(), "--response", "y", "--v", "x3",
       "--allow-sample-design", "--K", "8", "--seed", "2"},
      "sampledesign.json");
  CHECK(j["design"]["provenance"] == "distribution-sampled");
  CHECK(j["design"]["k_points"] == 8);

  const std::string design = write_file("design3.csv", "x3\n0.0\n");
  CHECK(cli::run_cli({"test", "--input", ishigami_csv(), "--response", "y",
                      "--v", "x3", "--allow-sample-design", "--design-file",
                      design}) == cli::kUsage);
}

TEST_CASE("cli select screens all inputs from one sample", "[cli]") {
  const nlohmann::json j = run_and_load(
      {"select", "--input", ishigami_csv(), "--response", "y", "--seed", "31"},
      "select_screen.json");
  CHECK(j["included"] == nlohmann::json::array());
  const auto& adds = j["add_candidates"];
  REQUIRE(adds.size() == 3);  // exactly one test per input
  double p1 = -1, p2 = -1, p3 = -1;
  for (const auto& c : adds) {
    if (c["input"] == "x1") p1 = c["p_value"].get<double>();
    if (c["input"] == "x2") p2 = c["p_value"].get<double>();
    if (c["input"] == "x3") p3 = c["p_value"].get<double>();
  }
  CHECK(p1 <= 0.01);   // strong main effect
  CHECK(p2 <= 0.05);   // weak but visible main effect
  CHECK(p3 > 0.05);    // no main effect
  CHECK(j["drop_candidates"].empty());
  CHECK(j["global"]["status"] == "tested");
}

TEST_CASE("cli select handles included sets and saturation", "[cli]") {
  const nlohmann::json j = run_and_load(
      {"select", "--input", ishigami_csv(), "--response", "y", "--include",
       "x1", "--seed", "32"},
      "select_x1.json");
  CHECK(j["included"] == nlohmann::json::array({"x1"}));
  CHECK(j["add_candidates"].size() == 2);
  CHECK(j["drop_candidates"].size() == 1);
  CHECK(j["drop_candidates"][0]["input"] == "x1");
  CHECK(j["drop_candidates"][0]["p_value"].get<double>() <= 0.01);
  CHECK(j["global"]["status"] == "tested");

  const nlohmann::json sat = run_and_load(
      {"select", "--input", ishigami_csv(), "--response", "y", "--include",
       "x1,x2,x3", "--seed", "33"},
      "select_all.json");
  CHECK(sat["global"]["status"] == "saturated");
  CHECK_FALSE(sat["global"].contains("p_value"));
}

TEST_CASE("cli greedy selection is deterministic and keeps x1", "[cli]") {
  const auto args = std::vector<std::string>{
      "select", "--input", ishigami_csv(), "--response", "y",
      "--greedy", "--alpha", "0.05", "--seed", "34"};
  const nlohmann::json a = run_and_load(args, "greedy_a.json");
  const nlohmann::json b = run_and_load(args, "greedy_b.json");
  CHECK(a == b);
  CHECK_FALSE(a["history"].empty());
  bool has_x1 = false;
  for (const auto& name : a["included"])
    if (name == "x1") has_x1 = true;
  CHECK(has_x1);
}

TEST_CASE("cli bench writes records and summary deterministically", "[cli]") {
  const std::string prefix_a = (work_dir() / "bench_a").string();
  const std::string prefix_b = (work_dir() / "bench_b").string();
  for (const std::string& prefix : {prefix_a, prefix_b})
    REQUIRE(cli::run_cli({"bench", "--scenario", "S3-null", "--method", "tsvd",
                          "--n", "120", "--N", "25", "--seed", "55", "--out",
                          prefix}) == cli::kOk);
  const std::string rec_a = slurp(prefix_a + "_records.tsv");
  CHECK(rec_a == slurp(prefix_b + "_records.tsv"));
  CHECK(slurp(prefix_a + "_summary.tsv") == slurp(prefix_b + "_summary.tsv"));
  CHECK(std::count(rec_a.begin(), rec_a.end(), '\n') == 26);

  const std::string pf_prefix = (work_dir() / "bench_pf").string();
  REQUIRE(cli::run_cli({"bench", "--scenario", "S13-vs-S1", "--method", "pf",
                        "--n", "60", "--N", "10", "--seed", "56", "--out",
                        pf_prefix}) == cli::kOk);
  const std::string pf_records = slurp(pf_prefix + "_records.tsv");
  CHECK(std::count(pf_records.begin(), pf_records.end(), '\n') == 11);
}
