// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <sstream>

#include "epsobol/bench.hpp"
#include "oracles.hpp"

using namespace epsobol;

TEST_CASE("model evaluator by direct arithmetic", "[bench]") {
  Eigen::VectorXd x(3);
  x << 0.0, 0.0, 0.0;
  CHECK(ishigami_variant(x) == 0.0);
  x << std::numbers::pi / 2.0, 0.0, 0.0;
  CHECK_THAT(ishigami_variant(x), Catch::Matchers::WithinAbs(2.0, 1e-14));
  x << std::numbers::pi / 2.0, std::numbers::pi / 2.0, 1.0;
  CHECK_THAT(ishigami_variant(x), Catch::Matchers::WithinAbs(10.0, 1e-13));
}

TEST_CASE("closed-form indices match the known values", "[bench]") {
  CHECK(ishigami_sobol_oracle(SubsetMask::empty(3)) == 0.0);
  CHECK(ishigami_sobol_oracle(SubsetMask::of(3, {2})) == 0.0);
  CHECK(ishigami_sobol_oracle(SubsetMask::full(3)) == 1.0);
  CHECK_THAT(ishigami_sobol_oracle(SubsetMask::of(3, {0})),
             Catch::Matchers::WithinAbs(0.402, 5e-3));
  CHECK_THAT(ishigami_sobol_oracle(SubsetMask::of(3, {0, 2})),
             Catch::Matchers::WithinAbs(0.989, 5e-3));
  // x3 contributes only through x1, so it adds nothing next to x2 alone
  CHECK(ishigami_sobol_oracle(SubsetMask::of(3, {1, 2})) ==
        ishigami_sobol_oracle(SubsetMask::of(3, {1})));
}

TEST_CASE("closed-form indices match brute-force monte carlo", "[bench][oracle][slow]") {
  const BenchModel model = ishigami_model();
  const std::vector<std::vector<int>> subsets = {{},     {0},    {1},    {2},
                                                 {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  std::uint64_t seed = 100;
  for (const auto& idx : subsets) {
    const SubsetMask u = SubsetMask::of(3, idx);
    const double mc = oracles::mc_sobol(model.f, model.sample_input, u, 1000000, seed++);
    CHECK_THAT(ishigami_sobol_oracle(u), Catch::Matchers::WithinAbs(mc, 3e-3));
  }
}

TEST_CASE("scenario registry", "[bench]") {
  CHECK(bench_scenarios().size() == 4);
  const Scenario& s23 = scenario_by_id("S23-vs-S2");
  CHECK(s23.hypothesis.u.indices == std::vector<int>{1});
  CHECK(s23.hypothesis.v.indices == std::vector<int>{1, 2});
  CHECK(s23.null_is_true);
  const Scenario& s13 = scenario_by_id("S13-vs-S1");
  CHECK_FALSE(s13.null_is_true);
  CHECK_THROWS_AS(scenario_by_id("nope"), UnknownScenarioError);
  try {
    scenario_by_id("nope");
  } catch (const UnknownScenarioError& e) {
    CHECK(std::string(e.what()).find("S3-null") != std::string::npos);
    CHECK(std::string(e.what()).find("S13-vs-S1") != std::string::npos);
  }
}

TEST_CASE("single replication yields one valid record", "[bench]") {
  const Scenario& sc = scenario_by_id("S3-null");
  const ReplicationResult r = run_replications(
      ishigami_model(), sc.id, sc.hypothesis, BenchMethod::EpTsvd, 100, 5, 1, 3);
  CHECK(r.records.size() == 1);
  CHECK(r.records[0].ok);
  CHECK(r.records[0].p_value >= 0.0);
  CHECK(r.records[0].p_value <= 1.0);
  CHECK(r.errors == 0);
  CHECK(r.model_calls == 100);
  CHECK(r.alpha_grid.size() == 512);
  CHECK(r.alpha_grid.back() == 1.0);
  CHECK(r.rejection_rate.back() == 1.0);
  CHECK(std::is_sorted(r.rejection_rate.begin(), r.rejection_rate.end()));

  // replication count is conserved: every record is a success or an error
  std::int64_t ok = 0;
  for (const ReplicationRecord& rec : r.records) ok += rec.ok ? 1 : 0;
  CHECK(ok + r.errors == r.n_replications);

  CHECK_THROWS_AS(
      run_replications(ishigami_model(), sc.id, sc.hypothesis, BenchMethod::Pf,
                       5, 5, 1, 3),
      std::invalid_argument);
}

TEST_CASE("replications are deterministic and thread-count independent",
          "[bench][slow]") {
  const Scenario& sc = scenario_by_id("S23-vs-S2");
  RunOptions serial;
  serial.threads = 1;
  RunOptions parallel;
  parallel.threads = 2;
  const ReplicationResult a =
      run_replications(ishigami_model(), sc.id, sc.hypothesis,
                       BenchMethod::EpTsvd, 150, 8, 40, 77, serial);
  const ReplicationResult b =
      run_replications(ishigami_model(), sc.id, sc.hypothesis,
                       BenchMethod::EpTsvd, 150, 8, 40, 77, parallel);
  std::ostringstream ra, rb, sa, sb;
  write_records_tsv(ra, a);
  write_records_tsv(rb, b);
  write_summary_tsv(sa, a);
  write_summary_tsv(sb, b);
  CHECK(ra.str() == rb.str());
  CHECK(sa.str() == sb.str());
  CHECK(a.rejection_rate == b.rejection_rate);

  // a different seed changes the records
  const ReplicationResult c =
      run_replications(ishigami_model(), sc.id, sc.hypothesis,
                       BenchMethod::EpTsvd, 150, 8, 40, 78, serial);
  std::ostringstream rc;
  write_records_tsv(rc, c);
  CHECK(ra.str() != rc.str());
}

TEST_CASE("pick-freeze replications respect the call budget", "[bench]") {
  const Scenario& sc = scenario_by_id("S13-vs-S1");
  const ReplicationResult r = run_replications(
      ishigami_model(), sc.id, sc.hypothesis, BenchMethod::Pf, 62, 10, 5, 9);
  for (const ReplicationRecord& rec : r.records) {
    CHECK(rec.ok);
    CHECK(rec.model_calls == 60);  // three blocks of floor(62 / 3)
  }
  CHECK(r.model_calls == 5 * 60);
}

TEST_CASE("ep methods see strong signal in the first input", "[bench][slow]") {
  const Scenario& sc = scenario_by_id("S1-null");
  const ReplicationResult r =
      run_replications(ishigami_model(), sc.id, sc.hypothesis,
                       BenchMethod::EpTsvd, 300, 10, 60, 42);
  CHECK(r.errors == 0);
  CHECK(r.rejection_at(0.05) >= 0.8);

  RunOptions mc_opts;
  mc_opts.mc_draws = 2000;
  const ReplicationResult m =
      run_replications(ishigami_model(), sc.id, sc.hypothesis,
                       BenchMethod::EpMc, 300, 10, 30, 43, mc_opts);
  CHECK(m.errors == 0);
  CHECK(m.rejection_at(0.05) >= 0.8);
  CHECK(m.mc_draws == 2000);
}

TEST_CASE("records file has one line per replication", "[bench]") {
  const Scenario& sc = scenario_by_id("S3-null");
  const ReplicationResult r = run_replications(
      ishigami_model(), sc.id, sc.hypothesis, BenchMethod::EpTsvd, 90, 5, 7, 1);
  std::ostringstream os;
  write_records_tsv(os, r);
  const std::string text = os.str();
  const auto lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == 8);  // header + 7 records
  CHECK(text.find("S3-null\tep-tsvd\t90\t5\t0\t") != std::string::npos);
}
