// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epsobol/bench.hpp"
#include "epsobol/core.hpp"
#include "epsobol/csv.hpp"
#include "epsobol/report_json.hpp"
#include "epsobol/testing.hpp"

namespace epsobol::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kData = 4,
  kColumns = 5,
  kDegenerate = 6,
  kUnknownScenario = 7,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ColumnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string input_path;
  std::string response;
  std::vector<std::string> inputs;  // empty = all non-response columns
  std::string method = "tsvd";      // tsvd | mc
  int k_points = 10;
  std::int64_t mc_draws = 10000;
  std::optional<double> tau;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::string design_file;
  bool allow_sample_design = false;
  std::string out_path;
  std::string delimiter = ",";
  bool drop_missing = false;
};

struct TestOptions : CommonOptions {
  std::vector<std::string> u_names;
  std::vector<std::string> v_names;  // empty = all inputs
};

struct SelectOptions : CommonOptions {
  std::vector<std::string> include;
  bool greedy = false;
};

struct BenchOptions {
  std::string scenario;
  std::string method = "tsvd";  // tsvd | mc | pf
  std::int64_t n = 1000;
  int k_points = 10;
  std::int64_t reps = 1000;
  std::uint64_t seed = 0;
  std::int64_t mc_draws = 10000;
  std::optional<double> tau;
  int threads = 0;
  std::string out_prefix = "bench";
};

/// The ingested table with resolved response/input columns.
struct Dataset {
  CsvTable table;
  std::string response;
  std::vector<std::string> inputs;  // header order
  Eigen::VectorXd y;
  Eigen::MatrixXd x;  // n x q, columns follow `inputs`
};

namespace detail {

inline char parse_delimiter(const std::string& d) {
  if (d == "\\t" || d == "tab") return '\t';
  if (d.size() != 1) throw UsageError("delimiter must be a single character");
  return d[0];
}

inline double validated_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw UsageError("alpha must be in (0, 1)");
  return alpha;
}

}  // namespace detail

inline Dataset load_dataset(const CommonOptions& opt) {
  Dataset data;
  data.table = read_csv_file(opt.input_path,
                             detail::parse_delimiter(opt.delimiter),
                             opt.drop_missing);
  data.response = opt.response;
  if (data.table.column_index(data.response) < 0)
    throw ColumnError("response column '" + data.response + "' not found");

  if (opt.inputs.empty()) {
    for (const std::string& c : data.table.columns)
      if (c != data.response) data.inputs.push_back(c);
  } else {
    std::set<std::string> seen;
    for (const std::string& c : opt.inputs) {
      if (data.table.column_index(c) < 0)
        throw ColumnError("input column '" + c + "' not found");
      if (c == data.response)
        throw ColumnError("input column '" + c + "' is the response");
      if (!seen.insert(c).second)
        throw ColumnError("input column '" + c + "' listed twice");
      data.inputs.push_back(c);
    }
  }
  if (data.inputs.empty()) throw ColumnError("no input columns");

  const Eigen::Index n = data.table.rows();
  if (n < 2) throw CsvError("csv: need at least 2 data rows");
  data.y = data.table.values.col(data.table.column_index(data.response));
  data.x.resize(n, static_cast<Eigen::Index>(data.inputs.size()));
  for (std::size_t j = 0; j < data.inputs.size(); ++j)
    data.x.col(static_cast<Eigen::Index>(j)) =
        data.table.values.col(data.table.column_index(data.inputs[j]));
  if (!data.y.allFinite() || !data.x.allFinite())
    throw CsvError("csv: non-finite value in selected columns");
  return data;
}

namespace detail {

/// Indices of `names` within the declared input list, sorted by input order.
inline std::vector<int> resolve_names(const std::vector<std::string>& names,
                                      const std::vector<std::string>& inputs) {
  std::vector<int> idx;
  for (const std::string& name : names) {
    const auto it = std::find(inputs.begin(), inputs.end(), name);
    if (it == inputs.end())
      throw ColumnError("'" + name + "' is not a declared input column");
    idx.push_back(static_cast<int>(it - inputs.begin()));
  }
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw ColumnError("subset lists a column twice");
  return idx;
}

/// One EP test of S^(u) = S^(v), both given as indices into data.inputs.
struct PreparedHypothesis {
  std::vector<int> u_cols;  // dataset columns
  std::vector<int> v_cols;
  std::vector<std::string> u_names;
  std::vector<std::string> v_names;
};

inline PreparedHypothesis prepare_hypothesis(const Dataset& data,
                                             const std::vector<int>& u_cols,
                                             const std::vector<int>& v_cols) {
  PreparedHypothesis h;
  h.u_cols = u_cols;
  h.v_cols = v_cols;
  for (int j : u_cols) {
    if (!std::binary_search(v_cols.begin(), v_cols.end(), j))
      throw ColumnError("u must be a subset of v ('" + data.inputs[j] +
                        "' is not in v)");
    h.u_names.push_back(data.inputs[j]);
  }
  if (u_cols.size() == v_cols.size())
    throw ColumnError("vacuous hypothesis: u equals v");
  for (int j : v_cols) h.v_names.push_back(data.inputs[j]);
  return h;
}

struct ExecutedTest {
  TestReport report;
  Design design;
  Eigen::Index n = 0;
};

/// Restrict the sample to the v-columns, build a design, run the EP variant.
inline ExecutedTest execute_ep_test(const Dataset& data,
                                    const PreparedHypothesis& hyp,
                                    const CommonOptions& opt,
                                    std::uint64_t design_seed,
                                    std::uint64_t mc_seed) {
  const Eigen::Index n = data.x.rows();
  Eigen::MatrixXd x_v(n, static_cast<Eigen::Index>(hyp.v_cols.size()));
  for (std::size_t j = 0; j < hyp.v_cols.size(); ++j)
    x_v.col(static_cast<Eigen::Index>(j)) = data.x.col(hyp.v_cols[j]);
  const Sample sample(data.y, x_v);

  std::vector<int> u_local;
  for (int j : hyp.u_cols) {
    const auto it = std::lower_bound(hyp.v_cols.begin(), hyp.v_cols.end(), j);
    u_local.push_back(static_cast<int>(it - hyp.v_cols.begin()));
  }
  const SubsetMask u = SubsetMask::hypothesis(
      static_cast<int>(hyp.v_cols.size()), std::move(u_local));

  std::optional<Design> design;
  if (!opt.design_file.empty()) {
    if (opt.allow_sample_design)
      throw UsageError("--design-file and --allow-sample-design are exclusive");
    const CsvTable t = read_csv_file(opt.design_file,
                                     parse_delimiter(opt.delimiter), false);
    Eigen::MatrixXd pts(t.rows(), static_cast<Eigen::Index>(hyp.v_names.size()));
    for (std::size_t j = 0; j < hyp.v_names.size(); ++j) {
      const Eigen::Index c = t.column_index(hyp.v_names[j]);
      if (c < 0)
        throw ColumnError("design file misses column '" + hyp.v_names[j] + "'");
      pts.col(static_cast<Eigen::Index>(j)) = t.values.col(c);
    }
    if (pts.rows() < 1) throw CsvError("design file has no rows");
    if (!pts.allFinite()) throw CsvError("design file has a non-finite value");
    design.emplace(std::move(pts), Provenance::UserSupplied, design_seed);
  } else if (opt.allow_sample_design) {
    // Observed rows as evaluation points; off by default because the test
    // performs poorly on its own sample.
    if (opt.k_points > sample.n())
      throw UsageError("K exceeds the number of sample rows");
    design = Design::from_rows_of(sample.x, opt.k_points, design_seed);
  } else {
    design = Design::uniform_box(sample.x.colwise().minCoeff(),
                                 sample.x.colwise().maxCoeff(), opt.k_points,
                                 design_seed);
  }

  ExecutedTest out{.report = {}, .design = *design, .n = n};
  if (opt.method == "tsvd") {
    out.report = stat_normalized(sample, u, *design, TsvdOptions{opt.tau});
  } else if (opt.method == "mc") {
    out.report = ep_test_mc(sample, u, *design, opt.mc_draws, mc_seed);
  } else {
    throw UsageError("method must be 'tsvd' or 'mc'");
  }
  return out;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("failed writing '" + path + "'");
}

inline std::string joined(const std::vector<std::string>& names) {
  if (names.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

inline nlohmann::json input_block(const Dataset& data,
                                  const CommonOptions& opt) {
  return nlohmann::json{{"path", opt.input_path},
                        {"response", data.response},
                        {"inputs", data.inputs},
                        {"n", data.x.rows()},
                        {"dropped_rows", data.table.dropped_rows}};
}

inline nlohmann::json design_block(const Design& d) {
  return nlohmann::json{{"provenance", to_string(d.provenance)},
                        {"seed", d.seed},
                        {"k_points", d.k_points()},
                        {"digest", d.digest()}};
}

}  // namespace detail

/// `test`: one hypothesis on a user table.
inline int cmd_test(const TestOptions& opt) {
  detail::validated_alpha(opt.alpha);
  const Dataset data = load_dataset(opt);
  const std::vector<int> u_cols = detail::resolve_names(opt.u_names, data.inputs);
  std::vector<int> v_cols;
  if (opt.v_names.empty()) {
    v_cols.resize(data.inputs.size());
    std::iota(v_cols.begin(), v_cols.end(), 0);
  } else {
    v_cols = detail::resolve_names(opt.v_names, data.inputs);
  }
  const detail::PreparedHypothesis hyp =
      detail::prepare_hypothesis(data, u_cols, v_cols);
  const detail::ExecutedTest run = detail::execute_ep_test(
      data, hyp, opt, Rng::derive(opt.seed, 0), Rng::derive(opt.seed, 1));

  const bool reject = run.report.p_value <= opt.alpha;
  std::printf("hypothesis   H0: S(%s) = S(%s)\n", detail::joined(hyp.u_names).c_str(),
              detail::joined(hyp.v_names).c_str());
  std::printf("method       %s\n", to_string(run.report.method));
  std::printf("n            %lld\n", static_cast<long long>(run.n));
  std::printf("K            %d\n", run.report.k_points);
  std::printf("statistic    %.6g\n", run.report.statistic);
  if (run.report.method == TestMethod::TsvdChi2)
    std::printf("dof          %d\n", run.report.dof);
  std::printf("p-value      %.6g\n", run.report.p_value);
  std::printf("alpha        %.6g\n", opt.alpha);
  std::printf("decision     %s\n", reject ? "reject" : "fail-to-reject");

  if (!opt.out_path.empty()) {
    nlohmann::json j{{"schema_version", 1},
                     {"command", "test"},
                     {"input", detail::input_block(data, opt)},
                     {"hypothesis", {{"u", hyp.u_names}, {"v", hyp.v_names}}},
                     {"alpha", opt.alpha},
                     {"seed", opt.seed},
                     {"design", detail::design_block(run.design)},
                     {"report", run.report},
                     {"reject", reject}};
    detail::write_json_file(opt.out_path, j);
  }
  return kOk;
}

namespace detail {

struct CandidateResult {
  std::string input;
  TestReport report;
};

inline nlohmann::json candidates_json(const std::vector<CandidateResult>& cs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CandidateResult& c : cs)
    arr.push_back({{"input", c.input},
                   {"statistic", c.report.statistic},
                   {"p_value", c.report.p_value},
                   {"dof", c.report.dof}});
  return arr;
}

}  // namespace detail

/// `select`: the stepwise workflow. For the included set I it evaluates, from
/// one ingested sample, the significance of adding each excluded input
/// (u = I, v = I + {j}), of dropping each included input (u = I - {j}, v = I),
/// and the global validation H0: S^(I) = S over all declared inputs. With
/// --greedy it iterates add/drop decisions at the given alpha; otherwise all
/// decisions stay with the user across invocations.
inline int cmd_select(const SelectOptions& opt) {
  detail::validated_alpha(opt.alpha);
  const Dataset data = load_dataset(opt);
  const int q = static_cast<int>(data.inputs.size());

  std::vector<int> included = detail::resolve_names(opt.include, data.inputs);
  std::uint64_t test_counter = 0;

  const auto run_pair = [&](std::vector<int> u_cols, std::vector<int> v_cols) {
    const detail::PreparedHypothesis hyp =
        detail::prepare_hypothesis(data, u_cols, v_cols);
    const std::uint64_t ds = Rng::derive(opt.seed, 2 * test_counter);
    const std::uint64_t ms = Rng::derive(opt.seed, 2 * test_counter + 1);
    ++test_counter;
    return detail::execute_ep_test(data, hyp, opt, ds, ms).report;
  };

  const auto add_candidates = [&](const std::vector<int>& incl) {
    std::vector<detail::CandidateResult> out;
    for (int j = 0; j < q; ++j) {
      if (std::binary_search(incl.begin(), incl.end(), j)) continue;
      std::vector<int> v = incl;
      v.insert(std::lower_bound(v.begin(), v.end(), j), j);
      out.push_back({data.inputs[static_cast<std::size_t>(j)], run_pair(incl, v)});
    }
    return out;
  };
  const auto drop_candidates = [&](const std::vector<int>& incl) {
    std::vector<detail::CandidateResult> out;
    for (int j : incl) {
      std::vector<int> u = incl;
      u.erase(std::find(u.begin(), u.end(), j));
      out.push_back({data.inputs[static_cast<std::size_t>(j)], run_pair(u, incl)});
    }
    return out;
  };

  nlohmann::json history = nlohmann::json::array();
  if (opt.greedy) {
    for (int iter = 0; iter < 2 * q; ++iter) {
      const auto adds = add_candidates(included);
      const auto best = std::min_element(
          adds.begin(), adds.end(), [](const auto& a, const auto& b) {
            return a.report.p_value < b.report.p_value;
          });
      if (best != adds.end() && best->report.p_value <= opt.alpha) {
        const int j = static_cast<int>(
            std::find(data.inputs.begin(), data.inputs.end(), best->input) -
            data.inputs.begin());
        included.insert(std::lower_bound(included.begin(), included.end(), j), j);
        history.push_back({{"action", "add"},
                           {"input", best->input},
                           {"p_value", best->report.p_value}});
        continue;
      }
      const auto drops = drop_candidates(included);
      const auto worst = std::max_element(
          drops.begin(), drops.end(), [](const auto& a, const auto& b) {
            return a.report.p_value < b.report.p_value;
          });
      if (worst != drops.end() && worst->report.p_value > opt.alpha) {
        const int j = static_cast<int>(
            std::find(data.inputs.begin(), data.inputs.end(), worst->input) -
            data.inputs.begin());
        included.erase(std::find(included.begin(), included.end(), j));
        history.push_back({{"action", "drop"},
                           {"input", worst->input},
                           {"p_value", worst->report.p_value}});
        continue;
      }
      break;
    }
  }

  const auto adds = add_candidates(included);
  const auto drops = drop_candidates(included);

  nlohmann::json global;
  if (static_cast<int>(included.size()) == q) {
    // u = I = all inputs makes the process identically zero; there is
    // nothing left to test.
    global = {{"status", "saturated"}};
  } else {
    std::vector<int> all(static_cast<std::size_t>(q));
    std::iota(all.begin(), all.end(), 0);
    const TestReport r = run_pair(included, all);
    global = {{"status", "tested"},
              {"statistic", r.statistic},
              {"p_value", r.p_value},
              {"dof", r.dof}};
  }

  std::vector<std::string> included_names;
  for (int j : included) included_names.push_back(data.inputs[static_cast<std::size_t>(j)]);

  std::printf("included     %s\n", detail::joined(included_names).c_str());
  std::printf("-- add candidates (H0: input adds nothing) --\n");
  for (const auto& c : adds)
    std::printf("  %-16s p=%.6g\n", c.input.c_str(), c.report.p_value);
  std::printf("-- drop candidates (H0: model without input is enough) --\n");
  for (const auto& c : drops)
    std::printf("  %-16s p=%.6g\n", c.input.c_str(), c.report.p_value);
  if (global.contains("p_value"))
    std::printf("global       p=%.6g\n", global["p_value"].get<double>());
  else
    std::printf("global       saturated (all inputs included)\n");

  if (!opt.out_path.empty()) {
    nlohmann::json j{{"schema_version", 1},
                     {"command", "select"},
                     {"input", detail::input_block(data, opt)},
                     {"method", opt.method},
                     {"K", opt.k_points},
                     {"alpha", opt.alpha},
                     {"seed", opt.seed},
                     {"greedy", opt.greedy},
                     {"included", included_names},
                     {"add_candidates", detail::candidates_json(adds)},
                     {"drop_candidates", detail::candidates_json(drops)},
                     {"global", global},
                     {"history", history}};
    detail::write_json_file(opt.out_path, j);
  }
  return kOk;
}

/// `bench`: replicated Ishigami experiments for one named scenario.
inline int cmd_bench(const BenchOptions& opt) {
  const Scenario& scenario = scenario_by_id(opt.scenario);
  BenchMethod method;
  if (opt.method == "tsvd")
    method = BenchMethod::EpTsvd;
  else if (opt.method == "mc")
    method = BenchMethod::EpMc;
  else if (opt.method == "pf")
    method = BenchMethod::Pf;
  else
    throw UsageError("method must be 'tsvd', 'mc' or 'pf'");

  RunOptions run_opts;
  run_opts.tau = opt.tau;
  run_opts.mc_draws = opt.mc_draws;
  run_opts.threads = opt.threads;
  const ReplicationResult result =
      run_replications(ishigami_model(), scenario.id, scenario.hypothesis,
                       method, opt.n, opt.k_points, opt.reps, opt.seed, run_opts);

  const std::string records_path = opt.out_prefix + "_records.tsv";
  const std::string summary_path = opt.out_prefix + "_summary.tsv";
  {
    std::ofstream os(records_path);
    if (!os) throw IoError("cannot open '" + records_path + "' for writing");
    write_records_tsv(os, result);
  }
  {
    std::ofstream os(summary_path);
    if (!os) throw IoError("cannot open '" + summary_path + "' for writing");
    write_summary_tsv(os, result);
  }

  std::printf("scenario     %s (%s)\n", result.scenario.c_str(),
              to_string(result.method));
  std::printf("n=%lld K=%d N=%lld seed=%llu errors=%lld model_calls=%lld\n",
              static_cast<long long>(result.n), result.k_points,
              static_cast<long long>(result.n_replications),
              static_cast<unsigned long long>(result.seed),
              static_cast<long long>(result.errors),
              static_cast<long long>(result.model_calls));
  for (double alpha : {0.01, 0.05, 0.10})
    std::printf("rejection at alpha=%.2f: %.4f\n", alpha,
                result.rejection_at(alpha));
  std::printf("records      %s\nsummary      %s\n", records_path.c_str(),
              summary_path.c_str());
  return kOk;
}

namespace detail {

inline void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--input", opt.input_path, "CSV file with a header row")
      ->required();
  cmd->add_option("--response", opt.response, "response column name")->required();
  cmd->add_option("--inputs", opt.inputs,
                  "input column names (default: all non-response columns)")
      ->delimiter(',');
  cmd->add_option("--method", opt.method, "tsvd | mc")
      ->check(CLI::IsMember({"tsvd", "mc"}));
  cmd->add_option("--K", opt.k_points, "number of design points")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mc-draws", opt.mc_draws, "Monte-Carlo draws (mc method)");
  cmd->add_option_function<double>(
      "--tau", [&opt](const double& v) { opt.tau = v; },
      "override the spectral cutoff proportion (default 0.1 n^-1/3)");
  cmd->add_option("--alpha", opt.alpha, "significance level");
  cmd->add_option("--seed", opt.seed, "master seed");
  cmd->add_option("--design-file", opt.design_file,
                  "CSV of design points (columns matching v)");
  cmd->add_flag("--allow-sample-design", opt.allow_sample_design,
                "use K sample rows as the design (not recommended)");
  cmd->add_option("--out", opt.out_path, "write a JSON report here");
  cmd->add_option("--delimiter", opt.delimiter, "field delimiter (default ,)");
  cmd->add_flag("--drop-missing", opt.drop_missing,
                "drop rows with missing values instead of failing");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"significance tests for groups of inputs of a black-box function"};
  app.require_subcommand(1);

  TestOptions test_opt;
  CLI::App* test_cmd = app.add_subcommand(
      "test", "test H0: S(u) = S(v) on a CSV sample");
  detail::add_common_flags(test_cmd, test_opt);
  test_cmd->add_option("--u", test_opt.u_names, "subset u (default empty)")
      ->delimiter(',');
  test_cmd->add_option("--v", test_opt.v_names, "subset v (default all inputs)")
      ->delimiter(',');

  SelectOptions select_opt;
  CLI::App* select_cmd = app.add_subcommand(
      "select", "stepwise variable-selection tests on a CSV sample");
  detail::add_common_flags(select_cmd, select_opt);
  select_cmd->add_option("--include", select_opt.include,
                         "currently included inputs")
      ->delimiter(',');
  select_cmd->add_flag("--greedy", select_opt.greedy,
                       "apply add/drop decisions at --alpha");

  BenchOptions bench_opt;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "replicated benchmark experiments");
  bench_cmd->add_option("--scenario", bench_opt.scenario,
                        "S3-null | S23-vs-S2 | S1-null | S13-vs-S1")
      ->required();
  bench_cmd->add_option("--method", bench_opt.method, "tsvd | mc | pf");
  bench_cmd->add_option("--n", bench_opt.n, "model-call budget per replication")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--K", bench_opt.k_points, "design points")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--N", bench_opt.reps, "number of replications")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_opt.seed, "master seed");
  bench_cmd->add_option("--mc-draws", bench_opt.mc_draws,
                        "Monte-Carlo draws (mc method)");
  bench_cmd->add_option_function<double>(
      "--tau", [&bench_opt](const double& v) { bench_opt.tau = v; },
      "override the spectral cutoff proportion");
  bench_cmd->add_option("--threads", bench_opt.threads,
                        "worker threads (0 = hardware)");
  bench_cmd->add_option("--out", bench_opt.out_prefix,
                        "output prefix for the records/summary files");

  try {
    app.parse(argc, argv);
    if (test_cmd->parsed()) return cmd_test(test_opt);
    if (select_cmd->parsed()) return cmd_select(select_opt);
    if (bench_cmd->parsed()) return cmd_bench(bench_opt);
    return kUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const CsvError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kData;
  } catch (const ColumnError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kColumns;
  } catch (const DegenerateTestError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDegenerate;
  } catch (const UnknownScenarioError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUnknownScenario;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}

inline int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("epsobol");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace epsobol::cli
