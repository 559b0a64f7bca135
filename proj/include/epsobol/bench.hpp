// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "epsobol/core.hpp"
#include "epsobol/pickfreeze.hpp"
#include "epsobol/testing.hpp"

namespace epsobol {

class UnknownScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A benchmark model: deterministic evaluator plus an input sampler with
/// independent marginals, and a closed-form Sobol oracle where one exists.
struct BenchModel {
  int dim = 0;
  ModelFn f;
  SamplerFn sample_input;
  std::function<double(const SubsetMask&)> sobol_oracle;  // may be empty
};

/// (2 + x3^4) sin(x1) + 7 sin(x2)^2 on R^3.
inline double ishigami_variant(const Eigen::VectorXd& x) {
  if (x.size() != 3) throw std::invalid_argument("ishigami_variant: need p = 3");
  const double x3sq = x(2) * x(2);
  const double s2 = std::sin(x(1));
  return (2.0 + x3sq * x3sq) * std::sin(x(0)) + 7.0 * s2 * s2;
}

/// Closed-form Sobol index of the variant above under uniform inputs on
/// [-pi, pi]^3. Uses E[sin^2] = 1/2, E[sin^4] = 3/8, E[x^4] = pi^4/5,
/// E[x^8] = pi^8/9 over the centered interval.
inline double ishigami_sobol_oracle(const SubsetMask& u) {
  if (u.dim != 3)
    throw std::invalid_argument("ishigami_sobol_oracle: mask must have dim 3");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double pi4 = pi2 * pi2;
  const double pi8 = pi4 * pi4;
  const double sine_block = (4.0 + 4.0 * pi4 / 5.0 + pi8 / 9.0) / 2.0;
  const double square_block = 49.0 / 8.0;
  const double var_y = sine_block + square_block;

  double explained = 0.0;
  if (u.contains(0) && u.contains(2))
    explained += sine_block;
  else if (u.contains(0))
    explained += (2.0 + pi4 / 5.0) * (2.0 + pi4 / 5.0) / 2.0;
  // x3 alone explains nothing: sin(x1) integrates to zero.
  if (u.contains(1)) explained += square_block;
  return explained / var_y;
}

inline BenchModel ishigami_model() {
  BenchModel m;
  m.dim = 3;
  m.f = ishigami_variant;
  m.sample_input = [](Rng& rng) {
    Eigen::VectorXd x(3);
    for (int j = 0; j < 3; ++j)
      x(j) = rng.uniform(-std::numbers::pi, std::numbers::pi);
    return x;
  };
  m.sobol_oracle = ishigami_sobol_oracle;
  return m;
}

/// Null hypothesis S^(u) = S^(v) for nested subsets, in model coordinates.
struct Hypothesis {
  SubsetMask u;
  SubsetMask v;
};

struct Scenario {
  std::string id;
  Hypothesis hypothesis;
  bool null_is_true = false;
};

/// The four pre-registered Ishigami scenarios.
inline const std::vector<Scenario>& bench_scenarios() {
  static const std::vector<Scenario> scenarios = [] {
    std::vector<Scenario> s;
    s.push_back({"S3-null", {SubsetMask::empty(3), SubsetMask::of(3, {2})}, true});
    s.push_back({"S23-vs-S2", {SubsetMask::of(3, {1}), SubsetMask::of(3, {1, 2})}, true});
    s.push_back({"S1-null", {SubsetMask::empty(3), SubsetMask::of(3, {0})}, false});
    s.push_back({"S13-vs-S1", {SubsetMask::of(3, {0}), SubsetMask::of(3, {0, 2})}, false});
    return s;
  }();
  return scenarios;
}

inline const Scenario& scenario_by_id(const std::string& id) {
  for (const Scenario& s : bench_scenarios())
    if (s.id == id) return s;
  std::string msg = "unknown scenario '" + id + "'; valid ids:";
  for (const Scenario& s : bench_scenarios()) msg += " " + s.id;
  throw UnknownScenarioError(msg);
}

enum class BenchMethod { EpMc, EpTsvd, Pf };

inline const char* to_string(BenchMethod m) {
  switch (m) {
    case BenchMethod::EpMc: return "ep-mc";
    case BenchMethod::EpTsvd: return "ep-tsvd";
    case BenchMethod::Pf: return "pf";
  }
  return "?";
}

struct ReplicationRecord {
  std::int64_t rep = 0;
  std::uint64_t stream = 0;  // derived stream seed
  bool ok = false;
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_value = std::numeric_limits<double>::quiet_NaN();
  int dof = 0;
  std::int64_t model_calls = 0;
  std::string error;

  friend bool operator==(const ReplicationRecord&,
                         const ReplicationRecord&) = default;
};

struct RunOptions {
  std::optional<double> tau;      // cutoff proportion override (tsvd)
  std::int64_t mc_draws = 10000;  // ep-mc calibration draws
  int threads = 0;                // 0 = hardware concurrency
};

/// Result of N replicated experiments for one scenario and method.
struct ReplicationResult {
  std::string scenario;
  BenchMethod method = BenchMethod::EpTsvd;
  std::int64_t n = 0;  // model-call budget per replication
  int k_points = 0;
  std::int64_t n_replications = 0;
  std::uint64_t seed = 0;
  std::optional<double> tau;
  std::int64_t mc_draws = 0;

  std::vector<ReplicationRecord> records;  // index = replication
  std::vector<double> alpha_grid;          // 512 points, ends at 1
  std::vector<double> rejection_rate;      // ECDF of ok p-values on the grid
  std::int64_t errors = 0;
  std::int64_t model_calls = 0;
  std::optional<double> pf_limit_sd;  // Gaussian-limit scale (pf method)

  /// Fraction of successful replications with p <= alpha.
  double rejection_at(double alpha) const {
    std::int64_t count = 0, ok = 0;
    for (const ReplicationRecord& r : records) {
      if (!r.ok) continue;
      ++ok;
      if (r.p_value <= alpha) ++count;
    }
    return ok == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(ok);
  }

  friend bool operator==(const ReplicationResult&,
                         const ReplicationResult&) = default;
};

namespace detail {

/// Positions of u's indices inside v's index list (u must be nested in v).
inline SubsetMask reindex_within(const SubsetMask& u, const SubsetMask& v) {
  std::vector<int> out;
  out.reserve(u.size());
  for (int j : u.indices) {
    const auto it = std::lower_bound(v.indices.begin(), v.indices.end(), j);
    if (it == v.indices.end() || *it != j)
      throw std::invalid_argument("hypothesis: u must be a subset of v");
    out.push_back(static_cast<int>(it - v.indices.begin()));
  }
  return SubsetMask::of(static_cast<int>(v.size()), std::move(out));
}

inline ReplicationRecord run_one_replication(
    const BenchModel& model, const Hypothesis& hyp, BenchMethod method,
    std::int64_t n, int k_points, std::uint64_t master_seed, std::int64_t rep,
    const RunOptions& opts, std::optional<double> pf_limit_sd) {
  ReplicationRecord rec;
  rec.rep = rep;
  rec.stream = Rng::derive(master_seed, static_cast<std::uint64_t>(rep));
  try {
    TestReport report;
    if (method == BenchMethod::Pf) {
      // Three shared response blocks (Y, Y^u, Y^v) per hypothesis, so the
      // pick-freeze block size for an n-call budget is n/3.
      const std::int64_t block = n / 3;
      if (block < 2)
        throw std::invalid_argument("pf replication: call budget too small");
      const PickFreezePair pair = pf_generate_pair(
          model.f, model.sample_input, hyp.u, hyp.v, block, rec.stream);
      report = pf_test(pair.lower, pair.upper, pf_limit_sd);
      report.seed = rec.stream;
      rec.model_calls = pair.model_calls;
    } else {
      Rng rng(rec.stream);
      Eigen::VectorXd y(n);
      Eigen::MatrixXd x_v(n, static_cast<Eigen::Index>(hyp.v.size()));
      for (std::int64_t i = 0; i < n; ++i) {
        const Eigen::VectorXd x = model.sample_input(rng);
        y(i) = model.f(x);
        for (std::size_t j = 0; j < hyp.v.size(); ++j)
          x_v(i, static_cast<Eigen::Index>(j)) = x(hyp.v.indices[j]);
      }
      // Fresh design per replication, drawn from the input distribution and
      // restricted to the v-columns.
      Eigen::MatrixXd pts(k_points, static_cast<Eigen::Index>(hyp.v.size()));
      for (int k = 0; k < k_points; ++k) {
        const Eigen::VectorXd d = model.sample_input(rng);
        for (std::size_t j = 0; j < hyp.v.size(); ++j)
          pts(k, static_cast<Eigen::Index>(j)) = d(hyp.v.indices[j]);
      }
      const Design design(std::move(pts), Provenance::DistributionSampled,
                          rec.stream);
      const Sample sample(std::move(y), std::move(x_v));
      const SubsetMask u_local = reindex_within(hyp.u, hyp.v);
      if (method == BenchMethod::EpTsvd) {
        report = stat_normalized(sample, u_local, design, TsvdOptions{opts.tau});
      } else {
        report = ep_test_mc(sample, u_local, design, opts.mc_draws,
                            Rng::derive(rec.stream, 1));
      }
      rec.model_calls = n;
    }
    rec.ok = true;
    rec.statistic = report.statistic;
    rec.p_value = report.p_value;
    rec.dof = report.dof;
  } catch (const DegenerateTestError& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace detail

/// Run N independent replications of one hypothesis test.
///
/// Each replication draws a fresh sample and a fresh design from substream
/// `rep` of the master seed, so the result is bit-identical for a fixed seed
/// regardless of thread count. Replications that fail with a degenerate-test
/// error are recorded, not dropped.
inline ReplicationResult run_replications(const BenchModel& model,
                                          const std::string& scenario_label,
                                          const Hypothesis& hyp,
                                          BenchMethod method, std::int64_t n,
                                          int k_points, std::int64_t reps,
                                          std::uint64_t seed,
                                          const RunOptions& opts = {}) {
  if (reps < 1) throw std::invalid_argument("run_replications: need N >= 1");
  if (k_points < 1) throw std::invalid_argument("run_replications: need K >= 1");
  if (method == BenchMethod::Pf && n / 3 < 2)
    throw std::invalid_argument(
        "run_replications: pick-freeze needs a call budget of at least 6");

  ReplicationResult result;
  result.scenario = scenario_label;
  result.method = method;
  result.n = n;
  result.k_points = k_points;
  result.n_replications = reps;
  result.seed = seed;
  result.tau = opts.tau;
  result.mc_draws = method == BenchMethod::EpMc ? opts.mc_draws : 0;
  result.records.resize(static_cast<std::size_t>(reps));

  if (method == BenchMethod::Pf) {
    // Critical regions for the baseline come from the Gaussian limit; its
    // scale is estimated once from a large calibration pair, not per
    // replication, and the calibration is not charged to the call budget.
    constexpr std::int64_t kCalibrationBlocks = 200000;
    const PickFreezePair cal = pf_generate_pair(
        model.f, model.sample_input, hyp.u, hyp.v, kCalibrationBlocks,
        Rng::derive(seed, 0x9e3779b9u));
    result.pf_limit_sd = pf_gaussian_limit_sd(cal.lower, cal.upper);
  }

  int threads = opts.threads > 0
                    ? opts.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(reps));

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    try {
      for (std::int64_t r = next.fetch_add(1); r < reps; r = next.fetch_add(1))
        result.records[static_cast<std::size_t>(r)] =
            detail::run_one_replication(model, hyp, method, n, k_points, seed,
                                        r, opts, result.pf_limit_sd);
    } catch (...) {
      const std::scoped_lock lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> ok_p;
  ok_p.reserve(result.records.size());
  for (const ReplicationRecord& r : result.records) {
    result.model_calls += r.model_calls;
    if (r.ok)
      ok_p.push_back(r.p_value);
    else
      ++result.errors;
  }
  std::sort(ok_p.begin(), ok_p.end());

  constexpr int grid_size = 512;
  result.alpha_grid.resize(grid_size);
  result.rejection_rate.resize(grid_size);
  for (int g = 0; g < grid_size; ++g) {
    const double alpha = static_cast<double>(g + 1) / grid_size;
    result.alpha_grid[g] = alpha;
    const auto count = std::upper_bound(ok_p.begin(), ok_p.end(), alpha) - ok_p.begin();
    result.rejection_rate[g] =
        ok_p.empty() ? 0.0
                     : static_cast<double>(count) / static_cast<double>(ok_p.size());
  }
  return result;
}

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

}  // namespace detail

/// One tab-separated record per replication.
inline void write_records_tsv(std::ostream& os, const ReplicationResult& r) {
  os << "scenario\tmethod\tn\tK\trep\tstream\tstatus\tstatistic\tdof\tp_value\n";
  for (const ReplicationRecord& rec : r.records) {
    char stream_hex[17];
    std::snprintf(stream_hex, sizeof stream_hex, "%016llx",
                  static_cast<unsigned long long>(rec.stream));
    os << r.scenario << '\t' << to_string(r.method) << '\t' << r.n << '\t'
       << r.k_points << '\t' << rec.rep << '\t' << stream_hex << '\t'
       << (rec.ok ? "ok" : "error") << '\t'
       << detail::format_double(rec.statistic) << '\t' << rec.dof << '\t'
       << detail::format_double(rec.p_value) << '\n';
  }
}

/// Rejection rates on the alpha grid, with run metadata in '#' header lines.
inline void write_summary_tsv(std::ostream& os, const ReplicationResult& r) {
  os << "# scenario=" << r.scenario << " method=" << to_string(r.method)
     << " n=" << r.n << " K=" << r.k_points << " N=" << r.n_replications
     << " seed=" << r.seed;
  if (r.tau) os << " tau=" << detail::format_double(*r.tau);
  if (r.mc_draws > 0) os << " mc_draws=" << r.mc_draws;
  if (r.pf_limit_sd) os << " pf_limit_sd=" << detail::format_double(*r.pf_limit_sd);
  os << " errors=" << r.errors << " model_calls=" << r.model_calls << "\n";
  os << "alpha\trejection_rate\n";
  for (std::size_t g = 0; g < r.alpha_grid.size(); ++g)
    os << detail::format_double(r.alpha_grid[g]) << '\t'
       << detail::format_double(r.rejection_rate[g]) << '\n';
}

}  // namespace epsobol
