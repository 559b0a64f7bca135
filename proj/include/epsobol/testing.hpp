// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epsobol/core.hpp"
#include "epsobol/covariance.hpp"
#include "epsobol/spectrum.hpp"

namespace epsobol {

enum class TestMethod { McWeightedChi2, TsvdChi2, PfGaussian };

inline const char* to_string(TestMethod m) {
  switch (m) {
    case TestMethod::McWeightedChi2: return "mc-weighted-chi2";
    case TestMethod::TsvdChi2: return "tsvd-chi2";
    case TestMethod::PfGaussian: return "pf-gaussian";
  }
  return "?";
}

/// Outcome of one significance test, with the metadata needed to rerun it.
struct TestReport {
  TestMethod method = TestMethod::TsvdChi2;
  double statistic = 0.0;
  double p_value = 0.0;
  int dof = 0;                   // chi-square degrees of freedom (tsvd)
  std::vector<double> weights;   // eigenvalue weights (mc), descending
  std::int64_t mc_draws = 0;     // mc only
  std::uint64_t seed = 0;
  std::string design_digest;
  int k_points = 0;
  double tau = 0.0;        // spectral cutoff proportion (tsvd)
  double threshold = 0.0;  // t = tau * lambda_1 (tsvd)

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

/// Chi-square CDF: regularized lower incomplete gamma P(dof/2, x/2).
inline double chi2_cdf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi2_cdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(0.5 * dof, 0.5 * x);
}

/// Euclidean-norm statistic T = n * sum_k xi(x_k)^2.
inline double stat_euclidean(const Sample& s, const SubsetMask& u,
                             const Design& design) {
  const Eigen::VectorXd xi = xi_on_design(s, u, design);
  return static_cast<double>(s.n()) * xi.squaredNorm();
}

/// Draws of the quadratic form e^T sigma e, e standard normal. The null law
/// of the Euclidean statistic is approximated by these draws.
/// Throws if sigma is not PSD beyond round-off tolerance.
inline std::vector<double> weighted_chi2_draws(const Eigen::MatrixXd& sigma,
                                               std::int64_t draws,
                                               std::uint64_t seed) {
  if (draws < 1000)
    throw std::invalid_argument("weighted_chi2_draws: need draws >= 1000");
  const SpectralDecomposition dec = eigh(sigma);
  const double lambda_max = std::max(dec.eigenvalues(0), 0.0);
  if (dec.eigenvalues.minCoeff() < -1e-8 * (1.0 + lambda_max))
    throw std::invalid_argument("weighted_chi2_draws: sigma is not PSD");
  const Eigen::Index k_points = sigma.rows();
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(draws));
  Eigen::VectorXd eps(k_points);
  for (auto& q : out) {
    for (Eigen::Index k = 0; k < k_points; ++k) eps(k) = rng.normal();
    q = eps.dot(sigma * eps);
  }
  return out;
}

/// Monte-Carlo p-value (1 + #{q_b >= statistic}) / (B + 1); never exactly 0.
inline double pvalue_weighted_chi2(double statistic,
                                   const Eigen::MatrixXd& sigma,
                                   std::int64_t draws, std::uint64_t seed) {
  const std::vector<double> qs = weighted_chi2_draws(sigma, draws, seed);
  std::int64_t count = 0;
  for (double q : qs)
    if (q >= statistic) ++count;
  return static_cast<double>(1 + count) / static_cast<double>(draws + 1);
}

/// Monte-Carlo quantile of the e^T sigma e law (order statistic at
/// ceil(prob * draws)).
inline double weighted_chi2_quantile(const Eigen::MatrixXd& sigma, double prob,
                                     std::int64_t draws, std::uint64_t seed) {
  if (!(prob > 0.0 && prob < 1.0))
    throw std::invalid_argument("weighted_chi2_quantile: prob in (0,1)");
  std::vector<double> qs = weighted_chi2_draws(sigma, draws, seed);
  const auto idx = static_cast<std::size_t>(
      std::min<double>(std::ceil(prob * static_cast<double>(draws)),
                       static_cast<double>(draws)) - 1.0);
  std::nth_element(qs.begin(), qs.begin() + static_cast<std::ptrdiff_t>(idx),
                   qs.end());
  return qs[idx];
}

namespace detail {

/// Normalized statistic n * xi^T gamma xi and its chi-square(rank) p-value.
inline std::pair<double, double> normalized_stat_pvalue(
    const Eigen::VectorXd& xi, const Eigen::MatrixXd& gamma, int rank,
    std::int64_t n) {
  double t = static_cast<double>(n) * xi.dot(gamma * xi);
  t = std::max(t, 0.0);  // PSD form; round-off can dip microscopically below 0
  return {t, 1.0 - chi2_cdf(t, rank)};
}

}  // namespace detail

/// Options for the regularized test.
struct TsvdOptions {
  std::optional<double> tau;  // cutoff proportion; default 0.1 n^(-1/3)
};

/// TSVD-normalized test: T = n xi^T gamma xi compared to chi-square(r).
///
/// gamma is the truncated-SVD inverse of the estimated covariance at the
/// design points with threshold t = tau * lambda_1. Rank zero (a degenerate
/// sample with no variance at any design point) is an error, never a silent
/// p-value.
inline TestReport stat_normalized(const Sample& s, const SubsetMask& u,
                                  const Design& design,
                                  const TsvdOptions& opts = {}) {
  const CovarianceBundle bundle = sigma_hat(s, u, design);
  const SpectralDecomposition dec = eigh(bundle.sigma);
  const double tau = opts.tau.value_or(tau_rule(s.n()));
  const double t = spectral_threshold(dec, tau);
  const RegularizedInverse inv = tsvd_inverse(dec, t);
  if (inv.rank == 0)
    throw DegenerateTestError(
        "tsvd test: regularized covariance has rank 0 (degenerate sample)");
  const Eigen::VectorXd xi = xi_on_design(s, u, design);
  const auto [stat, p] = detail::normalized_stat_pvalue(xi, inv.gamma, inv.rank, s.n());

  TestReport report;
  report.method = TestMethod::TsvdChi2;
  report.statistic = stat;
  report.p_value = p;
  report.dof = inv.rank;
  report.seed = design.seed;
  report.design_digest = design.digest();
  report.k_points = static_cast<int>(design.k_points());
  report.tau = tau;
  report.threshold = t;
  return report;
}

/// Euclidean statistic with Monte-Carlo calibration against the estimated
/// weighted-chi-square null law.
inline TestReport ep_test_mc(const Sample& s, const SubsetMask& u,
                             const Design& design, std::int64_t draws,
                             std::uint64_t seed) {
  const double stat = stat_euclidean(s, u, design);
  const CovarianceBundle bundle = sigma_hat(s, u, design);
  const SpectralDecomposition dec = eigh(bundle.sigma);

  TestReport report;
  report.method = TestMethod::McWeightedChi2;
  report.statistic = stat;
  report.p_value = pvalue_weighted_chi2(stat, bundle.sigma, draws, seed);
  report.weights.assign(dec.eigenvalues.data(),
                        dec.eigenvalues.data() + dec.eigenvalues.size());
  report.mc_draws = draws;
  report.seed = seed;
  report.design_digest = design.digest();
  report.k_points = static_cast<int>(design.k_points());
  return report;
}

}  // namespace epsobol
