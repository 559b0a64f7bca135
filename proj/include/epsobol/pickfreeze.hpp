// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>

#include "epsobol/core.hpp"
#include "epsobol/covariance.hpp"
#include "epsobol/testing.hpp"

namespace epsobol {

using ModelFn = std::function<double(const Eigen::VectorXd&)>;
using SamplerFn = std::function<Eigen::VectorXd(Rng&)>;

inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

/// Paired responses (Y_i, Y_i^u): Y from the base input, Y^u from the input
/// with the u-block frozen and the remaining coordinates resampled.
struct PickFreezeSample {
  Eigen::VectorXd y;
  Eigen::VectorXd y_pf;
  std::int64_t model_calls = 0;

  Eigen::Index n() const { return y.size(); }
};

/// Generate a pick-freeze design: X_i and X'_i independent, Y_i = f(X_i),
/// Y_i^u = f(Z_i) with Z_i^(u) = X_i^(u), Z_i^(ubar) = X'_i^(ubar).
/// Costs 2n model evaluations.
inline PickFreezeSample pf_generate(const ModelFn& model,
                                    const SamplerFn& sampler,
                                    const SubsetMask& u, std::int64_t n,
                                    std::uint64_t seed) {
  Rng rng(seed);
  PickFreezeSample out;
  out.y.resize(n);
  out.y_pf.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const Eigen::VectorXd x = sampler(rng);
    const Eigen::VectorXd x_prime = sampler(rng);
    out.y(i) = model(x);
    out.y_pf(i) = model(splice(x, x_prime, u));
  }
  out.model_calls = 2 * n;
  return out;
}

/// Pick-freeze samples for two nested subsets u within v, sharing the base
/// responses and the resampling block, so the two index estimators have an
/// estimable joint law. Costs 3n model evaluations.
struct PickFreezePair {
  PickFreezeSample lower;  // for u
  PickFreezeSample upper;  // for v
  std::int64_t model_calls = 0;
};

inline PickFreezePair pf_generate_pair(const ModelFn& model,
                                       const SamplerFn& sampler,
                                       const SubsetMask& u, const SubsetMask& v,
                                       std::int64_t n, std::uint64_t seed) {
  for (int j : u.indices)
    if (!v.contains(j))
      throw std::invalid_argument("pf_generate_pair: u must be a subset of v");
  Rng rng(seed);
  PickFreezePair out;
  out.lower.y.resize(n);
  out.lower.y_pf.resize(n);
  out.upper.y_pf.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const Eigen::VectorXd x = sampler(rng);
    const Eigen::VectorXd x_prime = sampler(rng);
    out.lower.y(i) = model(x);
    out.lower.y_pf(i) = model(splice(x, x_prime, u));
    out.upper.y_pf(i) = model(splice(x, x_prime, v));
  }
  out.upper.y = out.lower.y;
  out.lower.model_calls = 2 * n;
  out.upper.model_calls = 2 * n;
  out.model_calls = 3 * n;  // base block shared between the two samples
  return out;
}

namespace detail {

/// First and second moments the ratio estimator is built from.
struct PfMoments {
  double cross = 0.0;   // mean Y Y^u
  double mean = 0.0;    // mean (Y + Y^u)/2
  double square = 0.0;  // mean (Y^2 + (Y^u)^2)/2
  double denom = 0.0;   // square - mean^2
};

inline PfMoments pf_moments(const PickFreezeSample& pf) {
  const auto n = static_cast<double>(pf.n());
  PfMoments m;
  m.cross = pf.y.dot(pf.y_pf) / n;
  m.mean = 0.5 * (pf.y.sum() + pf.y_pf.sum()) / n;
  m.square = 0.5 * (pf.y.squaredNorm() + pf.y_pf.squaredNorm()) / n;
  m.denom = m.square - m.mean * m.mean;
  return m;
}

/// Per-pair influence values of the ratio estimator (delta method around the
/// three moment averages). Their empirical mean is zero by construction.
inline Eigen::VectorXd pf_influence(const PickFreezeSample& pf,
                                    const PfMoments& m) {
  const double d = m.denom;
  const double dc = 1.0 / d;
  const double dm = 2.0 * m.mean * (m.cross - m.square) / (d * d);
  const double ds = -(m.cross - m.mean * m.mean) / (d * d);
  Eigen::VectorXd psi(pf.n());
  for (Eigen::Index i = 0; i < pf.n(); ++i) {
    const double a = pf.y(i);
    const double b = pf.y_pf(i);
    psi(i) = dc * (a * b - m.cross) + dm * (0.5 * (a + b) - m.mean) +
             ds * (0.5 * (a * a + b * b) - m.square);
  }
  return psi;
}

}  // namespace detail

/// Symmetrized pick-freeze estimate of the Sobol index of the frozen block:
///   (mean Y Y^u - mean^2) / (mean (Y^2+(Y^u)^2)/2 - mean^2)
/// with mean = mean (Y+Y^u)/2. Never exceeds 1. Errors on constant output.
inline double pf_estimate(const PickFreezeSample& pf) {
  if (pf.n() < 2 || pf.y_pf.size() != pf.n())
    throw std::invalid_argument("pf_estimate: need n >= 2 paired responses");
  const detail::PfMoments m = detail::pf_moments(pf);
  if (m.denom <= 1e-12 * (1.0 + std::abs(m.square)))
    throw DegenerateTestError("pf_estimate: output variance is zero");
  return (m.cross - m.mean * m.mean) / m.denom;
}

/// Gaussian-limit scale of sqrt(n)(S_v - S_u) treating the two estimators as
/// independent: sqrt of the summed influence-term variances. Evaluated on a
/// large calibration pair it approximates the scale the limit law prescribes.
inline double pf_gaussian_limit_sd(const PickFreezeSample& pf_u,
                                   const PickFreezeSample& pf_v) {
  const detail::PfMoments mu = detail::pf_moments(pf_u);
  const detail::PfMoments mv = detail::pf_moments(pf_v);
  const double n = static_cast<double>(pf_u.n());
  return std::sqrt((detail::pf_influence(pf_u, mu).squaredNorm() +
                    detail::pf_influence(pf_v, mv).squaredNorm()) /
                   n);
}

/// One-sided test of S^(u) = S^(v) against S^(u) < S^(v) for u within v.
///
/// Both samples must share the base responses (pf_generate_pair). The
/// difference of the two index estimators is studentized and compared to the
/// standard Gaussian upper tail. By default the scale is the empirical
/// standard deviation of the per-pair influence terms of the difference;
/// pass `asymptotic_sd` (e.g. from pf_gaussian_limit_sd on a calibration
/// run) to use a fixed limit-law scale instead, which is how the benchmark
/// comparison evaluates the baseline.
inline TestReport pf_test(const PickFreezeSample& pf_u,
                          const PickFreezeSample& pf_v,
                          std::optional<double> asymptotic_sd = {}) {
  if (pf_u.n() != pf_v.n())
    throw std::invalid_argument("pf_test: sample sizes differ");
  if ((pf_u.y.array() != pf_v.y.array()).any())
    throw std::invalid_argument("pf_test: samples do not share base responses");
  const auto n = static_cast<double>(pf_u.n());

  const detail::PfMoments mu = detail::pf_moments(pf_u);
  const detail::PfMoments mv = detail::pf_moments(pf_v);
  const double scale_u = 1e-12 * (1.0 + std::abs(mu.square));
  const double scale_v = 1e-12 * (1.0 + std::abs(mv.square));
  if (mu.denom <= scale_u || mv.denom <= scale_v)
    throw DegenerateTestError("pf_test: output variance is zero");

  const double s_u = (mu.cross - mu.mean * mu.mean) / mu.denom;
  const double s_v = (mv.cross - mv.mean * mv.mean) / mv.denom;
  const double diff = s_v - s_u;

  double sd = 0.0;
  if (asymptotic_sd) {
    if (!(*asymptotic_sd > 0.0))
      throw std::invalid_argument("pf_test: asymptotic sd must be positive");
    sd = *asymptotic_sd;
  } else {
    const Eigen::VectorXd delta =
        detail::pf_influence(pf_v, mv) - detail::pf_influence(pf_u, mu);
    sd = std::sqrt(delta.squaredNorm() / n);
  }

  double z = 0.0;
  if (sd > 0.0) {
    z = std::sqrt(n) * diff / sd;
  } else if (diff != 0.0) {
    throw DegenerateTestError("pf_test: degenerate variance of the difference");
  }

  TestReport report;
  report.method = TestMethod::PfGaussian;
  report.statistic = z;
  report.p_value = 1.0 - normal_cdf(z);
  return report;
}

}  // namespace epsobol
