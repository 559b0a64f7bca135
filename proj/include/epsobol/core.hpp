// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "epsobol/rng.hpp"

namespace epsobol {

/// Thrown when a test cannot be carried out on the given data (e.g. the
/// regularized covariance has rank zero, or a variance estimate degenerates).
class DegenerateTestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset u of the input coordinates {0, ..., dim-1}, kept sorted.
///
/// The empty subset is allowed (its indicator is identically one, so the
/// hypothesis S = 0 runs through the same code path). The full subset is
/// valid for moment evaluation but vacuous as a test hypothesis; use
/// hypothesis() where a non-degenerate null is required.
struct SubsetMask {
  int dim = 0;
  std::vector<int> indices;  // sorted, unique, values in [0, dim)

  static SubsetMask of(int dim, std::vector<int> idx) {
    if (dim < 1) throw std::invalid_argument("SubsetMask: dim must be >= 1");
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
      throw std::invalid_argument("SubsetMask: duplicate index");
    if (!idx.empty() && (idx.front() < 0 || idx.back() >= dim))
      throw std::invalid_argument("SubsetMask: index out of range");
    return SubsetMask{dim, std::move(idx)};
  }

  /// A mask intended as the null-hypothesis subset. The full set is refused:
  /// with u = {0..dim-1} the process m1 - m1_u * m0_ubar vanishes identically
  /// and the test is vacuous.
  static SubsetMask hypothesis(int dim, std::vector<int> idx) {
    SubsetMask m = of(dim, std::move(idx));
    if (m.is_full())
      throw std::invalid_argument(
          "SubsetMask: vacuous hypothesis (u equals the full index set)");
    return m;
  }

  static SubsetMask empty(int dim) { return of(dim, {}); }

  static SubsetMask full(int dim) {
    std::vector<int> idx(static_cast<std::size_t>(dim));
    std::iota(idx.begin(), idx.end(), 0);
    return SubsetMask{dim, std::move(idx)};
  }

  SubsetMask complement() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(dim) - indices.size());
    std::size_t k = 0;
    for (int j = 0; j < dim; ++j) {
      if (k < indices.size() && indices[k] == j)
        ++k;
      else
        out.push_back(j);
    }
    return SubsetMask{dim, std::move(out)};
  }

  bool contains(int j) const {
    return std::binary_search(indices.begin(), indices.end(), j);
  }

  bool is_empty() const { return indices.empty(); }
  bool is_full() const { return static_cast<int>(indices.size()) == dim; }
  std::size_t size() const { return indices.size(); }

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
};

/// n observations of (Y, X_1..X_p). Row i of x is the input vector X_i.
///
/// The columns of x are assumed statistically independent; this is a
/// precondition of the method and is not verified here.
struct Sample {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;

  Sample(Eigen::VectorXd y_in, Eigen::MatrixXd x_in)
      : y(std::move(y_in)), x(std::move(x_in)) {
    if (y.size() != x.rows())
      throw std::invalid_argument("Sample: y and x row counts differ");
    if (x.rows() < 2) throw std::invalid_argument("Sample: need n >= 2");
    if (x.cols() < 1) throw std::invalid_argument("Sample: need p >= 1");
    if (!y.allFinite() || !x.allFinite())
      throw std::invalid_argument("Sample: non-finite entry");
  }

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }
};

enum class Provenance { UserSupplied, UniformBox, DistributionSampled };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::UserSupplied: return "user-supplied";
    case Provenance::UniformBox: return "uniform-box";
    case Provenance::DistributionSampled: return "distribution-sampled";
  }
  return "?";
}

/// FNV-1a 64-bit over a byte range.
inline std::uint64_t fnv1a64(const void* data, std::size_t nbytes,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* b = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < nbytes; ++i) {
    h ^= b[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

/// K evaluation points in R^p, chosen independently of the sample.
struct Design {
  Eigen::MatrixXd points;  // K x p, row k = x_k
  Provenance provenance = Provenance::UserSupplied;
  std::uint64_t seed = 0;

  explicit Design(Eigen::MatrixXd pts,
                  Provenance prov = Provenance::UserSupplied,
                  std::uint64_t seed_in = 0)
      : points(std::move(pts)), provenance(prov), seed(seed_in) {
    if (points.rows() < 1) throw std::invalid_argument("Design: need K >= 1");
    if (points.cols() < 1) throw std::invalid_argument("Design: need p >= 1");
    if (!points.allFinite())
      throw std::invalid_argument("Design: non-finite entry");
  }

  Eigen::Index k_points() const { return points.rows(); }
  Eigen::Index p() const { return points.cols(); }

  /// K points uniform on the box [lo, hi] (per coordinate), seeded.
  static Design uniform_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                            int k_points, std::uint64_t seed) {
    if (lo.size() != hi.size())
      throw std::invalid_argument("Design: lo/hi size mismatch");
    if ((hi.array() < lo.array()).any())
      throw std::invalid_argument("Design: hi < lo");
    Rng rng(seed);
    Eigen::MatrixXd pts(k_points, lo.size());
    for (Eigen::Index k = 0; k < pts.rows(); ++k)
      for (Eigen::Index j = 0; j < pts.cols(); ++j)
        pts(k, j) = rng.uniform(lo(j), hi(j));
    return Design(std::move(pts), Provenance::UniformBox, seed);
  }

  /// K distinct rows of `x`, drawn without replacement. The rows are draws
  /// from the input distribution, so the design is tagged as sampled from it.
  static Design from_rows_of(const Eigen::MatrixXd& x, int k_points,
                             std::uint64_t seed) {
    const auto n = static_cast<std::uint64_t>(x.rows());
    if (static_cast<std::uint64_t>(k_points) > n)
      throw std::invalid_argument("Design: K exceeds the number of sample rows");
    Rng rng(seed);
    std::vector<std::uint64_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Eigen::MatrixXd pts(k_points, x.cols());
    for (int k = 0; k < k_points; ++k) {
      const std::uint64_t r = k + rng.uniform_index(n - k);
      std::swap(idx[k], idx[r]);
      pts.row(k) = x.row(static_cast<Eigen::Index>(idx[k]));
    }
    return Design(std::move(pts), Provenance::DistributionSampled, seed);
  }

  /// Hash of the point set (dimensions plus raw double bits), for reports.
  std::string digest() const {
    std::uint64_t h = fnv1a64("design", 6);
    const std::int64_t dims[2] = {points.rows(), points.cols()};
    h = fnv1a64(dims, sizeof dims, h);
    for (Eigen::Index k = 0; k < points.rows(); ++k)
      for (Eigen::Index j = 0; j < points.cols(); ++j) {
        const double v = points(k, j);
        h = fnv1a64(&v, sizeof v, h);
      }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
  }
};

/// (m1(x), m1_u(x), m0_ubar(x)) evaluated at one design point.
struct MomentTriple {
  double m1 = 0.0;
  double m1_u = 0.0;
  double m0_ubar = 0.0;
};

/// Empirical truncated moment (1/n) sum_i Y_i^k 1{X_i^(u) <= x^(u)}.
///
/// The indicator compares non-strictly (<=) on raw floating values, no
/// tolerance; for u empty it is identically one.
inline double empirical_moment(const Sample& s, int k, const SubsetMask& u,
                               const Eigen::VectorXd& x) {
  if (k < 0 || k > 2)
    throw std::invalid_argument("empirical_moment: k must be in {0,1,2}");
  if (u.dim != s.p())
    throw std::invalid_argument("empirical_moment: mask dimension mismatch");
  if (x.size() != s.p())
    throw std::invalid_argument("empirical_moment: point dimension mismatch");
  const Eigen::Index n = s.n();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool inside = true;
    for (int j : u.indices) {
      if (!(s.x(i, j) <= x(j))) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    switch (k) {
      case 0: acc += 1.0; break;
      case 1: acc += s.y(i); break;
      default: acc += s.y(i) * s.y(i); break;
    }
  }
  return acc / static_cast<double>(n);
}

/// The triple (m1, m1_u, m0_ubar) at x.
inline MomentTriple eta_hat(const Sample& s, const SubsetMask& u,
                            const Eigen::VectorXd& x) {
  return MomentTriple{empirical_moment(s, 1, SubsetMask::full(u.dim), x),
                      empirical_moment(s, 1, u, x),
                      empirical_moment(s, 0, u.complement(), x)};
}

/// Empirical process value xi(x) = m1(x) - m1_u(x) * m0_ubar(x).
///
/// Identically zero in population exactly when the Sobol index of the
/// u-coordinates equals the full index; the finite-sample value fluctuates
/// around zero under that null.
inline double xi_hat(const Sample& s, const SubsetMask& u,
                     const Eigen::VectorXd& x) {
  const MomentTriple e = eta_hat(s, u, x);
  return e.m1 - e.m1_u * e.m0_ubar;
}

}  // namespace epsobol
