// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace epsobol {

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // lambda_1 >= ... >= lambda_K
  Eigen::MatrixXd eigenvectors;  // orthogonal, column k pairs with lambda_k
};

/// Symmetric eigensolve (Eigen's self-adjoint solver, reordered descending).
/// Rejects matrices that are not symmetric to within 1e-10 of their scale.
inline SpectralDecomposition eigh(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale)
    throw std::invalid_argument("eigh: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed");
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Regularized inverse produced by the truncated-SVD filter.
struct RegularizedInverse {
  Eigen::MatrixXd gamma;  // symmetric PSD
  int rank = 0;           // eigenvalues strictly above the threshold
  double threshold = 0.0;
};

/// Apply the filter g_t (1/x above t, zero otherwise) to the spectrum.
///
/// Eigenvalues are clamped at zero first, so round-off negatives never pass
/// the strict "> t" cut. gamma is accumulated from rank-one terms, which
/// keeps it symmetric to the bit.
inline RegularizedInverse tsvd_inverse(const SpectralDecomposition& dec,
                                       double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("tsvd_inverse: t must be >= 0");
  const Eigen::Index k_points = dec.eigenvalues.size();
  RegularizedInverse out;
  out.threshold = t;
  out.gamma = Eigen::MatrixXd::Zero(k_points, k_points);
  for (Eigen::Index k = 0; k < k_points; ++k) {
    const double lambda = std::max(dec.eigenvalues(k), 0.0);
    if (lambda > t) {
      // scale the outer product entrywise so gamma stays symmetric to the bit
      out.gamma.noalias() +=
          (dec.eigenvectors.col(k) * dec.eigenvectors.col(k).transpose()) / lambda;
      ++out.rank;
    }
  }
  return out;
}

/// Vanishing proportion of the spectral radius used as the default cutoff.
inline double tau_rule(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("tau_rule: n must be >= 2");
  return 0.1 * std::pow(static_cast<double>(n), -1.0 / 3.0);
}

/// Threshold t = tau * lambda_1 for a given proportion tau.
inline double spectral_threshold(const SpectralDecomposition& dec, double tau) {
  const double lambda1 = std::max(dec.eigenvalues(0), 0.0);
  return tau * lambda1;
}

/// Default threshold t = 0.1 n^(-1/3) lambda_1. Strictly below lambda_1
/// whenever lambda_1 > 0, so at least one eigenvalue is always retained.
inline double threshold_rule(const SpectralDecomposition& dec, std::int64_t n) {
  return spectral_threshold(dec, tau_rule(n));
}

}  // namespace epsobol
