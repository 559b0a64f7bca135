// Copyright (c) 2026 epsobol developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "epsobol/core.hpp"

namespace epsobol {

/// Spliced vector: coordinate j from x if j is in u, from x_prime otherwise.
inline Eigen::VectorXd splice(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& x_prime,
                              const SubsetMask& u) {
  if (x.size() != x_prime.size() || x.size() != u.dim)
    throw std::invalid_argument("splice: dimension mismatch");
  Eigen::VectorXd out = x_prime;
  for (int j : u.indices) out(j) = x(j);
  return out;
}

/// Estimated auto-covariance of the moment triple between two points.
///
/// Entry (a, b) is the empirical cross moment of the vector
///   V(x) = (Y 1{X <= x}, Y 1{X^(u) <= x^(u)}, 1{X^(ubar) <= x^(ubar)})
/// between x and x_prime, minus eta(x) eta(x_prime)^T. The cross moments
/// reduce to plain truncated moments at componentwise minima and spliced
/// points; the nine entries below are assembled exactly in that layout
/// (rows index V(x), columns V(x_prime); the matrix is not symmetric in
/// general, only omega(x, x') = omega(x', x)^T).
inline Eigen::Matrix3d omega_hat(const Sample& s, const SubsetMask& u,
                                 const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& x_prime) {
  const SubsetMask full = SubsetMask::full(u.dim);
  const SubsetMask ubar = u.complement();
  const Eigen::VectorXd both = x.cwiseMin(x_prime);

  const auto m2 = [&](const Eigen::VectorXd& pt) {
    return empirical_moment(s, 2, full, pt);
  };
  const auto m1 = [&](const Eigen::VectorXd& pt) {
    return empirical_moment(s, 1, full, pt);
  };

  Eigen::Matrix3d m;
  m(0, 0) = m2(both);
  m(0, 1) = m2(splice(both, x, u));
  m(0, 2) = m1(splice(x, both, u));
  m(1, 0) = m2(splice(both, x_prime, u));
  m(1, 1) = empirical_moment(s, 2, u, both);
  m(1, 2) = m1(splice(x, x_prime, u));
  m(2, 0) = m1(splice(x_prime, both, u));
  m(2, 1) = m1(splice(x_prime, x, u));
  m(2, 2) = empirical_moment(s, 0, ubar, both);

  const MomentTriple ea = eta_hat(s, u, x);
  const MomentTriple eb = eta_hat(s, u, x_prime);
  const Eigen::Vector3d ea_v(ea.m1, ea.m1_u, ea.m0_ubar);
  const Eigen::Vector3d eb_v(eb.m1, eb.m1_u, eb.m0_ubar);
  return m - ea_v * eb_v.transpose();
}

/// Moment triples, delta-method gradients and the projected K x K covariance
/// for one design.
struct CovarianceBundle {
  std::vector<MomentTriple> eta;  // K entries
  Eigen::MatrixXd gradients;      // K x 3, row k = grad phi at eta(x_k)
  Eigen::MatrixXd sigma;          // K x K, exactly symmetric by assembly
};

/// Covariance of the process values at the design points.
///
/// sigma[k,k'] = g_k^T omega(x_k, x_k') g_k' with g_k the gradient of
/// phi(s,t,w) = s - t*w at eta(x_k), i.e. (1, -m0_ubar, -m1_u). Only the
/// upper triangle is computed; the lower is the same value, so the stored
/// matrix is symmetric to the bit. Small negative eigenvalues from round-off
/// are left in place; consumers clamp.
inline CovarianceBundle sigma_hat(const Sample& s, const SubsetMask& u,
                                  const Design& design) {
  if (design.p() != s.p())
    throw std::invalid_argument("sigma_hat: design dimension mismatch");
  const Eigen::Index k_points = design.k_points();

  CovarianceBundle out;
  out.eta.reserve(static_cast<std::size_t>(k_points));
  out.gradients.resize(k_points, 3);
  for (Eigen::Index k = 0; k < k_points; ++k) {
    const MomentTriple e = eta_hat(s, u, design.points.row(k).transpose());
    out.eta.push_back(e);
    out.gradients(k, 0) = 1.0;
    out.gradients(k, 1) = -e.m0_ubar;
    out.gradients(k, 2) = -e.m1_u;
  }

  out.sigma.resize(k_points, k_points);
  for (Eigen::Index k = 0; k < k_points; ++k) {
    for (Eigen::Index l = k; l < k_points; ++l) {
      const Eigen::Matrix3d w =
          omega_hat(s, u, design.points.row(k).transpose(),
                    design.points.row(l).transpose());
      const double v = out.gradients.row(k) * w * out.gradients.row(l).transpose();
      out.sigma(k, l) = v;
      out.sigma(l, k) = v;
    }
  }
  return out;
}

/// Process values (xi(x_1), ..., xi(x_K)) for a design.
inline Eigen::VectorXd xi_on_design(const Sample& s, const SubsetMask& u,
                                    const Design& design) {
  Eigen::VectorXd xi(design.k_points());
  for (Eigen::Index k = 0; k < design.k_points(); ++k)
    xi(k) = xi_hat(s, u, design.points.row(k).transpose());
  return xi;
}

}  // namespace epsobol
