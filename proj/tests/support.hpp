#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spillover/var.hpp"

namespace spillover::testing {

/// Random stable VAR(r) with companion spectral radius drawn from [0.2, 0.9] and SPD sigma.
inline VarModel random_stable_var(int m, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::uniform_real_distribution<double> target_radius(0.2, 0.9);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> lags;
  for (int i = 0; i < r; ++i) {
    Eigen::MatrixXd b(m, m);
    for (int a = 0; a < m; ++a)
      for (int c = 0; c < m; ++c) b(a, c) = unif(rng);
    lags.push_back(b);
  }
  Eigen::MatrixXd l(m, m);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c) l(a, c) = normal(rng);
  Eigen::MatrixXd sigma = l * l.transpose() + 0.1 * Eigen::MatrixXd::Identity(m, m);
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  auto model = make_var(lags, sigma);
  const double radius = is_stable(model).spectral_radius;
  if (radius > 0) {
    // scaling lag i by c^i scales every companion eigenvalue by c
    const double c = target_radius(rng) / radius;
    double ci = 1.0;
    for (auto& b : model.lags) {
      ci *= c;
      b *= ci;
    }
  }
  return model;
}

inline Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd x(2, 2);
  x << a, b, c, d;
  return x;
}

}  // namespace spillover::testing
