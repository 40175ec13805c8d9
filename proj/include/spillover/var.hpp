#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spillover/ingest.hpp"

namespace spillover {

/// y_t = c + sum_{i=1..r} B_i y_{t-i} + e_t,  e_t ~ N(0, sigma).
struct VarModel {
  Eigen::VectorXd intercept;
  std::vector<Eigen::MatrixXd> lags;  // B_1..B_r
  Eigen::MatrixXd sigma;
  std::vector<std::string> names;

  int lag_order() const { return static_cast<int>(lags.size()); }
  Eigen::Index dimension() const { return sigma.rows(); }

  /// Shape and symmetry checks; throws std::invalid_argument.
  void validate() const;
};

/// Build a model from coefficients; names default to y1..yM.
VarModel make_var(std::vector<Eigen::MatrixXd> lags, Eigen::MatrixXd sigma, Eigen::VectorXd intercept = {},
                  std::vector<std::string> names = {});

struct OlsVarFit {
  VarModel model;
  Eigen::MatrixXd xtx_inverse;  // (M r + 1)^2, regressor order [1, y_{t-1}', ..., y_{t-r}']
  Eigen::MatrixXd residuals;
  Eigen::Index observations = 0;
};

/// Equation-by-equation OLS on rows [first_row, end) of `data` (lags reach back before first_row).
OlsVarFit fit_ols_rows(const Eigen::MatrixXd& data, int lag_order, Eigen::Index first_row, Eigen::Index end_row,
                       std::vector<std::string> names = {});

VarModel fit_ols(const ReturnPanel& panel, int lag_order);

/// AIC = ln det(ML sigma) + 2 (r M^2 + M) / T_eff on the common sample; ties go to the smaller r.
int select_lag_aic(const ReturnPanel& panel, int max_lag = 4);

struct Stability {
  bool stable = false;
  double spectral_radius = 0.0;
};

Eigen::MatrixXd companion_matrix(const VarModel& model);
Stability is_stable(const VarModel& model);

/// A_0 = I, A_h = sum_{i=1..min(h,r)} B_i A_{h-i}, for h = 0..horizon-1.
std::vector<Eigen::MatrixXd> vma_coefficients(const VarModel& model, int horizon);

/// Gaussian simulation with `burn_in` discarded draws; identical output for identical seeds.
ReturnPanel simulate(const VarModel& model, Eigen::Index observations, std::uint64_t seed, int burn_in = 500);

}  // namespace spillover
