#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spillover/ingest.hpp"
#include "spillover/var.hpp"

namespace spillover {

/// Forgetting-factor Kalman filter settings.
struct TvpConfig {
  double kappa1 = 0.99;   // state covariance forgetting: P_{t|t-1} = P_{t-1} / kappa1
  double kappa2 = 0.96;   // EWMA decay of the measurement covariance
  int prior_window = 36;  // leading observations used for the OLS prior
  int lag_order = 1;
  double prior_scale = 4.0;  // P_0 = prior_scale * OLS coefficient covariance

  /// Throws std::invalid_argument when a field is out of range for an M-series system.
  void validate(Eigen::Index series) const;
};

/// Filtered coefficient and covariance path; entry p corresponds to observation r + p.
/// Entries before `first_filtered` carry the OLS prior unchanged.
struct TvpVarPath {
  std::vector<std::string> names;
  std::vector<YearMonth> dates;
  int lag_order = 1;
  std::size_t first_filtered = 0;
  TvpConfig config;
  std::vector<Eigen::VectorXd> beta;  // stacked per equation: [c_i, row i of B_1, ..., row i of B_r]
  std::vector<Eigen::MatrixXd> measurement_cov;  // S_t
  std::vector<Eigen::MatrixXd> state_cov;        // P_t

  std::size_t size() const { return beta.size(); }
};

/// Stack intercept and lag matrices equation by equation (length M (M r + 1)).
Eigen::VectorXd pack_state(const VarModel& model);
/// Inverse of pack_state; sigma is left empty.
VarModel unpack_state(const Eigen::VectorXd& state, Eigen::Index series, int lag_order,
                      std::vector<std::string> names = {});

TvpVarPath fit_tvp(const ReturnPanel& panel, const TvpConfig& config);

VarModel model_at(const TvpVarPath& path, std::size_t index);

}  // namespace spillover
