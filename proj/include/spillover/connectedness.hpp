#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spillover/var.hpp"

namespace spillover {

/// Generalized forecast-error variance decomposition at horizon H.
/// raw(i, j): share of i's H-step variance due to shocks in j; normalized rows sum to 1.
struct FevdTable {
  int horizon = 1;
  std::vector<std::string> names;
  Eigen::MatrixXd raw;
  Eigen::MatrixXd normalized;
};

/// Connectedness measures in percent. npdc(i, j) = 100 (l_ij - l_ji) > 0 means j is a net transmitter to i.
struct SpilloverSummary {
  std::optional<std::string> band;
  std::vector<std::string> names;
  double tsi = 0.0;
  Eigen::VectorXd to;
  Eigen::VectorXd from;
  Eigen::VectorXd net;
  Eigen::MatrixXd npdc;
  Eigen::MatrixXd table;  // 100 * l, the block printed in spillover tables
};

inline constexpr int kDefaultHorizon = 12;

FevdTable gfevd(const VarModel& model, int horizon = kDefaultHorizon);

/// Summary of an already normalized (or band) share matrix.
SpilloverSummary summarize_shares(const Eigen::MatrixXd& shares, std::vector<std::string> names,
                                  std::optional<std::string> band = std::nullopt);

SpilloverSummary spillover_summary(const FevdTable& fevd);

}  // namespace spillover
