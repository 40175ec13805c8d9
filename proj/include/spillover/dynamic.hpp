#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spillover/frequency.hpp"
#include "spillover/tvpvar.hpp"

namespace spillover {

/// Connectedness at one filtered date. When `ok` is false the numbers are unset
/// and `failure` holds the reason.
struct DynamicPoint {
  YearMonth date;
  bool ok = false;
  std::string failure;
  double tsi = 0.0;
  Eigen::VectorXd net;
  std::vector<double> band_tsi;
  std::vector<Eigen::VectorXd> band_net;
  Eigen::MatrixXd fevd;  // normalized time-domain FEVD
};

struct DynamicSpillovers {
  std::vector<std::string> names;
  std::vector<FrequencyBand> bands;
  std::vector<DynamicPoint> points;
};

/// Total and per-band TSI and NET at every filtered date of `path` (prior rows skipped).
/// Dates run in parallel; a failing date becomes a gap instead of aborting.
DynamicSpillovers dynamic_spillovers(const TvpVarPath& path, int horizon, std::span<const FrequencyBand> bands,
                                     int dft_size);

/// Computes one date; shared by the parallel and reference loops.
DynamicPoint dynamic_point(const TvpVarPath& path, std::size_t index, int horizon,
                           std::span<const FrequencyBand> bands, int dft_size);

}  // namespace spillover
