#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spillover/connectedness.hpp"
#include "spillover/var.hpp"

namespace spillover {

/// Half-open band (lower, upper] of angular frequencies in [0, pi]. The band whose
/// lower edge is 0 also owns the zero frequency.
struct FrequencyBand {
  std::string label;
  double lower = 0.0;
  double upper = 0.0;
  std::string month_range;  // human-readable cycle length, e.g. "1-4"

  bool contains(double omega) const {
    return omega == 0.0 ? lower == 0.0 : (omega > lower && omega <= upper);
  }
};

/// short (pi/4, pi], medium (pi/12, pi/4], long [0, pi/12].
std::vector<FrequencyBand> default_bands();

/// Band over cycles of `min_months`..`max_months` months using omega = pi / months
/// (so 1-4 months maps to (pi/4, pi]); max_months <= 0 means unbounded.
FrequencyBand band_from_months(std::string label, double min_months, double max_months);

/// Throws InvalidPartition unless the bands tile (0, pi] without gaps or overlap.
void validate_partition(std::span<const FrequencyBand> bands);

int default_dft_size(int horizon);

/// Spectral decomposition of the generalized FEVD on an N-point DFT grid.
/// Only k = 0..N/2 are stored; `weights` counts each conjugate pair once (2) and
/// the self-conjugate points (k = 0, k = N/2) once (1).
struct SpectralFevd {
  int horizon = 1;
  int dft_size = 0;
  std::vector<std::string> names;
  std::vector<FrequencyBand> bands;
  Eigen::VectorXd frequencies;
  Eigen::VectorXd weights;
  std::vector<int> band_of;                     // band index per stored frequency
  std::vector<Eigen::MatrixXd> contributions;   // sigma_jj^-1 |(Psi(w_k) Sigma)_ij|^2
  Eigen::VectorXd row_totals;                   // time-domain numerators summed over j
  Eigen::MatrixXd time_domain;                  // normalized time-domain FEVD
  std::vector<Eigen::MatrixXd> band_tables;     // absolute shares, sum over bands = time_domain

  const Eigen::MatrixXd& band_table(const std::string& label) const;
};

/// Parallel over the frequency grid.
SpectralFevd spectral_gfevd(const VarModel& model, int horizon, std::span<const FrequencyBand> bands,
                            int dft_size);
/// Same numbers without the OpenMP region; used inside already-parallel loops.
SpectralFevd spectral_gfevd_sequential(const VarModel& model, int horizon, std::span<const FrequencyBand> bands,
                                       int dft_size);

/// Connectedness summary of one band; denominators stay the full-spectrum row totals.
SpilloverSummary band_summary(const SpectralFevd& spectral, const std::string& label);

}  // namespace spillover
