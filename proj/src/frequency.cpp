#include "spillover/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spillover/error.hpp"

namespace spillover {

namespace {

using std::numbers::pi;

std::string months_label(double min_months, double max_months) {
  auto fmt = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  return fmt(min_months) + "-" + (max_months > 0 ? fmt(max_months) : std::string("inf"));
}

SpectralFevd spectral_impl(const VarModel& model, int horizon, std::span<const FrequencyBand> bands, int dft_size,
                           bool parallel) {
  if (horizon < 1) throw std::invalid_argument("spectral_gfevd: horizon must be positive");
  if (dft_size < 2 * horizon)
    throw Error(ErrorCode::DftTooSmall, "N=" + std::to_string(dft_size) + " < 2H=" + std::to_string(2 * horizon));
  validate_partition(bands);
  if (!is_stable(model).stable) throw Error(ErrorCode::UnstableModel, "companion spectral radius >= 1");
  const Eigen::Index m = model.dimension();
  const Eigen::VectorXd sigma_diag = model.sigma.diagonal();
  for (Eigen::Index j = 0; j < m; ++j)
    if (!(sigma_diag(j) > 0.0)) throw Error(ErrorCode::ZeroVariance, "sigma_jj <= 0 for j=" + std::to_string(j));
  const Eigen::VectorXd inv_sigma = sigma_diag.cwiseInverse();

  // C_h = A_h Sigma
  const auto a = vma_coefficients(model, horizon);
  std::vector<Eigen::MatrixXd> c;
  c.reserve(a.size());
  Eigen::MatrixXd numerator = Eigen::MatrixXd::Zero(m, m);
  for (const auto& ah : a) {
    c.push_back(ah * model.sigma);
    numerator += c.back().cwiseAbs2();
  }
  numerator = numerator * inv_sigma.asDiagonal();

  SpectralFevd out;
  out.horizon = horizon;
  out.dft_size = dft_size;
  out.names = model.names;
  out.bands.assign(bands.begin(), bands.end());
  out.row_totals = numerator.rowwise().sum();
  out.time_domain = out.row_totals.cwiseInverse().asDiagonal() * numerator;

  const int half = dft_size / 2;
  const int stored = half + 1;
  out.frequencies.resize(stored);
  out.weights.resize(stored);
  out.band_of.resize(static_cast<std::size_t>(stored));
  out.contributions.assign(static_cast<std::size_t>(stored), Eigen::MatrixXd());
  for (int k = 0; k < stored; ++k) {
    const double omega = 2.0 * pi * k / dft_size;
    out.frequencies(k) = omega;
    out.weights(k) = (k == 0 || (dft_size % 2 == 0 && k == half)) ? 1.0 : 2.0;
    const auto it = std::find_if(bands.begin(), bands.end(), [&](const FrequencyBand& b) { return b.contains(omega); });
    out.band_of[static_cast<std::size_t>(k)] = static_cast<int>(it - bands.begin());
  }

  // Psi(w_k) Sigma = sum_h C_h exp(-i w_k h)
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < stored; ++k) {
    Eigen::MatrixXd re = Eigen::MatrixXd::Zero(m, m), im = Eigen::MatrixXd::Zero(m, m);
    for (int h = 0; h < horizon; ++h) {
      // exact phase index keeps the grid periodic in h
      const double angle = 2.0 * pi * static_cast<double>((static_cast<long>(k) * h) % dft_size) / dft_size;
      re.noalias() += std::cos(angle) * c[static_cast<std::size_t>(h)];
      im.noalias() -= std::sin(angle) * c[static_cast<std::size_t>(h)];
    }
    out.contributions[static_cast<std::size_t>(k)] = (re.cwiseAbs2() + im.cwiseAbs2()) * inv_sigma.asDiagonal();
  }

  const Eigen::VectorXd row_scale = out.row_totals.cwiseInverse() / static_cast<double>(dft_size);
  out.band_tables.assign(bands.size(), Eigen::MatrixXd::Zero(m, m));
  for (int k = 0; k < stored; ++k)
    out.band_tables[static_cast<std::size_t>(out.band_of[static_cast<std::size_t>(k)])] +=
        out.weights(k) * out.contributions[static_cast<std::size_t>(k)];
  for (auto& t : out.band_tables) t = row_scale.asDiagonal() * t;
  return out;
}

}  // namespace

std::vector<FrequencyBand> default_bands() {
  return {{"short", pi / 4.0, pi, "1-4"}, {"medium", pi / 12.0, pi / 4.0, "4-12"}, {"long", 0.0, pi / 12.0, "12-inf"}};
}

FrequencyBand band_from_months(std::string label, double min_months, double max_months) {
  if (!(min_months >= 1.0) || (max_months > 0 && !(max_months > min_months)))
    throw Error(ErrorCode::InvalidPartition, "band '" + label + "': need 1 <= min_months < max_months");
  const double upper = pi / min_months;
  const double lower = max_months > 0 ? pi / max_months : 0.0;
  return {std::move(label), lower, upper, months_label(min_months, max_months)};
}

void validate_partition(std::span<const FrequencyBand> bands) {
  if (bands.empty()) throw Error(ErrorCode::InvalidPartition, "no bands");
  std::vector<FrequencyBand> sorted(bands.begin(), bands.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lower < b.lower; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& b = sorted[i];
    if (!(b.lower >= 0.0 && b.lower < b.upper && b.upper <= pi))
      throw Error(ErrorCode::InvalidPartition, "band '" + b.label + "' is not a sub-interval of [0, pi]");
    for (std::size_t j = 0; j < i; ++j)
      if (sorted[j].label == b.label) throw Error(ErrorCode::InvalidPartition, "duplicate band '" + b.label + "'");
    if (i > 0 && b.lower != sorted[i - 1].upper)
      throw Error(ErrorCode::InvalidPartition, "gap or overlap at band '" + b.label + "'");
  }
  if (sorted.front().lower != 0.0) throw Error(ErrorCode::InvalidPartition, "partition does not start at 0");
  if (sorted.back().upper != pi) throw Error(ErrorCode::InvalidPartition, "partition does not end at pi");
}

int default_dft_size(int horizon) { return std::max(1024, 2 * horizon); }

const Eigen::MatrixXd& SpectralFevd::band_table(const std::string& label) const {
  for (std::size_t b = 0; b < bands.size(); ++b)
    if (bands[b].label == label) return band_tables[b];
  throw Error(ErrorCode::UnknownBand, "'" + label + "'");
}

SpectralFevd spectral_gfevd(const VarModel& model, int horizon, std::span<const FrequencyBand> bands,
                            int dft_size) {
  return spectral_impl(model, horizon, bands, dft_size, true);
}

SpectralFevd spectral_gfevd_sequential(const VarModel& model, int horizon, std::span<const FrequencyBand> bands,
                                       int dft_size) {
  return spectral_impl(model, horizon, bands, dft_size, false);
}

SpilloverSummary band_summary(const SpectralFevd& spectral, const std::string& label) {
  return summarize_shares(spectral.band_table(label), spectral.names, label);
}

}  // namespace spillover
