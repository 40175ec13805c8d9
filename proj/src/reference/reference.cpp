#include "spillover/reference.hpp"

#include <complex>
#include <numbers>

#include "spillover/error.hpp"

namespace spillover::reference {

SpectralFevd spectral_gfevd(const VarModel& model, int horizon, std::span<const FrequencyBand> bands, int dft_size) {
  using cd = std::complex<double>;
  using std::numbers::pi;
  if (dft_size < 2 * horizon) throw Error(ErrorCode::DftTooSmall, "N < 2H");
  validate_partition(bands);
  if (!is_stable(model).stable) throw Error(ErrorCode::UnstableModel, "companion spectral radius >= 1");

  const Eigen::Index m = model.dimension();
  const auto a = vma_coefficients(model, horizon);
  SpectralFevd out;
  out.horizon = horizon;
  out.dft_size = dft_size;
  out.names = model.names;
  out.bands.assign(bands.begin(), bands.end());

  Eigen::MatrixXd numerator = Eigen::MatrixXd::Zero(m, m);
  for (const auto& ah : a) {
    const Eigen::MatrixXd c = ah * model.sigma;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) numerator(i, j) += c(i, j) * c(i, j) / model.sigma(j, j);
  }
  out.row_totals = numerator.rowwise().sum();
  out.time_domain = numerator;
  for (Eigen::Index i = 0; i < m; ++i) out.time_domain.row(i) /= out.row_totals(i);

  const int half = dft_size / 2;
  out.frequencies.resize(half + 1);
  out.weights = Eigen::VectorXd::Zero(half + 1);
  out.band_of.assign(static_cast<std::size_t>(half + 1), 0);
  out.contributions.assign(static_cast<std::size_t>(half + 1), Eigen::MatrixXd::Zero(m, m));
  out.band_tables.assign(bands.size(), Eigen::MatrixXd::Zero(m, m));

  for (int k = 0; k < dft_size; ++k) {
    const int folded = k <= half ? k : dft_size - k;
    const double omega = 2.0 * pi * k / dft_size;
    Eigen::MatrixXcd psi_sigma = Eigen::MatrixXcd::Zero(m, m);
    for (int h = 0; h < horizon; ++h)
      psi_sigma += std::exp(cd(0.0, -omega * h)) * (a[static_cast<std::size_t>(h)] * model.sigma).cast<cd>();
    Eigen::MatrixXd contrib(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) contrib(i, j) = std::norm(psi_sigma(i, j)) / model.sigma(j, j);

    const double folded_omega = 2.0 * pi * folded / dft_size;
    std::size_t band = 0;
    while (band < bands.size() && !bands[band].contains(folded_omega)) ++band;
    out.frequencies(folded) = folded_omega;
    out.weights(folded) += 1.0;
    out.band_of[static_cast<std::size_t>(folded)] = static_cast<int>(band);
    if (k == folded) out.contributions[static_cast<std::size_t>(k)] = contrib;
    for (Eigen::Index i = 0; i < m; ++i)
      out.band_tables[band].row(i) += contrib.row(i) / (dft_size * out.row_totals(i));
  }
  return out;
}

DynamicSpillovers dynamic_spillovers(const TvpVarPath& path, int horizon, std::span<const FrequencyBand> bands,
                                     int dft_size) {
  DynamicSpillovers out;
  out.names = path.names;
  out.bands.assign(bands.begin(), bands.end());
  for (std::size_t i = path.first_filtered; i < path.size(); ++i)
    out.points.push_back(dynamic_point(path, i, horizon, bands, dft_size));
  return out;
}

CentralityRanking betweenness_centrality(const SpilloverNetwork& net) {
  const Eigen::MatrixXd w = net.weight_matrix();
  const auto n = static_cast<Eigen::Index>(net.size());
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
  for (Eigen::Index s = 0; s < n; ++s) scores += betweenness_from_source(w, static_cast<std::size_t>(s));
  if (n > 2) scores /= static_cast<double>((n - 1) * (n - 2));
  return make_ranking(CentralityMeasure::Betweenness, std::move(scores), net.names);
}

std::vector<SeriesDiagnostics> diagnose(const ReturnPanel& panel) {
  std::vector<SeriesDiagnostics> out;
  for (Eigen::Index c = 0; c < panel.cols(); ++c) {
    const Eigen::VectorXd col = panel.returns().col(c);
    const std::span<const double> x(col.data(), static_cast<std::size_t>(col.size()));
    SeriesDiagnostics d;
    d.stats = descriptive_stats(x, panel.names()[static_cast<std::size_t>(c)]);
    d.jb = jarque_bera(x);
    d.adf = adf_test(x);
    d.pp = pp_test(x);
    d.kpss = kpss_test(x);
    d.za = za_test(x);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace spillover::reference
