#include "spillover/dynamic.hpp"

#include "spillover/error.hpp"

namespace spillover {

DynamicPoint dynamic_point(const TvpVarPath& path, std::size_t index, int horizon,
                           std::span<const FrequencyBand> bands, int dft_size) {
  DynamicPoint point;
  point.date = path.dates[index];
  try {
    const auto model = model_at(path, index);
    const auto spectral = spectral_gfevd_sequential(model, horizon, bands, dft_size);
    const auto total = summarize_shares(spectral.time_domain, path.names);
    point.tsi = total.tsi;
    point.net = total.net;
    point.fevd = spectral.time_domain;
    for (const auto& band : spectral.bands) {
      const auto s = band_summary(spectral, band.label);
      point.band_tsi.push_back(s.tsi);
      point.band_net.push_back(s.net);
    }
    point.ok = true;
  } catch (const Error& e) {
    point = DynamicPoint{};
    point.date = path.dates[index];
    point.failure = e.what();
  }
  return point;
}

DynamicSpillovers dynamic_spillovers(const TvpVarPath& path, int horizon, std::span<const FrequencyBand> bands,
                                     int dft_size) {
  validate_partition(bands);
  if (dft_size < 2 * horizon) throw Error(ErrorCode::DftTooSmall, "N < 2H");
  DynamicSpillovers out;
  out.names = path.names;
  out.bands.assign(bands.begin(), bands.end());
  const auto first = static_cast<long>(path.first_filtered);
  const auto count = static_cast<long>(path.size()) - first;
  out.points.resize(static_cast<std::size_t>(std::max(count, 0L)));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i)
    out.points[static_cast<std::size_t>(i)] =
        dynamic_point(path, static_cast<std::size_t>(first + i), horizon, bands, dft_size);
  return out;
}

}  // namespace spillover
