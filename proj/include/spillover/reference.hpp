#pragma once

// Straightforward single-threaded versions of the OpenMP kernels. They follow the
// definitions as literally as possible and exist for tests and benchmarks.

#include <span>

#include "spillover/diagnostics.hpp"
#include "spillover/dynamic.hpp"
#include "spillover/frequency.hpp"
#include "spillover/network.hpp"

namespace spillover::reference {

/// Full N-point grid with complex arithmetic; frequencies above pi fold onto their conjugate.
SpectralFevd spectral_gfevd(const VarModel& model, int horizon, std::span<const FrequencyBand> bands, int dft_size);

DynamicSpillovers dynamic_spillovers(const TvpVarPath& path, int horizon, std::span<const FrequencyBand> bands,
                                     int dft_size);

CentralityRanking betweenness_centrality(const SpilloverNetwork& net);

std::vector<SeriesDiagnostics> diagnose(const ReturnPanel& panel);

}  // namespace spillover::reference
