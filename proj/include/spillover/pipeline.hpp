#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spillover/diagnostics.hpp"
#include "spillover/dynamic.hpp"
#include "spillover/frequency.hpp"
#include "spillover/network.hpp"
#include "spillover/tvpvar.hpp"

namespace spillover {

enum class InputKind { Levels, Returns };

struct AnalysisConfig {
  std::filesystem::path input;
  std::string date_column = "date";
  InputKind input_kind = InputKind::Levels;
  std::optional<std::vector<std::string>> series;  // all columns when absent
  std::optional<int> lag;                          // AIC selection when absent
  int max_lag = 4;
  int horizon = kDefaultHorizon;
  std::vector<FrequencyBand> bands = default_bands();
  std::optional<int> dft_size;  // max(1024, 2H) when absent
  TvpConfig tvp;
  std::filesystem::path output_dir = "out";
  bool diagnostics = true;
  bool network = true;
  std::uint64_t seed = 0;

  int resolved_dft_size() const { return dft_size.value_or(default_dft_size(horizon)); }

  /// Throws Error(ConfigError) on any out-of-range setting.
  void validate() const;

  /// Relative paths in the document resolve against `base_dir`.
  static AnalysisConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
  static AnalysisConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

struct OutputFile {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunReport {
  std::string mode;
  nlohmann::json settings;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<OutputFile> outputs;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// Full-sample VAR: FEVD, band tables, spillover table and networks.
RunReport run_static(const AnalysisConfig& config);
/// TVP-VAR filter and per-date total/band spillovers.
RunReport run_dynamic(const AnalysisConfig& config);
/// Descriptive statistics, unit-root battery and correlation matrix.
RunReport run_diagnostics(const AnalysisConfig& config);

// Loaders and formatters shared with the CLI and tests.
ReturnPanel load_panel(const AnalysisConfig& config);
std::string format_number(double value);
std::string spillover_table_csv(const std::vector<SpilloverSummary>& blocks);
std::string diagnostics_csv(const std::vector<SeriesDiagnostics>& rows);
std::string matrix_csv(const Eigen::MatrixXd& matrix, const std::vector<std::string>& names);
nlohmann::json network_json(const SpilloverNetwork& network);
std::string dynamic_tsi_csv(const DynamicSpillovers& series);
std::string dynamic_net_csv(const DynamicSpillovers& series);
std::string sha256_hex(std::string_view bytes);

}  // namespace spillover
