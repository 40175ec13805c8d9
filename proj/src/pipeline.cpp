#include "spillover/pipeline.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "spillover/error.hpp"

namespace spillover {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Error config_error(const std::string& msg) { return Error(ErrorCode::ConfigError, msg); }

double parse_angle(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "0") return 0.0;
    if (s == "pi") return std::numbers::pi;
    if (s.rfind("pi/", 0) == 0) {
      try {
        std::size_t used = 0;
        const double d = std::stod(s.substr(3), &used);
        if (used == s.size() - 3 && d > 0) return std::numbers::pi / d;
      } catch (const std::exception&) {
      }
    }
  }
  throw config_error(where + ": expected a number of radians, \"pi\" or \"pi/<n>\"");
}

std::vector<FrequencyBand> parse_bands(const json& arr) {
  if (!arr.is_array() || arr.empty()) throw config_error("bands: expected a non-empty array");
  std::vector<FrequencyBand> out;
  for (const auto& b : arr) {
    if (!b.is_object() || !b.contains("label")) throw config_error("bands: each band needs a label");
    const auto label = b.at("label").get<std::string>();
    if (b.contains("min_months")) {
      const double hi = b.contains("max_months") && !b.at("max_months").is_null() ? b.at("max_months").get<double>() : 0.0;
      out.push_back(band_from_months(label, b.at("min_months").get<double>(), hi));
    } else if (b.contains("lower") && b.contains("upper")) {
      const double lo = parse_angle(b.at("lower"), "band " + label);
      const double up = parse_angle(b.at("upper"), "band " + label);
      std::string months = b.value("month_range", std::string{});
      out.push_back({label, lo, up, months});
    } else {
      throw config_error("band '" + label + "': give lower/upper radians or min_months/max_months");
    }
  }
  try {
    validate_partition(out);
  } catch (const Error& e) {
    throw config_error(e.what());
  }
  return out;
}

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& report) : report_(report) {}
  template <class F>
  auto stage(const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto record = [&] {
      report_.timings_ms.emplace_back(
          name, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    };
    try {
      if constexpr (std::is_void_v<decltype(f())>) {
        f();
        record();
      } else {
        auto r = f();
        record();
        return r;
      }
    } catch (const Error& e) {
      throw e.in_stage(name);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::ConfigError, e.what()).in_stage(name);
    }
  }

 private:
  RunReport& report_;
};

class OutputWriter {
 public:
  OutputWriter(fs::path dir, RunReport& report) : dir_(std::move(dir)), report_(report) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw config_error("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& relative, const std::string& content) {
    write_raw(relative, content);
    report_.outputs.push_back({relative, sha256_hex(content), content.size()});
  }

  void write_raw(const std::string& relative, const std::string& content) const {
    const fs::path target = dir_ / relative;
    fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    out << content;
    if (!out) throw config_error("cannot write " + target.string());
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  RunReport& report_;
};

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string significance_cell(const TestResult& t) { return t.rejected_at ? to_string(*t.rejected_at) : ""; }

int resolve_lag(const AnalysisConfig& config, const ReturnPanel& panel, RunReport& report) {
  const int lag = config.lag ? *config.lag : select_lag_aic(panel, config.max_lag);
  report.settings["selected_lag"] = lag;
  report.settings["lag_selection"] = config.lag ? "fixed" : "aic";
  return lag;
}

void finish_report(OutputWriter& writer, const RunReport& report) {
  writer.write_raw("run_report.json", report.to_json().dump(2) + "\n");
}

json base_settings(const AnalysisConfig& config, const ReturnPanel& panel) {
  json s = config.to_json();
  s["observations"] = panel.rows();
  s["series_used"] = panel.names();
  s["first_date"] = panel.dates().front().str();
  s["last_date"] = panel.dates().back().str();
  s["dft_size_resolved"] = config.resolved_dft_size();
  return s;
}

}  // namespace

void AnalysisConfig::validate() const {
  if (input.empty()) throw config_error("input path is required");
  if (series && series->empty()) throw config_error("series selection is empty");
  if (lag && *lag < 1) throw config_error("lag must be positive");
  if (max_lag < 1) throw config_error("max_lag must be positive");
  if (horizon < 1) throw config_error("horizon must be at least 1");
  if (resolved_dft_size() < 2 * horizon) throw config_error("dft_size must be at least 2 * horizon");
  try {
    validate_partition(bands);
  } catch (const Error& e) {
    throw config_error(e.what());
  }
  if (!(tvp.kappa1 > 0 && tvp.kappa1 <= 1) || !(tvp.kappa2 > 0 && tvp.kappa2 <= 1))
    throw config_error("tvp forgetting factors must lie in (0, 1]");
  if (tvp.prior_window < 2 || !(tvp.prior_scale > 0)) throw config_error("tvp prior settings out of range");
}

AnalysisConfig AnalysisConfig::from_json(const json& doc, const fs::path& base_dir) {
  static const std::set<std::string> known = {"input",     "date_column", "input_kind", "series",     "lag",
                                              "max_lag",   "horizon",     "bands",      "dft_size",   "tvp",
                                              "output_dir", "diagnostics", "network",   "seed"};
  if (!doc.is_object()) throw config_error("config must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw config_error("unknown config key '" + key + "'");

  AnalysisConfig c;
  try {
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() || base_dir.empty() ? fs::path(p) : base_dir / p; };
    if (doc.contains("input")) c.input = resolve(doc.at("input").get<std::string>());
    c.date_column = doc.value("date_column", c.date_column);
    if (doc.contains("input_kind")) {
      const auto kind = doc.at("input_kind").get<std::string>();
      if (kind == "levels") c.input_kind = InputKind::Levels;
      else if (kind == "returns") c.input_kind = InputKind::Returns;
      else throw config_error("input_kind must be \"levels\" or \"returns\"");
    }
    if (doc.contains("series")) c.series = doc.at("series").get<std::vector<std::string>>();
    if (doc.contains("lag")) {
      const auto& lag = doc.at("lag");
      if (lag.is_string() && lag.get<std::string>() == "aic") c.lag.reset();
      else if (lag.is_number_integer()) c.lag = lag.get<int>();
      else throw config_error("lag must be an integer or \"aic\"");
    }
    c.max_lag = doc.value("max_lag", c.max_lag);
    c.horizon = doc.value("horizon", c.horizon);
    if (doc.contains("bands")) c.bands = parse_bands(doc.at("bands"));
    if (doc.contains("dft_size")) c.dft_size = doc.at("dft_size").get<int>();
    if (doc.contains("tvp")) {
      const auto& t = doc.at("tvp");
      static const std::set<std::string> tvp_keys = {"kappa1", "kappa2", "prior_window", "prior_scale"};
      for (const auto& [key, _] : t.items())
        if (!tvp_keys.count(key)) throw config_error("unknown tvp key '" + key + "'");
      c.tvp.kappa1 = t.value("kappa1", c.tvp.kappa1);
      c.tvp.kappa2 = t.value("kappa2", c.tvp.kappa2);
      c.tvp.prior_window = t.value("prior_window", c.tvp.prior_window);
      c.tvp.prior_scale = t.value("prior_scale", c.tvp.prior_scale);
    }
    if (doc.contains("output_dir")) c.output_dir = resolve(doc.at("output_dir").get<std::string>());
    c.diagnostics = doc.value("diagnostics", c.diagnostics);
    c.network = doc.value("network", c.network);
    c.seed = doc.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw config_error(e.what());
  }
  return c;
}

AnalysisConfig AnalysisConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw config_error(path.string() + ": " + e.what());
  }
  return from_json(doc, path.parent_path());
}

json AnalysisConfig::to_json() const {
  json j;
  j["input"] = input.string();
  j["date_column"] = date_column;
  j["input_kind"] = input_kind == InputKind::Levels ? "levels" : "returns";
  if (series) j["series"] = *series;
  j["lag"] = lag ? json(*lag) : json("aic");
  j["max_lag"] = max_lag;
  j["horizon"] = horizon;
  j["bands"] = json::array();
  for (const auto& b : bands)
    j["bands"].push_back({{"label", b.label}, {"lower", b.lower}, {"upper", b.upper}, {"month_range", b.month_range}});
  j["dft_size"] = resolved_dft_size();
  j["tvp"] = {{"kappa1", tvp.kappa1}, {"kappa2", tvp.kappa2}, {"prior_window", tvp.prior_window},
              {"prior_scale", tvp.prior_scale}};
  j["output_dir"] = output_dir.string();
  j["diagnostics"] = diagnostics;
  j["network"] = network;
  j["seed"] = seed;
  return j;
}

json RunReport::to_json() const {
  json j;
  j["mode"] = mode;
  j["settings"] = settings;
  j["timings_ms"] = json::array();
  for (const auto& [stage, ms] : timings_ms) j["timings_ms"].push_back({{"stage", stage}, {"ms", ms}});
  j["outputs"] = json::array();
  for (const auto& o : outputs) j["outputs"].push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  j["notes"] = notes;
  return j;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return "";
  if (std::abs(value) < 5e-7) value = 0.0;  // avoid "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

ReturnPanel load_panel(const AnalysisConfig& config) {
  ReturnPanel panel = config.input_kind == InputKind::Levels ? to_log_returns(load_csv(config.input, config.date_column))
                                                             : load_returns_csv(config.input, config.date_column);
  if (config.series) {
    if (config.series->empty()) throw config_error("series selection is empty");
    panel = panel.select(*config.series);
  }
  return panel;
}

std::string spillover_table_csv(const std::vector<SpilloverSummary>& blocks) {
  std::ostringstream out;
  for (const auto& s : blocks) {
    const std::string block = s.band.value_or("total");
    const auto m = static_cast<Eigen::Index>(s.names.size());
    out << "block,row";
    for (const auto& n : s.names) out << ',' << csv_field(n);
    out << ",From\n";
    for (Eigen::Index i = 0; i < m; ++i) {
      out << block << ',' << csv_field(s.names[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j < m; ++j) out << ',' << format_number(s.table(i, j));
      out << ',' << format_number(s.from(i)) << '\n';
    }
    out << block << ",To";
    for (Eigen::Index j = 0; j < m; ++j) out << ',' << format_number(s.to(j));
    out << ',' << format_number(s.tsi) << '\n';  // TCI sits under the From column
    out << block << ",Net";
    for (Eigen::Index j = 0; j < m; ++j) out << ',' << format_number(s.net(j));
    out << ",\n";
  }
  return out.str();
}

std::string diagnostics_csv(const std::vector<SeriesDiagnostics>& rows) {
  std::ostringstream out;
  out << "series,observations,mean,median,std_dev,skewness,kurtosis,"
         "jarque_bera,jarque_bera_rejected_at,adf,adf_lag,adf_rejected_at,pp,pp_bandwidth,pp_rejected_at,"
         "kpss,kpss_bandwidth,kpss_rejected_at,za,za_break_index,za_rejected_at\n";
  for (const auto& d : rows) {
    out << csv_field(d.stats.name) << ',' << d.stats.observations << ',' << format_number(d.stats.mean) << ','
        << format_number(d.stats.median) << ',' << format_number(d.stats.std_dev) << ','
        << format_number(d.stats.skewness) << ',' << format_number(d.stats.kurtosis) << ','
        << format_number(d.jb.statistic) << ',' << significance_cell(d.jb) << ',' << format_number(d.adf.statistic)
        << ',' << d.adf.nuisance.at("lag") << ',' << significance_cell(d.adf) << ',' << format_number(d.pp.statistic)
        << ',' << d.pp.nuisance.at("bandwidth") << ',' << significance_cell(d.pp) << ','
        << format_number(d.kpss.statistic) << ',' << d.kpss.nuisance.at("bandwidth") << ','
        << significance_cell(d.kpss) << ',' << format_number(d.za.statistic) << ','
        << d.za.nuisance.at("break_index") << ',' << significance_cell(d.za) << '\n';
  }
  return out.str();
}

std::string matrix_csv(const Eigen::MatrixXd& matrix, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "series";
  for (const auto& n : names) out << ',' << csv_field(n);
  out << '\n';
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    out << csv_field(names[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) out << ',' << format_number(matrix(i, j));
    out << '\n';
  }
  return out.str();
}

json network_json(const SpilloverNetwork& network) {
  json j;
  j["band"] = network.band.value_or("total");
  j["nodes"] = json::array();
  for (std::size_t i = 0; i < network.size(); ++i) {
    const double net = network.net(static_cast<Eigen::Index>(i));
    j["nodes"].push_back({{"id", network.names[i]}, {"net", net}, {"role", net > 0.0 ? "transmitter" : "receiver"}});
  }
  j["edges"] = json::array();
  for (const auto& e : network.edges)
    j["edges"].push_back({{"source", network.names[e.source]}, {"target", network.names[e.target]}, {"weight", e.weight}});

  json centrality = json::object();
  auto add = [&](CentralityMeasure measure, auto&& compute) {
    try {
      const CentralityRanking r = compute();
      centrality[to_string(measure)] = {{"scores", std::vector<double>(r.scores.data(), r.scores.data() + r.scores.size())},
                                        {"ranking", r.ranking}};
    } catch (const Error& e) {
      centrality[to_string(measure)] = {{"error", e.what()}};
    }
  };
  add(CentralityMeasure::Degree, [&] { return degree_centrality(network); });
  add(CentralityMeasure::Closeness, [&] { return closeness_centrality(network); });
  add(CentralityMeasure::Betweenness, [&] { return betweenness_centrality(network); });
  add(CentralityMeasure::Eigenvector, [&] { return eigenvector_centrality(network); });
  j["centrality"] = std::move(centrality);
  return j;
}

std::string dynamic_tsi_csv(const DynamicSpillovers& series) {
  std::ostringstream out;
  out << "date,total";
  for (const auto& b : series.bands) out << ',' << csv_field(b.label);
  out << ",status\n";
  for (const auto& p : series.points) {
    out << p.date.str() << ',' << (p.ok ? format_number(p.tsi) : "");
    for (std::size_t b = 0; b < series.bands.size(); ++b) out << ',' << (p.ok ? format_number(p.band_tsi[b]) : "");
    out << ',' << (p.ok ? std::string("ok") : csv_field(p.failure)) << '\n';
  }
  return out.str();
}

std::string dynamic_net_csv(const DynamicSpillovers& series) {
  std::ostringstream out;
  out << "date";
  for (const auto& n : series.names) out << ',' << csv_field(n);
  for (const auto& b : series.bands)
    for (const auto& n : series.names) out << ',' << csv_field(n + "_" + b.label);
  out << ",status\n";
  const auto m = static_cast<Eigen::Index>(series.names.size());
  for (const auto& p : series.points) {
    out << p.date.str();
    for (Eigen::Index i = 0; i < m; ++i) out << ',' << (p.ok ? format_number(p.net(i)) : "");
    for (std::size_t b = 0; b < series.bands.size(); ++b)
      for (Eigen::Index i = 0; i < m; ++i) out << ',' << (p.ok ? format_number(p.band_net[b](i)) : "");
    out << ',' << (p.ok ? std::string("ok") : csv_field(p.failure)) << '\n';
  }
  return out.str();
}

RunReport run_diagnostics(const AnalysisConfig& config) {
  config.validate();
  RunReport report;
  report.mode = "diagnostics";
  Stopwatch clock(report);
  const auto panel = clock.stage("ingest", [&] { return load_panel(config); });
  report.settings = base_settings(config, panel);
  OutputWriter writer(config.output_dir, report);
  const auto rows = clock.stage("diagnostics", [&] { return diagnose(panel); });
  const auto corr = clock.stage("correlation", [&] { return correlation_matrix(panel); });
  clock.stage("write", [&] {
    writer.write("diagnostics.csv", diagnostics_csv(rows));
    writer.write("correlation.csv", matrix_csv(corr, panel.names()));
  });
  finish_report(writer, report);
  return report;
}

RunReport run_static(const AnalysisConfig& config) {
  config.validate();
  RunReport report;
  report.mode = "static";
  Stopwatch clock(report);
  const auto panel = clock.stage("ingest", [&] { return load_panel(config); });
  report.settings = base_settings(config, panel);
  OutputWriter writer(config.output_dir, report);

  if (config.diagnostics) {
    const auto rows = clock.stage("diagnostics", [&] { return diagnose(panel); });
    const auto corr = clock.stage("correlation", [&] { return correlation_matrix(panel); });
    writer.write("diagnostics.csv", diagnostics_csv(rows));
    writer.write("correlation.csv", matrix_csv(corr, panel.names()));
  }

  const int lag = clock.stage("lag_selection", [&] { return resolve_lag(config, panel, report); });
  const auto model = clock.stage("var", [&] {
    auto m = fit_ols(panel, lag);
    const auto st = is_stable(m);
    report.settings["spectral_radius"] = st.spectral_radius;
    return m;
  });
  const auto fevd = clock.stage("connectedness", [&] { return gfevd(model, config.horizon); });
  const auto spectral = clock.stage("frequency", [&] {
    return spectral_gfevd(model, config.horizon, config.bands, config.resolved_dft_size());
  });

  std::vector<SpilloverSummary> blocks{spillover_summary(fevd)};
  for (const auto& b : config.bands) blocks.push_back(band_summary(spectral, b.label));

  clock.stage("write", [&] {
    writer.write("fevd.csv", matrix_csv(fevd.normalized, fevd.names));
    writer.write("spillover_table.csv", spillover_table_csv(blocks));
    for (std::size_t b = 0; b < config.bands.size(); ++b)
      writer.write("bands/" + config.bands[b].label + "_table.csv", spillover_table_csv({blocks[b + 1]}));
  });

  if (config.network) {
    const auto doc = clock.stage("network", [&] {
      json networks = json::array();
      for (const auto& s : blocks) networks.push_back(network_json(build_network(s)));
      return json{{"networks", networks}};
    });
    writer.write("network.json", doc.dump(2) + "\n");
  }
  report.settings["tsi"] = blocks.front().tsi;
  finish_report(writer, report);
  return report;
}

RunReport run_dynamic(const AnalysisConfig& config) {
  config.validate();
  RunReport report;
  report.mode = "dynamic";
  Stopwatch clock(report);
  const auto panel = clock.stage("ingest", [&] { return load_panel(config); });
  report.settings = base_settings(config, panel);
  if (panel.rows() < config.tvp.prior_window + 12)
    throw Error(ErrorCode::InsufficientData, "dynamic analysis needs T >= prior_window + 12").in_stage("ingest");
  OutputWriter writer(config.output_dir, report);

  const int lag = clock.stage("lag_selection", [&] { return resolve_lag(config, panel, report); });
  TvpConfig tvp = config.tvp;
  tvp.lag_order = lag;
  const auto path = clock.stage("tvp_filter", [&] { return fit_tvp(panel, tvp); });
  report.settings["first_dynamic_date"] =
      path.first_filtered < path.size() ? path.dates[path.first_filtered].str() : std::string{};
  report.notes.push_back("dynamic series start after the " + std::to_string(tvp.prior_window) +
                         "-observation prior window");

  const auto series = clock.stage("dynamic_connectedness", [&] {
    return dynamic_spillovers(path, config.horizon, config.bands, config.resolved_dft_size());
  });
  std::size_t gaps = 0;
  for (const auto& p : series.points)
    if (!p.ok) {
      ++gaps;
      report.notes.push_back("gap at " + p.date.str() + ": " + p.failure);
    }
  report.settings["dynamic_points"] = series.points.size();
  report.settings["dynamic_gaps"] = gaps;

  clock.stage("write", [&] {
    writer.write("dynamic_tsi.csv", dynamic_tsi_csv(series));
    writer.write("dynamic_net.csv", dynamic_net_csv(series));
  });
  finish_report(writer, report);
  return report;
}

}  // namespace spillover
