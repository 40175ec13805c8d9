#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spillover/ingest.hpp"

namespace spillover {

struct DescriptiveStats {
  std::string name;
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;   // denominator T-1
  double skewness = 0.0;  // m3 / m2^1.5, population moments
  double kurtosis = 0.0;  // m4 / m2^2, not excess
  std::size_t observations = 0;
};

enum class Significance { One, Five, Ten };
enum class Tail { Left, Right };

double level(Significance s);
std::string to_string(Significance s);

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  Tail tail = Tail::Left;
  std::map<Significance, double> critical_values;
  std::optional<Significance> rejected_at;  // most stringent level rejected
  std::map<std::string, double> nuisance;
};

/// Most stringent significance level at which `statistic` rejects, given the tail.
std::optional<Significance> rejection_level(double statistic, Tail tail,
                                            const std::map<Significance, double>& critical_values);

DescriptiveStats descriptive_stats(std::span<const double> series, std::string name = {});
std::vector<DescriptiveStats> descriptive_stats(const ReturnPanel& panel);

TestResult jarque_bera(std::span<const double> series);
/// Statistic from already-computed moments; T is the sample size.
TestResult jarque_bera_from_moments(std::size_t observations, double skewness, double kurtosis);

/// Default lag cap floor(12 (T/100)^{1/4}).
int default_adf_max_lag(std::size_t observations);

/// Constant-only augmented Dickey-Fuller; lag chosen by AIC over 0..max_lag.
TestResult adf_test(std::span<const double> series, std::optional<int> max_lag = std::nullopt);

/// Phillips-Perron Z-tau, constant only. Default bandwidth floor(4 (T/100)^{2/9}).
TestResult pp_test(std::span<const double> series, std::optional<int> bandwidth = std::nullopt);

/// KPSS level stationarity. Default bandwidth floor(4 (T/100)^{1/4}).
TestResult kpss_test(std::span<const double> series, std::optional<int> bandwidth = std::nullopt);

/// Zivot-Andrews with a break in the intercept; lag order taken from the ADF AIC search.
TestResult za_test(std::span<const double> series, double trim = 0.15);

Eigen::MatrixXd correlation_matrix(const ReturnPanel& panel);

/// Every statistic for one series, as written to diagnostics.csv.
struct SeriesDiagnostics {
  DescriptiveStats stats;
  TestResult jb, adf, pp, kpss, za;
};

/// Per-series battery, one OpenMP task per column.
std::vector<SeriesDiagnostics> diagnose(const ReturnPanel& panel);

}  // namespace spillover
