#include "spillover/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "ols.hpp"
#include "spillover/error.hpp"

namespace spillover {

namespace {

// MacKinnon (2010) response surface, constant-only tau: beta_inf + b1/T + b2/T^2 + b3/T^3.
std::map<Significance, double> dickey_fuller_critical_values(std::size_t nobs) {
  const double t = static_cast<double>(nobs);
  auto surface = [t](double b0, double b1, double b2, double b3) {
    return b0 + b1 / t + b2 / (t * t) + b3 / (t * t * t);
  };
  return {{Significance::One, surface(-3.43035, -6.5393, -16.786, -79.433)},
          {Significance::Five, surface(-2.86154, -2.8903, -4.234, -40.040)},
          {Significance::Ten, surface(-2.56677, -1.5384, -2.809, 0.0)}};
}

const std::map<Significance, double> kKpssLevelCritical = {
    {Significance::One, 0.739}, {Significance::Five, 0.463}, {Significance::Ten, 0.347}};

// Zivot-Andrews, break in intercept.
const std::map<Significance, double> kZaInterceptCritical = {
    {Significance::One, -5.34}, {Significance::Five, -4.80}, {Significance::Ten, -4.58}};

// chi-square(2) upper quantiles.
const std::map<Significance, double> kChiSquare2Critical = {
    {Significance::One, 9.210340371976184}, {Significance::Five, 5.991464547107979},
    {Significance::Ten, 4.605170185988091}};

struct Moments {
  double mean, m2, m3, m4;
};

Moments central_moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const double d = v - mean, d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  return {mean, m2 / n, m3 / n, m4 / n};
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

void require_length(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() < n)
    throw Error(ErrorCode::TooFewObservations,
                std::string(what) + " needs at least " + std::to_string(n) + " observations");
}

struct DfFit {
  double t_stat;
  double ssr;
  double std_error;
  std::size_t nobs;
  std::size_t regressors;
  Eigen::VectorXd residuals;
};

// Regress dy[t] on {1, [DU_t], y[t-1], dy[t-1..t-lags]} for t = first..n-1 and
// report the t-ratio on y[t-1].
DfFit df_regression(std::span<const double> y, int lags, std::size_t first, std::optional<std::size_t> break_at) {
  const std::size_t n = y.size();
  const std::size_t rows = n - first;
  const int level_col = break_at ? 2 : 1;
  const auto k = static_cast<Eigen::Index>(level_col + 1 + lags);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), k);
  Eigen::MatrixXd dy(static_cast<Eigen::Index>(rows), 1);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = first + r;
    const auto row = static_cast<Eigen::Index>(r);
    dy(row, 0) = y[t] - y[t - 1];
    x(row, 0) = 1.0;
    if (break_at) x(row, 1) = t > *break_at ? 1.0 : 0.0;
    x(row, level_col) = y[t - 1];
    for (int i = 1; i <= lags; ++i) x(row, level_col + i) = y[t - i] - y[t - i - 1];
  }
  if (static_cast<Eigen::Index>(rows) <= k)
    throw Error(ErrorCode::TooFewObservations, "not enough observations for the test regression");
  auto fit = detail::ols(x, dy, ErrorCode::SingularRegression);
  const double ssr = fit.residuals.squaredNorm();
  const double s2 = ssr / static_cast<double>(rows - static_cast<std::size_t>(k));
  const double se = std::sqrt(s2 * fit.xtx_inverse(level_col, level_col));
  return {fit.coefficients(level_col, 0) / se, ssr, se, rows, static_cast<std::size_t>(k), fit.residuals.col(0)};
}

// Lag cap keeping at least ten residual degrees of freedom.
int feasible_max_lag(std::size_t n, int requested) {
  int lag = std::max(requested, 0);
  while (lag > 0 && static_cast<long>(n) - 1 - lag < lag + 3 + 10) --lag;
  return lag;
}

int select_adf_lag(std::span<const double> y, int max_lag) {
  int best = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  const std::size_t first = static_cast<std::size_t>(max_lag) + 1;
  for (int p = 0; p <= max_lag; ++p) {
    const auto fit = df_regression(y, p, first, std::nullopt);
    const double nobs = static_cast<double>(fit.nobs);
    const double aic = nobs * std::log(fit.ssr / nobs) + 2.0 * static_cast<double>(fit.regressors);
    if (aic < best_aic) {
      best_aic = aic;
      best = p;
    }
  }
  return best;
}

double bartlett_long_run_variance(const Eigen::VectorXd& e, int bandwidth) {
  const auto n = e.size();
  double acc = e.squaredNorm();
  for (int j = 1; j <= bandwidth && j < n; ++j) {
    const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1.0);
    acc += 2.0 * w * e.tail(n - j).dot(e.head(n - j));
  }
  return acc / static_cast<double>(n);
}

TestResult finish(std::string name, double statistic, Tail tail, std::map<Significance, double> crit,
                  std::map<std::string, double> nuisance) {
  TestResult r;
  r.test_name = std::move(name);
  r.statistic = statistic;
  r.tail = tail;
  r.critical_values = std::move(crit);
  r.rejected_at = rejection_level(statistic, tail, r.critical_values);
  r.nuisance = std::move(nuisance);
  return r;
}

}  // namespace

double level(Significance s) {
  switch (s) {
    case Significance::One: return 0.01;
    case Significance::Five: return 0.05;
    case Significance::Ten: return 0.10;
  }
  return 0.0;
}

std::string to_string(Significance s) {
  switch (s) {
    case Significance::One: return "1%";
    case Significance::Five: return "5%";
    case Significance::Ten: return "10%";
  }
  return "";
}

std::optional<Significance> rejection_level(double statistic, Tail tail,
                                            const std::map<Significance, double>& critical_values) {
  // map order is One, Five, Ten: most stringent first
  for (const auto& [sig, cv] : critical_values) {
    const bool reject = tail == Tail::Left ? statistic < cv : statistic > cv;
    if (reject) return sig;
  }
  return std::nullopt;
}

DescriptiveStats descriptive_stats(std::span<const double> series, std::string name) {
  require_length(series, 4, "descriptive_stats");
  if (is_constant(series)) throw Error(ErrorCode::DegenerateSeries, "constant series '" + name + "'");
  const auto m = central_moments(series);
  if (!(m.m2 > 0.0)) throw Error(ErrorCode::DegenerateSeries, "zero variance in '" + name + "'");

  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  DescriptiveStats s;
  s.name = std::move(name);
  s.mean = m.mean;
  s.median = median;
  s.std_dev = std::sqrt(m.m2 * static_cast<double>(n) / static_cast<double>(n - 1));
  s.skewness = m.m3 / std::pow(m.m2, 1.5);
  s.kurtosis = m.m4 / (m.m2 * m.m2);
  s.observations = n;
  return s;
}

std::vector<DescriptiveStats> descriptive_stats(const ReturnPanel& panel) {
  std::vector<DescriptiveStats> out;
  for (Eigen::Index c = 0; c < panel.cols(); ++c) {
    const Eigen::VectorXd col = panel.returns().col(c);
    out.push_back(descriptive_stats(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                                    panel.names()[static_cast<std::size_t>(c)]));
  }
  return out;
}

TestResult jarque_bera_from_moments(std::size_t observations, double skewness, double kurtosis) {
  const double excess = kurtosis - 3.0;
  const double stat = static_cast<double>(observations) / 6.0 * (skewness * skewness + excess * excess / 4.0);
  return finish("Jarque-Bera", stat, Tail::Right, kChiSquare2Critical,
                {{"observations", static_cast<double>(observations)}});
}

TestResult jarque_bera(std::span<const double> series) {
  const auto s = descriptive_stats(series);
  return jarque_bera_from_moments(series.size(), s.skewness, s.kurtosis);
}

int default_adf_max_lag(std::size_t observations) {
  return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(observations) / 100.0, 0.25)));
}

TestResult adf_test(std::span<const double> series, std::optional<int> max_lag) {
  require_length(series, 20, "ADF");
  if (is_constant(series)) throw Error(ErrorCode::DegenerateSeries, "constant series");
  const int cap = feasible_max_lag(series.size(), max_lag.value_or(default_adf_max_lag(series.size())));
  const int lag = select_adf_lag(series, cap);
  const auto fit = df_regression(series, lag, static_cast<std::size_t>(lag) + 1, std::nullopt);
  return finish("ADF", fit.t_stat, Tail::Left, dickey_fuller_critical_values(fit.nobs),
                {{"lag", lag}, {"max_lag", cap}, {"observations", static_cast<double>(fit.nobs)}});
}

TestResult pp_test(std::span<const double> series, std::optional<int> bandwidth) {
  require_length(series, 20, "PP");
  if (is_constant(series)) throw Error(ErrorCode::DegenerateSeries, "constant series");
  const int bw = bandwidth.value_or(
      static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(series.size()) / 100.0, 2.0 / 9.0))));

  // Residuals of y[t] on {1, y[t-1]} equal those of the lag-0 DF regression.
  const auto fit = df_regression(series, 0, 1, std::nullopt);
  const Eigen::VectorXd& e = fit.residuals;

  const double nobs = static_cast<double>(fit.nobs);
  const double gamma0 = fit.ssr / nobs;
  const double lam2 = bandwidth.has_value() && *bandwidth == 0 ? gamma0 : bartlett_long_run_variance(e, bw);
  const double s = std::sqrt(fit.ssr / (nobs - static_cast<double>(fit.regressors)));
  const double z_tau =
      std::sqrt(gamma0 / lam2) * fit.t_stat - 0.5 * (lam2 - gamma0) / std::sqrt(lam2) * (nobs * fit.std_error / s);
  return finish("PP", z_tau, Tail::Left, dickey_fuller_critical_values(fit.nobs),
                {{"bandwidth", bw}, {"observations", nobs}});
}

TestResult kpss_test(std::span<const double> series, std::optional<int> bandwidth) {
  require_length(series, 20, "KPSS");
  if (is_constant(series)) throw Error(ErrorCode::DegenerateSeries, "constant series");
  const std::size_t n = series.size();
  const int bw = bandwidth.value_or(
      static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25))));
  Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(series.data(), static_cast<Eigen::Index>(n));
  e.array() -= e.mean();
  double partial = 0.0, acc = 0.0;
  for (Eigen::Index t = 0; t < e.size(); ++t) {
    partial += e(t);
    acc += partial * partial;
  }
  const double lrv = bartlett_long_run_variance(e, bw);
  const double stat = acc / (static_cast<double>(n) * static_cast<double>(n) * lrv);
  return finish("KPSS", stat, Tail::Right, kKpssLevelCritical, {{"bandwidth", bw}});
}

TestResult za_test(std::span<const double> series, double trim) {
  require_length(series, 50, "ZA");
  if (is_constant(series)) throw Error(ErrorCode::DegenerateSeries, "constant series");
  if (!(trim > 0.0 && trim < 0.5)) throw std::invalid_argument("za_test: trim must lie in (0, 0.5)");
  const std::size_t n = series.size();
  const int lag = select_adf_lag(series, feasible_max_lag(n, default_adf_max_lag(n)));
  const auto lo = static_cast<std::size_t>(std::ceil(trim * static_cast<double>(n)));
  const auto hi = static_cast<std::size_t>(std::floor((1.0 - trim) * static_cast<double>(n)));
  const std::size_t first = static_cast<std::size_t>(lag) + 1;

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_break = lo;
  for (std::size_t tb = std::max(lo, first); tb <= hi && tb + 1 < n; ++tb) {
    try {
      const auto fit = df_regression(series, lag, first, tb);
      if (fit.t_stat < best) {
        best = fit.t_stat;
        best_break = tb;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularRegression) throw;
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::SingularRegression, "no admissible break date");
  return finish("ZA", best, Tail::Left, kZaInterceptCritical,
                {{"break_index", static_cast<double>(best_break)}, {"lag", lag}, {"trim", trim}});
}

Eigen::MatrixXd correlation_matrix(const ReturnPanel& panel) {
  if (panel.rows() < 3) throw Error(ErrorCode::TooFewObservations, "correlation needs at least 3 rows");
  Eigen::MatrixXd centered = panel.returns().rowwise() - panel.returns().colwise().mean();
  Eigen::VectorXd norms = centered.colwise().norm();
  for (Eigen::Index c = 0; c < norms.size(); ++c)
    if (!(norms(c) > 0.0))
      throw Error(ErrorCode::DegenerateSeries, "constant series '" + panel.names()[static_cast<std::size_t>(c)] + "'");
  for (Eigen::Index c = 0; c < norms.size(); ++c) centered.col(c) /= norms(c);
  Eigen::MatrixXd corr = centered.transpose() * centered;
  corr = 0.5 * (corr + corr.transpose()).eval();
  corr.diagonal().setOnes();
  return corr;
}

std::vector<SeriesDiagnostics> diagnose(const ReturnPanel& panel) {
  const auto m = static_cast<int>(panel.cols());
  std::vector<SeriesDiagnostics> out(static_cast<std::size_t>(m));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < m; ++c) {
    try {
      const Eigen::VectorXd col = panel.returns().col(c);
      const std::span<const double> x(col.data(), static_cast<std::size_t>(col.size()));
      auto& d = out[static_cast<std::size_t>(c)];
      d.stats = descriptive_stats(x, panel.names()[static_cast<std::size_t>(c)]);
      d.jb = jarque_bera_from_moments(x.size(), d.stats.skewness, d.stats.kurtosis);
      d.adf = adf_test(x);
      d.pp = pp_test(x);
      d.kpss = kpss_test(x);
      d.za = za_test(x);
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace spillover
