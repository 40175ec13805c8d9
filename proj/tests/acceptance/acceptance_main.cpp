// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../support.hpp"
#include "spillover/connectedness.hpp"
#include "spillover/diagnostics.hpp"
#include "spillover/dynamic.hpp"
#include "spillover/frequency.hpp"
#include "spillover/tvpvar.hpp"
#include "spillover/var.hpp"

using namespace spillover;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool timed_out = limit_s > 0 && secs > limit_s;
  const bool pass = out.pass && !timed_out;
  if (!pass) ++failures;
  std::printf("%s [%d] %s | %s | %.2fs%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(), secs,
              timed_out ? " (over time limit)" : "");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Instance {
  VarModel model;
  int horizon;
};

// 100 seeded stable VARs, M in 2..5, r in 1..2, H in 1..12
std::vector<Instance> property_instances() {
  std::vector<Instance> out;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> m(2, 5), r(1, 2), h(1, 12);
  for (int i = 0; i < 100; ++i) {
    const int mi = m(rng), ri = r(rng), hi = h(rng);
    out.push_back({testing::random_stable_var(mi, ri, 1000 + static_cast<std::uint64_t>(i)), hi});
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

int main() {
  const auto instances = property_instances();

  report(1, "FEVD rows sum to 1 (100 models, tol 1e-12)", 10.0, [&] {
    double worst = 0.0;
    for (const auto& in : instances) {
      const auto f = gfevd(in.model, in.horizon);
      worst = std::max(worst, (f.normalized.rowwise().sum().array() - 1.0).abs().maxCoeff());
    }
    return Outcome{worst <= 1e-12, fmt("max |row sum - 1| = %.3e", worst)};
  });

  report(2, "band tables reconstruct time domain, band TSIs sum to TSI (tol 1e-10)", 30.0, [&] {
    double table_err = 0.0, tsi_err = 0.0;
    const auto bands = default_bands();
    for (const auto& in : instances) {
      const auto s = spectral_gfevd(in.model, in.horizon, bands, default_dft_size(in.horizon));
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(s.time_domain.rows(), s.time_domain.cols());
      double band_tsi = 0.0;
      for (const auto& b : bands) {
        sum += s.band_table(b.label);
        band_tsi += band_summary(s, b.label).tsi;
      }
      const auto time = gfevd(in.model, in.horizon);
      table_err = std::max(table_err, (sum - time.normalized).cwiseAbs().maxCoeff());
      tsi_err = std::max(tsi_err, std::abs(band_tsi - spillover_summary(time).tsi));
    }
    return Outcome{table_err <= 1e-10 && tsi_err <= 1e-10,
                   fmt("table err %.3e", table_err) + fmt(", TSI err %.3e", tsi_err)};
  });

  report(3, "NET sums to zero (tol 1e-10), NPDC exactly antisymmetric", 0.0, [&] {
    double net_err = 0.0;
    bool antisym = true;
    const auto bands = default_bands();
    auto check = [&](const SpilloverSummary& s) {
      net_err = std::max(net_err, std::abs(s.net.sum()));
      antisym = antisym && (s.npdc + s.npdc.transpose()).cwiseAbs().maxCoeff() == 0.0;
    };
    for (const auto& in : instances) {
      check(spillover_summary(gfevd(in.model, in.horizon)));
      const auto s = spectral_gfevd(in.model, in.horizon, bands, default_dft_size(in.horizon));
      for (const auto& b : bands) {
        const auto bs = band_summary(s, b.label);
        antisym = antisym && (bs.npdc + bs.npdc.transpose()).cwiseAbs().maxCoeff() == 0.0;
      }
    }
    return Outcome{net_err <= 1e-10 && antisym,
                   fmt("max |sum NET| = %.3e", net_err) + (antisym ? ", antisymmetric" : ", NOT antisymmetric")};
  });

  report(4, "gfevd and spectral_gfevd match brute-force oracles (M<=3, H<=5, tol 1e-10)", 0.0, [&] {
    double worst = 0.0;
    int count = 0;
    const auto bands = default_bands();
    for (int m = 1; m <= 3; ++m)
      for (int r = 1; r <= 2; ++r)
        for (int h = 1; h <= 5; ++h)
          for (std::uint64_t s = 0; s < 4; ++s) {
            const auto model = testing::random_stable_var(m, r, 7000 + s * 97 + static_cast<std::uint64_t>(m * 10 + r * 3 + h));
            const auto f = gfevd(model, h);
            const auto o = oracle::gfevd_normalized(model, h);
            const int n = default_dft_size(h);
            const auto sp = spectral_gfevd(model, h, bands, n);
            const auto ob = oracle::band_tables(model, h, bands, n);
            for (int i = 0; i < m; ++i)
              for (int j = 0; j < m; ++j) {
                worst = std::max(worst, std::abs(f.normalized(i, j) - o[i][j]));
                for (std::size_t b = 0; b < bands.size(); ++b)
                  worst = std::max(worst, std::abs(sp.band_tables[b](i, j) - ob[b][i][j]));
              }
            ++count;
          }
    return Outcome{worst <= 1e-10, std::to_string(count) + " instances" + fmt(", max err %.3e", worst)};
  });

  report(5, "rho = 0.5 white noise, H = 1: rows (0.8, 0.2), TSI = 20 (tol 1e-12)", 0.0, [&] {
    const auto model = make_var({Eigen::MatrixXd::Zero(2, 2)}, testing::mat2(1.0, 0.5, 0.5, 1.0));
    const auto f = gfevd(model, 1);
    const Eigen::MatrixXd expected = testing::mat2(0.8, 0.2, 0.2, 0.8);
    const double err = (f.normalized - expected).cwiseAbs().maxCoeff();
    const double tsi = spillover_summary(f).tsi;
    return Outcome{err <= 1e-12 && std::abs(tsi - 20.0) <= 1e-12, fmt("row err %.3e", err) + fmt(", TSI %.15g", tsi)};
  });

  report(6, "Kalman filter with kappa1 = kappa2 = 1 reproduces OLS at T = 500 (tol 1e-6)", 0.0, [&] {
    Eigen::MatrixXd b(3, 3);
    b << 0.4, 0.1, 0.0, 0.2, 0.3, -0.1, 0.0, 0.1, 0.2;
    Eigen::MatrixXd sigma(3, 3);
    sigma << 1.0, 0.3, 0.1, 0.3, 1.0, 0.2, 0.1, 0.2, 1.0;
    const auto panel = simulate(make_var({b}, sigma, Eigen::Vector3d(0.1, 0.0, -0.1)), 500, 2024);
    TvpConfig cfg;
    cfg.kappa1 = cfg.kappa2 = 1.0;
    cfg.prior_scale = 1.0;  // exact recursive least squares from the prior window onward
    const auto path = fit_tvp(panel, cfg);
    const auto terminal = model_at(path, path.size() - 1);
    const auto ols = fit_ols(panel, 1);
    const double err = std::max((terminal.lags[0] - ols.lags[0]).cwiseAbs().maxCoeff(),
                                (terminal.intercept - ols.intercept).cwiseAbs().maxCoeff());
    return Outcome{err <= 1e-6, fmt("max coefficient err %.3e", err)};
  });

  report(7, "dynamic TSI rises >= 10 points after a 0 -> 0.8 correlation break (T = 400)", 60.0, [&] {
    const auto before = make_var({Eigen::MatrixXd::Zero(2, 2)}, Eigen::MatrixXd::Identity(2, 2));
    const auto after = make_var({Eigen::MatrixXd::Zero(2, 2)}, testing::mat2(1.0, 0.8, 0.8, 1.0));
    Eigen::MatrixXd y(400, 2);
    y << simulate(before, 200, 11).returns(), simulate(after, 200, 12).returns();
    const auto dates = month_range({1990, 1}, 400);
    const ReturnPanel panel(dates, {"a", "b"}, y);
    const auto path = fit_tvp(panel, TvpConfig{});
    const auto dyn = dynamic_spillovers(path, kDefaultHorizon, default_bands(), default_dft_size(kDefaultHorizon));
    std::vector<double> first, second;
    for (const auto& p : dyn.points) {
      if (!p.ok) continue;
      (p.date < dates[200] ? first : second).push_back(p.tsi);
    }
    const double m1 = median(first), m2 = median(second);
    return Outcome{m2 - m1 >= 10.0, fmt("median TSI %.2f", m1) + fmt(" -> %.2f", m2)};
  });

  report(8, "ADF/KPSS size and power at 5%, 500 replications, T = 500", 120.0, [&] {
    const int reps = 500, t = 500;
    int adf_wn = 0, adf_rw = 0, kpss_wn = 0, kpss_rw = 0;
    std::mt19937_64 rng(8080);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> wn(t), rw(t);
    for (int rep = 0; rep < reps; ++rep) {
      double level = 0.0;
      for (int i = 0; i < t; ++i) {
        wn[static_cast<std::size_t>(i)] = z(rng);
        level += z(rng);
        rw[static_cast<std::size_t>(i)] = level;
      }
      auto rejects5 = [](const TestResult& r) { return r.rejected_at && *r.rejected_at != Significance::Ten; };
      adf_wn += rejects5(adf_test(wn));
      adf_rw += !rejects5(adf_test(rw));
      kpss_wn += !rejects5(kpss_test(wn));
      kpss_rw += rejects5(kpss_test(rw));
    }
    const bool pass = adf_wn >= 475 && adf_rw >= 450 && kpss_wn >= 450 && kpss_rw >= 475;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "ADF rejects WN %d/500 (>=475), keeps RW %d/500 (>=450); KPSS keeps WN %d/500 (>=450), "
                  "rejects RW %d/500 (>=475)",
                  adf_wn, adf_rw, kpss_wn, kpss_rw);
    return Outcome{pass, buf};
  });

  report(9, "Jarque-Bera from T = 143, S = 0.1512, K = 3.3763 equals 1.389 (tol 0.01)", 0.0, [&] {
    const double jb = jarque_bera_from_moments(143, 0.1512, 3.3763).statistic;
    return Outcome{std::abs(jb - 1.389) <= 0.01, fmt("JB = %.6f", jb)};
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
