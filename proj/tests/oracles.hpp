#pragma once

// Brute-force oracles. Deliberately plain loops over std::vector so they share
// no code path with the library kernels they check.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "spillover/frequency.hpp"
#include "spillover/var.hpp"

namespace spillover::oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat to_mat(const Eigen::MatrixXd& a) {
  Mat out(static_cast<std::size_t>(a.rows()), std::vector<double>(static_cast<std::size_t>(a.cols())));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat out(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline Mat transpose(const Mat& a) {
  Mat out(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

/// A_0..A_{H-1} by enumerating the recursion explicitly.
inline std::vector<Mat> vma(const VarModel& model, int horizon) {
  const std::size_t m = static_cast<std::size_t>(model.dimension());
  std::vector<Mat> a;
  Mat id(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) id[i][i] = 1.0;
  a.push_back(id);
  for (int h = 1; h < horizon; ++h) {
    Mat acc(m, std::vector<double>(m, 0.0));
    for (int i = 1; i <= std::min(h, model.lag_order()); ++i) {
      const Mat t = mul(to_mat(model.lags[static_cast<std::size_t>(i - 1)]), a[static_cast<std::size_t>(h - i)]);
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) acc[x][y] += t[x][y];
    }
    a.push_back(acc);
  }
  return a;
}

/// Term-by-term generalized FEVD with unit vectors e_i, e_j; returns the row-normalized table.
inline Mat gfevd_normalized(const VarModel& model, int horizon) {
  const std::size_t m = static_cast<std::size_t>(model.dimension());
  const Mat sigma = to_mat(model.sigma);
  const auto a = vma(model, horizon);
  auto unit = [m](std::size_t k) {
    Mat e(m, std::vector<double>(1, 0.0));
    e[k][0] = 1.0;
    return e;
  };
  Mat d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    const Mat ei_t = transpose(unit(i));
    double denom = 0.0;
    for (int h = 0; h < horizon; ++h)
      denom += mul(mul(mul(ei_t, a[h]), sigma), mul(transpose(a[h]), unit(i)))[0][0];
    for (std::size_t j = 0; j < m; ++j) {
      double num = 0.0;
      for (int h = 0; h < horizon; ++h) {
        const double v = mul(mul(mul(ei_t, a[h]), sigma), unit(j))[0][0];
        num += v * v;
      }
      d[i][j] = num / sigma[j][j] / denom;
    }
  }
  for (auto& row : d) {
    double s = 0.0;
    for (double v : row) s += v;
    for (double& v : row) v /= s;
  }
  return d;
}

/// Band tables from an explicit complex DFT over all N grid points.
inline std::vector<Mat> band_tables(const VarModel& model, int horizon, const std::vector<FrequencyBand>& bands,
                                    int n) {
  using cd = std::complex<double>;
  const std::size_t m = static_cast<std::size_t>(model.dimension());
  const Mat sigma = to_mat(model.sigma);
  const auto a = vma(model, horizon);
  std::vector<Mat> c;
  for (const auto& ah : a) c.push_back(mul(ah, sigma));

  std::vector<double> row_total(m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (int h = 0; h < horizon; ++h) row_total[i] += c[h][i][j] * c[h][i][j] / sigma[j][j];

  std::vector<Mat> out(bands.size(), Mat(m, std::vector<double>(m, 0.0)));
  for (int k = 0; k < n; ++k) {
    const double omega = 2.0 * std::numbers::pi * k / n;
    // a conjugate pair counts toward the band holding its member in (0, pi]
    const int kk = std::min(k, n - k);
    const double folded = 2.0 * std::numbers::pi * kk / n;
    std::size_t band = bands.size();
    for (std::size_t b = 0; b < bands.size(); ++b) {
      const bool in = kk == 0 ? bands[b].lower == 0.0 : (folded > bands[b].lower && folded <= bands[b].upper);
      if (in) band = b;
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        cd acc(0.0, 0.0);
        for (int h = 0; h < horizon; ++h) acc += c[h][i][j] * std::polar(1.0, -omega * h);
        out[band][i][j] += std::norm(acc) / sigma[j][j] / n / row_total[i];
      }
  }
  return out;
}

/// All-pairs shortest paths (Floyd-Warshall) with edge length 1/weight.
inline Mat all_pairs(const Eigen::MatrixXd& w) {
  const std::size_t n = static_cast<std::size_t>(w.rows());
  const double inf = std::numeric_limits<double>::infinity();
  Mat d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (w(i, j) > 0.0) d[i][j] = 1.0 / w(i, j);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline std::vector<double> closeness(const Eigen::MatrixXd& w) {
  const auto d = all_pairs(w);
  std::vector<double> out(d.size(), 0.0);
  for (std::size_t s = 0; s < d.size(); ++s) {
    double total = 0.0;
    int reach = 0;
    for (std::size_t t = 0; t < d.size(); ++t)
      if (t != s && std::isfinite(d[s][t])) {
        total += d[s][t];
        ++reach;
      }
    out[s] = reach ? reach / total : 0.0;
  }
  return out;
}

/// Betweenness by enumerating every simple path between every ordered pair.
inline std::vector<double> betweenness(const Eigen::MatrixXd& w) {
  const std::size_t n = static_cast<std::size_t>(w.rows());
  std::vector<double> score(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<std::pair<double, std::vector<std::size_t>>> paths;
      std::vector<std::size_t> stack{s};
      std::vector<bool> on(n, false);
      on[s] = true;
      std::function<void(std::size_t, double)> dfs = [&](std::size_t u, double len) {
        if (u == t) {
          paths.emplace_back(len, stack);
          return;
        }
        for (std::size_t v = 0; v < n; ++v)
          if (!on[v] && w(u, v) > 0.0) {
            on[v] = true;
            stack.push_back(v);
            dfs(v, len + 1.0 / w(u, v));
            stack.pop_back();
            on[v] = false;
          }
      };
      dfs(s, 0.0);
      if (paths.empty()) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : paths) best = std::min(best, p.first);
      std::vector<const std::vector<std::size_t>*> shortest;
      for (const auto& p : paths)
        if (std::abs(p.first - best) <= 1e-12 * best) shortest.push_back(&p.second);
      for (const auto* p : shortest)
        for (std::size_t k = 1; k + 1 < p->size(); ++k) score[(*p)[k]] += 1.0 / shortest.size();
    }
  if (n > 2)
    for (double& v : score) v /= static_cast<double>((n - 1) * (n - 2));
  return score;
}

}  // namespace spillover::oracle
