#include "spillover/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spillover/error.hpp"

namespace spillover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_length(double a, double b) { return std::abs(a - b) <= kPathTieTolerance * std::max(a, b); }

}  // namespace

Eigen::VectorXd betweenness_from_source(const Eigen::MatrixXd& w, std::size_t s) {
  const auto n = static_cast<std::size_t>(w.rows());
  std::vector<double> dist(n, kInf), sigma(n, 0.0), delta(n, 0.0);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  dist[s] = 0.0;
  sigma[s] = 1.0;
  for (;;) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
    if (u == n) break;
    done[u] = true;
    order.push_back(u);
    for (std::size_t v = 0; v < n; ++v) {
      const double wt = w(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
      if (!(wt > 0.0) || done[v]) continue;
      const double cand = dist[u] + 1.0 / wt;
      if (dist[v] < kInf && same_length(cand, dist[v])) {
        sigma[v] += sigma[u];
        preds[v].push_back(u);
      } else if (cand < dist[v]) {
        dist[v] = cand;
        sigma[v] = sigma[u];
        preds[v] = {u};
      }
    }
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    for (std::size_t u : preds[v]) delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v]);
    if (v != s) out(static_cast<Eigen::Index>(v)) = delta[v];
  }
  return out;
}

std::string to_string(CentralityMeasure measure) {
  switch (measure) {
    case CentralityMeasure::Degree: return "degree";
    case CentralityMeasure::Closeness: return "closeness";
    case CentralityMeasure::Betweenness: return "betweenness";
    case CentralityMeasure::Eigenvector: return "eigenvector";
  }
  return "";
}

Eigen::MatrixXd SpilloverNetwork::weight_matrix() const {
  const auto n = static_cast<Eigen::Index>(names.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : edges) w(static_cast<Eigen::Index>(e.source), static_cast<Eigen::Index>(e.target)) = e.weight;
  return w;
}

CentralityRanking make_ranking(CentralityMeasure measure, Eigen::VectorXd scores,
                               const std::vector<std::string>& names) {
  std::vector<std::size_t> idx(names.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores(static_cast<Eigen::Index>(a)) > scores(static_cast<Eigen::Index>(b));
  });
  CentralityRanking out;
  out.measure = measure;
  out.scores = std::move(scores);
  for (auto i : idx) out.ranking.push_back(names[i]);
  return out;
}

SpilloverNetwork build_network(const SpilloverSummary& summary) {
  SpilloverNetwork net;
  net.band = summary.band;
  net.names = summary.names;
  net.net = summary.net;
  const auto m = summary.npdc.rows();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      if (i != j && summary.npdc(i, j) > kEdgeTolerance)
        net.edges.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i), summary.npdc(i, j)});
  return net;
}

CentralityRanking degree_centrality(const SpilloverNetwork& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
  for (const auto& e : net.edges) {
    deg(static_cast<Eigen::Index>(e.source)) += 1.0;
    deg(static_cast<Eigen::Index>(e.target)) += 1.0;
  }
  if (n > 1) deg /= static_cast<double>(n - 1);
  return make_ranking(CentralityMeasure::Degree, std::move(deg), net.names);
}

Eigen::VectorXd shortest_distances(const Eigen::MatrixXd& weights, std::size_t source) {
  const auto n = static_cast<std::size_t>(weights.rows());
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), kInf);
  std::vector<bool> done(n, false);
  dist(static_cast<Eigen::Index>(source)) = 0.0;
  for (;;) {
    Eigen::Index u = -1;
    for (Eigen::Index v = 0; v < static_cast<Eigen::Index>(n); ++v)
      if (!done[static_cast<std::size_t>(v)] && dist(v) < kInf && (u < 0 || dist(v) < dist(u))) u = v;
    if (u < 0) break;
    done[static_cast<std::size_t>(u)] = true;
    for (Eigen::Index v = 0; v < static_cast<Eigen::Index>(n); ++v)
      if (weights(u, v) > 0.0) dist(v) = std::min(dist(v), dist(u) + 1.0 / weights(u, v));
  }
  return dist;
}

CentralityRanking closeness_centrality(const SpilloverNetwork& net) {
  const Eigen::MatrixXd w = net.weight_matrix();
  const auto n = static_cast<long>(net.size());
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < n; ++s) {
    const Eigen::VectorXd d = shortest_distances(w, static_cast<std::size_t>(s));
    double total = 0.0;
    int reachable = 0;
    for (long v = 0; v < n; ++v)
      if (v != s && d(v) < kInf) {
        total += d(v);
        ++reachable;
      }
    scores(s) = reachable > 0 ? reachable / total : 0.0;
  }
  return make_ranking(CentralityMeasure::Closeness, std::move(scores), net.names);
}

CentralityRanking betweenness_centrality(const SpilloverNetwork& net) {
  const Eigen::MatrixXd w = net.weight_matrix();
  const auto n = static_cast<long>(net.size());
  std::vector<Eigen::VectorXd> partial(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < n; ++s) partial[static_cast<std::size_t>(s)] = betweenness_from_source(w, static_cast<std::size_t>(s));
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
  for (const auto& p : partial) scores += p;  // fixed order keeps results thread-count independent
  if (n > 2) scores /= static_cast<double>((n - 1) * (n - 2));
  return make_ranking(CentralityMeasure::Betweenness, std::move(scores), net.names);
}

CentralityRanking eigenvector_centrality(const SpilloverNetwork& net, double tolerance, int max_iterations) {
  if (net.edges.empty()) throw Error(ErrorCode::NoEdges, "eigenvector centrality of an empty network");
  const Eigen::MatrixXd w = net.weight_matrix();
  const Eigen::MatrixXd sym = 0.5 * (w + w.transpose());
  // Shift by half the row-sum bound: same eigenvectors, but bipartite graphs no longer oscillate.
  const double shift = 0.5 * sym.rowwise().sum().maxCoeff();
  const Eigen::MatrixXd op = sym + shift * Eigen::MatrixXd::Identity(w.rows(), w.cols());
  Eigen::VectorXd v = Eigen::VectorXd::Constant(w.rows(), 1.0);
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd next = op * v;
    next /= next.cwiseAbs().maxCoeff();
    const double change = (next - v).cwiseAbs().maxCoeff();
    v = std::move(next);
    if (change < tolerance) {
      v = v.cwiseMax(0.0);
      return make_ranking(CentralityMeasure::Eigenvector, std::move(v), net.names);
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "power iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

}  // namespace spillover
