#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spillover/connectedness.hpp"

namespace spillover {

inline constexpr double kEdgeTolerance = 1e-12;

struct NetworkEdge {
  std::size_t source = 0;  // net transmitter
  std::size_t target = 0;  // net receiver
  double weight = 0.0;     // NPDC magnitude, percent
};

/// Net pairwise spillover graph: edge j -> i iff npdc(i, j) > kEdgeTolerance.
struct SpilloverNetwork {
  std::optional<std::string> band;
  std::vector<std::string> names;
  Eigen::VectorXd net;
  std::vector<NetworkEdge> edges;

  std::size_t size() const { return names.size(); }
  /// Dense weights, W(source, target).
  Eigen::MatrixXd weight_matrix() const;
};

enum class CentralityMeasure { Degree, Closeness, Betweenness, Eigenvector };

std::string to_string(CentralityMeasure measure);

struct CentralityRanking {
  CentralityMeasure measure = CentralityMeasure::Degree;
  Eigen::VectorXd scores;
  std::vector<std::string> ranking;  // descending score, ties by node order
};

CentralityRanking make_ranking(CentralityMeasure measure, Eigen::VectorXd scores,
                               const std::vector<std::string>& names);

SpilloverNetwork build_network(const SpilloverSummary& summary);

/// (in-degree + out-degree) / (M - 1), unweighted.
CentralityRanking degree_centrality(const SpilloverNetwork& net);

/// Out-closeness with edge length 1/weight: reachable / sum of distances; 0 if nothing is reachable.
CentralityRanking closeness_centrality(const SpilloverNetwork& net);

/// Weighted directed betweenness (edge length 1/weight), equal-length paths share credit,
/// normalized by (M - 1)(M - 2). Sources are processed in parallel.
CentralityRanking betweenness_centrality(const SpilloverNetwork& net);

/// Principal eigenvector of (W + W')/2 by power iteration, scaled to unit max.
CentralityRanking eigenvector_centrality(const SpilloverNetwork& net, double tolerance = 1e-10,
                                         int max_iterations = 1000);

/// Single-source Dijkstra on 1/weight lengths; unreachable nodes get +inf.
Eigen::VectorXd shortest_distances(const Eigen::MatrixXd& weights, std::size_t source);

/// Brandes dependency of every node on shortest paths from `source` (unnormalized).
Eigen::VectorXd betweenness_from_source(const Eigen::MatrixXd& weights, std::size_t source);

/// Relative tolerance under which two path lengths count as the same shortest length.
inline constexpr double kPathTieTolerance = 1e-12;

}  // namespace spillover
