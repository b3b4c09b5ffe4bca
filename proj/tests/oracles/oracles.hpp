#pragma once

// Reference implementations for the metric kernels. They share no code with the library
// beyond the IndexedGraph container and favour obviousness over speed.

#include <cstdint>
#include <vector>

#include <leadernet/indexed_graph.hpp>

namespace oracle {

using leadernet::IndexedGraph;
using leadernet::WeightedEdge;

/// Every connected simple graph on n nodes, one representative per isomorphism class,
/// with unit flows.
std::vector<IndexedGraph> connected_graphs(std::size_t n);

/// Dense symmetric weight matrix of an undirected graph.
std::vector<std::vector<double>> weight_matrix(const IndexedGraph &g);

struct PathOracle {
    std::vector<double> closeness;
    std::vector<double> betweenness;
    std::vector<double> load;
};

/// Enumerates every simple path between every pair, keeps the minimum-length ones and
/// derives the three path metrics from them directly.
PathOracle path_metrics(const IndexedGraph &g);

struct FlowOracle {
    std::vector<double> closeness;
    std::vector<double> betweenness;
};

/// Laplacian pseudo-inverse from a full eigendecomposition, then explicit potentials for
/// every source/sink pair.
FlowOracle current_flow_metrics(const IndexedGraph &g);

/// Dominant eigenvector of the dense adjacency, unit L2 norm, non-negative.
std::vector<double> eigenvector(const IndexedGraph &g);

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b);

} // namespace oracle
