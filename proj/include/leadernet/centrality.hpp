#pragma once

#include <string>
#include <vector>

#include <leadernet/indexed_graph.hpp>

namespace leadernet {

/// Two shortest-path lengths closer than this (relative) are treated as ties. Lengths are
/// sums of reciprocal flows, so exact floating-point equality would miss real ties.
inline constexpr double kPathTieTolerance = 1e-10;

inline bool path_lengths_tie(double a, double b) {
    double scale = a > b ? a : b;
    double diff = a > b ? a - b : b - a;
    return diff <= kPathTieTolerance * scale;
}

/// Unweighted degree / (n - 1). Requires n >= 2.
std::vector<double> degree_centrality(const IndexedGraph &g);

/// Sum of incident flows, unnormalized.
std::vector<double> strength(const IndexedGraph &g);

struct EigenvectorOptions {
    double tolerance = 1e-8;
    int max_iterations = 1000;
};

struct EigenvectorResult {
    std::vector<double> values;
    double eigenvalue = 0.0; // Rayleigh quotient at convergence
    int iterations = 0;
    double last_change = 0.0;
};

/// Dominant eigenvector of the flow-weighted adjacency by shifted power iteration from the
/// uniform vector. Shifting by half a spectral-radius lower bound keeps bipartite graphs
/// from oscillating and is invariant to rescaling all flows.
EigenvectorResult eigenvector_centrality(const IndexedGraph &g, const EigenvectorOptions &options = {});

/// (n - 1) / sum of Dijkstra distances (edge length = inverse flow).
std::vector<double> closeness_centrality(const IndexedGraph &g, unsigned threads = 0);

/// Brandes accumulation; direction follows g.directed(). Normalized by (n-1)(n-2)/2 for
/// undirected and (n-1)(n-2) for directed graphs.
std::vector<double> betweenness_centrality(const IndexedGraph &g, unsigned threads = 0);

/// Packet-splitting load over ordered pairs, normalized by (n-1)(n-2). Undirected only.
std::vector<double> load_centrality(const IndexedGraph &g, unsigned threads = 0);

struct ShortestPathScores {
    std::vector<double> closeness;
    std::vector<double> betweenness;
    std::vector<double> load;
};

/// All three shortest-path metrics from one sweep of single-source searches.
ShortestPathScores shortest_path_scores(const IndexedGraph &g, unsigned threads = 0);

struct CurrentFlowOptions {
    /// Graphs up to this size use a dense pseudo-inverse; larger ones are solved column by
    /// column with Jacobi-preconditioned conjugate gradients on a grounded Laplacian.
    std::size_t dense_limit = 2000;
    double solver_tolerance = 1e-8;
    int max_solver_iterations = 20000;
    unsigned threads = 0;
};

/// (n - 1) / sum of effective resistances (conductance = flow).
std::vector<double> current_flow_closeness(const IndexedGraph &g, const CurrentFlowOptions &options = {});

/// Random-walk betweenness: average throughput over all source/sink pairs excluding the
/// node's own pairs, normalized by (n-1)(n-2)/2. All zeros when n < 3.
std::vector<double> current_flow_betweenness(const IndexedGraph &g, const CurrentFlowOptions &options = {});

struct CurrentFlowScores {
    std::vector<double> closeness;
    std::vector<double> betweenness;
};

/// Both current-flow metrics sharing one Laplacian inversion.
CurrentFlowScores current_flow_scores(const IndexedGraph &g, const CurrentFlowOptions &options = {});

} // namespace leadernet
