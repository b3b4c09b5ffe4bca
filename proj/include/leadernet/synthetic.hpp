#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <leadernet/flow_graph.hpp>
#include <leadernet/indexed_graph.hpp>

namespace leadernet::synthetic {

/// mt19937_64 is fully specified by the standard; the distributions are not, so these
/// helpers keep generated data identical across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling.
std::uint64_t uniform_index(Rng &rng, std::uint64_t bound);
/// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(Rng &rng);

struct CorpusOptions {
    std::uint64_t seed = 20200418;
    std::size_t records = 10000;
    /// Defaults to records / 3.
    std::size_t users = 0;
    /// Fraction of posts whose text misses every collection keyword.
    double off_topic_rate = 0.12;
    /// Fraction of lines deliberately written as broken JSON.
    double malformed_rate = 0.0;
};

/// Twitter v1.1-style status objects, one JSON document per line.
std::vector<std::string> generate_corpus(const CorpusOptions &options);
void write_corpus(const std::filesystem::path &path, const CorpusOptions &options);

/// Random spanning tree plus each remaining pair with probability `extra_edge_probability`.
/// Flows are uniform in [1, max_flow].
IndexedGraph random_connected_graph(Rng &rng, std::size_t n, double extra_edge_probability,
                                    std::uint64_t max_flow = 5);

/// Uniform random recursive tree with flows in [1, max_flow].
IndexedGraph random_tree(Rng &rng, std::size_t n, std::uint64_t max_flow = 5);

/// Barabasi-Albert growth: each new node attaches `edges_per_node` distinct edges to
/// existing nodes chosen proportionally to degree. Unit flows when max_flow == 1.
std::vector<WeightedEdge> preferential_attachment_edges(Rng &rng, std::size_t n, std::size_t edges_per_node,
                                                        std::uint64_t max_flow = 1);

/// Connected interaction graph with exactly `nodes` users and `edges` undirected edges:
/// preferential attachment backbone topped up with uniform random edges, heavy-tailed
/// flows and popularity counters.
FlowGraph interaction_graph(std::uint64_t seed, std::size_t nodes, std::size_t edges);

} // namespace leadernet::synthetic
