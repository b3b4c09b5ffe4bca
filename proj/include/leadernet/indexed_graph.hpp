#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <leadernet/flow_graph.hpp>

namespace leadernet {

using NodeIndex = std::uint32_t;

struct WeightedEdge {
    NodeIndex u;
    NodeIndex v;
    double weight;
};

/// Compressed adjacency used by the metric kernels. Nodes are indexed in user_key order.
/// Undirected graphs store every edge in both directions.
class IndexedGraph {
public:
    struct Arc {
        NodeIndex target;
        double weight; // flow, used as conductance and adjacency weight
        double length; // inverse flow, used as shortest-path length
    };

    IndexedGraph() = default;

    /// Undirected view sums the flows of both directions before inverting.
    static IndexedGraph from_flow_graph(const FlowGraph &graph, GraphView view = GraphView::undirected);

    /// For tests and generators. Parallel edges are merged by summing weights.
    static IndexedGraph from_edges(std::size_t node_count, const std::vector<WeightedEdge> &edges,
                                   bool directed = false, std::vector<std::string> keys = {});

    std::size_t node_count() const { return keys_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    bool directed() const { return directed_; }

    std::span<const Arc> out_arcs(NodeIndex v) const {
        return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
    }
    std::size_t out_degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }

    const std::vector<std::string> &keys() const { return keys_; }
    const std::string &key(NodeIndex v) const { return keys_[v]; }

    /// Undirected edge list with u < v. Only valid for undirected graphs.
    std::vector<WeightedEdge> undirected_edge_list() const;

    /// True when the undirected view has a single component (n >= 1).
    bool connected() const;

    /// Copy with every weight multiplied by `factor` (lengths divided).
    IndexedGraph scaled(double factor) const;

private:
    std::vector<std::string> keys_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Arc> arcs_;
    bool directed_ = false;
};

} // namespace leadernet
