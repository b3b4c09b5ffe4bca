#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <leadernet/ingest.hpp>

namespace leadernet {

enum class GraphView { directed, undirected };

std::string_view to_string(GraphView view);
GraphView graph_view_from_string(std::string_view name);

struct EdgeFlow {
    std::uint64_t flow = 0;
    /// 1/flow, filled in by FlowGraph::finalize().
    double inverse_flow = 0.0;

    bool operator==(const EdgeFlow &) const = default;
};

struct GraphStats {
    std::size_t node_count = 0;
    /// Undirected edges (user pairs with flow in either direction).
    std::size_t edge_count = 0;
    std::size_t directed_edge_count = 0;
    std::size_t component_count = 0;

    bool operator==(const GraphStats &) const = default;
};

using NodeKey = std::string;
using DirectedKey = std::pair<NodeKey, NodeKey>;

/// User-keyed interaction graph. Directed flows are stored; the undirected view sums
/// both directions. The graph is built incrementally, then frozen by finalize().
class FlowGraph {
public:
    /// Inserts the user or merges its profile: the most recent profile observation wins.
    void add_user(const UserRef &user);

    /// Increments flow(author -> target) by one. Throws on self-interactions.
    void add_interaction(const UserRef &author, const Interaction &interaction);

    /// add_user for the author plus add_interaction for every extracted interaction.
    void add_record(const InteractionRecord &record);

    /// Adds `flow` units on source -> target; both endpoints must already exist.
    void add_flow(const NodeKey &source, const NodeKey &target, std::uint64_t flow);

    /// Computes inverse_flow for every edge and freezes the graph.
    void finalize();
    bool finalized() const { return finalized_; }

    const std::map<NodeKey, UserRef> &nodes() const { return nodes_; }
    const std::map<DirectedKey, EdgeFlow> &directed_edges() const { return edges_; }

    bool contains(const NodeKey &key) const { return nodes_.count(key) != 0; }
    std::size_t node_count() const { return nodes_.size(); }

    /// Directed flow, 0 when absent.
    std::uint64_t flow(const NodeKey &source, const NodeKey &target) const;
    /// flow(u, v) + flow(v, u).
    std::uint64_t undirected_weight(const NodeKey &u, const NodeKey &v) const;

    /// Undirected edges keyed by (smaller key, larger key) with summed flow.
    std::map<DirectedKey, std::uint64_t> undirected_edges() const;

    /// Unweighted number of distinct undirected neighbours per node.
    std::map<NodeKey, std::size_t> undirected_degrees() const;

    /// Induced finalized subgraph; edge values are copied verbatim.
    FlowGraph induced(const std::set<NodeKey> &keep) const;

    bool operator==(const FlowGraph &other) const {
        return nodes_ == other.nodes_ && edges_ == other.edges_;
    }

private:
    void require_mutable() const;

    std::map<NodeKey, UserRef> nodes_;
    std::map<DirectedKey, EdgeFlow> edges_;
    bool finalized_ = false;
};

/// Merges an observation of a user into the stored profile (order independent).
void merge_profile(UserRef &stored, const UserRef &incoming);

struct FilterResult {
    FlowGraph graph;
    GraphStats stats;
};

/// Single pass: every node whose undirected degree is below k in the input is removed
/// together with its edges. Not iterated to a k-core.
FilterResult filter_min_degree(const FlowGraph &graph, std::size_t k);

/// Components of the undirected view, ordered by size desc, internal edge count desc,
/// then smallest member key. Members are sorted.
std::vector<std::vector<NodeKey>> connected_components(const FlowGraph &graph);

FlowGraph largest_component(const FlowGraph &graph);

GraphStats stats(const FlowGraph &graph);

/// `flowgraph v1` edge-list persistence.
void write_flowgraph(const FlowGraph &graph, std::ostream &out);
std::string to_flowgraph_text(const FlowGraph &graph);
FlowGraph read_flowgraph(std::istream &in);
FlowGraph read_flowgraph_file(const std::string &path);

nlohmann::json to_json(const GraphStats &stats);

} // namespace leadernet
