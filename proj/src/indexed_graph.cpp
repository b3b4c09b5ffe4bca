#include <leadernet/error.hpp>
#include <leadernet/indexed_graph.hpp>

#include <algorithm>
#include <map>

namespace leadernet {

IndexedGraph IndexedGraph::from_flow_graph(const FlowGraph &graph, GraphView view) {
    std::map<NodeKey, NodeIndex> index;
    std::vector<std::string> keys;
    keys.reserve(graph.node_count());
    for (const auto &[key, _] : graph.nodes()) {
        index.emplace(key, static_cast<NodeIndex>(keys.size()));
        keys.push_back(key);
    }
    std::vector<WeightedEdge> edges;
    if (view == GraphView::directed) {
        for (const auto &[k, e] : graph.directed_edges())
            edges.push_back({index.at(k.first), index.at(k.second), static_cast<double>(e.flow)});
    } else {
        for (const auto &[k, w] : graph.undirected_edges())
            edges.push_back({index.at(k.first), index.at(k.second), static_cast<double>(w)});
    }
    const auto n = keys.size();
    return from_edges(n, edges, view == GraphView::directed, std::move(keys));
}

IndexedGraph IndexedGraph::from_edges(std::size_t node_count, const std::vector<WeightedEdge> &edges,
                                      bool directed, std::vector<std::string> keys) {
    IndexedGraph g;
    g.directed_ = directed;
    if (keys.empty()) {
        // Zero-padded so that lexicographic key order matches index order.
        std::size_t width = std::to_string(node_count == 0 ? 0 : node_count - 1).size();
        for (std::size_t i = 0; i < node_count; ++i) {
            auto s = std::to_string(i);
            keys.push_back("n" + std::string(width - s.size(), '0') + s);
        }
    }
    if (keys.size() != node_count)
        throw Error("key count does not match node count");
    g.keys_ = std::move(keys);

    std::map<std::pair<NodeIndex, NodeIndex>, double> merged;
    for (const auto &e : edges) {
        if (e.u >= node_count || e.v >= node_count)
            throw Error("edge endpoint out of range");
        if (e.u == e.v)
            throw Error("self-edge rejected");
        if (!(e.weight > 0.0))
            throw Error("edge weight must be positive");
        auto key = directed ? std::pair{e.u, e.v} : std::pair{std::min(e.u, e.v), std::max(e.u, e.v)};
        merged[key] += e.weight;
    }
    std::vector<std::vector<Arc>> adj(node_count);
    for (const auto &[k, w] : merged) {
        adj[k.first].push_back({k.second, w, 1.0 / w});
        if (!directed)
            adj[k.second].push_back({k.first, w, 1.0 / w});
    }
    g.offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) {
        std::sort(adj[v].begin(), adj[v].end(), [](const Arc &a, const Arc &b) { return a.target < b.target; });
        g.offsets_[v + 1] = g.offsets_[v] + adj[v].size();
        g.arcs_.insert(g.arcs_.end(), adj[v].begin(), adj[v].end());
    }
    return g;
}

std::vector<WeightedEdge> IndexedGraph::undirected_edge_list() const {
    if (directed_)
        throw Error("undirected edge list requested from a directed graph");
    std::vector<WeightedEdge> out;
    out.reserve(arcs_.size() / 2);
    for (NodeIndex v = 0; v < node_count(); ++v)
        for (const auto &a : out_arcs(v))
            if (v < a.target)
                out.push_back({v, a.target, a.weight});
    return out;
}

bool IndexedGraph::connected() const {
    const auto n = node_count();
    if (n == 0)
        return false;
    // Treat arcs as undirected for directed graphs.
    std::vector<std::vector<NodeIndex>> extra;
    if (directed_) {
        extra.resize(n);
        for (NodeIndex v = 0; v < n; ++v)
            for (const auto &a : out_arcs(v))
                extra[a.target].push_back(v);
    }
    std::vector<char> seen(n, 0);
    std::vector<NodeIndex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        auto visit = [&](NodeIndex w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        };
        for (const auto &a : out_arcs(v))
            visit(a.target);
        if (directed_)
            for (auto w : extra[v])
                visit(w);
    }
    return count == n;
}

IndexedGraph IndexedGraph::scaled(double factor) const {
    IndexedGraph g = *this;
    for (auto &a : g.arcs_) {
        a.weight *= factor;
        a.length = 1.0 / a.weight;
    }
    return g;
}

} // namespace leadernet
