#include <leadernet/centrality.hpp>
#include <leadernet/error.hpp>
#include <leadernet/laplacian.hpp>
#include <leadernet/parallel.hpp>

#include <algorithm>

namespace leadernet {

namespace {

void require_connected(const IndexedGraph &g, const char *metric, std::size_t min_nodes) {
    if (g.directed())
        throw MetricError(metric, "requires the undirected view");
    if (g.node_count() < min_nodes)
        throw MetricError(metric, "requires at least " + std::to_string(min_nodes) + " nodes");
    if (!g.connected())
        throw MetricError(metric, "graph is not connected; compute on the largest component");
}

std::vector<double> closeness_from(const Eigen::MatrixXd &P) {
    const auto n = P.rows();
    const double trace = P.trace();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index v = 0; v < n; ++v) {
        // sum_u R(u, v) = tr(P) + n P_vv - 2 sum_u P_uv
        const double total = trace + static_cast<double>(n) * P(v, v) - 2.0 * P.col(v).sum();
        out[static_cast<std::size_t>(v)] = static_cast<double>(n - 1) / total;
    }
    return out;
}

// For edge e = (v, w) with conductance c, the current carried for source s and sink t is
// F[s] - F[t] with F = c (P_v - P_w). Summing |F[s] - F[t]| over all pairs is done on the
// sorted vector in O(n log n).
std::vector<double> betweenness_from(const IndexedGraph &g, const Eigen::MatrixXd &P, unsigned threads) {
    const auto n = g.node_count();
    if (n < 3)
        return std::vector<double>(n, 0.0);
    const auto edges = g.undirected_edge_list();
    std::vector<double> edge_total(edges.size(), 0.0);
    BlockPartition blocks(edges.size());
    parallel_for(blocks.block_count(), threads, [&](std::size_t b) {
        std::vector<double> f(n);
        for (std::size_t e = blocks.begin(b); e < blocks.end(b); ++e) {
            const auto &edge = edges[e];
            auto cv = P.col(edge.u);
            auto cw = P.col(edge.v);
            for (std::size_t s = 0; s < n; ++s)
                f[s] = edge.weight * (cv[static_cast<Eigen::Index>(s)] - cw[static_cast<Eigen::Index>(s)]);
            std::sort(f.begin(), f.end());
            double total = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                total += f[j] * (2.0 * static_cast<double>(j) - static_cast<double>(n - 1));
            edge_total[e] = total;
        }
    });

    std::vector<double> raw(n, 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        raw[edges[e].u] += 0.5 * edge_total[e];
        raw[edges[e].v] += 0.5 * edge_total[e];
    }
    // Each of the n-1 pairs having v as an endpoint contributes exactly 1/2 (all current
    // leaves the source through its incident edges); remove them.
    const double own = 0.5 * static_cast<double>(n - 1);
    const double norm = 0.5 * static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (auto &x : raw)
        x = std::clamp((x - own) / norm, 0.0, 1.0);
    return raw;
}

} // namespace

std::vector<double> current_flow_closeness(const IndexedGraph &g, const CurrentFlowOptions &options) {
    require_connected(g, "cfcloseness", 2);
    try {
        return closeness_from(potential_matrix(g, options));
    } catch (const MetricError &) {
        throw;
    } catch (const Error &e) {
        throw MetricError("cfcloseness", e.what());
    }
}

std::vector<double> current_flow_betweenness(const IndexedGraph &g, const CurrentFlowOptions &options) {
    require_connected(g, "cfbetweenness", 2);
    try {
        return betweenness_from(g, potential_matrix(g, options), options.threads);
    } catch (const MetricError &) {
        throw;
    } catch (const Error &e) {
        throw MetricError("cfbetweenness", e.what());
    }
}

CurrentFlowScores current_flow_scores(const IndexedGraph &g, const CurrentFlowOptions &options) {
    require_connected(g, "cfbetweenness", 2);
    CurrentFlowScores out;
    try {
        const auto P = potential_matrix(g, options);
        out.closeness = closeness_from(P);
        out.betweenness = betweenness_from(g, P, options.threads);
    } catch (const MetricError &) {
        throw;
    } catch (const Error &e) {
        throw MetricError("current-flow", e.what());
    }
    return out;
}

} // namespace leadernet
