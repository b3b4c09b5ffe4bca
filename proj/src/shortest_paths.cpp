#include <leadernet/centrality.hpp>
#include <leadernet/error.hpp>
#include <leadernet/parallel.hpp>

#include <limits>
#include <queue>

namespace leadernet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Single-source shortest-path DAG with path counts, reused across sources.
struct SourceSweep {
    std::vector<double> dist;
    std::vector<double> sigma;
    std::vector<std::vector<NodeIndex>> preds;
    std::vector<NodeIndex> order; // settled order, non-decreasing distance
    std::vector<char> settled;
    std::vector<double> scratch;

    explicit SourceSweep(std::size_t n) : dist(n), sigma(n), preds(n), settled(n), scratch(n) {}

    // Directed graphs need predecessor lookups along reversed arcs; the sweep itself only
    // ever follows out-arcs, so one routine serves both views.
    void run(const IndexedGraph &g, NodeIndex source) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(settled.begin(), settled.end(), 0);
        for (auto idx : order)
            preds[idx].clear();
        preds[source].clear();
        order.clear();

        using Entry = std::pair<double, NodeIndex>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        dist[source] = 0.0;
        sigma[source] = 1.0;
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (settled[u] || d > dist[u])
                continue;
            settled[u] = 1;
            order.push_back(u);
            for (const auto &a : g.out_arcs(u)) {
                const NodeIndex v = a.target;
                if (settled[v])
                    continue;
                const double nd = d + a.length;
                if (dist[v] == kInf || (nd < dist[v] && !path_lengths_tie(nd, dist[v]))) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    preds[v].assign(1, u);
                    heap.emplace(nd, v);
                } else if (path_lengths_tie(nd, dist[v])) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
    }
};

void require_nonempty(const IndexedGraph &g, const char *metric) {
    if (g.node_count() == 0)
        throw MetricError(metric, "graph is empty");
}

struct SweepOutputs {
    bool closeness = false;
    bool betweenness = false;
    bool load = false;
};

ShortestPathScores sweep_all(const IndexedGraph &g, unsigned threads, SweepOutputs want) {
    const std::size_t n = g.node_count();
    ShortestPathScores out;
    if (want.closeness)
        out.closeness.assign(n, 0.0);
    if (want.betweenness)
        out.betweenness.assign(n, 0.0);
    if (want.load)
        out.load.assign(n, 0.0);
    if (n == 0)
        return out;

    BlockPartition blocks(n);
    const std::size_t nb = blocks.block_count();
    std::vector<std::vector<double>> bc_part(want.betweenness ? nb : 0);
    std::vector<std::vector<double>> load_part(want.load ? nb : 0);
    std::vector<char> unreachable(n, 0);

    parallel_for(nb, threads, [&](std::size_t b) {
        SourceSweep sweep(n);
        std::vector<double> delta(n), units(n);
        if (want.betweenness)
            bc_part[b].assign(n, 0.0);
        if (want.load)
            load_part[b].assign(n, 0.0);
        for (std::size_t s = blocks.begin(b); s < blocks.end(b); ++s) {
            const auto src = static_cast<NodeIndex>(s);
            sweep.run(g, src);
            if (want.closeness) {
                if (sweep.order.size() != n) {
                    unreachable[s] = 1;
                } else {
                    double total = 0.0;
                    for (auto v : sweep.order)
                        total += sweep.dist[v];
                    out.closeness[s] = n > 1 ? static_cast<double>(n - 1) / total : 0.0;
                }
            }
            if (want.betweenness) {
                for (auto v : sweep.order)
                    delta[v] = 0.0;
                auto &bc = bc_part[b];
                for (auto it = sweep.order.rbegin(); it != sweep.order.rend(); ++it) {
                    const NodeIndex w = *it;
                    const double coeff = (1.0 + delta[w]) / sweep.sigma[w];
                    for (auto p : sweep.preds[w])
                        delta[p] += sweep.sigma[p] * coeff;
                    if (w != src)
                        bc[w] += delta[w];
                }
            }
            if (want.load) {
                for (auto v : sweep.order)
                    units[v] = 1.0;
                auto &load = load_part[b];
                for (auto it = sweep.order.rbegin(); it != sweep.order.rend(); ++it) {
                    const NodeIndex w = *it;
                    if (w == src)
                        continue;
                    const double share = units[w] / static_cast<double>(sweep.preds[w].size());
                    for (auto p : sweep.preds[w])
                        units[p] += share;
                    load[w] += units[w] - 1.0;
                }
            }
        }
    });

    if (want.closeness)
        for (std::size_t s = 0; s < n; ++s)
            if (unreachable[s])
                throw MetricError("closeness", "graph is not connected");

    // Block-ordered reduction keeps the result independent of the worker count.
    const double pairs = n >= 3 ? static_cast<double>(n - 1) * static_cast<double>(n - 2) : 0.0;
    auto reduce = [&](std::vector<std::vector<double>> &parts, std::vector<double> &dst) {
        for (const auto &part : parts)
            for (std::size_t v = 0; v < n; ++v)
                dst[v] += part[v];
        for (auto &x : dst)
            x = pairs > 0.0 ? x / pairs : 0.0;
    };
    if (want.betweenness)
        reduce(bc_part, out.betweenness);
    if (want.load)
        reduce(load_part, out.load);
    return out;
}

} // namespace

std::vector<double> closeness_centrality(const IndexedGraph &g, unsigned threads) {
    require_nonempty(g, "closeness");
    if (g.directed())
        throw MetricError("closeness", "requires the undirected view");
    return sweep_all(g, threads, {.closeness = true}).closeness;
}

std::vector<double> betweenness_centrality(const IndexedGraph &g, unsigned threads) {
    require_nonempty(g, "betweenness");
    // Each unordered pair is seen from both endpoints in the undirected case, so the
    // ordered-pair normalization (n-1)(n-2) equals dividing the unordered sum by (n-1)(n-2)/2.
    return sweep_all(g, threads, {.betweenness = true}).betweenness;
}

std::vector<double> load_centrality(const IndexedGraph &g, unsigned threads) {
    require_nonempty(g, "load");
    if (g.directed())
        throw MetricError("load", "requires the undirected view");
    return sweep_all(g, threads, {.load = true}).load;
}

ShortestPathScores shortest_path_scores(const IndexedGraph &g, unsigned threads) {
    require_nonempty(g, "closeness");
    if (g.directed())
        throw MetricError("closeness", "requires the undirected view");
    return sweep_all(g, threads, {.closeness = true, .betweenness = true, .load = true});
}

} // namespace leadernet
