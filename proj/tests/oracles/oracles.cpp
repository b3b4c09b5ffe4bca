#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

namespace oracle {

namespace {

bool connected_mask(std::size_t n, const std::vector<std::pair<int, int>> &pairs, std::uint32_t mask) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t groups = n;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        if (!(mask >> b & 1u))
            continue;
        int a = find(pairs[b].first), c = find(pairs[b].second);
        if (a != c) {
            parent[a] = c;
            --groups;
        }
    }
    return groups == 1;
}

bool ties(double a, double b) {
    return std::abs(a - b) <= 1e-10 * std::max(std::abs(a), std::abs(b));
}

struct Path {
    std::vector<int> nodes;
    double length;
};

// shortest[s][t] holds every minimum-length simple path from s to t.
std::vector<std::vector<std::vector<Path>>> all_shortest_paths(const std::vector<std::vector<double>> &w) {
    const int n = static_cast<int>(w.size());
    std::vector<std::vector<std::vector<Path>>> out(n, std::vector<std::vector<Path>>(n));
    for (int s = 0; s < n; ++s) {
        std::vector<std::vector<Path>> found(n);
        std::vector<int> stack{s};
        std::vector<bool> on(n, false);
        on[s] = true;
        auto dfs = [&](auto &&self, int x, double len) -> void {
            for (int y = 0; y < n; ++y) {
                if (w[x][y] == 0.0 || on[y])
                    continue;
                const double l = len + 1.0 / w[x][y];
                stack.push_back(y);
                found[y].push_back({stack, l});
                on[y] = true;
                self(self, y, l);
                on[y] = false;
                stack.pop_back();
            }
        };
        dfs(dfs, s, 0.0);
        for (int t = 0; t < n; ++t) {
            if (t == s || found[t].empty())
                continue;
            double best = found[t].front().length;
            for (const auto &p : found[t])
                best = std::min(best, p.length);
            for (auto &p : found[t])
                if (ties(p.length, best))
                    out[s][t].push_back(std::move(p));
        }
    }
    return out;
}

} // namespace

std::vector<IndexedGraph> connected_graphs(std::size_t n) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> pair_index(n, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            pair_index[i][j] = pair_index[j][i] = static_cast<int>(pairs.size());
            pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    std::vector<std::vector<int>> perm_maps;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> map(pairs.size());
        for (std::size_t b = 0; b < pairs.size(); ++b)
            map[b] = pair_index[perm[pairs[b].first]][perm[pairs[b].second]];
        perm_maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint32_t> canonical;
    const std::uint32_t limit = 1u << pairs.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (!connected_mask(n, pairs, mask))
            continue;
        std::uint32_t best = mask;
        for (const auto &map : perm_maps) {
            std::uint32_t image = 0;
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1u)
                    image |= 1u << map[b];
            best = std::min(best, image);
        }
        canonical.insert(best);
    }
    std::vector<IndexedGraph> out;
    for (auto mask : canonical) {
        std::vector<WeightedEdge> edges;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1u)
                edges.push_back({static_cast<leadernet::NodeIndex>(pairs[b].first),
                                 static_cast<leadernet::NodeIndex>(pairs[b].second), 1.0});
        out.push_back(IndexedGraph::from_edges(n, edges));
    }
    return out;
}

std::vector<std::vector<double>> weight_matrix(const IndexedGraph &g) {
    const auto n = g.node_count();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (const auto &e : g.undirected_edge_list())
        w[e.u][e.v] = w[e.v][e.u] = e.weight;
    return w;
}

PathOracle path_metrics(const IndexedGraph &g) {
    const auto w = weight_matrix(g);
    const int n = static_cast<int>(w.size());
    const auto sp = all_shortest_paths(w);
    PathOracle out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

    for (int s = 0; s < n; ++s) {
        double total = 0.0;
        for (int t = 0; t < n; ++t)
            if (t != s)
                total += sp[s][t].front().length;
        out.closeness[s] = n > 1 ? (n - 1) / total : 0.0;
    }
    if (n < 3)
        return out;

    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            const auto &paths = sp[s][t];
            for (int v = 0; v < n; ++v) {
                if (v == s || v == t)
                    continue;
                std::size_t through = 0;
                for (const auto &p : paths)
                    through += std::count(p.nodes.begin(), p.nodes.end(), v);
                out.betweenness[v] += static_cast<double>(through) / static_cast<double>(paths.size());
            }
        }

    // A unit packet leaves s for t and splits equally over the distinct first hops of the
    // shortest paths from each relay.
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s == t)
                continue;
            auto send = [&](auto &&self, int x, double amount) -> void {
                if (x == t)
                    return;
                if (x != s)
                    out.load[x] += amount;
                std::set<int> hops;
                for (const auto &p : sp[x][t])
                    hops.insert(p.nodes[1]);
                for (int y : hops)
                    self(self, y, amount / static_cast<double>(hops.size()));
            };
            send(send, s, 1.0);
        }

    const double pairs = (n - 1.0) * (n - 2.0);
    for (int v = 0; v < n; ++v) {
        out.betweenness[v] /= pairs / 2.0;
        out.load[v] /= pairs;
    }
    return out;
}

FlowOracle current_flow_metrics(const IndexedGraph &g) {
    const auto w = weight_matrix(g);
    const int n = static_cast<int>(w.size());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                lap(i, j) = -w[i][j];
                lap(i, i) += w[i][j];
            }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
    Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(n, n);
    // Ascending eigenvalues; index 0 is the constant vector of a connected graph.
    for (int k = 1; k < n; ++k) {
        const Eigen::VectorXd v = eig.eigenvectors().col(k);
        pinv += v * v.transpose() / eig.eigenvalues()(k);
    }

    FlowOracle out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    std::vector<double> resistance_sum(n, 0.0);
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            const Eigen::VectorXd phi = pinv.col(s) - pinv.col(t);
            const double r = phi(s) - phi(t);
            resistance_sum[s] += r;
            resistance_sum[t] += r;
            for (int v = 0; v < n; ++v) {
                if (v == s || v == t)
                    continue;
                double current = 0.0;
                for (int u = 0; u < n; ++u)
                    current += w[v][u] * std::abs(phi(v) - phi(u));
                out.betweenness[v] += current / 2.0;
            }
        }
    for (int v = 0; v < n; ++v) {
        out.closeness[v] = n > 1 ? (n - 1) / resistance_sum[v] : 0.0;
        out.betweenness[v] = n > 2 ? out.betweenness[v] / ((n - 1.0) * (n - 2.0) / 2.0) : 0.0;
    }
    return out;
}

std::vector<double> eigenvector(const IndexedGraph &g) {
    const auto w = weight_matrix(g);
    const int n = static_cast<int>(w.size());
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = w[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    Eigen::VectorXd v = eig.eigenvectors().col(n - 1);
    if (v.sum() < 0)
        v = -v;
    v /= v.norm();
    return {v.data(), v.data() + n};
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size())
        return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace oracle
