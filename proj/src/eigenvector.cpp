#include <leadernet/centrality.hpp>
#include <leadernet/error.hpp>

#include <cmath>

namespace leadernet {

std::vector<double> degree_centrality(const IndexedGraph &g) {
    const auto n = g.node_count();
    if (n < 2)
        throw MetricError("degree", "requires at least two nodes");
    std::vector<double> out(n);
    for (NodeIndex v = 0; v < n; ++v)
        out[v] = static_cast<double>(g.out_degree(v)) / static_cast<double>(n - 1);
    return out;
}

std::vector<double> strength(const IndexedGraph &g) {
    std::vector<double> out(g.node_count(), 0.0);
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        for (const auto &a : g.out_arcs(v))
            out[v] += a.weight;
    return out;
}

EigenvectorResult eigenvector_centrality(const IndexedGraph &g, const EigenvectorOptions &options) {
    const auto n = g.node_count();
    if (n == 0)
        throw MetricError("eigenvector", "graph is empty");
    if (g.directed())
        throw MetricError("eigenvector", "requires the undirected view");
    if (!g.connected())
        throw MetricError("eigenvector", "graph is not connected; compute on the largest component");
    EigenvectorResult res;
    if (n == 1) {
        res.values = {1.0};
        return res;
    }

    // ||A e_i|| <= lambda_max, so half the largest row norm is a positive shift below the
    // spectral radius: the dominant eigenvalue of A + shift*I stays strictly largest in
    // magnitude even for bipartite graphs.
    double row_norm = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
        double sq = 0.0;
        for (const auto &a : g.out_arcs(v))
            sq += a.weight * a.weight;
        row_norm = std::max(row_norm, std::sqrt(sq));
    }
    const double shift = 0.5 * row_norm;

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
    double change = 0.0;
    for (int it = 1; it <= options.max_iterations; ++it) {
        double norm_sq = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            double acc = shift * x[v];
            for (const auto &a : g.out_arcs(v))
                acc += a.weight * x[a.target];
            y[v] = acc;
            norm_sq += acc * acc;
        }
        const double norm = std::sqrt(norm_sq);
        change = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            y[v] /= norm;
            const double d = y[v] - x[v];
            change += d * d;
        }
        change = std::sqrt(change);
        x.swap(y);
        if (change < options.tolerance) {
            res.iterations = it;
            res.last_change = change;
            double rayleigh = 0.0;
            for (NodeIndex v = 0; v < n; ++v) {
                double ax = 0.0;
                for (const auto &a : g.out_arcs(v))
                    ax += a.weight * x[a.target];
                rayleigh += x[v] * ax;
            }
            res.eigenvalue = rayleigh;
            for (auto &value : x)
                value = std::max(value, 0.0);
            res.values = std::move(x);
            return res;
        }
    }
    throw ConvergenceError("eigenvector: power iteration did not converge in " +
                               std::to_string(options.max_iterations) + " iterations",
                           change);
}

} // namespace leadernet
