#include <leadernet/error.hpp>
#include <leadernet/laplacian.hpp>
#include <leadernet/parallel.hpp>

#include <Eigen/IterativeLinearSolvers>

namespace leadernet {

Eigen::SparseMatrix<double> laplacian(const IndexedGraph &g) {
    if (g.directed())
        throw Error("Laplacian requires an undirected graph");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(g.arc_count() + g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        double diag = 0.0;
        for (const auto &a : g.out_arcs(v)) {
            triplets.emplace_back(v, a.target, -a.weight);
            diag += a.weight;
        }
        triplets.emplace_back(v, v, diag);
    }
    Eigen::SparseMatrix<double> L(n, n);
    L.setFromTriplets(triplets.begin(), triplets.end());
    return L;
}

Eigen::MatrixXd dense_pseudo_inverse(const IndexedGraph &g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (n == 0)
        return {};
    if (!g.connected())
        throw Error("pseudo-inverse requires a connected graph");
    const double shift = 1.0 / static_cast<double>(n);
    Eigen::MatrixXd M = Eigen::MatrixXd(laplacian(g)).array() + shift;
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw Error("Laplacian factorization failed");
    Eigen::MatrixXd P = llt.solve(Eigen::MatrixXd::Identity(n, n));
    P.array() -= shift;
    return P;
}

Eigen::MatrixXd grounded_inverse(const IndexedGraph &g, NodeIndex ground, const CurrentFlowOptions &options) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (n == 0)
        return {};
    if (ground >= g.node_count())
        throw Error("ground node out of range");
    if (!g.connected())
        throw Error("grounded inverse requires a connected graph");
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    if (n == 1)
        return P;

    // Reduced system: node indices above `ground` shift down by one.
    auto reduced = [ground](NodeIndex v) { return static_cast<Eigen::Index>(v < ground ? v : v - 1); };
    std::vector<Eigen::Triplet<double>> triplets;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        if (v == ground)
            continue;
        double diag = 0.0;
        for (const auto &a : g.out_arcs(v)) {
            diag += a.weight;
            if (a.target != ground)
                triplets.emplace_back(reduced(v), reduced(a.target), -a.weight);
        }
        triplets.emplace_back(reduced(v), reduced(v), diag);
    }
    Eigen::SparseMatrix<double> Lr(n - 1, n - 1);
    Lr.setFromTriplets(triplets.begin(), triplets.end());

    using Solver = Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                                            Eigen::DiagonalPreconditioner<double>>;
    const unsigned threads = std::max(1u, std::min(resolve_threads(options.threads), static_cast<unsigned>(n)));
    std::vector<Solver> solvers(threads);
    for (auto &s : solvers) {
        s.setTolerance(options.solver_tolerance);
        s.setMaxIterations(options.max_solver_iterations);
        s.compute(Lr);
    }
    // Columns are independent; each worker owns a solver and writes its own columns.
    std::vector<Eigen::Index> columns;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (v != ground)
            columns.push_back(static_cast<Eigen::Index>(v));
    const std::size_t chunk = (columns.size() + threads - 1) / threads;
    parallel_for(threads, threads, [&](std::size_t t) {
        auto &solver = solvers[t];
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
        Eigen::VectorXd x(n - 1);
        for (std::size_t c = t * chunk; c < std::min(columns.size(), (t + 1) * chunk); ++c) {
            const auto col = columns[c];
            const auto r = reduced(static_cast<NodeIndex>(col));
            rhs[r] = 1.0;
            x = solver.solve(rhs);
            rhs[r] = 0.0;
            if (solver.info() != Eigen::Success)
                throw Error("conjugate gradient did not reach tolerance " +
                            std::to_string(options.solver_tolerance) + " (residual " +
                            std::to_string(solver.error()) + ")");
            for (Eigen::Index i = 0; i < n; ++i)
                if (i != static_cast<Eigen::Index>(ground))
                    P(i, col) = x[reduced(static_cast<NodeIndex>(i))];
        }
    });
    return P;
}

Eigen::MatrixXd potential_matrix(const IndexedGraph &g, const CurrentFlowOptions &options) {
    if (g.node_count() <= options.dense_limit)
        return dense_pseudo_inverse(g);
    // Ground the highest-degree node; its removal cuts the most off-diagonal mass.
    NodeIndex ground = 0;
    for (NodeIndex v = 1; v < g.node_count(); ++v)
        if (g.out_degree(v) > g.out_degree(ground))
            ground = v;
    return grounded_inverse(g, ground, options);
}

} // namespace leadernet
