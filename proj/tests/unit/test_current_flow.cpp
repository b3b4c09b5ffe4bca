#include <cmath>

#include <doctest.h>

#include <leadernet/centrality.hpp>
#include <leadernet/error.hpp>
#include <leadernet/laplacian.hpp>
#include <leadernet/synthetic.hpp>

#include "oracles.hpp"

using namespace leadernet;

namespace {

IndexedGraph graph(std::size_t n, std::vector<WeightedEdge> edges) {
    return IndexedGraph::from_edges(n, edges);
}

CurrentFlowOptions iterative() {
    CurrentFlowOptions o;
    o.dense_limit = 0;
    o.solver_tolerance = 1e-12;
    return o;
}

} // namespace

TEST_CASE("current-flow named values") {
    auto edge = current_flow_closeness(graph(2, {{0, 1, 1}}));
    CHECK(edge[0] == doctest::Approx(1.0));
    CHECK(edge[1] == doctest::Approx(1.0));

    auto p = current_flow_scores(graph(3, {{0, 1, 1}, {1, 2, 1}}));
    CHECK(p.closeness[1] == doctest::Approx(1.0));
    CHECK(p.closeness[0] == doctest::Approx(2.0 / 3.0));
    CHECK(p.betweenness[1] == doctest::Approx(1.0));
    CHECK(p.betweenness[0] == doctest::Approx(0.0));

    auto k3 = current_flow_closeness(graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
    for (double v : k3)
        CHECK(v == doctest::Approx(1.5));

    auto c4 = current_flow_betweenness(graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}));
    for (double v : c4)
        CHECK(v == doctest::Approx(c4[0]));
    CHECK(c4[0] > 0.0);
}

TEST_CASE("current-flow metrics reject disconnected graphs") {
    auto g = graph(4, {{0, 1, 1}, {2, 3, 1}});
    CHECK_THROWS_AS(current_flow_closeness(g), MetricError);
    CHECK_THROWS_AS(current_flow_betweenness(g), MetricError);
    CHECK_THROWS_AS(current_flow_closeness(g, iterative()), MetricError);
}

TEST_CASE("current-flow metrics match the eigendecomposition oracle") {
    auto compare = [](const IndexedGraph &g, const CurrentFlowOptions &opts) {
        auto got = current_flow_scores(g, opts);
        auto ref = oracle::current_flow_metrics(g);
        CHECK(oracle::max_abs_diff(got.closeness, ref.closeness) < 1e-6);
        CHECK(oracle::max_abs_diff(got.betweenness, ref.betweenness) < 1e-6);
    };
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto &g : oracle::connected_graphs(n)) {
            compare(g, {});
            compare(g, iterative());
        }
    synthetic::Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        auto g = synthetic::random_connected_graph(rng, 3 + i % 6, 0.4);
        compare(g, {});
        compare(g, iterative());
    }
}

TEST_CASE("iterative and dense potentials agree on a larger graph") {
    synthetic::Rng rng(23);
    auto g = synthetic::random_connected_graph(rng, 150, 0.03);
    auto dense = current_flow_scores(g);
    auto cg = current_flow_scores(g, iterative());
    CHECK(oracle::max_abs_diff(dense.closeness, cg.closeness) < 1e-8);
    CHECK(oracle::max_abs_diff(dense.betweenness, cg.betweenness) < 1e-8);
}

TEST_CASE("current-flow results do not depend on the thread count") {
    synthetic::Rng rng(29);
    auto g = synthetic::random_connected_graph(rng, 120, 0.04);
    auto a = iterative();
    a.threads = 1;
    auto b = iterative();
    b.threads = 3;
    auto one = current_flow_scores(g, a);
    auto many = current_flow_scores(g, b);
    CHECK(one.closeness == many.closeness);
    CHECK(one.betweenness == many.betweenness);
}

TEST_CASE("solver non-convergence is reported") {
    synthetic::Rng rng(31);
    auto g = synthetic::random_connected_graph(rng, 80, 0.05);
    auto o = iterative();
    o.max_solver_iterations = 1;
    CHECK_THROWS_AS(current_flow_closeness(g, o), MetricError);
}
