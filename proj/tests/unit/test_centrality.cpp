#include <cmath>

#include <doctest.h>

#include <leadernet/centrality.hpp>
#include <leadernet/error.hpp>
#include <leadernet/synthetic.hpp>

#include "oracles.hpp"

using namespace leadernet;

namespace {

IndexedGraph graph(std::size_t n, std::vector<WeightedEdge> edges) {
    return IndexedGraph::from_edges(n, edges);
}

IndexedGraph path3() { return graph(3, {{0, 1, 1}, {1, 2, 1}}); }
IndexedGraph k3() { return graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }
IndexedGraph c4() { return graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}); }
IndexedGraph star(std::size_t leaves) {
    std::vector<WeightedEdge> e;
    for (NodeIndex i = 1; i <= leaves; ++i)
        e.push_back({0, i, 1});
    return graph(leaves + 1, e);
}

} // namespace

TEST_CASE("degree centrality") {
    auto d = degree_centrality(star(4));
    CHECK(d[0] == doctest::Approx(1.0));
    for (int i = 1; i < 5; ++i)
        CHECK(d[i] == doctest::Approx(0.25));
    for (double v : degree_centrality(k3()))
        CHECK(v == 1.0);
    auto p = degree_centrality(path3());
    CHECK(p[1] == 1.0);
    CHECK(p[0] == 0.5);
    CHECK(p[2] == 0.5);
    CHECK_THROWS_AS(degree_centrality(graph(1, {})), Error);
}

TEST_CASE("eigenvector centrality") {
    auto c = eigenvector_centrality(c4());
    for (double v : c.values)
        CHECK(v == doctest::Approx(0.5).epsilon(1e-7));

    auto edge = eigenvector_centrality(graph(2, {{0, 1, 5}}));
    CHECK(edge.values[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
    CHECK(edge.values[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-7));
    CHECK(edge.eigenvalue == doctest::Approx(5.0));

    const auto s = star(3);
    auto st = eigenvector_centrality(s);
    auto ref = oracle::eigenvector(s);
    CHECK(st.values[0] == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(st.values[1] == doctest::Approx(0.40825).epsilon(1e-5));
    CHECK(oracle::max_abs_diff(st.values, ref) < 1e-7);
    CHECK(st.values[0] == doctest::Approx(std::sqrt(3.0) * st.values[1]).epsilon(1e-7));
}

TEST_CASE("eigenvector matches dense oracle on random graphs") {
    synthetic::Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        auto g = synthetic::random_connected_graph(rng, 3 + i % 20, 0.2);
        auto r = eigenvector_centrality(g, {1e-12, 100000});
        CHECK(oracle::max_abs_diff(r.values, oracle::eigenvector(g)) < 1e-8);
    }
}

TEST_CASE("eigenvector errors") {
    CHECK_THROWS_AS(eigenvector_centrality(graph(4, {{0, 1, 1}, {2, 3, 1}})), MetricError);
    synthetic::Rng rng(3);
    auto g = synthetic::random_connected_graph(rng, 40, 0.1);
    try {
        eigenvector_centrality(g, {1e-15, 2});
        FAIL("expected non-convergence");
    } catch (const ConvergenceError &e) {
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("closeness centrality") {
    auto p = closeness_centrality(path3());
    CHECK(p[1] == doctest::Approx(1.0));
    CHECK(p[0] == doctest::Approx(2.0 / 3.0));
    auto w = closeness_centrality(graph(3, {{0, 1, 2}, {1, 2, 1}}));
    CHECK(w[1] == doctest::Approx(2.0 / 1.5));
    for (double v : closeness_centrality(k3()))
        CHECK(v == doctest::Approx(1.0));
    CHECK_THROWS_AS(closeness_centrality(graph(4, {{0, 1, 1}, {2, 3, 1}})), MetricError);
}

TEST_CASE("betweenness and load named values") {
    auto b = betweenness_centrality(path3());
    auto l = load_centrality(path3());
    CHECK(b[1] == doctest::Approx(1.0));
    CHECK(l[1] == doctest::Approx(1.0));
    CHECK(b[0] == 0.0);
    for (double v : betweenness_centrality(k3()))
        CHECK(v == 0.0);
    for (double v : load_centrality(k3()))
        CHECK(v == 0.0);
    for (double v : betweenness_centrality(c4()))
        CHECK(v == doctest::Approx(1.0 / 6.0));
    for (double v : betweenness_centrality(graph(2, {{0, 1, 1}})))
        CHECK(v == 0.0);
    for (double v : load_centrality(graph(2, {{0, 1, 1}})))
        CHECK(v == 0.0);
}

TEST_CASE("directed betweenness") {
    // a -> b -> c: only the ordered pair (a, c) routes through b.
    auto g = IndexedGraph::from_edges(3, {{0, 1, 1}, {1, 2, 1}}, true);
    auto b = betweenness_centrality(g);
    CHECK(b[1] == doctest::Approx(0.5));
    CHECK(b[0] == 0.0);
}

TEST_CASE("shortest-path family matches path enumeration") {
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto &g : oracle::connected_graphs(n)) {
            auto got = shortest_path_scores(g, 2);
            auto ref = oracle::path_metrics(g);
            CHECK(oracle::max_abs_diff(got.betweenness, ref.betweenness) < 1e-9);
            CHECK(oracle::max_abs_diff(got.load, ref.load) < 1e-9);
            CHECK(oracle::max_abs_diff(got.closeness, ref.closeness) < 1e-9);
        }
    synthetic::Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        auto g = synthetic::random_connected_graph(rng, 3 + i % 6, 0.4);
        auto got = shortest_path_scores(g);
        auto ref = oracle::path_metrics(g);
        CHECK(oracle::max_abs_diff(got.betweenness, ref.betweenness) < 1e-9);
        CHECK(oracle::max_abs_diff(got.load, ref.load) < 1e-9);
        CHECK(oracle::max_abs_diff(got.closeness, ref.closeness) < 1e-9);
    }
}

TEST_CASE("separate entry points agree with the combined sweep") {
    synthetic::Rng rng(5);
    auto g = synthetic::random_connected_graph(rng, 60, 0.05);
    auto all = shortest_path_scores(g, 1);
    CHECK(betweenness_centrality(g, 3) == all.betweenness);
    CHECK(load_centrality(g, 2) == all.load);
    CHECK(closeness_centrality(g, 4) == all.closeness);
}

TEST_CASE("results do not depend on the thread count") {
    synthetic::Rng rng(9);
    auto g = synthetic::random_connected_graph(rng, 300, 0.01);
    auto one = shortest_path_scores(g, 1);
    auto many = shortest_path_scores(g, 4);
    CHECK(one.betweenness == many.betweenness);
    CHECK(one.load == many.load);
    CHECK(one.closeness == many.closeness);
}

TEST_CASE("betweenness equals load on trees") {
    synthetic::Rng rng(13);
    for (int i = 0; i < 10; ++i) {
        auto g = synthetic::random_tree(rng, 5 + i * 4);
        auto s = shortest_path_scores(g);
        CHECK(oracle::max_abs_diff(s.betweenness, s.load) < 1e-12);
    }
}

TEST_CASE("oracle enumerator counts") {
    CHECK(oracle::connected_graphs(3).size() == 2);
    CHECK(oracle::connected_graphs(4).size() == 6);
    CHECK(oracle::connected_graphs(5).size() == 21);
}
