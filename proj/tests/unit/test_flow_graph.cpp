#include <sstream>

#include <doctest.h>

#include <leadernet/error.hpp>
#include <leadernet/flow_graph.hpp>
#include <leadernet/indexed_graph.hpp>
#include <leadernet/synthetic.hpp>

using namespace leadernet;

namespace {

UserRef ref(const std::string &key) { return UserRef{key, key, 0, 0, 0, 0, std::nullopt}; }

FlowGraph undirected(const std::vector<std::string> &nodes,
                     const std::vector<std::pair<std::string, std::string>> &edges) {
    FlowGraph g;
    for (const auto &n : nodes)
        g.add_user(ref(n));
    for (const auto &[u, v] : edges)
        g.add_flow(u, v, 1);
    g.finalize();
    return g;
}

std::vector<std::string> keys(const FlowGraph &g) {
    std::vector<std::string> out;
    for (const auto &[k, _] : g.nodes())
        out.push_back(k);
    return out;
}

} // namespace

TEST_CASE("flow accumulation") {
    FlowGraph g;
    Interaction rt{InteractionKind::retweet, ref("bob")};
    g.add_user(ref("alice"));
    g.add_interaction(ref("alice"), rt);
    CHECK(g.flow("alice", "bob") == 1);
    g.add_interaction(ref("alice"), rt);
    g.finalize();
    CHECK(g.flow("alice", "bob") == 2);
    CHECK(g.directed_edges().at({"alice", "bob"}).inverse_flow == 0.5);
    CHECK_THROWS_AS(g.add_interaction(ref("alice"), rt), Error);
}

TEST_CASE("undirected view sums both directions") {
    FlowGraph g;
    g.add_interaction(ref("alice"), {InteractionKind::mention, ref("bob")});
    g.add_interaction(ref("bob"), {InteractionKind::mention, ref("alice")});
    g.finalize();
    auto und = g.undirected_edges();
    REQUIRE(und.size() == 1);
    CHECK(und.begin()->second == 2);
    CHECK(stats(g).edge_count == 1);
    CHECK(stats(g).directed_edge_count == 2);
    auto ig = IndexedGraph::from_flow_graph(g);
    REQUIRE(ig.out_arcs(0).size() == 1);
    CHECK(ig.out_arcs(0)[0].weight == 2.0);
    CHECK(ig.out_arcs(0)[0].length == 0.5);
}

TEST_CASE("self interactions are rejected") {
    FlowGraph g;
    CHECK_THROWS_AS(g.add_interaction(ref("alice"), {InteractionKind::mention, ref("alice")}), Error);
}

TEST_CASE("profile merge keeps the latest observation regardless of order") {
    UserRef old{"1", "old_name", 10, 1, 1, 1, 100};
    UserRef recent{"1", "new_name", 20, 2, 2, 2, 200};
    UserRef bare{"1", "mention_name", 0, 0, 0, 0, std::nullopt};
    UserRef a = old, b = recent;
    merge_profile(a, recent);
    merge_profile(a, bare);
    merge_profile(b, bare);
    merge_profile(b, old);
    CHECK(a == b);
    CHECK(a.screen_name == "new_name");
    CHECK(a.followers_count == 20);
}

TEST_CASE("degree filter") {
    auto star = undirected({"h", "a", "b", "c", "d"}, {{"h", "a"}, {"h", "b"}, {"h", "c"}, {"h", "d"}});
    auto r = filter_min_degree(star, 3);
    CHECK(keys(r.graph) == std::vector<std::string>{"h"});
    CHECK(r.stats.edge_count == 0);

    auto tri = undirected({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}, {"D", "A"}});
    auto t = filter_min_degree(tri, 3);
    CHECK(keys(t.graph) == std::vector<std::string>{"A"});
    // Exhaustive re-count: survivors are exactly the nodes of input degree >= 3.
    auto degrees = tri.undirected_degrees();
    for (const auto &[k, d] : degrees)
        CHECK(t.graph.contains(k) == (d >= 3));

    CHECK(filter_min_degree(tri, 1).graph == tri);
    CHECK(filter_min_degree(tri, 0).graph == tri);
    CHECK(filter_min_degree(tri, 10).graph.node_count() == 0);
}

TEST_CASE("connected components") {
    auto two = undirected({"a", "b", "c", "x", "y", "z"},
                          {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"x", "y"}, {"y", "z"}, {"z", "x"}});
    auto cc = connected_components(two);
    REQUIRE(cc.size() == 2);
    CHECK(cc[0].size() == 3);
    CHECK(cc[1].size() == 3);

    auto path = undirected({"1", "2", "3", "4", "5"}, {{"1", "2"}, {"2", "3"}, {"3", "4"}, {"4", "5"}});
    CHECK(connected_components(path).size() == 1);
    CHECK(connected_components(path)[0].size() == 5);

    auto mixed = undirected({"p", "q", "a", "b", "c"}, {{"p", "q"}, {"a", "b"}, {"b", "c"}, {"c", "a"}});
    auto m = connected_components(mixed);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == std::vector<std::string>{"a", "b", "c"});
    CHECK(m[1] == std::vector<std::string>{"p", "q"});
    CHECK(keys(largest_component(mixed)) == m[0]);
    FlowGraph empty;
    empty.finalize();
    CHECK(largest_component(empty).node_count() == 0);
}

TEST_CASE("flowgraph text round-trip") {
    auto g = synthetic::interaction_graph(3, 300, 700);
    auto text = to_flowgraph_text(g);
    std::istringstream in(text);
    auto back = read_flowgraph(in);
    CHECK(back == g);
    CHECK(to_flowgraph_text(back) == text);
    std::istringstream bad("flowgraph v1 1 0\nN a\n");
    CHECK_THROWS_AS(read_flowgraph(bad), ParseError);
}

TEST_CASE("synthetic interaction graph has the requested size") {
    auto g = synthetic::interaction_graph(1, 1000, 2100);
    auto s = stats(g);
    CHECK(s.node_count == 1000);
    CHECK(s.edge_count == 2100);
    CHECK(s.component_count == 1);
}
