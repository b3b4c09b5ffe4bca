#include <algorithm>
#include <cmath>

#include <doctest.h>

#include <leadernet/error.hpp>
#include <leadernet/projection.hpp>
#include <leadernet/synthetic.hpp>

using namespace leadernet;

namespace {

FlowGraph line_graph(int n) {
    FlowGraph g;
    for (int i = 1; i <= n; ++i)
        g.add_user(UserRef{"k" + std::to_string(100 + i), "n" + std::to_string(i), 0, 0, 0, 0, std::nullopt});
    for (int i = 1; i < n; ++i)
        g.add_flow("k" + std::to_string(100 + i), "k" + std::to_string(101 + i), static_cast<std::uint64_t>(i));
    if (n >= 10)
        g.add_flow("k110", "k108", 2);
    g.finalize();
    return g;
}

CentralityTable values_one_to_ten() {
    std::vector<CentralityRow> rows;
    for (int i = 1; i <= 10; ++i) {
        CentralityRow r;
        r.user_key = "k" + std::to_string(100 + i);
        r.screen_name = "n" + std::to_string(i);
        r.values.fill(NAN);
        r[Variable::cfbetweenness] = i;
        rows.push_back(r);
    }
    return CentralityTable(rows);
}

std::vector<std::string> ids(const SubgraphProjection &p) {
    std::vector<std::string> out;
    for (const auto &n : p.nodes)
        out.push_back(n.id);
    return out;
}

} // namespace

TEST_CASE("percentile threshold selects the top tail") {
    auto g = line_graph(10);
    auto t = values_one_to_ten();
    auto p = percentile_subgraph(g, t, Variable::cfbetweenness, 80);
    CHECK(p.threshold == 8.0);
    CHECK(ids(p) == std::vector<std::string>{"k108", "k109", "k110"});
    CHECK_FALSE(p.empty);
    // k108-k109 (flow 8), k109-k110 (flow 9), k110->k108 (flow 2).
    REQUIRE(p.links.size() == 3);
    CHECK(p.links[0].flow == 8);
    CHECK(p.links[1].flow == 2);
    CHECK(p.links[2].flow == 9);
    CHECK(p.components.size() == 1);

    auto all = percentile_subgraph(g, t, Variable::cfbetweenness, 0);
    CHECK(all.nodes.size() == 10);
    CHECK(all.links.size() == 10);
    CHECK_THROWS_AS(percentile_subgraph(g, t, Variable::cfbetweenness, 100), Error);
    CHECK_THROWS_AS(percentile_subgraph(g, t, Variable::cfbetweenness, -1), Error);
}

TEST_CASE("display sizes span the configured range") {
    auto p = percentile_subgraph(line_graph(10), values_one_to_ten(), Variable::cfbetweenness, 0);
    double lo = 100, hi = 0;
    for (const auto &n : p.nodes) {
        lo = std::min(lo, n.size);
        hi = std::max(hi, n.size);
    }
    CHECK(lo == kMinDisplaySize);
    CHECK(hi == kMaxDisplaySize);
}

TEST_CASE("projection with no finite values is empty") {
    std::vector<CentralityRow> rows(1);
    rows[0].user_key = "k101";
    rows[0].values.fill(NAN);
    auto p = percentile_subgraph(line_graph(3), CentralityTable(rows), Variable::eigenvector, 50);
    CHECK(p.empty);
    CHECK(p.nodes.empty());
    CHECK(projection_from_json(to_json(p)) == p);
}

TEST_CASE("top-n projection") {
    auto p = top_n_subgraph(line_graph(10), values_one_to_ten(), Variable::cfbetweenness, 2);
    CHECK(ids(p) == std::vector<std::string>{"k109", "k110"});
    CHECK(p.top_n == 2u);
    CHECK(p.links.size() == 1);
}

TEST_CASE("exports") {
    auto p = percentile_subgraph(line_graph(10), values_one_to_ten(), Variable::cfbetweenness, 50);
    CHECK(projection_from_json(to_json(p)) == p);
    auto graphml = export_projection(p, ExportFormat::graphml);
    CHECK(graphml.find("<graphml") != std::string::npos);
    CHECK(graphml.find("k110") != std::string::npos);
    auto dot = export_projection(p, ExportFormat::dot);
    CHECK(dot.find("graph") == 0);
    CHECK(export_format_from_string("dot") == ExportFormat::dot);
    CHECK_THROWS_AS(export_format_from_string("png"), Error);
}
