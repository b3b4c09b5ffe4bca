#include <thread>

#include <doctest.h>
#include <httplib.h>

#include <leadernet/api_service.hpp>
#include <leadernet/analytics.hpp>
#include <leadernet/synthetic.hpp>

using namespace leadernet;
using nlohmann::json;

namespace {

std::shared_ptr<const Snapshot> snapshot() {
    static auto snap = [] {
        auto g = synthetic::interaction_graph(42, 200, 420);
        auto table = compute_all(g);
        return make_snapshot(g, table, {{"min_degree", "3"}});
    }();
    return snap;
}

json body(const ApiResponse &r) { return json::parse(r.body); }

} // namespace

TEST_CASE("meta and ranking") {
    ApiService api(snapshot());
    auto meta = api.handle("/api/meta", {});
    CHECK(meta.status == 200);
    CHECK(body(meta)["node_count"] == 200);
    CHECK(body(meta)["metrics"].size() == 7);

    auto top = api.handle("/api/ranking", {{"metric", "eigenvector"}, {"limit", "1"}});
    REQUIRE(top.status == 200);
    auto expected = rank(snapshot()->table, Variable::eigenvector);
    CHECK(body(top)["entries"].size() == 1);
    CHECK(body(top)["entries"][0]["user_key"] == expected.entries[0].user_key);
    CHECK(body(top) == [&] {
        auto d = to_json(expected, 0, 1);
        d["limit"] = 1;
        return d;
    }());
}

TEST_CASE("subgraph endpoint") {
    ApiService api(snapshot());
    auto all = api.handle("/api/subgraph", {{"metric", "cfbetweenness"}, {"percentile", "0"}});
    REQUIRE(all.status == 200);
    CHECK(body(all)["meta"]["node_count"] == body(api.handle("/api/meta", {}))["node_count"]);
    auto p97 = api.handle("/api/subgraph", {{"metric", "cfbetweenness"}});
    CHECK(body(p97) == to_json(percentile_subgraph(snapshot()->graph, snapshot()->table,
                                                     Variable::cfbetweenness, 97)));
}

TEST_CASE("error codes") {
    ApiService api(snapshot());
    auto code = [&](std::string_view path, QueryParams q) { return api.handle(path, q).status; };
    CHECK(code("/api/node/nobody", {}) == 404);
    CHECK(code("/api/ranking", {{"metric", "pagerank"}}) == 404);
    CHECK(code("/api/ranking", {}) == 400);
    CHECK(code("/api/ranking", {{"metric", "degree"}, {"limit", "0"}}) == 400);
    CHECK(code("/api/ranking", {{"metric", "degree"}, {"limit", "abc"}}) == 400);
    CHECK(code("/api/subgraph", {{"metric", "degree"}, {"percentile", "100"}}) == 400);
    CHECK(code("/api/histogram", {{"variable", "degree"}, {"bins", "0"}}) == 400);
    CHECK(code("/api/nowhere", {}) == 404);
    auto err = body(api.handle("/api/node/nobody", {}));
    CHECK(err["error"]["status"] == 404);
    CHECK(err["error"]["code"].is_string());
}

TEST_CASE("oversized subgraphs are refused") {
    auto g = synthetic::interaction_graph(8, kMaxSubgraphNodes + 10, 2 * kMaxSubgraphNodes + 40);
    std::vector<CentralityRow> rows;
    for (const auto &[k, u] : g.nodes()) {
        CentralityRow r;
        r.user_key = k;
        r.values.fill(1.0);
        rows.push_back(r);
    }
    ApiService api(make_snapshot(g, CentralityTable(rows)));
    CHECK(api.handle("/api/subgraph", {{"metric", "degree"}, {"percentile", "0"}}).status == 413);
}

TEST_CASE("node endpoint matches the library document") {
    ApiService api(snapshot());
    const auto &row = snapshot()->table.rows()[3];
    auto r = api.handle("/api/node/" + row.user_key, {});
    REQUIRE(r.status == 200);
    CHECK(body(r) == node_document(*snapshot(), row));
    CHECK(body(r)["edges"].size() > 0);
}

TEST_CASE("snapshot replacement") {
    ApiService api(snapshot());
    auto g = synthetic::interaction_graph(1, 30, 60);
    api.replace(make_snapshot(g, compute_all(g)));
    CHECK(body(api.handle("/api/meta", {}))["node_count"] == 30);
}

TEST_CASE("http round trip") {
    ApiService api(snapshot());
    ServerOptions opts;
    opts.port = 0;
    HttpServer server(api, opts);
    const int port = server.bind();
    std::thread t([&] { server.listen(); });
    httplib::Client client("127.0.0.1", port);
    auto res = client.Get("/api/ranking?metric=degree&limit=2");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    CHECK(json::parse(res->body) == body(api.handle("/api/ranking", {{"metric", "degree"}, {"limit", "2"}})));
    auto missing = client.Get("/api/node/zzz");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    server.stop();
    t.join();
}
