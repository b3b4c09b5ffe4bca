#include <leadernet/api_service.hpp>
#include <leadernet/error.hpp>
#include <leadernet/pipeline.hpp>
#include <leadernet/text_io.hpp>

#include <cmath>

#include <httplib.h>

namespace leadernet {

using nlohmann::json;

std::shared_ptr<const Snapshot> make_snapshot(FlowGraph graph, CentralityTable table,
                                              std::map<std::string, std::string> config, double default_percentile) {
    auto s = std::make_shared<Snapshot>();
    s->graph = std::move(graph);
    s->table = std::move(table);
    if (s->table.size() >= 3)
        s->correlations = correlations(s->table);
    s->default_percentile = default_percentile;
    for (auto v : network_metrics())
        s->default_projections.emplace(v, percentile_subgraph(s->graph, s->table, v, default_percentile));
    s->config = std::move(config);
    return s;
}

std::shared_ptr<const Snapshot> load_snapshot(const std::filesystem::path &dir) {
    auto graph_path = dir / artifacts::filtered_graph;
    if (!std::filesystem::exists(graph_path))
        graph_path = dir / artifacts::graph;
    auto graph = read_flowgraph_file(graph_path.string());
    auto table = read_centrality_csv(dir / artifacts::centrality);
    PipelineConfig cfg;
    std::map<std::string, std::string> entries;
    if (std::filesystem::exists(dir / artifacts::config)) {
        cfg = load_config(dir / artifacts::config);
        entries = config_entries(cfg);
    }
    return make_snapshot(std::move(graph), std::move(table), std::move(entries), cfg.projection_percentile);
}

namespace {

struct HttpError {
    int status;
    std::string code;
    std::string message;
};

ApiResponse json_response(const json &doc) { return {200, doc.dump(), "application/json"}; }

ApiResponse error_response(const HttpError &e) {
    json body = {{"error", {{"status", e.status}, {"code", e.code}, {"message", e.message}}}};
    return {e.status, body.dump(), "application/json"};
}

std::optional<std::string> param(const QueryParams &q, const char *name) {
    auto it = q.find(name);
    if (it == q.end())
        return std::nullopt;
    return it->second;
}

double number_param(const std::string &name, const std::string &value) {
    try {
        double x = parse_double(value);
        if (!std::isfinite(x))
            throw Error("non-finite");
        return x;
    } catch (const Error &) {
        throw HttpError{400, "invalid_parameter", name + " must be a number, got '" + value + "'"};
    }
}

std::size_t count_param(const std::string &name, const std::string &value) {
    try {
        auto x = parse_int(value);
        if (x < 0)
            throw Error("negative");
        return static_cast<std::size_t>(x);
    } catch (const Error &) {
        throw HttpError{400, "invalid_parameter", name + " must be a non-negative integer, got '" + value + "'"};
    }
}

bool bool_param(const std::string &name, const std::string &value) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw HttpError{400, "invalid_parameter", name + " must be true or false, got '" + value + "'"};
}

Variable variable_param(const QueryParams &q, const char *name) {
    auto value = param(q, name);
    if (!value || value->empty())
        throw HttpError{400, "missing_parameter", std::string(name) + " is required"};
    auto v = variable_from_string(*value);
    if (!v)
        throw HttpError{404, "unknown_metric", "unknown metric '" + *value + "'"};
    return *v;
}

json values_object(const CentralityRow &row, const std::vector<Variable> &vars) {
    json out = json::object();
    for (auto v : vars) {
        double x = row[v];
        out[std::string(to_string(v))] = std::isfinite(x) ? json(x) : json(nullptr);
    }
    return out;
}

ApiResponse ranking(const Snapshot &s, const QueryParams &q) {
    const auto metric = variable_param(q, "metric");
    std::size_t limit = kDefaultPageLimit, offset = 0;
    if (auto v = param(q, "limit"))
        limit = count_param("limit", *v);
    if (limit == 0 || limit > kMaxPageLimit)
        throw HttpError{400, "invalid_parameter", "limit must be in [1, " + std::to_string(kMaxPageLimit) + "]"};
    if (auto v = param(q, "offset"))
        offset = count_param("offset", *v);
    std::optional<double> sat;
    if (auto v = param(q, "saturate"); v && !v->empty() && *v != "none") {
        double p = number_param("saturate", *v);
        if (!(p > 0.0 && p <= 100.0))
            throw HttpError{400, "invalid_parameter", "saturate must be in (0, 100]"};
        sat = p;
    }
    auto doc = to_json(rank(s.table, metric, sat), offset, limit);
    doc["limit"] = limit;
    return json_response(doc);
}

ApiResponse subgraph(const Snapshot &s, const QueryParams &q) {
    const auto metric = variable_param(q, "metric");
    SubgraphProjection proj;
    if (auto top = param(q, "top")) {
        proj = top_n_subgraph(s.graph, s.table, metric, count_param("top", *top));
    } else {
        double p = s.default_percentile;
        if (auto v = param(q, "percentile"))
            p = number_param("percentile", *v);
        if (!(p >= 0.0 && p < 100.0))
            throw HttpError{400, "invalid_parameter", "percentile must be in [0, 100)"};
        auto cached = s.default_projections.find(metric);
        proj = cached != s.default_projections.end() && cached->second.percentile == p
                   ? cached->second
                   : percentile_subgraph(s.graph, s.table, metric, p);
    }
    if (proj.nodes.size() > kMaxSubgraphNodes)
        throw HttpError{413, "subgraph_too_large",
                        "projection has " + std::to_string(proj.nodes.size()) + " nodes (limit " +
                            std::to_string(kMaxSubgraphNodes) + "); raise the percentile"};
    return json_response(to_json(proj));
}

ApiResponse histogram_endpoint(const Snapshot &s, const QueryParams &q) {
    const auto variable = variable_param(q, "variable");
    std::size_t bins = 30;
    if (auto v = param(q, "bins"))
        bins = count_param("bins", *v);
    if (bins < 1 || bins > 1000)
        throw HttpError{400, "invalid_parameter", "bins must be in [1, 1000]"};
    bool log_bins = false;
    if (auto v = param(q, "log"))
        log_bins = bool_param("log", *v);
    return json_response(to_json(histogram(s.table, variable, static_cast<int>(bins), log_bins)));
}

} // namespace

json meta_document(const Snapshot &s) {
    json metrics = json::array(), variables = json::array(), columns = json::array();
    for (auto v : network_metrics())
        metrics.push_back(to_string(v));
    for (auto v : analyzed_variables())
        variables.push_back(to_string(v));
    for (auto v : all_variables())
        columns.push_back(to_string(v));
    const auto st = stats(s.graph);
    return {{"metrics", std::move(metrics)},        {"variables", std::move(variables)},
            {"columns", std::move(columns)},        {"node_count", st.node_count},
            {"edge_count", st.edge_count},          {"component_count", st.component_count},
            {"table_rows", s.table.size()},         {"default_percentile", s.default_percentile},
            {"config", s.config}};
}

json node_document(const Snapshot &s, const CentralityRow &row) {
    static const std::vector<Variable> metric_vars = {Variable::degree,      Variable::strength,
                                                      Variable::eigenvector, Variable::closeness,
                                                      Variable::betweenness, Variable::load,
                                                      Variable::cfcloseness, Variable::cfbetweenness};
    static const std::vector<Variable> popularity_vars = {Variable::followers, Variable::following,
                                                          Variable::favorites, Variable::statuses};
    json edges = json::array();
    if (s.graph.contains(row.user_key)) {
        for (const auto &[k, w] : s.graph.undirected_edges()) {
            if (k.first != row.user_key && k.second != row.user_key)
                continue;
            const auto &other = k.first == row.user_key ? k.second : k.first;
            edges.push_back({{"neighbor", other},
                             {"flow", w},
                             {"flow_out", s.graph.flow(row.user_key, other)},
                             {"flow_in", s.graph.flow(other, row.user_key)}});
        }
    }
    return {{"user_key", row.user_key},
            {"screen_name", row.screen_name},
            {"metrics", values_object(row, metric_vars)},
            {"popularity", values_object(row, popularity_vars)},
            {"edges", std::move(edges)}};
}

ApiService::ApiService(std::shared_ptr<const Snapshot> snapshot) : snapshot_(std::move(snapshot)) {
    if (!snapshot_)
        throw Error("service needs a snapshot");
}

void ApiService::replace(std::shared_ptr<const Snapshot> snapshot) {
    if (!snapshot)
        throw Error("service needs a snapshot");
    std::lock_guard lock(mutex_);
    snapshot_ = std::move(snapshot);
}

std::shared_ptr<const Snapshot> ApiService::snapshot() const {
    std::lock_guard lock(mutex_);
    return snapshot_;
}

ApiResponse ApiService::handle(std::string_view path, const QueryParams &query) const {
    const auto snap = snapshot();
    const auto &s = *snap;
    try {
        if (path == "/api/meta")
            return json_response(meta_document(s));
        if (path == "/api/ranking")
            return ranking(s, query);
        if (path == "/api/subgraph")
            return subgraph(s, query);
        if (path == "/api/correlations") {
            if (!s.correlations)
                throw HttpError{404, "no_correlations", "snapshot has fewer than 3 nodes"};
            return json_response(to_json(*s.correlations));
        }
        if (path == "/api/histogram")
            return histogram_endpoint(s, query);
        constexpr std::string_view node_prefix = "/api/node/";
        if (path.substr(0, node_prefix.size()) == node_prefix) {
            const auto key = path.substr(node_prefix.size());
            const auto *row = s.table.find(key);
            if (key.empty() || !row)
                throw HttpError{404, "unknown_node", "unknown node '" + std::string(key) + "'"};
            return json_response(node_document(s, *row));
        }
        throw HttpError{404, "not_found", "no endpoint " + std::string(path)};
    } catch (const HttpError &e) {
        return error_response(e);
    } catch (const Error &e) {
        return error_response({400, "invalid_request", e.what()});
    }
}

struct HttpServer::Impl {
    Impl(ApiService &svc, ServerOptions opts) : service(svc), options(std::move(opts)) {}
    ApiService &service;
    ServerOptions options;
    httplib::Server server;
    int port = -1;
};

HttpServer::HttpServer(ApiService &service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
    auto &srv = impl_->server;
    const auto origin = impl_->options.cors_origin;
    srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                             {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    auto *svc = &impl_->service;
    srv.Get(R"(/api/.*)", [svc](const httplib::Request &req, httplib::Response &res) {
        QueryParams q;
        for (const auto &[k, v] : req.params)
            q.emplace(k, v);
        auto out = svc->handle(req.path, q);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    });
    srv.Options(R"(/api/.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });
    if (impl_->options.static_dir)
        srv.set_mount_point("/", impl_->options.static_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
    auto &o = impl_->options;
    if (o.port == 0)
        impl_->port = impl_->server.bind_to_any_port(o.host);
    else
        impl_->port = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
    if (impl_->port < 0)
        throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
    return impl_->port;
}

void HttpServer::listen() {
    if (impl_->port < 0)
        bind();
    impl_->server.listen_after_bind();
}

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running())
        impl_->server.stop();
}

} // namespace leadernet
