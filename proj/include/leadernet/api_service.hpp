#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include <leadernet/analytics.hpp>
#include <leadernet/centrality_table.hpp>
#include <leadernet/flow_graph.hpp>
#include <leadernet/projection.hpp>

namespace leadernet {

/// Everything the service answers from. Built once, never mutated.
struct Snapshot {
    FlowGraph graph;
    CentralityTable table;
    std::optional<CorrelationMatrix> correlations; // absent for tables under 3 rows
    double default_percentile = 97.0;
    std::map<Variable, SubgraphProjection> default_projections;
    std::map<std::string, std::string> config;
};

std::shared_ptr<const Snapshot> make_snapshot(FlowGraph graph, CentralityTable table,
                                              std::map<std::string, std::string> config = {},
                                              double default_percentile = 97.0);

/// Reads filtered.flowgraph (falling back to graph.flowgraph), centrality.csv and the
/// optional pipeline.conf from an artifact directory.
std::shared_ptr<const Snapshot> load_snapshot(const std::filesystem::path &dir);

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

using QueryParams = std::map<std::string, std::string>;

inline constexpr std::size_t kDefaultPageLimit = 100;
inline constexpr std::size_t kMaxPageLimit = 5000;
inline constexpr std::size_t kMaxSubgraphNodes = 5000;

/// Read-only JSON API over a snapshot. Routing is independent of the HTTP transport so
/// the same handler is used by the server and by tests.
class ApiService {
public:
    explicit ApiService(std::shared_ptr<const Snapshot> snapshot);

    ApiResponse handle(std::string_view path, const QueryParams &query) const;

    /// Atomic swap; in-flight requests finish on the snapshot they started with.
    void replace(std::shared_ptr<const Snapshot> snapshot);
    std::shared_ptr<const Snapshot> snapshot() const;

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
};

/// JSON body of /api/node/{key} built from the library objects.
nlohmann::json node_document(const Snapshot &snapshot, const CentralityRow &row);
nlohmann::json meta_document(const Snapshot &snapshot);

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string cors_origin = "*";
    std::optional<std::filesystem::path> static_dir;
};

/// HTTP transport for ApiService. listen() blocks until stop() is called from another thread.
class HttpServer {
public:
    HttpServer(ApiService &service, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer &) = delete;
    HttpServer &operator=(const HttpServer &) = delete;

    /// Binds (port 0 picks a free one) and returns the bound port.
    int bind();
    /// Runs the accept loop; returns after stop().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace leadernet
