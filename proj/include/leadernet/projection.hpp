#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <leadernet/centrality_table.hpp>
#include <leadernet/flow_graph.hpp>

namespace leadernet {

struct ProjectedNode {
    std::string id;
    std::string label;
    std::array<double, kVariableCount> metrics{};
    /// Saturated (p95) reference value min-max scaled to [1, 10].
    double size = 1.0;

    bool operator==(const ProjectedNode &) const = default;
};

struct ProjectedLink {
    std::string source; // source < target
    std::string target;
    std::uint64_t flow = 0; // undirected weight in the parent graph

    bool operator==(const ProjectedLink &) const = default;
};

/// Induced "leader" subgraph of the nodes at or above a metric threshold.
struct SubgraphProjection {
    Variable metric = Variable::eigenvector;
    double percentile = 0.0;
    /// Set when the projection was selected by a node budget instead of a percentile.
    std::optional<std::size_t> top_n;
    double threshold = 0.0;
    /// True when no node qualifies (also when the table has no finite values).
    bool empty = true;
    std::vector<ProjectedNode> nodes; // sorted by id
    std::vector<ProjectedLink> links; // sorted by (source, target)
    std::vector<std::vector<std::string>> components;

    bool operator==(const SubgraphProjection &other) const;
};

inline constexpr double kDisplaySaturationPercentile = 95.0;
inline constexpr double kMinDisplaySize = 1.0;
inline constexpr double kMaxDisplaySize = 10.0;

/// Nodes whose metric is >= the nearest-rank p-th percentile (0 <= p < 100). Only nodes
/// present in both graph and table are considered.
SubgraphProjection percentile_subgraph(const FlowGraph &graph, const CentralityTable &table, Variable metric,
                                       double percentile);

/// The `budget` highest-ranked nodes (rank order of analytics::rank).
SubgraphProjection top_n_subgraph(const FlowGraph &graph, const CentralityTable &table, Variable metric,
                                  std::size_t budget);

enum class ExportFormat { graphml, dot, json };
ExportFormat export_format_from_string(std::string_view name);
std::string_view file_extension(ExportFormat format);

std::string export_projection(const SubgraphProjection &projection, ExportFormat format);

nlohmann::json to_json(const SubgraphProjection &projection);
SubgraphProjection projection_from_json(const nlohmann::json &doc);

} // namespace leadernet
