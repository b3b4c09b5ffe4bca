#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <leadernet/centrality.hpp>
#include <leadernet/flow_graph.hpp>

namespace leadernet {

/// Columns of a centrality table. The first eight are network metrics (strength is the
/// weighted companion of degree); the last four are profile popularity counters.
enum class Variable {
    degree,
    strength,
    eigenvector,
    closeness,
    betweenness,
    load,
    cfcloseness,
    cfbetweenness,
    followers,
    following,
    favorites,
    statuses,
};

inline constexpr std::size_t kVariableCount = 12;

std::string_view to_string(Variable v);
std::optional<Variable> variable_from_string(std::string_view name);

/// Every table column.
const std::vector<Variable> &all_variables();
/// The seven relevance metrics.
const std::vector<Variable> &network_metrics();
/// The eleven variables of the distribution/correlation analysis (metrics + popularity).
const std::vector<Variable> &analyzed_variables();

struct CentralityRow {
    std::string user_key;
    std::string screen_name;
    /// Indexed by Variable; NaN when a metric was not computed.
    std::array<double, kVariableCount> values{};

    double operator[](Variable v) const { return values[static_cast<std::size_t>(v)]; }
    double &operator[](Variable v) { return values[static_cast<std::size_t>(v)]; }

    bool operator==(const CentralityRow &) const = default;
};

/// One row per analyzed node, sorted by user_key.
class CentralityTable {
public:
    CentralityTable() = default;
    explicit CentralityTable(std::vector<CentralityRow> rows);

    const std::vector<CentralityRow> &rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    std::vector<double> column(Variable v) const;
    const CentralityRow *find(std::string_view user_key) const;

    bool operator==(const CentralityTable &other) const;

private:
    std::vector<CentralityRow> rows_;
};

struct CentralityConfig {
    GraphView betweenness_view = GraphView::undirected;
    EigenvectorOptions eigenvector;
    CurrentFlowOptions current_flow;
    unsigned threads = 0;
    /// Metrics to compute; empty means all seven (strength travels with degree).
    std::set<Variable> metrics;
};

/// All requested metrics plus popularity counters for every node of `graph`.
/// Per-metric failures are rethrown as MetricError naming the metric.
CentralityTable compute_all(const FlowGraph &graph, const CentralityConfig &config = {});

std::string to_csv(const CentralityTable &table);
CentralityTable table_from_csv(std::string_view csv);
CentralityTable read_centrality_csv(const std::filesystem::path &path);

/// Header of the table CSV export.
inline constexpr std::string_view kCentralityCsvHeader =
    "user_key,screen_name,degree,strength,eigenvector,closeness,betweenness,load,cfcloseness,"
    "cfbetweenness,followers,following,favorites,statuses";

} // namespace leadernet
