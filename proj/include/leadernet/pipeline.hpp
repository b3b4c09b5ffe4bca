#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <leadernet/analytics.hpp>
#include <leadernet/centrality_table.hpp>
#include <leadernet/flow_graph.hpp>
#include <leadernet/ingest.hpp>
#include <leadernet/projection.hpp>

namespace leadernet {

/// Settings shared by all pipeline stages. Defaults: degree filter 3, display saturation
/// at the 95th percentile, projection at the 97th.
struct PipelineConfig {
    std::optional<std::filesystem::path> keyword_file;
    bool strict = false;
    std::size_t min_degree = 3;
    bool largest_component = true;
    GraphView view = GraphView::undirected;
    double eigenvector_tolerance = 1e-8;
    int eigenvector_max_iterations = 1000;
    std::size_t dense_limit = 2000;
    double solver_tolerance = 1e-8;
    unsigned threads = 0;
    double saturation_percentile = 95.0;
    double projection_percentile = 97.0;
    std::optional<std::size_t> projection_top_n;
    std::string rank_metric = "eigenvector";
    std::size_t rank_top_n = 100;
    std::string projection_metric = "cfbetweenness";
    ExportFormat projection_format = ExportFormat::json;
    int histogram_bins = 30;
    std::filesystem::path output_dir = "out";
    bool quiet = false;

    KeywordSet keywords() const;
    CentralityConfig centrality_config() const;
};

/// Flat `key = value` document; '#' starts a comment. Unknown keys are errors.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path &path, PipelineConfig base = {});
std::string to_config_text(const PipelineConfig &config);
std::map<std::string, std::string> config_entries(const PipelineConfig &config);

/// Artifact file names inside the output directory.
namespace artifacts {
inline constexpr const char *interactions = "interactions.jsonl";
inline constexpr const char *ingest_report = "ingest_report.json";
inline constexpr const char *graph = "graph.flowgraph";
inline constexpr const char *graph_stats = "graph_stats.json";
inline constexpr const char *filtered_graph = "filtered.flowgraph";
inline constexpr const char *filter_stats = "filter_stats.json";
inline constexpr const char *centrality = "centrality.csv";
inline constexpr const char *pearson = "correlations_pearson.csv";
inline constexpr const char *spearman = "correlations_spearman.csv";
inline constexpr const char *histograms = "histograms.json";
inline constexpr const char *scatter = "scatter.json";
inline constexpr const char *config = "pipeline.conf";
} // namespace artifacts

std::filesystem::path ranking_path(const std::filesystem::path &dir, Variable metric);
std::filesystem::path projection_path(const std::filesystem::path &dir, const SubgraphProjection &projection,
                                      ExportFormat format);

struct IngestOutcome {
    IngestReport report;
    std::filesystem::path interactions;
};
/// Files are parsed in parallel and merged in argument order.
IngestOutcome cmd_ingest(const std::vector<std::filesystem::path> &inputs, const PipelineConfig &config);

struct GraphOutcome {
    GraphStats stats;
    std::filesystem::path graph;
};
GraphOutcome cmd_build(const std::filesystem::path &interactions, const PipelineConfig &config);

struct FilterOutcome {
    GraphStats input;
    GraphStats after_degree;
    GraphStats output; // after the largest-component step when enabled
    std::filesystem::path graph;
};
FilterOutcome cmd_filter(const std::filesystem::path &graph, const PipelineConfig &config);

/// `metrics` empty selects all seven.
std::filesystem::path cmd_centrality(const std::filesystem::path &graph, const PipelineConfig &config,
                                     const std::set<Variable> &metrics = {});

std::filesystem::path cmd_rank(const std::filesystem::path &centrality_csv, const PipelineConfig &config);

struct StatsOutcome {
    std::filesystem::path pearson;
    std::filesystem::path spearman;
    std::filesystem::path histograms;
    std::filesystem::path scatter;
};
StatsOutcome cmd_stats(const std::filesystem::path &centrality_csv, const PipelineConfig &config);

std::filesystem::path cmd_project(const std::filesystem::path &graph, const std::filesystem::path &centrality_csv,
                                  const PipelineConfig &config);

struct RunOutcome {
    IngestReport ingest;
    GraphStats built;
    FilterOutcome filter;
    std::vector<std::filesystem::path> written;
};
/// ingest -> build -> filter -> centrality -> rank -> stats -> project, plus the effective config.
RunOutcome cmd_run(const std::vector<std::filesystem::path> &inputs, const PipelineConfig &config);

/// Histogram set written by cmd_stats: linear and logarithmic for every analyzed variable.
nlohmann::json histogram_document(const CentralityTable &table, int bins);

} // namespace leadernet
