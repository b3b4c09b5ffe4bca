#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <leadernet/centrality_table.hpp>

namespace leadernet {

struct RankedEntry {
    std::size_t rank = 0; // 1-based
    std::string user_key;
    std::string screen_name;
    std::array<double, kVariableCount> values{};
    /// Column-wise saturated copies; equal to `values` when no saturation was requested.
    std::array<double, kVariableCount> saturated{};
};

struct RankedList {
    Variable reference;
    std::optional<double> saturation_percentile;
    std::vector<RankedEntry> entries;
};

/// Descending by the reference variable, ties by ascending user_key. NaN sorts last.
RankedList rank(const CentralityTable &table, Variable reference,
                std::optional<double> saturation_percentile = std::nullopt);
/// Throws Error for names that are not table columns.
RankedList rank(const CentralityTable &table, std::string_view reference,
                std::optional<double> saturation_percentile = std::nullopt);

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value (1-based), p in (0, 100].
/// p == 0 yields the minimum. NaNs are ignored; throws on an all-NaN or empty input.
double nearest_rank_percentile(std::vector<double> values, double p);

/// Clips every value above the nearest-rank p-th percentile to that percentile.
std::vector<double> saturate(const std::vector<double> &values, double p = 95.0);

struct CorrelationMatrix {
    std::vector<Variable> variables;
    /// Row-major, variables.size() squared; nullopt where a variable has zero variance.
    std::vector<std::optional<double>> pearson;
    std::vector<std::optional<double>> spearman;

    std::optional<double> pearson_at(std::size_t i, std::size_t j) const { return pearson[i * variables.size() + j]; }
    std::optional<double> spearman_at(std::size_t i, std::size_t j) const {
        return spearman[i * variables.size() + j];
    }
};

/// Pearson on raw values; nullopt for zero variance or non-finite input.
std::optional<double> pearson(const std::vector<double> &x, const std::vector<double> &y);
/// Pearson on average ranks (ties share the mean rank).
std::optional<double> spearman(const std::vector<double> &x, const std::vector<double> &y);
std::vector<double> average_ranks(const std::vector<double> &values);

/// Over the eleven analyzed variables. Requires at least 3 rows.
CorrelationMatrix correlations(const CentralityTable &table);
CorrelationMatrix correlations(const CentralityTable &table, const std::vector<Variable> &variables);

struct Histogram {
    Variable variable;
    bool log_bins = false;
    std::vector<double> edges;        // bins + 1 ascending edges
    std::vector<std::size_t> counts;  // one per bin
    /// Log bins only: values <= 0, which have no place on a geometric axis.
    std::size_t underflow = 0;
};

/// Linear bins over [min, max] or geometric bins over [smallest positive, max].
/// Counts plus underflow always sum to the number of finite values.
Histogram histogram(const CentralityTable &table, Variable variable, int bins, bool log_bins);

struct ScatterRow {
    Variable x_variable;
    Variable y_variable;
    std::string user_key;
    double x;
    double y;
};

/// Long-format pairs (x before y in analyzed-variable order) for every node.
std::vector<ScatterRow> scatter_matrix(const CentralityTable &table);

nlohmann::json to_json(const RankedList &list, std::size_t offset = 0,
                       std::size_t limit = static_cast<std::size_t>(-1));
std::string ranking_to_csv(const RankedList &list, std::size_t top_n = static_cast<std::size_t>(-1));
nlohmann::json to_json(const CorrelationMatrix &m);
/// One square matrix per file: first column is the row variable, "NA" marks nulls.
std::string correlation_to_csv(const CorrelationMatrix &m, bool spearman_matrix);
nlohmann::json to_json(const Histogram &h);
nlohmann::json scatter_to_json(const std::vector<ScatterRow> &rows);

} // namespace leadernet
