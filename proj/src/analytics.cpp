#include <leadernet/analytics.hpp>
#include <leadernet/error.hpp>
#include <leadernet/text_io.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace leadernet {

using nlohmann::json;

namespace {

void check_percentile(double p, bool allow_zero) {
    if (!(p <= 100.0) || p < 0.0 || (!allow_zero && p == 0.0))
        throw Error("percentile must be in " + std::string(allow_zero ? "[0, 100]" : "(0, 100]") + ", got " +
                    format_double(p));
}

json nullable(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

double nearest_rank_percentile(std::vector<double> values, double p) {
    check_percentile(p, true);
    values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }),
                 values.end());
    if (values.empty())
        throw Error("percentile of an empty sample");
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    auto idx = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
    idx = std::clamp<std::size_t>(idx, 1, n);
    return values[idx - 1];
}

std::vector<double> saturate(const std::vector<double> &values, double p) {
    check_percentile(p, false);
    if (std::all_of(values.begin(), values.end(), [](double v) { return std::isnan(v); }))
        return values;
    const double threshold = nearest_rank_percentile(values, p);
    std::vector<double> out(values);
    for (auto &v : out)
        if (v > threshold)
            v = threshold;
    return out;
}

RankedList rank(const CentralityTable &table, Variable reference, std::optional<double> saturation_percentile) {
    RankedList list{reference, saturation_percentile, {}};
    const auto &rows = table.rows();
    std::vector<std::size_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = rows[a][reference], vb = rows[b][reference];
        const bool na = std::isnan(va), nb = std::isnan(vb);
        if (na != nb)
            return nb;
        if (!na && va != vb)
            return va > vb;
        return rows[a].user_key < rows[b].user_key;
    });

    std::array<std::vector<double>, kVariableCount> sat;
    if (saturation_percentile)
        for (std::size_t j = 0; j < kVariableCount; ++j)
            sat[j] = saturate(table.column(static_cast<Variable>(j)), *saturation_percentile);

    list.entries.reserve(rows.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const auto &row = rows[order[r]];
        RankedEntry e;
        e.rank = r + 1;
        e.user_key = row.user_key;
        e.screen_name = row.screen_name;
        e.values = row.values;
        e.saturated = row.values;
        if (saturation_percentile)
            for (std::size_t j = 0; j < kVariableCount; ++j)
                e.saturated[j] = sat[j][order[r]];
        list.entries.push_back(std::move(e));
    }
    return list;
}

RankedList rank(const CentralityTable &table, std::string_view reference, std::optional<double> saturation_percentile) {
    auto v = variable_from_string(reference);
    if (!v)
        throw Error("unknown metric '" + std::string(reference) + "'");
    return rank(table, *v, saturation_percentile);
}

std::optional<double> pearson(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size())
        throw Error("pearson: length mismatch");
    const auto n = x.size();
    if (n < 2)
        return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            return std::nullopt;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(const std::vector<double> &values) {
    const auto n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]])
            ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> spearman(const std::vector<double> &x, const std::vector<double> &y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || (i < y.size() && !std::isfinite(y[i])))
            return std::nullopt;
    return pearson(average_ranks(x), average_ranks(y));
}

CorrelationMatrix correlations(const CentralityTable &table, const std::vector<Variable> &variables) {
    if (table.size() < 3)
        throw Error("correlations require at least 3 nodes");
    CorrelationMatrix m;
    m.variables = variables;
    const auto k = variables.size();
    m.pearson.assign(k * k, std::nullopt);
    m.spearman.assign(k * k, std::nullopt);
    std::vector<std::vector<double>> cols, ranks;
    for (auto v : variables) {
        cols.push_back(table.column(v));
        ranks.push_back(average_ranks(cols.back()));
    }
    auto finite = [](const std::vector<double> &c) {
        return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
    };
    for (std::size_t i = 0; i < k; ++i) {
        if (!finite(cols[i]))
            continue;
        for (std::size_t j = i; j < k; ++j) {
            if (!finite(cols[j]))
                continue;
            auto p = pearson(cols[i], cols[j]);
            auto s = pearson(ranks[i], ranks[j]);
            if (i == j) {
                // Unit diagonal unless the column is degenerate.
                if (p)
                    p = 1.0;
                if (s)
                    s = 1.0;
            }
            m.pearson[i * k + j] = m.pearson[j * k + i] = p;
            m.spearman[i * k + j] = m.spearman[j * k + i] = s;
        }
    }
    return m;
}

CorrelationMatrix correlations(const CentralityTable &table) { return correlations(table, analyzed_variables()); }

Histogram histogram(const CentralityTable &table, Variable variable, int bins, bool log_bins) {
    if (bins < 1)
        throw Error("histogram needs at least one bin");
    Histogram h{variable, log_bins, {}, std::vector<std::size_t>(static_cast<std::size_t>(bins), 0), 0};
    std::vector<double> values;
    for (double v : table.column(variable))
        if (std::isfinite(v))
            values.push_back(v);

    std::vector<double> binned;
    if (log_bins) {
        for (double v : values) {
            if (v > 0.0)
                binned.push_back(v);
            else
                ++h.underflow;
        }
    } else {
        binned = values;
    }
    if (binned.empty()) {
        h.edges.assign(static_cast<std::size_t>(bins) + 1, 0.0);
        return h;
    }
    const auto [mn_it, mx_it] = std::minmax_element(binned.begin(), binned.end());
    const double lo = *mn_it, hi = *mx_it;
    h.edges.resize(static_cast<std::size_t>(bins) + 1);
    if (log_bins) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i <= bins; ++i)
            h.edges[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * i / bins);
    } else {
        for (int i = 0; i <= bins; ++i)
            h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
    }
    h.edges.front() = lo;
    h.edges.back() = hi;
    for (double v : binned) {
        // Bins are half-open except the last, which includes the maximum.
        auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
        auto bin = static_cast<std::size_t>(std::distance(h.edges.begin(), it));
        bin = bin == 0 ? 0 : bin - 1;
        h.counts[std::min(bin, h.counts.size() - 1)] += 1;
    }
    return h;
}

std::vector<ScatterRow> scatter_matrix(const CentralityTable &table) {
    std::vector<ScatterRow> out;
    const auto &vars = analyzed_variables();
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            for (const auto &r : table.rows()) {
                const double x = r[vars[i]], y = r[vars[j]];
                if (std::isfinite(x) && std::isfinite(y))
                    out.push_back({vars[i], vars[j], r.user_key, x, y});
            }
    return out;
}

json to_json(const RankedList &list, std::size_t offset, std::size_t limit) {
    json entries = json::array();
    for (std::size_t i = offset; i < list.entries.size() && i - offset < limit; ++i) {
        const auto &e = list.entries[i];
        json values = json::object(), sat = json::object();
        for (auto v : all_variables()) {
            values[std::string(to_string(v))] = number_or_null(e.values[static_cast<std::size_t>(v)]);
            sat[std::string(to_string(v))] = number_or_null(e.saturated[static_cast<std::size_t>(v)]);
        }
        entries.push_back({{"rank", e.rank},
                           {"user_key", e.user_key},
                           {"screen_name", e.screen_name},
                           {"values", std::move(values)},
                           {"saturated", std::move(sat)}});
    }
    return {{"metric", to_string(list.reference)},
            {"saturation_percentile", list.saturation_percentile ? json(*list.saturation_percentile) : json(nullptr)},
            {"total", list.entries.size()},
            {"offset", offset},
            {"entries", std::move(entries)}};
}

std::string ranking_to_csv(const RankedList &list, std::size_t top_n) {
    std::ostringstream out;
    out << "rank,user_key,screen_name";
    for (auto v : all_variables())
        out << ',' << to_string(v);
    if (list.saturation_percentile)
        for (auto v : all_variables())
            out << ",saturated_" << to_string(v);
    out << '\n';
    auto cell = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
    for (std::size_t i = 0; i < list.entries.size() && i < top_n; ++i) {
        const auto &e = list.entries[i];
        out << e.rank << ',' << csv_escape(e.user_key) << ',' << csv_escape(e.screen_name);
        for (double v : e.values)
            out << ',' << cell(v);
        if (list.saturation_percentile)
            for (double v : e.saturated)
                out << ',' << cell(v);
        out << '\n';
    }
    return out.str();
}

json to_json(const CorrelationMatrix &m) {
    json vars = json::array();
    for (auto v : m.variables)
        vars.push_back(to_string(v));
    const auto k = m.variables.size();
    json p = json::array(), s = json::array();
    for (std::size_t i = 0; i < k; ++i) {
        json prow = json::array(), srow = json::array();
        for (std::size_t j = 0; j < k; ++j) {
            prow.push_back(nullable(m.pearson_at(i, j)));
            srow.push_back(nullable(m.spearman_at(i, j)));
        }
        p.push_back(std::move(prow));
        s.push_back(std::move(srow));
    }
    return {{"variables", std::move(vars)}, {"pearson", std::move(p)}, {"spearman", std::move(s)}};
}

std::string correlation_to_csv(const CorrelationMatrix &m, bool spearman_matrix) {
    std::ostringstream out;
    out << "variable";
    for (auto v : m.variables)
        out << ',' << to_string(v);
    out << '\n';
    const auto k = m.variables.size();
    for (std::size_t i = 0; i < k; ++i) {
        out << to_string(m.variables[i]);
        for (std::size_t j = 0; j < k; ++j) {
            auto c = spearman_matrix ? m.spearman_at(i, j) : m.pearson_at(i, j);
            out << ',' << (c ? format_double(*c) : std::string("NA"));
        }
        out << '\n';
    }
    return out.str();
}

json to_json(const Histogram &h) {
    return {{"variable", to_string(h.variable)},
            {"log_bins", h.log_bins},
            {"edges", h.edges},
            {"counts", h.counts},
            {"underflow", h.underflow}};
}

json scatter_to_json(const std::vector<ScatterRow> &rows) {
    json out = json::array();
    for (const auto &r : rows)
        out.push_back({{"variable_x", to_string(r.x_variable)},
                       {"variable_y", to_string(r.y_variable)},
                       {"user_key", r.user_key},
                       {"x", r.x},
                       {"y", r.y}});
    return {{"rows", std::move(out)}};
}

} // namespace leadernet
