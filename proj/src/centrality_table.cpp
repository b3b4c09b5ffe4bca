#include <leadernet/centrality_table.hpp>
#include <leadernet/error.hpp>
#include <leadernet/text_io.hpp>

#include <algorithm>
#include <cstring>
#include <sstream>

namespace leadernet {

namespace {

constexpr std::array<std::string_view, kVariableCount> kNames = {
    "degree", "strength",      "eigenvector", "closeness", "betweenness", "load",
    "cfcloseness", "cfbetweenness", "followers", "following", "favorites", "statuses"};

bool same_value(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

} // namespace

std::string_view to_string(Variable v) { return kNames[static_cast<std::size_t>(v)]; }

std::optional<Variable> variable_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name)
            return static_cast<Variable>(i);
    return std::nullopt;
}

const std::vector<Variable> &all_variables() {
    static const std::vector<Variable> vars = [] {
        std::vector<Variable> v;
        for (std::size_t i = 0; i < kVariableCount; ++i)
            v.push_back(static_cast<Variable>(i));
        return v;
    }();
    return vars;
}

const std::vector<Variable> &network_metrics() {
    static const std::vector<Variable> vars = {Variable::cfbetweenness, Variable::betweenness, Variable::closeness,
                                               Variable::cfcloseness,   Variable::eigenvector, Variable::degree,
                                               Variable::load};
    return vars;
}

const std::vector<Variable> &analyzed_variables() {
    static const std::vector<Variable> vars = {
        Variable::cfbetweenness, Variable::betweenness, Variable::closeness, Variable::cfcloseness,
        Variable::eigenvector,   Variable::degree,      Variable::load,      Variable::followers,
        Variable::following,     Variable::favorites,   Variable::statuses};
    return vars;
}

CentralityTable::CentralityTable(std::vector<CentralityRow> rows) : rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end(),
              [](const CentralityRow &a, const CentralityRow &b) { return a.user_key < b.user_key; });
    for (std::size_t i = 1; i < rows_.size(); ++i)
        if (rows_[i].user_key == rows_[i - 1].user_key)
            throw Error("duplicate user_key '" + rows_[i].user_key + "' in centrality table");
}

std::vector<double> CentralityTable::column(Variable v) const {
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto &r : rows_)
        out.push_back(r[v]);
    return out;
}

const CentralityRow *CentralityTable::find(std::string_view user_key) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), user_key,
                               [](const CentralityRow &r, std::string_view k) { return r.user_key < k; });
    return it != rows_.end() && it->user_key == user_key ? &*it : nullptr;
}

bool CentralityTable::operator==(const CentralityTable &other) const {
    if (rows_.size() != other.rows_.size())
        return false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto &a = rows_[i];
        const auto &b = other.rows_[i];
        if (a.user_key != b.user_key || a.screen_name != b.screen_name)
            return false;
        for (std::size_t j = 0; j < kVariableCount; ++j)
            if (!same_value(a.values[j], b.values[j]))
                return false;
    }
    return true;
}

CentralityTable compute_all(const FlowGraph &graph, const CentralityConfig &config) {
    auto wants = [&](Variable v) { return config.metrics.empty() || config.metrics.count(v) != 0; };
    const auto g = IndexedGraph::from_flow_graph(graph, GraphView::undirected);
    const auto n = g.node_count();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<CentralityRow> rows(n);
    {
        NodeIndex i = 0;
        for (const auto &[key, user] : graph.nodes()) {
            auto &r = rows[i++];
            r.user_key = key;
            r.screen_name = user.screen_name;
            r.values.fill(nan);
            r[Variable::followers] = static_cast<double>(user.followers_count);
            r[Variable::following] = static_cast<double>(user.friends_count);
            r[Variable::favorites] = static_cast<double>(user.favourites_count);
            r[Variable::statuses] = static_cast<double>(user.statuses_count);
        }
    }
    auto store = [&](Variable v, const std::vector<double> &values) {
        for (std::size_t i = 0; i < n; ++i)
            rows[i][v] = values[i];
    };
    auto tagged = [](const char *metric, auto &&fn) {
        try {
            fn();
        } catch (const MetricError &) {
            throw;
        } catch (const Error &e) {
            throw MetricError(metric, e.what());
        }
    };

    if (wants(Variable::degree) || wants(Variable::strength)) {
        tagged("degree", [&] { store(Variable::degree, degree_centrality(g)); });
        store(Variable::strength, strength(g));
    }
    if (wants(Variable::eigenvector))
        tagged("eigenvector", [&] { store(Variable::eigenvector, eigenvector_centrality(g, config.eigenvector).values); });

    const bool directed_bc = config.betweenness_view == GraphView::directed;
    const bool want_bc = wants(Variable::betweenness);
    if (wants(Variable::closeness) || wants(Variable::load) || (want_bc && !directed_bc)) {
        auto sp = shortest_path_scores(g, config.threads);
        if (wants(Variable::closeness))
            store(Variable::closeness, sp.closeness);
        if (wants(Variable::load))
            store(Variable::load, sp.load);
        if (want_bc && !directed_bc)
            store(Variable::betweenness, sp.betweenness);
    }
    if (want_bc && directed_bc) {
        tagged("betweenness", [&] {
            const auto dg = IndexedGraph::from_flow_graph(graph, GraphView::directed);
            store(Variable::betweenness, betweenness_centrality(dg, config.threads));
        });
    }

    const bool want_cfc = wants(Variable::cfcloseness);
    const bool want_cfb = wants(Variable::cfbetweenness);
    auto cf_options = config.current_flow;
    if (cf_options.threads == 0)
        cf_options.threads = config.threads;
    if (want_cfc && want_cfb) {
        auto cf = current_flow_scores(g, cf_options);
        store(Variable::cfcloseness, cf.closeness);
        store(Variable::cfbetweenness, cf.betweenness);
    } else if (want_cfc) {
        store(Variable::cfcloseness, current_flow_closeness(g, cf_options));
    } else if (want_cfb) {
        store(Variable::cfbetweenness, current_flow_betweenness(g, cf_options));
    }
    return CentralityTable(std::move(rows));
}

std::string to_csv(const CentralityTable &table) {
    std::ostringstream out;
    out << kCentralityCsvHeader << '\n';
    for (const auto &r : table.rows()) {
        out << csv_escape(r.user_key) << ',' << csv_escape(r.screen_name);
        for (double v : r.values) {
            out << ',';
            if (!std::isnan(v))
                out << format_double(v);
        }
        out << '\n';
    }
    return out.str();
}

CentralityTable table_from_csv(std::string_view csv) {
    std::vector<CentralityRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto eol = csv.find('\n', pos);
        auto line = csv.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? csv.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line_no == 1) {
            if (line != kCentralityCsvHeader)
                throw ParseError(1, "unexpected centrality CSV header");
            continue;
        }
        if (line.empty())
            continue;
        try {
            auto fields = csv_split(line);
            if (fields.size() != kVariableCount + 2)
                throw ParseError(line_no, "expected " + std::to_string(kVariableCount + 2) + " fields");
            CentralityRow r;
            r.user_key = fields[0];
            r.screen_name = fields[1];
            for (std::size_t j = 0; j < kVariableCount; ++j)
                r.values[j] = fields[j + 2].empty() ? std::numeric_limits<double>::quiet_NaN()
                                                    : parse_double(fields[j + 2]);
            rows.push_back(std::move(r));
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (line_no == 0)
        throw ParseError(1, "empty centrality CSV");
    return CentralityTable(std::move(rows));
}

CentralityTable read_centrality_csv(const std::filesystem::path &path) {
    return table_from_csv(read_file(path));
}

} // namespace leadernet
