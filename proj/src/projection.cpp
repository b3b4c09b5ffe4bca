#include <leadernet/analytics.hpp>
#include <leadernet/error.hpp>
#include <leadernet/projection.hpp>
#include <leadernet/text_io.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace leadernet {

using nlohmann::json;

namespace {

bool same_metric(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::vector<const CentralityRow *> candidate_rows(const FlowGraph &graph, const CentralityTable &table,
                                                  Variable metric) {
    std::vector<const CentralityRow *> rows;
    for (const auto &r : table.rows())
        if (graph.contains(r.user_key) && !std::isnan(r[metric]))
            rows.push_back(&r);
    return rows;
}

SubgraphProjection build(const FlowGraph &graph, Variable metric, std::vector<const CentralityRow *> kept) {
    SubgraphProjection proj;
    proj.metric = metric;
    std::sort(kept.begin(), kept.end(),
              [](const CentralityRow *a, const CentralityRow *b) { return a->user_key < b->user_key; });
    proj.empty = kept.empty();
    if (kept.empty())
        return proj;

    std::vector<double> values;
    for (const auto *r : kept)
        values.push_back((*r)[metric]);
    const auto display = saturate(values, kDisplaySaturationPercentile);
    const auto [lo_it, hi_it] = std::minmax_element(display.begin(), display.end());
    const double lo = *lo_it, hi = *hi_it;

    std::set<NodeKey> keys;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto &r = *kept[i];
        ProjectedNode node;
        node.id = r.user_key;
        node.label = r.screen_name.empty() ? r.user_key : r.screen_name;
        node.metrics = r.values;
        node.size = hi > lo ? kMinDisplaySize + (kMaxDisplaySize - kMinDisplaySize) * (display[i] - lo) / (hi - lo)
                            : kMinDisplaySize;
        proj.nodes.push_back(std::move(node));
        keys.insert(r.user_key);
    }
    const auto sub = graph.induced(keys);
    for (const auto &[k, w] : sub.undirected_edges())
        proj.links.push_back({k.first, k.second, w});
    proj.components = connected_components(sub);
    return proj;
}

} // namespace

bool SubgraphProjection::operator==(const SubgraphProjection &o) const {
    if (metric != o.metric || percentile != o.percentile || top_n != o.top_n || !same_metric(threshold, o.threshold) ||
        empty != o.empty || links != o.links || components != o.components || nodes.size() != o.nodes.size())
        return false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto &a = nodes[i], &b = o.nodes[i];
        if (a.id != b.id || a.label != b.label || a.size != b.size)
            return false;
        for (std::size_t j = 0; j < kVariableCount; ++j)
            if (!same_metric(a.metrics[j], b.metrics[j]))
                return false;
    }
    return true;
}

SubgraphProjection percentile_subgraph(const FlowGraph &graph, const CentralityTable &table, Variable metric,
                                       double percentile) {
    if (!(percentile >= 0.0 && percentile < 100.0))
        throw Error("projection percentile must be in [0, 100), got " + format_double(percentile));
    auto rows = candidate_rows(graph, table, metric);
    double threshold = std::numeric_limits<double>::quiet_NaN();
    std::vector<const CentralityRow *> kept;
    if (!rows.empty()) {
        std::vector<double> values;
        for (const auto *r : rows)
            values.push_back((*r)[metric]);
        threshold = nearest_rank_percentile(values, percentile);
        for (const auto *r : rows)
            if ((*r)[metric] >= threshold)
                kept.push_back(r);
    }
    auto proj = build(graph, metric, std::move(kept));
    proj.percentile = percentile;
    proj.threshold = threshold;
    return proj;
}

SubgraphProjection top_n_subgraph(const FlowGraph &graph, const CentralityTable &table, Variable metric,
                                  std::size_t budget) {
    auto rows = candidate_rows(graph, table, metric);
    std::sort(rows.begin(), rows.end(), [&](const CentralityRow *a, const CentralityRow *b) {
        if ((*a)[metric] != (*b)[metric])
            return (*a)[metric] > (*b)[metric];
        return a->user_key < b->user_key;
    });
    if (rows.size() > budget)
        rows.resize(budget);
    const double threshold = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : (*rows.back())[metric];
    auto proj = build(graph, metric, std::move(rows));
    proj.top_n = budget;
    proj.threshold = threshold;
    return proj;
}

ExportFormat export_format_from_string(std::string_view name) {
    if (name == "graphml")
        return ExportFormat::graphml;
    if (name == "dot")
        return ExportFormat::dot;
    if (name == "json")
        return ExportFormat::json;
    throw Error("unknown export format '" + std::string(name) + "' (expected graphml, dot or json)");
}

std::string_view file_extension(ExportFormat format) {
    switch (format) {
    case ExportFormat::graphml:
        return "graphml";
    case ExportFormat::dot:
        return "dot";
    case ExportFormat::json:
        return "json";
    }
    return "txt";
}

json to_json(const SubgraphProjection &p) {
    json nodes = json::array();
    for (const auto &n : p.nodes) {
        json metrics = json::object();
        for (auto v : all_variables()) {
            double x = n.metrics[static_cast<std::size_t>(v)];
            metrics[std::string(to_string(v))] = std::isfinite(x) ? json(x) : json(nullptr);
        }
        nodes.push_back({{"id", n.id}, {"label", n.label}, {"metrics", std::move(metrics)}, {"size", n.size}});
    }
    json links = json::array();
    for (const auto &l : p.links)
        links.push_back({{"source", l.source}, {"target", l.target}, {"flow", l.flow}});
    json meta = {{"metric", to_string(p.metric)},
                 {"percentile", p.percentile},
                 {"threshold", std::isfinite(p.threshold) ? json(p.threshold) : json(nullptr)},
                 {"empty", p.empty},
                 {"node_count", p.nodes.size()},
                 {"edge_count", p.links.size()},
                 {"component_count", p.components.size()}};
    meta["top_n"] = p.top_n ? json(*p.top_n) : json(nullptr);
    return {{"nodes", std::move(nodes)}, {"links", std::move(links)}, {"components", p.components}, {"meta", meta}};
}

SubgraphProjection projection_from_json(const json &doc) {
    SubgraphProjection p;
    const auto &meta = doc.at("meta");
    auto metric = variable_from_string(meta.at("metric").get<std::string>());
    if (!metric)
        throw Error("projection document names an unknown metric");
    p.metric = *metric;
    p.percentile = meta.at("percentile").get<double>();
    p.threshold = meta.at("threshold").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                 : meta.at("threshold").get<double>();
    p.empty = meta.at("empty").get<bool>();
    if (meta.contains("top_n") && !meta.at("top_n").is_null())
        p.top_n = meta.at("top_n").get<std::size_t>();
    for (const auto &n : doc.at("nodes")) {
        ProjectedNode node;
        node.id = n.at("id").get<std::string>();
        node.label = n.at("label").get<std::string>();
        node.size = n.at("size").get<double>();
        node.metrics.fill(std::numeric_limits<double>::quiet_NaN());
        for (const auto &[name, value] : n.at("metrics").items()) {
            auto v = variable_from_string(name);
            if (v && !value.is_null())
                node.metrics[static_cast<std::size_t>(*v)] = value.get<double>();
        }
        p.nodes.push_back(std::move(node));
    }
    for (const auto &l : doc.at("links"))
        p.links.push_back(
            {l.at("source").get<std::string>(), l.at("target").get<std::string>(), l.at("flow").get<std::uint64_t>()});
    p.components = doc.at("components").get<std::vector<std::vector<std::string>>>();
    return p;
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        case '\'':
            out += "&apos;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string write_graphml(const SubgraphProjection &p) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
           "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
           "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
           "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
    out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    for (auto v : all_variables())
        out << "  <key id=\"" << to_string(v) << "\" for=\"node\" attr.name=\"" << to_string(v)
            << "\" attr.type=\"double\"/>\n";
    out << "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"double\"/>\n";
    out << "  <key id=\"flow\" for=\"edge\" attr.name=\"flow\" attr.type=\"long\"/>\n";
    out << "  <graph id=\"" << to_string(p.metric) << "\" edgedefault=\"undirected\">\n";
    for (const auto &n : p.nodes) {
        out << "    <node id=\"" << xml_escape(n.id) << "\">\n";
        out << "      <data key=\"label\">" << xml_escape(n.label) << "</data>\n";
        for (auto v : all_variables()) {
            double x = n.metrics[static_cast<std::size_t>(v)];
            if (std::isfinite(x))
                out << "      <data key=\"" << to_string(v) << "\">" << format_double(x) << "</data>\n";
        }
        out << "      <data key=\"size\">" << format_double(n.size) << "</data>\n";
        out << "    </node>\n";
    }
    std::size_t e = 0;
    for (const auto &l : p.links) {
        out << "    <edge id=\"e" << e++ << "\" source=\"" << xml_escape(l.source) << "\" target=\""
            << xml_escape(l.target) << "\">\n";
        out << "      <data key=\"flow\">" << l.flow << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string write_dot(const SubgraphProjection &p) {
    std::ostringstream out;
    out << "graph " << dot_quote(std::string(to_string(p.metric)) + "_leaders") << " {\n";
    out << "  node [shape=circle, fixedsize=true];\n";
    for (const auto &n : p.nodes)
        out << "  " << dot_quote(n.id) << " [label=" << dot_quote(n.label) << ", width=" << format_double(n.size)
            << "];\n";
    for (const auto &l : p.links)
        out << "  " << dot_quote(l.source) << " -- " << dot_quote(l.target) << " [flow=" << l.flow << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace

std::string export_projection(const SubgraphProjection &projection, ExportFormat format) {
    switch (format) {
    case ExportFormat::graphml:
        return write_graphml(projection);
    case ExportFormat::dot:
        return write_dot(projection);
    case ExportFormat::json:
        return to_json(projection).dump(2) + "\n";
    }
    throw Error("unknown export format");
}

} // namespace leadernet
