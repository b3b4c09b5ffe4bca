#include <leadernet/error.hpp>
#include <leadernet/parallel.hpp>
#include <leadernet/pipeline.hpp>
#include <leadernet/text_io.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace leadernet {

namespace fs = std::filesystem;
using nlohmann::json;

KeywordSet PipelineConfig::keywords() const {
    return keyword_file ? KeywordSet::from_file(*keyword_file) : KeywordSet::pandemic_default();
}

CentralityConfig PipelineConfig::centrality_config() const {
    CentralityConfig c;
    c.betweenness_view = view;
    c.eigenvector.tolerance = eigenvector_tolerance;
    c.eigenvector.max_iterations = eigenvector_max_iterations;
    c.current_flow.dense_limit = dense_limit;
    c.current_flow.solver_tolerance = solver_tolerance;
    c.current_flow.threads = threads;
    c.threads = threads;
    return c;
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string &v) {
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw Error("expected a boolean, got '" + v + "'");
}

std::size_t parse_count(const std::string &v) {
    auto x = parse_int(v);
    if (x < 0)
        throw Error("expected a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(x);
}

void require_metric(const std::string &name) {
    if (!variable_from_string(name))
        throw Error("unknown metric '" + name + "'");
}

void log(const PipelineConfig &config, const std::string &msg) {
    if (!config.quiet)
        std::cerr << msg << '\n';
}

std::string stats_line(const GraphStats &s) {
    return std::to_string(s.node_count) + " nodes, " + std::to_string(s.edge_count) + " edges, " +
           std::to_string(s.component_count) + " components";
}

} // namespace

PipelineConfig parse_config(std::string_view text, PipelineConfig c) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected key = value");
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        try {
            if (key == "keywords")
                c.keyword_file = value.empty() ? std::nullopt : std::optional<fs::path>(value);
            else if (key == "strict")
                c.strict = parse_bool(value);
            else if (key == "min_degree")
                c.min_degree = parse_count(value);
            else if (key == "largest_component")
                c.largest_component = parse_bool(value);
            else if (key == "view")
                c.view = graph_view_from_string(value);
            else if (key == "eigenvector_tolerance")
                c.eigenvector_tolerance = parse_double(value);
            else if (key == "eigenvector_max_iterations")
                c.eigenvector_max_iterations = static_cast<int>(parse_count(value));
            else if (key == "dense_limit")
                c.dense_limit = parse_count(value);
            else if (key == "solver_tolerance")
                c.solver_tolerance = parse_double(value);
            else if (key == "threads")
                c.threads = static_cast<unsigned>(parse_count(value));
            else if (key == "saturation_percentile")
                c.saturation_percentile = parse_double(value);
            else if (key == "projection_percentile")
                c.projection_percentile = parse_double(value);
            else if (key == "projection_top_n")
                c.projection_top_n = value.empty() ? std::nullopt : std::optional<std::size_t>(parse_count(value));
            else if (key == "rank_metric") {
                require_metric(value);
                c.rank_metric = value;
            } else if (key == "rank_top_n")
                c.rank_top_n = parse_count(value);
            else if (key == "projection_metric") {
                require_metric(value);
                c.projection_metric = value;
            } else if (key == "projection_format")
                c.projection_format = export_format_from_string(value);
            else if (key == "histogram_bins")
                c.histogram_bins = static_cast<int>(parse_count(value));
            else if (key == "output_dir")
                c.output_dir = value;
            else if (key == "quiet")
                c.quiet = parse_bool(value);
            else
                throw Error("unknown config key '" + key + "'");
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(line_no, e.what());
        }
    }
    return c;
}

PipelineConfig load_config(const fs::path &path, PipelineConfig base) {
    try {
        return parse_config(read_file(path), std::move(base));
    } catch (const ParseError &e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

std::map<std::string, std::string> config_entries(const PipelineConfig &c) {
    return {{"keywords", c.keyword_file ? c.keyword_file->string() : ""},
            {"strict", c.strict ? "true" : "false"},
            {"min_degree", std::to_string(c.min_degree)},
            {"largest_component", c.largest_component ? "true" : "false"},
            {"view", std::string(to_string(c.view))},
            {"eigenvector_tolerance", format_double(c.eigenvector_tolerance)},
            {"eigenvector_max_iterations", std::to_string(c.eigenvector_max_iterations)},
            {"dense_limit", std::to_string(c.dense_limit)},
            {"solver_tolerance", format_double(c.solver_tolerance)},
            {"saturation_percentile", format_double(c.saturation_percentile)},
            {"projection_percentile", format_double(c.projection_percentile)},
            {"projection_top_n", c.projection_top_n ? std::to_string(*c.projection_top_n) : ""},
            {"rank_metric", c.rank_metric},
            {"rank_top_n", std::to_string(c.rank_top_n)},
            {"projection_metric", c.projection_metric},
            {"projection_format", std::string(file_extension(c.projection_format))},
            {"histogram_bins", std::to_string(c.histogram_bins)}};
}

std::string to_config_text(const PipelineConfig &config) {
    // Output location, verbosity and thread count do not influence results and are left out
    // so that identical runs produce identical documents.
    std::string out;
    for (const auto &[k, v] : config_entries(config))
        out += k + " = " + v + "\n";
    return out;
}

fs::path ranking_path(const fs::path &dir, Variable metric) {
    return dir / ("ranking_" + std::string(to_string(metric)) + ".csv");
}

fs::path projection_path(const fs::path &dir, const SubgraphProjection &p, ExportFormat format) {
    std::string stem = "projection_" + std::string(to_string(p.metric)) + "_";
    stem += p.top_n ? "top" + std::to_string(*p.top_n) : "p" + format_double(p.percentile);
    return dir / (stem + "." + std::string(file_extension(format)));
}

IngestOutcome cmd_ingest(const std::vector<fs::path> &inputs, const PipelineConfig &config) {
    if (inputs.empty())
        throw Error("ingest needs at least one input file");
    const auto keywords = config.keywords();
    std::vector<std::vector<InteractionRecord>> per_file(inputs.size());
    std::vector<IngestReport> reports(inputs.size());
    parallel_for(inputs.size(), config.threads, [&](std::size_t i) {
        reports[i] = ingest_file(inputs[i], keywords, config.strict,
                                 [&](InteractionRecord &&r) { per_file[i].push_back(std::move(r)); });
    });
    IngestOutcome out;
    std::string body;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        out.report += reports[i];
        for (const auto &r : per_file[i])
            body += to_json(r).dump() + "\n";
    }
    out.interactions = config.output_dir / artifacts::interactions;
    write_file_atomic(out.interactions, body);
    write_file_atomic(config.output_dir / artifacts::ingest_report, to_json(out.report).dump(2) + "\n");
    log(config, "ingest: " + std::to_string(out.report.total_lines) + " lines, " +
                    std::to_string(out.report.parsed - out.report.filtered_out) + " kept, " + std::to_string(out.report.filtered_out) +
                    " off-topic, " + std::to_string(out.report.errored) + " errors");
    return out;
}

GraphOutcome cmd_build(const fs::path &interactions, const PipelineConfig &config) {
    FlowGraph g;
    for (const auto &r : read_interactions_file(interactions))
        g.add_record(r);
    g.finalize();
    GraphOutcome out{stats(g), config.output_dir / artifacts::graph};
    write_file_atomic(out.graph, to_flowgraph_text(g));
    write_file_atomic(config.output_dir / artifacts::graph_stats, to_json(out.stats).dump(2) + "\n");
    log(config, "build: " + stats_line(out.stats));
    return out;
}

FilterOutcome cmd_filter(const fs::path &graph, const PipelineConfig &config) {
    const auto g = read_flowgraph_file(graph.string());
    FilterOutcome out;
    out.input = stats(g);
    auto filtered = filter_min_degree(g, config.min_degree);
    out.after_degree = filtered.stats;
    FlowGraph result = config.largest_component ? largest_component(filtered.graph) : std::move(filtered.graph);
    out.output = stats(result);
    out.graph = config.output_dir / artifacts::filtered_graph;
    write_file_atomic(out.graph, to_flowgraph_text(result));
    json doc = {{"min_degree", config.min_degree},
                {"largest_component", config.largest_component},
                {"input", to_json(out.input)},
                {"after_degree_filter", to_json(out.after_degree)},
                {"output", to_json(out.output)}};
    write_file_atomic(config.output_dir / artifacts::filter_stats, doc.dump(2) + "\n");
    log(config, "filter: " + stats_line(out.input) + " -> " + stats_line(out.after_degree) + " -> " +
                    stats_line(out.output));
    return out;
}

fs::path cmd_centrality(const fs::path &graph, const PipelineConfig &config, const std::set<Variable> &metrics) {
    const auto g = read_flowgraph_file(graph.string());
    auto cc = config.centrality_config();
    cc.metrics = metrics;
    const auto table = compute_all(g, cc);
    const auto path = config.output_dir / artifacts::centrality;
    write_file_atomic(path, to_csv(table));
    log(config, "centrality: " + std::to_string(table.size()) + " nodes");
    return path;
}

fs::path cmd_rank(const fs::path &centrality_csv, const PipelineConfig &config) {
    const auto table = read_centrality_csv(centrality_csv);
    const auto list = rank(table, config.rank_metric, config.saturation_percentile);
    const auto path = ranking_path(config.output_dir, list.reference);
    write_file_atomic(path, ranking_to_csv(list, config.rank_top_n));
    log(config, "rank: " + path.string());
    return path;
}

json histogram_document(const CentralityTable &table, int bins) {
    json linear = json::object(), logarithmic = json::object();
    for (auto v : analyzed_variables()) {
        linear[std::string(to_string(v))] = to_json(histogram(table, v, bins, false));
        logarithmic[std::string(to_string(v))] = to_json(histogram(table, v, bins, true));
    }
    return {{"bins", bins}, {"linear", std::move(linear)}, {"log", std::move(logarithmic)}};
}

StatsOutcome cmd_stats(const fs::path &centrality_csv, const PipelineConfig &config) {
    const auto table = read_centrality_csv(centrality_csv);
    const auto m = correlations(table);
    StatsOutcome out{config.output_dir / artifacts::pearson, config.output_dir / artifacts::spearman,
                     config.output_dir / artifacts::histograms, config.output_dir / artifacts::scatter};
    write_file_atomic(out.pearson, correlation_to_csv(m, false));
    write_file_atomic(out.spearman, correlation_to_csv(m, true));
    write_file_atomic(out.histograms, histogram_document(table, config.histogram_bins).dump() + "\n");
    write_file_atomic(out.scatter, scatter_to_json(scatter_matrix(table)).dump() + "\n");
    log(config, "stats: correlations, histograms and scatter data written");
    return out;
}

fs::path cmd_project(const fs::path &graph, const fs::path &centrality_csv, const PipelineConfig &config) {
    const auto g = read_flowgraph_file(graph.string());
    const auto table = read_centrality_csv(centrality_csv);
    const auto metric = variable_from_string(config.projection_metric);
    if (!metric)
        throw Error("unknown metric '" + config.projection_metric + "'");
    const auto proj = config.projection_top_n ? top_n_subgraph(g, table, *metric, *config.projection_top_n)
                                              : percentile_subgraph(g, table, *metric, config.projection_percentile);
    const auto path = projection_path(config.output_dir, proj, config.projection_format);
    write_file_atomic(path, export_projection(proj, config.projection_format));
    log(config, "project: " + std::to_string(proj.nodes.size()) + " nodes, " + std::to_string(proj.links.size()) +
                    " edges, " + std::to_string(proj.components.size()) + " components -> " + path.string());
    return path;
}

RunOutcome cmd_run(const std::vector<fs::path> &inputs, const PipelineConfig &config) {
    RunOutcome out;
    auto ingest = cmd_ingest(inputs, config);
    out.ingest = ingest.report;
    auto built = cmd_build(ingest.interactions, config);
    out.built = built.stats;
    out.filter = cmd_filter(built.graph, config);
    auto table = cmd_centrality(out.filter.graph, config);
    out.written = {ingest.interactions, built.graph, out.filter.graph, table};
    out.written.push_back(cmd_rank(table, config));
    auto st = cmd_stats(table, config);
    out.written.insert(out.written.end(), {st.pearson, st.spearman, st.histograms, st.scatter});
    out.written.push_back(cmd_project(out.filter.graph, table, config));
    const auto conf = config.output_dir / artifacts::config;
    write_file_atomic(conf, to_config_text(config));
    out.written.push_back(conf);
    return out;
}

} // namespace leadernet
