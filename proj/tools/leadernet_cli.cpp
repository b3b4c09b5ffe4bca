// Command-line front end for the pipeline stages and the HTTP service.

#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include <leadernet/api_service.hpp>
#include <leadernet/error.hpp>
#include <leadernet/pipeline.hpp>
#include <leadernet/synthetic.hpp>

namespace fs = std::filesystem;
using namespace leadernet;

namespace {

std::atomic<bool> g_reload{false};
std::atomic<bool> g_stop{false};

extern "C" void on_hangup(int) { g_reload = true; }
extern "C" void on_terminate(int) { g_stop = true; }

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    std::optional<unsigned> threads;
};

void add_common(CLI::App *cmd, CommonOptions &common) {
    cmd->add_option("--config", common.config_path, "Flat key=value config file");
    cmd->add_option("--out", common.out_dir, "Output directory");
    cmd->add_flag("--quiet", common.quiet, "Suppress progress messages");
    cmd->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
}

PipelineConfig resolve(const CommonOptions &common) {
    PipelineConfig cfg;
    if (!common.config_path.empty())
        cfg = load_config(common.config_path);
    if (!common.out_dir.empty())
        cfg.output_dir = common.out_dir;
    if (common.quiet)
        cfg.quiet = true;
    if (common.threads)
        cfg.threads = *common.threads;
    return cfg;
}

std::set<Variable> parse_metrics(const std::string &list) {
    std::set<Variable> out;
    if (list.empty() || list == "all")
        return out;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        auto v = variable_from_string(name);
        if (!v)
            throw Error("unknown metric '" + name + "'");
        out.insert(*v);
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"leadernet: interaction graphs, centrality suites and leader projections"};
    app.require_subcommand(1);
    CommonOptions common;

    auto *generate = app.add_subcommand("generate", "Write the synthetic tweet corpus");
    std::uint64_t seed = synthetic::CorpusOptions{}.seed;
    std::size_t records = 10000;
    double malformed = 0.0;
    std::string corpus_path;
    generate->add_option("--seed", seed, "Generator seed");
    generate->add_option("--records", records, "Number of status lines");
    generate->add_option("--malformed-rate", malformed, "Fraction of deliberately broken lines");
    generate->add_option("output", corpus_path, "Output JSONL path")->required();
    generate->add_flag("--quiet", common.quiet, "Suppress progress messages");

    auto *ingest = app.add_subcommand("ingest", "Parse and keyword-filter JSONL status files");
    std::vector<std::string> inputs;
    bool strict = false;
    std::string keyword_file;
    ingest->add_option("inputs", inputs, "Input JSONL files")->required();
    ingest->add_flag("--strict", strict, "Abort on the first malformed record");
    ingest->add_option("--keywords", keyword_file, "Keyword file (one per line)");
    add_common(ingest, common);

    auto *build = app.add_subcommand("build", "Build the flow graph from an interactions file");
    std::string interactions;
    build->add_option("interactions", interactions, "interactions.jsonl from ingest")->required();
    add_common(build, common);

    auto *filter = app.add_subcommand("filter", "Degree filter and largest component");
    std::string graph_in;
    std::optional<std::size_t> min_degree;
    bool no_lcc = false;
    filter->add_option("graph", graph_in, "Flow graph file")->required();
    filter->add_option("--min-degree", min_degree, "Remove nodes with fewer incident edges (default 3)");
    filter->add_flag("--no-largest-component", no_lcc, "Keep every component");
    add_common(filter, common);

    auto *centrality = app.add_subcommand("centrality", "Compute the centrality table");
    std::string metrics_list;
    std::string view;
    centrality->add_option("graph", graph_in, "Filtered flow graph file")->required();
    centrality->add_option("--metrics", metrics_list, "Comma-separated metrics (default all)");
    centrality->add_option("--view", view, "Betweenness view: undirected or directed");
    add_common(centrality, common);

    auto *rank_cmd = app.add_subcommand("rank", "Rank nodes by one metric");
    std::string table_in, metric;
    std::optional<std::size_t> top;
    std::optional<double> saturate_p;
    rank_cmd->add_option("table", table_in, "centrality.csv")->required();
    rank_cmd->add_option("--metric", metric, "Reference metric");
    rank_cmd->add_option("--top", top, "Rows to write");
    rank_cmd->add_option("--saturate", saturate_p, "Display saturation percentile");
    add_common(rank_cmd, common);

    auto *stats_cmd = app.add_subcommand("stats", "Correlations, histograms and scatter data");
    stats_cmd->add_option("table", table_in, "centrality.csv")->required();
    add_common(stats_cmd, common);

    auto *project = app.add_subcommand("project", "Percentile leader subgraph export");
    std::optional<double> percentile;
    std::string format;
    project->add_option("graph", graph_in, "Filtered flow graph file")->required();
    project->add_option("table", table_in, "centrality.csv")->required();
    project->add_option("--metric", metric, "Projection metric");
    project->add_option("--percentile", percentile, "Threshold percentile in [0, 100)");
    project->add_option("--top", top, "Fixed node budget instead of a percentile");
    project->add_option("--format", format, "graphml, dot or json");
    add_common(project, common);

    auto *run = app.add_subcommand("run", "Whole pipeline from JSONL files to projections");
    run->add_option("inputs", inputs, "Input JSONL files")->required();
    run->add_flag("--strict", strict, "Abort on the first malformed record");
    add_common(run, common);

    auto *serve = app.add_subcommand("serve", "Serve an artifact directory over HTTP");
    std::string artifact_dir, host = "127.0.0.1", static_dir;
    int port = 8080;
    serve->add_option("artifacts", artifact_dir, "Pipeline output directory")->required();
    serve->add_option("--port", port, "Listen port (0 picks a free one)");
    serve->add_option("--host", host, "Listen address");
    serve->add_option("--static", static_dir, "Directory of dashboard assets to serve at /");
    add_common(serve, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            synthetic::CorpusOptions opts;
            opts.seed = seed;
            opts.records = records;
            opts.malformed_rate = malformed;
            synthetic::write_corpus(corpus_path, opts);
            if (!common.quiet)
                std::cerr << "generate: " << records << " records -> " << corpus_path << '\n';
            return 0;
        }
        auto cfg = resolve(common);
        if (strict)
            cfg.strict = true;
        if (!keyword_file.empty())
            cfg.keyword_file = keyword_file;
        if (min_degree)
            cfg.min_degree = *min_degree;
        if (no_lcc)
            cfg.largest_component = false;
        if (!view.empty())
            cfg.view = graph_view_from_string(view);
        if (!metric.empty()) {
            if (!variable_from_string(metric))
                throw Error("unknown metric '" + metric + "'");
            cfg.rank_metric = metric;
            cfg.projection_metric = metric;
        }
        if (top) {
            cfg.rank_top_n = *top;
            cfg.projection_top_n = *top;
        }
        if (saturate_p)
            cfg.saturation_percentile = *saturate_p;
        if (percentile)
            cfg.projection_percentile = *percentile;
        if (!format.empty())
            cfg.projection_format = export_format_from_string(format);

        std::vector<fs::path> paths(inputs.begin(), inputs.end());
        if (ingest->parsed())
            cmd_ingest(paths, cfg);
        else if (build->parsed())
            cmd_build(interactions, cfg);
        else if (filter->parsed())
            cmd_filter(graph_in, cfg);
        else if (centrality->parsed())
            cmd_centrality(graph_in, cfg, parse_metrics(metrics_list));
        else if (rank_cmd->parsed())
            cmd_rank(table_in, cfg);
        else if (stats_cmd->parsed())
            cmd_stats(table_in, cfg);
        else if (project->parsed())
            cmd_project(graph_in, table_in, cfg);
        else if (run->parsed())
            cmd_run(paths, cfg);
        else if (serve->parsed()) {
            ApiService service(load_snapshot(artifact_dir));
            ServerOptions opts;
            opts.host = host;
            opts.port = port;
            if (!static_dir.empty())
                opts.static_dir = static_dir;
            HttpServer server(service, opts);
            const int bound = server.bind();
            std::signal(SIGHUP, on_hangup);
            std::signal(SIGINT, on_terminate);
            std::signal(SIGTERM, on_terminate);
            std::thread watcher([&] {
                while (!g_stop) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(200));
                    if (g_reload.exchange(false)) {
                        try {
                            service.replace(load_snapshot(artifact_dir));
                            if (!cfg.quiet)
                                std::cerr << "serve: snapshot reloaded\n";
                        } catch (const std::exception &e) {
                            std::cerr << "serve: reload failed, keeping previous snapshot: " << e.what() << '\n';
                        }
                    }
                }
                server.stop();
            });
            if (!cfg.quiet)
                std::cerr << "serve: http://" << host << ':' << bound << "/api/meta\n";
            server.listen();
            g_stop = true;
            watcher.join();
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
