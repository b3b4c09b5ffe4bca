#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include <leadernet/error.hpp>
#include <leadernet/pipeline.hpp>
#include <leadernet/synthetic.hpp>
#include <leadernet/text_io.hpp>

using namespace leadernet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    auto dir = fs::temp_directory_path() / ("leadernet_pipeline_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::map<std::string, std::string> dir_contents(const fs::path &dir) {
    std::map<std::string, std::string> out;
    for (const auto &e : fs::directory_iterator(dir))
        out[e.path().filename().string()] = read_file(e.path());
    return out;
}

} // namespace

TEST_CASE("config parsing") {
    auto c = parse_config("# comment\nmin_degree = 2\nview = directed\nprojection_percentile=90\n");
    CHECK(c.min_degree == 2);
    CHECK(c.view == GraphView::directed);
    CHECK(c.projection_percentile == 90.0);
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("min_degree = -1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("rank_metric = pagerank\n"), ParseError);
    CHECK_THROWS_AS(parse_config("just words\n"), ParseError);
    auto round = parse_config(to_config_text(c));
    CHECK(to_config_text(round) == to_config_text(c));
}

TEST_CASE("rank on a three-node path table") {
    auto dir = scratch("rank");
    FlowGraph g;
    for (auto k : {"a", "b", "c"})
        g.add_user(UserRef{k, k, 0, 0, 0, 0, std::nullopt});
    g.add_flow("a", "b", 1);
    g.add_flow("b", "c", 1);
    g.finalize();
    write_file_atomic(dir / "g.flowgraph", to_flowgraph_text(g));
    PipelineConfig cfg;
    cfg.output_dir = dir;
    cfg.quiet = true;
    cfg.rank_top_n = 3;
    auto table = cmd_centrality(dir / "g.flowgraph", cfg);
    auto first = read_file(cmd_rank(table, cfg));
    auto second = read_file(cmd_rank(table, cfg));
    CHECK(first == second);
    std::istringstream lines(first);
    std::string header, top, mid, last;
    std::getline(lines, header);
    std::getline(lines, top);
    std::getline(lines, mid);
    std::getline(lines, last);
    CHECK(top.find(",b,") != std::string::npos);
    CHECK(mid.find(",a,") != std::string::npos);
    CHECK(last.find(",c,") != std::string::npos);
}

TEST_CASE("full run is byte-identical across repetitions") {
    auto dir = scratch("determinism");
    synthetic::CorpusOptions opts;
    opts.records = 1500;
    opts.malformed_rate = 0.01;
    synthetic::write_corpus(dir / "corpus.jsonl", opts);
    PipelineConfig cfg;
    cfg.quiet = true;
    cfg.output_dir = dir / "a";
    auto a = cmd_run({dir / "corpus.jsonl"}, cfg);
    cfg.output_dir = dir / "b";
    cfg.threads = 1;
    cmd_run({dir / "corpus.jsonl"}, cfg);
    CHECK(a.ingest.errored > 0);
    CHECK(a.filter.output.component_count == 1);
    auto ca = dir_contents(dir / "a");
    auto cb = dir_contents(dir / "b");
    CHECK(ca.size() >= 14);
    CHECK(ca == cb);

    cfg.strict = true;
    cfg.output_dir = dir / "c";
    CHECK_THROWS_AS(cmd_run({dir / "corpus.jsonl"}, cfg), ParseError);
}

TEST_CASE("ingest merges files in argument order") {
    auto dir = scratch("merge");
    synthetic::CorpusOptions one, two;
    one.records = 100;
    two.records = 120;
    two.seed = 5;
    synthetic::write_corpus(dir / "one.jsonl", one);
    synthetic::write_corpus(dir / "two.jsonl", two);
    PipelineConfig cfg;
    cfg.quiet = true;
    cfg.output_dir = dir / "out";
    auto out = cmd_ingest({dir / "one.jsonl", dir / "two.jsonl"}, cfg);
    CHECK(out.report.total_lines == 220);
    auto recs = read_interactions_file(out.interactions);
    CHECK(recs.size() == out.report.parsed - out.report.filtered_out);
    CHECK_THROWS_AS(cmd_ingest({dir / "missing.jsonl"}, cfg), Error);
}
