#include <leadernet/error.hpp>
#include <leadernet/flow_graph.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

namespace leadernet {

std::string_view to_string(GraphView view) {
    return view == GraphView::directed ? "directed" : "undirected";
}

GraphView graph_view_from_string(std::string_view name) {
    if (name == "directed")
        return GraphView::directed;
    if (name == "undirected")
        return GraphView::undirected;
    throw Error("unknown graph view '" + std::string(name) + "'");
}

void merge_profile(UserRef &stored, const UserRef &incoming) {
    if (incoming.observed_at) {
        auto rank = [](const UserRef &u) {
            return std::tie(*u.observed_at, u.followers_count, u.friends_count, u.favourites_count,
                            u.statuses_count, u.screen_name);
        };
        if (!stored.observed_at || rank(stored) < rank(incoming)) {
            stored.screen_name = incoming.screen_name;
            stored.followers_count = incoming.followers_count;
            stored.friends_count = incoming.friends_count;
            stored.favourites_count = incoming.favourites_count;
            stored.statuses_count = incoming.statuses_count;
            stored.observed_at = incoming.observed_at;
        }
        return;
    }
    // Mention-only reference: it only contributes a screen name when no profile is known.
    if (!stored.observed_at && !incoming.screen_name.empty() &&
        (stored.screen_name.empty() || incoming.screen_name < stored.screen_name))
        stored.screen_name = incoming.screen_name;
}

void FlowGraph::require_mutable() const {
    if (finalized_)
        throw Error("flow graph is finalized and immutable");
}

void FlowGraph::add_user(const UserRef &user) {
    require_mutable();
    if (user.user_key.empty())
        throw Error("user_key must be non-empty");
    auto [it, inserted] = nodes_.try_emplace(user.user_key, user);
    if (!inserted)
        merge_profile(it->second, user);
}

void FlowGraph::add_interaction(const UserRef &author, const Interaction &interaction) {
    require_mutable();
    if (author.user_key == interaction.target.user_key)
        throw Error("self-interaction rejected for user '" + author.user_key + "'");
    add_user(author);
    add_user(interaction.target);
    edges_[{author.user_key, interaction.target.user_key}].flow += 1;
}

void FlowGraph::add_record(const InteractionRecord &record) {
    add_user(record.author);
    for (const auto &i : record.interactions)
        add_interaction(record.author, i);
}

void FlowGraph::add_flow(const NodeKey &source, const NodeKey &target, std::uint64_t flow) {
    require_mutable();
    if (source == target)
        throw Error("self-edge rejected for user '" + source + "'");
    if (flow == 0)
        throw Error("edge flow must be positive");
    if (!contains(source) || !contains(target))
        throw Error("edge " + source + " -> " + target + " references an unknown node");
    edges_[{source, target}].flow += flow;
}

void FlowGraph::finalize() {
    for (auto &[key, e] : edges_)
        e.inverse_flow = 1.0 / static_cast<double>(e.flow);
    finalized_ = true;
}

std::uint64_t FlowGraph::flow(const NodeKey &source, const NodeKey &target) const {
    auto it = edges_.find({source, target});
    return it == edges_.end() ? 0 : it->second.flow;
}

std::uint64_t FlowGraph::undirected_weight(const NodeKey &u, const NodeKey &v) const {
    return flow(u, v) + flow(v, u);
}

std::map<DirectedKey, std::uint64_t> FlowGraph::undirected_edges() const {
    std::map<DirectedKey, std::uint64_t> out;
    for (const auto &[key, e] : edges_) {
        const auto &[s, t] = key;
        out[s < t ? DirectedKey{s, t} : DirectedKey{t, s}] += e.flow;
    }
    return out;
}

std::map<NodeKey, std::size_t> FlowGraph::undirected_degrees() const {
    std::map<NodeKey, std::size_t> deg;
    for (const auto &[key, _] : nodes_)
        deg[key] = 0;
    for (const auto &[key, _] : undirected_edges()) {
        ++deg[key.first];
        ++deg[key.second];
    }
    return deg;
}

FlowGraph FlowGraph::induced(const std::set<NodeKey> &keep) const {
    FlowGraph sub;
    for (const auto &key : keep) {
        auto it = nodes_.find(key);
        if (it != nodes_.end())
            sub.nodes_.emplace(key, it->second);
    }
    for (const auto &[key, e] : edges_)
        if (sub.nodes_.count(key.first) && sub.nodes_.count(key.second))
            sub.edges_.emplace(key, e);
    sub.finalize();
    // inverse_flow recomputed from the same integer flow is bit-identical.
    return sub;
}

namespace {

void require_finalized(const FlowGraph &g, const char *op) {
    if (!g.finalized())
        throw Error(std::string(op) + " requires a finalized graph");
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

FilterResult filter_min_degree(const FlowGraph &graph, std::size_t k) {
    require_finalized(graph, "filter_min_degree");
    if (k == 0) {
        FilterResult res{graph, {}};
        res.stats = stats(res.graph);
        return res;
    }
    std::set<NodeKey> keep;
    for (const auto &[key, d] : graph.undirected_degrees())
        if (d >= k)
            keep.insert(key);
    FilterResult res{graph.induced(keep), {}};
    res.stats = stats(res.graph);
    return res;
}

std::vector<std::vector<NodeKey>> connected_components(const FlowGraph &graph) {
    require_finalized(graph, "connected_components");
    std::vector<const NodeKey *> keys;
    std::map<NodeKey, std::size_t> index;
    for (const auto &[key, _] : graph.nodes()) {
        index.emplace(key, keys.size());
        keys.push_back(&key);
    }
    DisjointSets sets(keys.size());
    auto und = graph.undirected_edges();
    for (const auto &[e, _] : und)
        sets.unite(index.at(e.first), index.at(e.second));

    // Roots are the smallest index of each set, and indices follow key order.
    std::map<std::size_t, std::size_t> comp_of_root;
    std::vector<std::vector<NodeKey>> comps;
    std::vector<std::size_t> internal_edges;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto root = sets.find(i);
        auto [it, inserted] = comp_of_root.try_emplace(root, comps.size());
        if (inserted) {
            comps.emplace_back();
            internal_edges.push_back(0);
        }
        comps[it->second].push_back(*keys[i]);
    }
    for (const auto &[e, _] : und)
        ++internal_edges[comp_of_root.at(sets.find(index.at(e.first)))];

    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (comps[a].size() != comps[b].size())
            return comps[a].size() > comps[b].size();
        if (internal_edges[a] != internal_edges[b])
            return internal_edges[a] > internal_edges[b];
        return comps[a].front() < comps[b].front();
    });
    std::vector<std::vector<NodeKey>> sorted;
    sorted.reserve(comps.size());
    for (auto i : order)
        sorted.push_back(std::move(comps[i]));
    return sorted;
}

FlowGraph largest_component(const FlowGraph &graph) {
    auto comps = connected_components(graph);
    if (comps.empty()) {
        FlowGraph empty;
        empty.finalize();
        return empty;
    }
    return graph.induced(std::set<NodeKey>(comps.front().begin(), comps.front().end()));
}

GraphStats stats(const FlowGraph &graph) {
    GraphStats s;
    s.node_count = graph.node_count();
    s.edge_count = graph.undirected_edges().size();
    s.directed_edge_count = graph.directed_edges().size();
    s.component_count = graph.finalized() ? connected_components(graph).size() : 0;
    return s;
}

namespace {

void check_token(const std::string &token, const char *what) {
    if (token.find_first_of(" \t\r\n") != std::string::npos)
        throw Error(std::string(what) + " '" + token + "' contains whitespace and cannot be persisted");
}

} // namespace

void write_flowgraph(const FlowGraph &graph, std::ostream &out) {
    out << "flowgraph v1 " << graph.node_count() << ' ' << graph.directed_edges().size() << '\n';
    for (const auto &[key, u] : graph.nodes()) {
        check_token(key, "user_key");
        check_token(u.screen_name, "screen_name");
        out << "N " << key << ' ' << (u.screen_name.empty() ? "-" : u.screen_name) << ' ' << u.followers_count
            << ' ' << u.friends_count << ' ' << u.favourites_count << ' ' << u.statuses_count << '\n';
    }
    for (const auto &[key, e] : graph.directed_edges())
        out << "E " << key.first << ' ' << key.second << ' ' << e.flow << '\n';
}

std::string to_flowgraph_text(const FlowGraph &graph) {
    std::ostringstream ss;
    write_flowgraph(graph, ss);
    return ss.str();
}

FlowGraph read_flowgraph(std::istream &in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line))
        throw ParseError(1, "empty flowgraph document");
    std::istringstream header(line);
    std::string magic, version;
    long long n_nodes = -1, n_edges = -1;
    header >> magic >> version >> n_nodes >> n_edges;
    if (magic != "flowgraph" || version != "v1" || n_nodes < 0 || n_edges < 0)
        throw ParseError(1, "expected header 'flowgraph v1 <nodes> <edges>'");

    FlowGraph g;
    long long seen_nodes = 0, seen_edges = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        try {
            if (tag == "N") {
                UserRef u;
                std::string extra;
                if (!(ls >> u.user_key >> u.screen_name >> u.followers_count >> u.friends_count >>
                      u.favourites_count >> u.statuses_count) ||
                    (ls >> extra))
                    throw ParseError(line_no, "malformed node line");
                if (u.screen_name == "-")
                    u.screen_name.clear();
                if (g.contains(u.user_key))
                    throw ParseError(line_no, "duplicate node '" + u.user_key + "'");
                g.add_user(u);
                ++seen_nodes;
            } else if (tag == "E") {
                std::string s, t, extra;
                std::uint64_t flow = 0;
                if (!(ls >> s >> t >> flow) || (ls >> extra))
                    throw ParseError(line_no, "malformed edge line");
                if (g.flow(s, t) != 0)
                    throw ParseError(line_no, "duplicate edge " + s + " -> " + t);
                g.add_flow(s, t, flow);
                ++seen_edges;
            } else {
                throw ParseError(line_no, "unknown line tag '" + tag + "'");
            }
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (seen_nodes != n_nodes || seen_edges != n_edges)
        throw ParseError(line_no, "header counts do not match body");
    g.finalize();
    return g;
}

FlowGraph read_flowgraph_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open graph file " + path);
    return read_flowgraph(in);
}

nlohmann::json to_json(const GraphStats &s) {
    return {{"node_count", s.node_count},
            {"edge_count", s.edge_count},
            {"directed_edge_count", s.directed_edge_count},
            {"component_count", s.component_count}};
}

} // namespace leadernet
