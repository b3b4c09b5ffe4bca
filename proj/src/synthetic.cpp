#include <leadernet/error.hpp>
#include <leadernet/synthetic.hpp>
#include <leadernet/text_io.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace leadernet::synthetic {

using nlohmann::json;

std::uint64_t uniform_index(Rng &rng, std::uint64_t bound) {
    if (bound == 0)
        throw Error("uniform_index: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit)
            return x % bound;
    }
}

double uniform_unit(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

std::string twitter_time(std::int64_t unix_seconds) {
    using namespace std::chrono;
    static constexpr std::array<const char *, 7> weekdays = {"Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed"};
    static constexpr std::array<const char *, 12> months = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                             "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    const auto day_count = unix_seconds / 86400;
    const auto secs = unix_seconds % 86400;
    year_month_day ymd{sys_days{days{day_count}}};
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s %s %02u %02lld:%02lld:%02lld +0000 %d", weekdays[day_count % 7],
                  months[static_cast<unsigned>(ymd.month()) - 1], static_cast<unsigned>(ymd.day()),
                  static_cast<long long>(secs / 3600), static_cast<long long>(secs % 3600 / 60),
                  static_cast<long long>(secs % 60), static_cast<int>(ymd.year()));
    return buf;
}

struct SyntheticUser {
    std::string id_str;
    std::string screen_name;
    std::uint64_t followers, friends, favourites, statuses;
};

std::uint64_t heavy_tail(Rng &rng, double decades) {
    return static_cast<std::uint64_t>(std::floor(std::pow(10.0, uniform_unit(rng) * decades)));
}

json profile(const SyntheticUser &u, std::uint64_t drift) {
    return {{"id_str", u.id_str},
            {"screen_name", u.screen_name},
            {"followers_count", u.followers + drift},
            {"friends_count", u.friends},
            {"favourites_count", u.favourites + drift},
            {"statuses_count", u.statuses + drift}};
}

json mention(const SyntheticUser &u) { return {{"id_str", u.id_str}, {"screen_name", u.screen_name}}; }

} // namespace

std::vector<std::string> generate_corpus(const CorpusOptions &options) {
    Rng rng(options.seed);
    const std::size_t n_users = options.users ? options.users : std::max<std::size_t>(options.records / 3, 10);
    std::vector<SyntheticUser> users;
    users.reserve(n_users);
    for (std::size_t i = 0; i < n_users; ++i) {
        SyntheticUser u;
        u.id_str = std::to_string(100000000ULL + i * 7919ULL);
        u.screen_name = (i % 3 == 0 ? "User_" : (i % 3 == 1 ? "citizen" : "Reporter")) + std::to_string(i);
        u.followers = heavy_tail(rng, 6.0);
        u.friends = heavy_tail(rng, 4.0);
        u.favourites = heavy_tail(rng, 5.0);
        u.statuses = heavy_tail(rng, 5.5);
        users.push_back(std::move(u));
    }
    // Accounts only ever referenced by screen name, in mixed case.
    static constexpr std::array<const char *, 6> external = {"HealthAgency", "CityCouncil", "NewsDesk",
                                                               "WHO_Updates", "LabReports", "Hospital_Info"};
    const auto keyword_set = KeywordSet::pandemic_default();
    const auto &keywords = keyword_set.keywords();
    static constexpr std::array<const char *, 5> phrases = {"stay safe everyone", "new figures released today",
                                                             "please share this", "thread about the situation",
                                                             "what do you think"};
    static constexpr std::array<const char *, 4> off_topic = {"great match tonight", "new recipe for dinner",
                                                               "traffic is terrible", "watching a movie"};

    // Skewed picks: small indices are the hubs.
    auto pick_author = [&] { return static_cast<std::size_t>(std::pow(uniform_unit(rng), 1.6) * n_users); };
    auto pick_target = [&] { return static_cast<std::size_t>(std::pow(uniform_unit(rng), 3.0) * n_users); };

    const std::int64_t start = 1587168000; // 2020-04-18T00:00:00Z
    const std::int64_t step = (1588636799 - start) / static_cast<std::int64_t>(std::max<std::size_t>(options.records, 1));

    std::vector<std::string> lines;
    lines.reserve(options.records);
    for (std::size_t i = 0; i < options.records; ++i) {
        const std::int64_t t = start + static_cast<std::int64_t>(i) * step + static_cast<std::int64_t>(uniform_index(rng, step > 0 ? step : 1));
        const auto &author = users[pick_author()];
        const std::uint64_t drift = static_cast<std::uint64_t>(i / 500);

        std::string body = phrases[uniform_index(rng, phrases.size())];
        if (uniform_unit(rng) < options.off_topic_rate)
            body = off_topic[uniform_index(rng, off_topic.size())];
        else
            body += " " + keywords[uniform_index(rng, keywords.size())];

        json doc = {{"id_str", std::to_string(1250000000000000000ULL + i)},
                    {"created_at", twitter_time(t)},
                    {"user", profile(author, drift)}};
        json mentions = json::array();
        std::string prefix;

        const double kind = uniform_unit(rng);
        if (kind < 0.40) {
            const auto &src = users[pick_target()];
            doc["retweeted_status"] = {{"id_str", std::to_string(1240000000000000000ULL + i)},
                                       {"created_at", twitter_time(t - 3600)},
                                       {"user", profile(src, drift)},
                                       {"text", body}};
            prefix = "RT @" + src.screen_name + ": ";
            mentions.push_back(mention(src));
        } else if (kind < 0.55) {
            const auto &src = users[pick_target()];
            doc["quoted_status"] = {{"id_str", std::to_string(1230000000000000000ULL + i)},
                                    {"created_at", twitter_time(t - 7200)},
                                    {"user", profile(src, drift)},
                                    {"text", "original " + body}};
        } else if (kind < 0.70) {
            const auto &dst = users[pick_target()];
            doc["in_reply_to_user_id_str"] = dst.id_str;
            doc["in_reply_to_screen_name"] = dst.screen_name;
            prefix = "@" + dst.screen_name + " ";
            mentions.push_back(mention(dst));
        }
        const auto extra = uniform_index(rng, 3);
        for (std::uint64_t k = 0; k < extra; ++k) {
            const double r = uniform_unit(rng);
            if (r < 0.05) {
                const std::string name = external[uniform_index(rng, external.size())];
                mentions.push_back({{"screen_name", name}});
                body += " @" + name;
            } else if (r < 0.08) {
                mentions.push_back(mention(author));
                body += " @" + author.screen_name;
            } else {
                const auto &m = users[pick_target()];
                mentions.push_back(mention(m));
                body += " @" + m.screen_name;
            }
        }
        doc["text"] = prefix + body;
        doc["entities"] = {{"user_mentions", std::move(mentions)}};

        std::string line = doc.dump();
        if (uniform_unit(rng) < options.malformed_rate)
            line = line.substr(0, line.size() / 2);
        lines.push_back(std::move(line));
    }
    return lines;
}

void write_corpus(const std::filesystem::path &path, const CorpusOptions &options) {
    std::string out;
    for (const auto &line : generate_corpus(options)) {
        out += line;
        out += '\n';
    }
    write_file_atomic(path, out);
}

namespace {

double random_flow(Rng &rng, std::uint64_t max_flow) {
    return static_cast<double>(1 + uniform_index(rng, max_flow));
}

} // namespace

IndexedGraph random_connected_graph(Rng &rng, std::size_t n, double extra_edge_probability, std::uint64_t max_flow) {
    std::vector<WeightedEdge> edges;
    std::set<std::pair<NodeIndex, NodeIndex>> present;
    for (std::size_t v = 1; v < n; ++v) {
        auto u = static_cast<NodeIndex>(uniform_index(rng, v));
        present.emplace(u, static_cast<NodeIndex>(v));
        edges.push_back({u, static_cast<NodeIndex>(v), random_flow(rng, max_flow)});
    }
    for (NodeIndex u = 0; u < n; ++u)
        for (NodeIndex v = u + 1; v < n; ++v)
            if (!present.count({u, v}) && uniform_unit(rng) < extra_edge_probability)
                edges.push_back({u, v, random_flow(rng, max_flow)});
    // Shuffle labels so the tree structure is not tied to index order.
    std::vector<NodeIndex> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = static_cast<NodeIndex>(i);
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    for (auto &e : edges) {
        e.u = perm[e.u];
        e.v = perm[e.v];
    }
    return IndexedGraph::from_edges(n, edges);
}

IndexedGraph random_tree(Rng &rng, std::size_t n, std::uint64_t max_flow) {
    return random_connected_graph(rng, n, 0.0, max_flow);
}

std::vector<WeightedEdge> preferential_attachment_edges(Rng &rng, std::size_t n, std::size_t edges_per_node,
                                                        std::uint64_t max_flow) {
    if (n <= edges_per_node)
        throw Error("preferential attachment needs more nodes than edges per node");
    std::vector<WeightedEdge> edges;
    std::vector<NodeIndex> endpoints; // each node once per incident edge
    // Seed clique on edges_per_node + 1 nodes.
    for (NodeIndex u = 0; u <= edges_per_node; ++u)
        for (NodeIndex v = u + 1; v <= edges_per_node; ++v) {
            edges.push_back({u, v, random_flow(rng, max_flow)});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    for (std::size_t v = edges_per_node + 1; v < n; ++v) {
        std::set<NodeIndex> chosen;
        while (chosen.size() < edges_per_node)
            chosen.insert(endpoints[uniform_index(rng, endpoints.size())]);
        for (auto u : chosen) {
            edges.push_back({u, static_cast<NodeIndex>(v), random_flow(rng, max_flow)});
            endpoints.push_back(u);
            endpoints.push_back(static_cast<NodeIndex>(v));
        }
    }
    return edges;
}

FlowGraph interaction_graph(std::uint64_t seed, std::size_t nodes, std::size_t edges) {
    Rng rng(seed);
    auto list = preferential_attachment_edges(rng, nodes, 2, 1);
    std::set<std::pair<NodeIndex, NodeIndex>> present;
    for (const auto &e : list)
        present.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
    if (present.size() > edges)
        throw Error("requested edge count is below the connected backbone size");
    while (present.size() < edges) {
        auto u = static_cast<NodeIndex>(uniform_index(rng, nodes));
        auto v = static_cast<NodeIndex>(uniform_index(rng, nodes));
        if (u == v)
            continue;
        present.emplace(std::min(u, v), std::max(u, v));
    }

    const std::size_t width = std::to_string(nodes).size();
    auto key = [&](NodeIndex i) {
        auto s = std::to_string(i);
        return "u" + std::string(width - s.size(), '0') + s;
    };
    FlowGraph g;
    for (NodeIndex i = 0; i < nodes; ++i) {
        UserRef u;
        u.user_key = key(i);
        u.screen_name = "user" + std::to_string(i);
        u.followers_count = heavy_tail(rng, 6.0);
        u.friends_count = heavy_tail(rng, 4.0);
        u.favourites_count = heavy_tail(rng, 5.0);
        u.statuses_count = heavy_tail(rng, 5.5);
        g.add_user(u);
    }
    for (const auto &[u, v] : present) {
        // Geometric-like flows: most ties carry a single interaction.
        std::uint64_t flow = 1;
        while (flow < 50 && uniform_unit(rng) < 0.35)
            ++flow;
        const bool forward = uniform_unit(rng) < 0.5;
        g.add_flow(key(forward ? u : v), key(forward ? v : u), flow);
        if (flow > 1 && uniform_unit(rng) < 0.2)
            g.add_flow(key(forward ? v : u), key(forward ? u : v), 1);
    }
    g.finalize();
    return g;
}

} // namespace leadernet::synthetic
