#include <leadernet/error.hpp>
#include <leadernet/ingest.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <fstream>
#include <set>
#include <utility>

namespace leadernet {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxReportedErrors = 20;

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string string_field(const json &obj, const char *name) {
    auto it = obj.find(name);
    if (it == obj.end() || !it->is_string())
        return {};
    return it->get<std::string>();
}

std::uint64_t counter_field(const json &obj, const char *name) {
    auto it = obj.find(name);
    if (it == obj.end() || !it->is_number())
        return 0;
    if (it->is_number_unsigned())
        return it->get<std::uint64_t>();
    if (it->is_number_integer()) {
        auto v = it->get<std::int64_t>();
        return v < 0 ? 0 : static_cast<std::uint64_t>(v);
    }
    double v = it->get<double>();
    return v < 0 ? 0 : static_cast<std::uint64_t>(v);
}

// Full profile object (author, retweeted/quoted user). Returns nullopt when no identity.
std::optional<UserRef> profile_from(const json &user, std::int64_t observed_at) {
    if (!user.is_object())
        return std::nullopt;
    UserRef ref;
    ref.screen_name = string_field(user, "screen_name");
    ref.user_key = make_user_key(string_field(user, "id_str"), ref.screen_name);
    if (ref.user_key.empty())
        return std::nullopt;
    ref.followers_count = counter_field(user, "followers_count");
    ref.friends_count = counter_field(user, "friends_count");
    ref.favourites_count = counter_field(user, "favourites_count");
    ref.statuses_count = counter_field(user, "statuses_count");
    ref.observed_at = observed_at;
    return ref;
}

std::optional<UserRef> reference_from(std::string_view id_str, std::string_view screen_name) {
    UserRef ref;
    ref.screen_name = std::string(screen_name);
    ref.user_key = make_user_key(id_str, screen_name);
    if (ref.user_key.empty())
        return std::nullopt;
    return ref;
}

std::int64_t status_time(const json &status, std::size_t line_no) {
    auto it = status.find("created_at");
    if (it == status.end() || it->is_null())
        return 0;
    if (!it->is_string())
        throw ParseError(line_no, "created_at is not a string");
    auto t = parse_twitter_time(it->get<std::string>());
    if (!t)
        throw ParseError(line_no, "unrecognized created_at '" + it->get<std::string>() + "'");
    return *t;
}

} // namespace

std::string_view to_string(InteractionKind kind) {
    switch (kind) {
    case InteractionKind::mention:
        return "mention";
    case InteractionKind::retweet:
        return "retweet";
    case InteractionKind::quote:
        return "quote";
    case InteractionKind::reply:
        return "reply";
    }
    return "unknown";
}

InteractionKind interaction_kind_from_string(std::string_view name) {
    if (name == "mention")
        return InteractionKind::mention;
    if (name == "retweet")
        return InteractionKind::retweet;
    if (name == "quote")
        return InteractionKind::quote;
    if (name == "reply")
        return InteractionKind::reply;
    throw Error("unknown interaction kind '" + std::string(name) + "'");
}

KeywordSet KeywordSet::pandemic_default() {
    return KeywordSet({"coronavirus", "Coronavirus", "#CoronavirusES", "coronavirusESP", "#coronavirus",
                       "#Coronavirus", "covid19", "#covid19", "Covid19", "#Covid19", "covid-19", "#covid-19",
                       "COVID-19", "#COVID-19"});
}

KeywordSet::KeywordSet(std::vector<std::string> keywords) {
    std::set<std::string> seen;
    for (auto &k : keywords) {
        if (k.empty())
            throw Error("keyword set contains an empty keyword");
        if (seen.insert(k).second)
            keywords_.push_back(std::move(k));
    }
    if (keywords_.empty())
        throw Error("keyword set is empty");
}

KeywordSet KeywordSet::from_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open keyword file " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        words.push_back(line);
    }
    return KeywordSet(std::move(words));
}

bool matches_keywords(std::string_view text, const KeywordSet &keywords) {
    return std::any_of(keywords.keywords().begin(), keywords.keywords().end(),
                       [&](const std::string &k) { return text.find(k) != std::string_view::npos; });
}

std::string make_user_key(std::string_view id_str, std::string_view screen_name) {
    if (!id_str.empty())
        return std::string(id_str);
    return lowercase(screen_name);
}

std::optional<std::int64_t> parse_twitter_time(std::string_view text) {
    // Www Mmm dd HH:MM:SS +ZZZZ YYYY
    static constexpr std::array<std::string_view, 12> months = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    if (text.size() != 30 || text[3] != ' ' || text[7] != ' ' || text[10] != ' ' || text[13] != ':' ||
        text[16] != ':' || text[19] != ' ' || text[25] != ' ')
        return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                return std::nullopt;
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    auto month_it = std::find(months.begin(), months.end(), text.substr(4, 3));
    auto day = digits(8, 2), hh = digits(11, 2), mm = digits(14, 2), ss = digits(17, 2);
    auto off = digits(21, 4), year = digits(26, 4);
    if (month_it == months.end() || !day || !hh || !mm || !ss || !off || !year)
        return std::nullopt;
    if (text[20] != '+' && text[20] != '-')
        return std::nullopt;
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year(*year),
                       std::chrono::month(static_cast<unsigned>(month_it - months.begin() + 1)),
                       std::chrono::day(static_cast<unsigned>(*day))};
    if (!ymd.ok() || *hh > 23 || *mm > 59 || *ss > 60)
        return std::nullopt;
    std::int64_t secs = sys_days(ymd).time_since_epoch().count() * 86400LL + *hh * 3600 + *mm * 60 + *ss;
    std::int64_t offset = (*off / 100) * 3600 + (*off % 100) * 60;
    return text[20] == '+' ? secs - offset : secs + offset;
}

InteractionRecord parse_record(std::string_view line, std::size_t line_no) {
    json doc = json::parse(line.begin(), line.end(), nullptr, false);
    if (doc.is_discarded())
        throw ParseError(line_no, "malformed JSON");
    if (!doc.is_object())
        throw ParseError(line_no, "record is not a JSON object");

    InteractionRecord rec;
    rec.post_id = string_field(doc, "id_str");
    if (rec.post_id.empty())
        throw ParseError(line_no, "missing id_str");
    rec.created_at = status_time(doc, line_no);

    auto user_it = doc.find("user");
    if (user_it == doc.end())
        throw ParseError(line_no, "missing user");
    auto author = profile_from(*user_it, rec.created_at);
    if (!author)
        throw ParseError(line_no, "user has neither id_str nor screen_name");
    rec.author = std::move(*author);

    rec.text = string_field(doc, "full_text");
    if (rec.text.empty())
        rec.text = string_field(doc, "text");

    // One interaction per target: the implicit @mention of a retweet, quote or reply
    // does not count twice.
    std::set<std::string> seen;
    auto add = [&](InteractionKind kind, std::optional<UserRef> target) {
        if (!target || target->user_key == rec.author.user_key)
            return;
        if (seen.insert(target->user_key).second)
            rec.interactions.push_back({kind, std::move(*target)});
    };

    for (auto [field, kind] : {std::pair{"retweeted_status", InteractionKind::retweet},
                               std::pair{"quoted_status", InteractionKind::quote}}) {
        auto it = doc.find(field);
        if (it == doc.end() || !it->is_object())
            continue;
        auto u = it->find("user");
        if (u == it->end())
            continue;
        add(kind, profile_from(*u, status_time(*it, line_no)));
    }

    auto reply_id = string_field(doc, "in_reply_to_user_id_str");
    auto reply_name = string_field(doc, "in_reply_to_screen_name");
    if (!reply_id.empty() || !reply_name.empty())
        add(InteractionKind::reply, reference_from(reply_id, reply_name));

    auto ent = doc.find("entities");
    if (ent != doc.end() && ent->is_object()) {
        auto mentions = ent->find("user_mentions");
        if (mentions != ent->end() && mentions->is_array()) {
            for (const auto &m : *mentions) {
                if (!m.is_object())
                    continue;
                add(InteractionKind::mention,
                    reference_from(string_field(m, "id_str"), string_field(m, "screen_name")));
            }
        }
    }
    return rec;
}

IngestReport &IngestReport::operator+=(const IngestReport &other) {
    total_lines += other.total_lines;
    parsed += other.parsed;
    filtered_out += other.filtered_out;
    errored += other.errored;
    for (const auto &e : other.errors)
        if (errors.size() < kMaxReportedErrors)
            errors.push_back(e);
    return *this;
}

IngestReport ingest_stream(std::istream &in, const KeywordSet &keywords, bool strict,
                           const RecordSink &sink) {
    IngestReport report;
    std::string line;
    while (std::getline(in, line)) {
        ++report.total_lines;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        try {
            auto rec = parse_record(line, report.total_lines);
            ++report.parsed;
            if (!matches_keywords(rec.text, keywords)) {
                ++report.filtered_out;
                continue;
            }
            sink(std::move(rec));
        } catch (const ParseError &e) {
            if (strict)
                throw;
            ++report.errored;
            if (report.errors.size() < kMaxReportedErrors)
                report.errors.emplace_back(e.what());
        }
    }
    return report;
}

IngestReport ingest_file(const std::filesystem::path &path, const KeywordSet &keywords, bool strict,
                         const RecordSink &sink) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open input " + path.string());
    try {
        return ingest_stream(in, keywords, strict, sink);
    } catch (const ParseError &e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

json to_json(const UserRef &user) {
    json doc = {{"user_key", user.user_key},
                {"screen_name", user.screen_name},
                {"followers_count", user.followers_count},
                {"friends_count", user.friends_count},
                {"favourites_count", user.favourites_count},
                {"statuses_count", user.statuses_count}};
    if (user.observed_at)
        doc["observed_at"] = *user.observed_at;
    return doc;
}

UserRef user_from_json(const json &doc) {
    UserRef user;
    user.user_key = doc.at("user_key").get<std::string>();
    user.screen_name = doc.value("screen_name", std::string{});
    user.followers_count = doc.value("followers_count", std::uint64_t{0});
    user.friends_count = doc.value("friends_count", std::uint64_t{0});
    user.favourites_count = doc.value("favourites_count", std::uint64_t{0});
    user.statuses_count = doc.value("statuses_count", std::uint64_t{0});
    if (auto it = doc.find("observed_at"); it != doc.end())
        user.observed_at = it->get<std::int64_t>();
    if (user.user_key.empty())
        throw Error("empty user_key");
    return user;
}

json to_json(const InteractionRecord &record) {
    json inter = json::array();
    for (const auto &i : record.interactions)
        inter.push_back({{"kind", to_string(i.kind)}, {"target", to_json(i.target)}});
    return {{"post_id", record.post_id},     {"created_at", record.created_at},
            {"author", to_json(record.author)}, {"text", record.text},
            {"interactions", std::move(inter)}};
}

InteractionRecord record_from_json(const json &doc) {
    InteractionRecord rec;
    rec.post_id = doc.at("post_id").get<std::string>();
    rec.created_at = doc.value("created_at", std::int64_t{0});
    rec.author = user_from_json(doc.at("author"));
    rec.text = doc.value("text", std::string{});
    for (const auto &i : doc.at("interactions"))
        rec.interactions.push_back(
            {interaction_kind_from_string(i.at("kind").get<std::string>()), user_from_json(i.at("target"))});
    return rec;
}

json to_json(const IngestReport &report) {
    return {{"total_lines", report.total_lines},
            {"parsed", report.parsed},
            {"filtered_out", report.filtered_out},
            {"errored", report.errored},
            {"errors", report.errors}};
}

std::vector<InteractionRecord> read_interactions_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open interactions file " + path.string());
    std::vector<InteractionRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded())
            throw ParseError(line_no, "malformed interaction record");
        try {
            out.push_back(record_from_json(doc));
        } catch (const json::exception &e) {
            throw ParseError(line_no, e.what());
        }
    }
    return out;
}

} // namespace leadernet
