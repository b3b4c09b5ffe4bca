#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace leadernet {

/// A user as seen in one record. Counters are 0 when the record carried no profile.
struct UserRef {
    std::string user_key;
    std::string screen_name;
    std::uint64_t followers_count = 0;
    std::uint64_t friends_count = 0;
    std::uint64_t favourites_count = 0;
    std::uint64_t statuses_count = 0;
    /// created_at of the status carrying a full profile; empty for mention-only references.
    std::optional<std::int64_t> observed_at;

    bool operator==(const UserRef &) const = default;
};

enum class InteractionKind { mention, retweet, quote, reply };

std::string_view to_string(InteractionKind kind);
InteractionKind interaction_kind_from_string(std::string_view name);

struct Interaction {
    InteractionKind kind;
    UserRef target;

    bool operator==(const Interaction &) const = default;
};

struct InteractionRecord {
    std::string post_id;
    std::int64_t created_at = 0; // unix seconds, 0 when absent
    UserRef author;
    std::string text;
    std::vector<Interaction> interactions;

    bool operator==(const InteractionRecord &) const = default;
};

class KeywordSet {
public:
    /// The fourteen collection terms used to gather pandemic-related posts.
    static KeywordSet pandemic_default();

    explicit KeywordSet(std::vector<std::string> keywords);

    /// One keyword per line; blank lines and lines starting with '#' ignored.
    static KeywordSet from_file(const std::filesystem::path &path);

    const std::vector<std::string> &keywords() const { return keywords_; }

private:
    std::vector<std::string> keywords_;
};

/// Case-sensitive substring test against every keyword.
bool matches_keywords(std::string_view text, const KeywordSet &keywords);

/// Canonical identity: numeric id string when present, else lowercase screen name.
std::string make_user_key(std::string_view id_str, std::string_view screen_name);

/// Parses one status object (Twitter v1.1 layout). Throws ParseError tagged with `line_no`.
InteractionRecord parse_record(std::string_view line, std::size_t line_no = 0);

/// Parses "Wed Oct 10 20:19:24 +0000 2018" into unix seconds.
std::optional<std::int64_t> parse_twitter_time(std::string_view text);

struct IngestReport {
    std::size_t total_lines = 0;
    std::size_t parsed = 0;       // lines that parsed, on topic or not
    std::size_t filtered_out = 0; // parsed but matching no keyword
    std::size_t errored = 0;
    /// First few parse errors, for diagnostics.
    std::vector<std::string> errors;

    IngestReport &operator+=(const IngestReport &other);
};

using RecordSink = std::function<void(InteractionRecord &&)>;

/// Streams records passing the keyword filter into `sink`. In strict mode the first
/// parse error is rethrown; otherwise bad lines are counted and skipped.
IngestReport ingest_file(const std::filesystem::path &path, const KeywordSet &keywords, bool strict,
                         const RecordSink &sink);

IngestReport ingest_stream(std::istream &in, const KeywordSet &keywords, bool strict,
                           const RecordSink &sink);

/// Normalized interaction records, one JSON object per line.
nlohmann::json to_json(const InteractionRecord &record);
InteractionRecord record_from_json(const nlohmann::json &doc);
nlohmann::json to_json(const UserRef &user);
UserRef user_from_json(const nlohmann::json &doc);
nlohmann::json to_json(const IngestReport &report);

std::vector<InteractionRecord> read_interactions_file(const std::filesystem::path &path);

} // namespace leadernet
