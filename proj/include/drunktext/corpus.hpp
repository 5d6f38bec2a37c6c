#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace drunktext {

struct LexiconCategory;
struct LexiconSet;

struct Tweet {
    std::string tweet_id;
    std::string user_id;
    std::int64_t timestamp_utc = 0;  // seconds since epoch, > 0
    std::string text;
};

enum class Label { DrunkTexter, NonDrunk, Unlabeled };

const char* label_name(Label l);
Label label_from_name(const std::string& name);

struct UserRecord {
    std::string user_id;
    Label label = Label::Unlabeled;
    std::vector<Tweet> tweets;  // ascending (timestamp_utc, tweet_id)
    std::set<std::string> friends;
    std::set<std::string> followers;
};

enum class DaySegment { Weekday, Weekend };

const char* segment_name(DaySegment s);

/// Saturday/Sunday in UTC map to Weekend, everything else to Weekday.
DaySegment day_segment(std::int64_t timestamp_utc);

/// Reads a JSONL corpus (one user object per line). Tweets come out sorted
/// ascending by (timestamp, tweet_id); a duplicate tweet id within a user is
/// an error. Unparsable or schema-violating lines raise MalformedLine with
/// the 1-based line number.
std::vector<UserRecord> load_corpus(const std::string& path);

/// Inverse of load_corpus; one user per line, stable field order.
void save_corpus(const std::vector<UserRecord>& users, const std::string& path);

std::string user_to_json_line(const UserRecord& user);

/// Applies the cohort rule: a user is DrunkTexter iff at least
/// min_drunk_tweets tweets contain a drunk-lexicon token, NonDrunk iff no
/// tweet matches at all, Unlabeled in between.
std::vector<UserRecord> label_drunk_texters(std::vector<UserRecord> users,
                                            const LexiconCategory& drunk_lexicon,
                                            std::size_t min_drunk_tweets);

struct SyntheticConfig {
    std::size_t n_drunk = 278;
    std::size_t n_nondrunk = 278;
    std::size_t tweets_min = 80;
    std::size_t tweets_max = 160;
    double drunk_token_rate = 0.25;
    std::uint64_t seed = 1337;
};

/// Deterministic planted-signal corpus. Drunk users emit drunk-lexicon
/// tokens at drunk_token_rate (with periodic high-density bursts spaced
/// geometrically, mean gap ~40 tweets) plus boosted swear / anger / ingestion
/// / social rates; non-drunk users emit no drunk tokens and a higher
/// religious rate. Friend and follower sets overlap more among drunk users.
std::vector<UserRecord> generate_synthetic(const SyntheticConfig& config,
                                           const LexiconSet& lexicons);

}  // namespace drunktext
