#include "drunktext/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "drunktext/errors.hpp"
#include "drunktext/lexicon.hpp"

namespace drunktext {

using nlohmann::json;

const char* label_name(Label l) {
    switch (l) {
        case Label::DrunkTexter: return "drunk";
        case Label::NonDrunk: return "nondrunk";
        case Label::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

Label label_from_name(const std::string& name) {
    if (name == "drunk") return Label::DrunkTexter;
    if (name == "nondrunk") return Label::NonDrunk;
    if (name == "unlabeled") return Label::Unlabeled;
    throw PipelineError("unknown label: " + name);
}

const char* segment_name(DaySegment s) {
    return s == DaySegment::Weekend ? "weekend" : "weekday";
}

DaySegment day_segment(std::int64_t timestamp_utc) {
    // 1970-01-01 was a Thursday, so day-index 2 and 3 mod 7 are Sat/Sun.
    std::int64_t day = timestamp_utc / 86400;
    std::int64_t dow = day % 7;
    return (dow == 2 || dow == 3) ? DaySegment::Weekend : DaySegment::Weekday;
}

namespace {

void sort_tweets(UserRecord& user) {
    std::sort(user.tweets.begin(), user.tweets.end(), [](const Tweet& a, const Tweet& b) {
        if (a.timestamp_utc != b.timestamp_utc) return a.timestamp_utc < b.timestamp_utc;
        return a.tweet_id < b.tweet_id;
    });
}

UserRecord parse_user_line(const std::string& line, std::size_t line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw MalformedLine(line_no, e.what());
    }
    if (!j.is_object()) throw MalformedLine(line_no, "not a JSON object");
    if (!j.contains("user_id") || !j["user_id"].is_string())
        throw MalformedLine(line_no, "missing or non-string user_id");

    UserRecord user;
    user.user_id = j["user_id"].get<std::string>();
    if (user.user_id.empty()) throw MalformedLine(line_no, "empty user_id");

    if (j.contains("label")) {
        if (!j["label"].is_string()) throw MalformedLine(line_no, "non-string label");
        try {
            user.label = label_from_name(j["label"].get<std::string>());
        } catch (const PipelineError& e) {
            throw MalformedLine(line_no, e.what());
        }
    }

    if (j.contains("tweets")) {
        if (!j["tweets"].is_array()) throw MalformedLine(line_no, "tweets is not an array");
        for (const auto& t : j["tweets"]) {
            if (!t.is_object() || !t.contains("id") || !t["id"].is_string() ||
                !t.contains("ts") || !t["ts"].is_number_integer() || !t.contains("text") ||
                !t["text"].is_string())
                throw MalformedLine(line_no, "tweet needs string id, integer ts, string text");
            Tweet tw;
            tw.tweet_id = t["id"].get<std::string>();
            tw.user_id = user.user_id;
            tw.timestamp_utc = t["ts"].get<std::int64_t>();
            tw.text = t["text"].get<std::string>();
            if (tw.tweet_id.empty()) throw MalformedLine(line_no, "empty tweet id");
            if (tw.timestamp_utc <= 0) throw MalformedLine(line_no, "non-positive timestamp");
            user.tweets.push_back(std::move(tw));
        }
    }

    for (const char* key : {"friends", "followers"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_array()) throw MalformedLine(line_no, std::string(key) + " is not an array");
        auto& dst = std::string(key) == "friends" ? user.friends : user.followers;
        for (const auto& v : j[key]) {
            if (!v.is_string()) throw MalformedLine(line_no, std::string(key) + " entry not a string");
            std::string id = v.get<std::string>();
            if (id != user.user_id) dst.insert(std::move(id));  // no self edges
        }
    }

    std::unordered_set<std::string> seen;
    for (const auto& t : user.tweets)
        if (!seen.insert(t.tweet_id).second) throw DuplicateTweet(t.tweet_id);

    sort_tweets(user);
    return user;
}

}  // namespace

std::vector<UserRecord> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<UserRecord> users;
    std::string line;
    std::size_t line_no = 0;
    std::unordered_set<std::string> corpus_ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        users.push_back(parse_user_line(line, line_no));
        for (const auto& t : users.back().tweets)
            if (!corpus_ids.insert(t.tweet_id).second) throw DuplicateTweet(t.tweet_id);
    }
    return users;
}

std::string user_to_json_line(const UserRecord& user) {
    json j;
    j["user_id"] = user.user_id;
    j["label"] = label_name(user.label);
    json tweets = json::array();
    for (const auto& t : user.tweets)
        tweets.push_back(json{{"id", t.tweet_id}, {"ts", t.timestamp_utc}, {"text", t.text}});
    j["tweets"] = std::move(tweets);
    j["friends"] = json(user.friends);
    j["followers"] = json(user.followers);
    return j.dump();
}

void save_corpus(const std::vector<UserRecord>& users, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& u : users) out << user_to_json_line(u) << '\n';
}

std::vector<UserRecord> label_drunk_texters(std::vector<UserRecord> users,
                                            const LexiconCategory& drunk_lexicon,
                                            std::size_t min_drunk_tweets) {
    if (drunk_lexicon.empty()) throw EmptyLexicon(drunk_lexicon.name);
    if (min_drunk_tweets < 1) throw InvalidConfig("min_drunk_tweets must be >= 1");
    for (auto& user : users) {
        std::size_t matching = 0;
        for (const auto& t : user.tweets) {
            auto r = match_count(tokenize(t.text), drunk_lexicon);
            if (r.count > 0) ++matching;
        }
        if (matching >= min_drunk_tweets)
            user.label = Label::DrunkTexter;
        else if (matching == 0)
            user.label = Label::NonDrunk;
        else
            user.label = Label::Unlabeled;
    }
    return users;
}

}  // namespace drunktext
