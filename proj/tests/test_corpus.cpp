#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "drunktext/corpus.hpp"
#include "drunktext/errors.hpp"
#include "drunktext/lexicon.hpp"
#include "drunktext/rng.hpp"

using namespace drunktext;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

LexiconSet shipped_lexicons() { return load_lexicon_dir(DRUNKTEXT_LEXICON_DIR); }

UserRecord user_with_texts(const std::string& id, const std::vector<std::string>& texts) {
    UserRecord u;
    u.user_id = id;
    std::int64_t ts = 1400000000;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        Tweet t;
        t.tweet_id = id + "-" + std::to_string(i);
        t.user_id = id;
        t.timestamp_utc = ts + static_cast<std::int64_t>(i) * 3600;
        t.text = texts[i];
        u.tweets.push_back(t);
    }
    return u;
}

}  // namespace

TEST_CASE("day_segment maps Saturday and Sunday UTC to weekend") {
    CHECK(day_segment(1388880000) == DaySegment::Weekend);  // Sun 2014-01-05 00:00
    CHECK(day_segment(1388880000 - 3600) == DaySegment::Weekend);  // Sat 23:00
    CHECK(day_segment(1389052800) == DaySegment::Weekday);  // Tue 2014-01-07 00:00
    // Friday 2014-01-03 23:59:59 stays weekday
    CHECK(day_segment(1388793599) == DaySegment::Weekday);
    // Monday 2014-01-06 00:00:00 stays weekday
    CHECK(day_segment(1388966400) == DaySegment::Weekday);
}

TEST_CASE("day_segment partitions every timeline") {
    auto g = substream(7, "segtest");
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + uniform_below(g, 50);
        std::size_t weekday = 0, weekend = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t ts = 1 + static_cast<std::int64_t>(uniform_below(g, 2000000000ULL));
            (day_segment(ts) == DaySegment::Weekday ? weekday : weekend)++;
        }
        CHECK(weekday + weekend == n);
    }
}

TEST_CASE("load_corpus parses users and sorts tweets") {
    std::string path = write_temp("corpus_ok.jsonl",
        R"({"user_id":"u1","tweets":[{"id":"b","ts":200,"text":"later"},{"id":"a","ts":100,"text":"first"},{"id":"c","ts":200,"text":"tie"}],"friends":["x"],"followers":[]})"
        "\n"
        R"({"user_id":"u2","label":"drunk","tweets":[{"id":"d","ts":50,"text":""}]})"
        "\n");
    auto users = load_corpus(path);
    REQUIRE(users.size() == 2);
    CHECK(users[0].tweets[0].tweet_id == "a");
    CHECK(users[0].tweets[1].tweet_id == "b");  // ts tie broken by id
    CHECK(users[0].tweets[2].tweet_id == "c");
    CHECK(users[0].friends.count("x") == 1);
    CHECK(users[1].label == Label::DrunkTexter);
    std::remove(path.c_str());
}

TEST_CASE("load_corpus on empty file gives empty list") {
    std::string path = write_temp("corpus_empty.jsonl", "");
    CHECK(load_corpus(path).empty());
    std::remove(path.c_str());
}

TEST_CASE("load_corpus rejects schema violations with the line number") {
    std::string path = write_temp("corpus_bad.jsonl",
        R"({"user_id":"u1","tweets":[]})" "\n"
        R"({"tweets":[]})" "\n");
    CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("line 2"), MalformedLine);
    std::remove(path.c_str());
}

TEST_CASE("load_corpus rejects duplicate tweet ids within a user") {
    std::string path = write_temp("corpus_dup.jsonl",
        R"({"user_id":"u1","tweets":[{"id":"t","ts":1,"text":"a"},{"id":"t","ts":2,"text":"b"}]})"
        "\n");
    CHECK_THROWS_AS(load_corpus(path), DuplicateTweet);
    std::remove(path.c_str());
}

TEST_CASE("load_corpus rejects tweet ids duplicated across users") {
    std::string path = write_temp("corpus_dup2.jsonl",
        R"({"user_id":"u1","tweets":[{"id":"t","ts":1,"text":"a"}]})" "\n"
        R"({"user_id":"u2","tweets":[{"id":"t","ts":2,"text":"b"}]})" "\n");
    CHECK_THROWS_AS(load_corpus(path), DuplicateTweet);
    std::remove(path.c_str());
}

TEST_CASE("generator: drunk users share neighbors far above the baseline") {
    LexiconSet lex = shipped_lexicons();
    SyntheticConfig cfg;
    cfg.n_drunk = 40;
    cfg.n_nondrunk = 40;
    cfg.tweets_min = 5;
    cfg.tweets_max = 10;
    cfg.seed = 31;
    auto users = generate_synthetic(cfg, lex);

    auto mean_common = [&](Label label) {
        double total = 0;
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < users.size(); ++a) {
            if (users[a].label != label) continue;
            for (std::size_t b = a + 1; b < users.size(); ++b) {
                if (users[b].label != label) continue;
                std::size_t common = 0;
                for (const auto& id : users[a].friends) common += users[b].friends.count(id);
                total += static_cast<double>(common);
                ++pairs;
            }
        }
        return total / static_cast<double>(pairs);
    };
    CHECK(mean_common(Label::DrunkTexter) > 3.0 * mean_common(Label::NonDrunk) + 0.01);
}

TEST_CASE("corpus round-trips through save and load") {
    LexiconSet lex = shipped_lexicons();
    SyntheticConfig cfg;
    cfg.n_drunk = 5;
    cfg.n_nondrunk = 5;
    cfg.tweets_min = 10;
    cfg.tweets_max = 20;
    cfg.seed = 99;
    auto users = generate_synthetic(cfg, lex);

    auto path = (std::filesystem::temp_directory_path() / "roundtrip.jsonl").string();
    save_corpus(users, path);
    auto loaded = load_corpus(path);
    REQUIRE(loaded.size() == users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        CHECK(loaded[i].user_id == users[i].user_id);
        CHECK(loaded[i].label == users[i].label);
        CHECK(loaded[i].friends == users[i].friends);
        CHECK(loaded[i].followers == users[i].followers);
        REQUIRE(loaded[i].tweets.size() == users[i].tweets.size());
        for (std::size_t t = 0; t < users[i].tweets.size(); ++t) {
            CHECK(loaded[i].tweets[t].tweet_id == users[i].tweets[t].tweet_id);
            CHECK(loaded[i].tweets[t].timestamp_utc == users[i].tweets[t].timestamp_utc);
            CHECK(loaded[i].tweets[t].text == users[i].tweets[t].text);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("label_drunk_texters applies the three-way rule") {
    LexiconCategory drunk;
    drunk.name = "drunk";
    drunk.add("drunk");

    std::vector<UserRecord> users;
    users.push_back(user_with_texts("five", {"so drunk", "drunk again", "drunk", "im drunk",
                                             "drunk tonight"}));
    users.push_back(user_with_texts("zero", {"hello world", "nice day"}));
    users.push_back(user_with_texts("three", {"drunk", "drunk", "drunk", "sober", "sober"}));

    auto labeled = label_drunk_texters(users, drunk, 5);
    CHECK(labeled[0].label == Label::DrunkTexter);
    CHECK(labeled[1].label == Label::NonDrunk);
    CHECK(labeled[2].label == Label::Unlabeled);
}

TEST_CASE("label_drunk_texters is idempotent and order independent") {
    LexiconCategory drunk;
    drunk.name = "drunk";
    drunk.add("drunk");
    auto u = user_with_texts("u", {"drunk", "x", "drunk", "drunk y", "drunk", "drunk"});
    std::vector<UserRecord> users{u};
    auto once = label_drunk_texters(users, drunk, 5);
    auto twice = label_drunk_texters(once, drunk, 5);
    CHECK(once[0].label == twice[0].label);

    std::reverse(u.tweets.begin(), u.tweets.end());
    auto reversed = label_drunk_texters({u}, drunk, 5);
    CHECK(reversed[0].label == once[0].label);
}

TEST_CASE("label_drunk_texters rejects an empty lexicon") {
    LexiconCategory empty;
    empty.name = "drunk";
    CHECK_THROWS_AS(label_drunk_texters({}, empty, 5), EmptyLexicon);
}

TEST_CASE("generator: default config yields 278/278 labeled users") {
    LexiconSet lex = shipped_lexicons();
    SyntheticConfig cfg;
    cfg.seed = 42;
    cfg.n_drunk = 278;
    cfg.n_nondrunk = 278;
    auto users = generate_synthetic(cfg, lex);
    REQUIRE(users.size() == 556);
    std::size_t drunk = 0, nondrunk = 0;
    for (const auto& u : users) {
        if (u.label == Label::DrunkTexter) ++drunk;
        if (u.label == Label::NonDrunk) ++nondrunk;
    }
    CHECK(drunk == 278);
    CHECK(nondrunk == 278);
}

TEST_CASE("generator: same seed twice is byte-identical") {
    LexiconSet lex = shipped_lexicons();
    SyntheticConfig cfg;
    cfg.n_drunk = 10;
    cfg.n_nondrunk = 10;
    cfg.tweets_min = 20;
    cfg.tweets_max = 40;
    cfg.seed = 1234;
    auto a = generate_synthetic(cfg, lex);
    auto b = generate_synthetic(cfg, lex);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(user_to_json_line(a[i]) == user_to_json_line(b[i]));
}

TEST_CASE("generator: zero rate means no drunk tokens at all") {
    LexiconSet lex = shipped_lexicons();
    SyntheticConfig cfg;
    cfg.n_drunk = 15;
    cfg.n_nondrunk = 15;
    cfg.tweets_min = 20;
    cfg.tweets_max = 30;
    cfg.drunk_token_rate = 0.0;
    cfg.seed = 5;
    auto users = generate_synthetic(cfg, lex);
    auto relabeled = label_drunk_texters(users, lex.at("drunk"), 5);
    for (const auto& u : relabeled) CHECK(u.label == Label::NonDrunk);
}

TEST_CASE("generator: labeling rule holds for >=99% of drunk users across seeds") {
    LexiconSet lex = shipped_lexicons();
    std::size_t ok = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SyntheticConfig cfg;
        cfg.n_drunk = 30;
        cfg.n_nondrunk = 5;
        cfg.tweets_min = 20;
        cfg.tweets_max = 30;
        cfg.drunk_token_rate = 0.2;
        cfg.seed = seed;
        auto users = generate_synthetic(cfg, lex);
        auto relabeled = label_drunk_texters(users, lex.at("drunk"), 5);
        for (const auto& u : relabeled) {
            if (u.user_id[0] != 'd') continue;
            ++total;
            if (u.label == Label::DrunkTexter) ++ok;
        }
    }
    CHECK(static_cast<double>(ok) >= 0.99 * static_cast<double>(total));
}

TEST_CASE("generator rejects invalid configs") {
    LexiconSet lex = shipped_lexicons();
    SyntheticConfig cfg;
    cfg.n_drunk = 0;
    CHECK_THROWS_AS(generate_synthetic(cfg, lex), InvalidConfig);
    cfg = SyntheticConfig{};
    cfg.drunk_token_rate = 1.5;
    CHECK_THROWS_AS(generate_synthetic(cfg, lex), InvalidConfig);
    cfg = SyntheticConfig{};
    cfg.tweets_min = 50;
    cfg.tweets_max = 10;
    CHECK_THROWS_AS(generate_synthetic(cfg, lex), InvalidConfig);
}
