#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "drunktext/corpus.hpp"
#include "drunktext/errors.hpp"
#include "drunktext/lexicon.hpp"
#include "drunktext/rng.hpp"

namespace drunktext {

namespace {

// Planted per-token emission rates. The drunk cohort interpolates from the
// nondrunk base toward the boosted rate with signal strength
// s = drunk_token_rate / 0.25, so rate 0 produces two statistically
// identical cohorts (a null corpus).
struct CategoryRate {
    const char* category;
    double base;     // nondrunk cohort
    double boosted;  // drunk cohort at default signal
};

constexpr CategoryRate kRates[] = {
    {"swear", 0.010, 0.0400},
    {"ingestion", 0.009, 0.0360},
    {"anger", 0.013, 0.0243},
    {"sexual", 0.010, 0.0194},
    {"social", 0.042, 0.0567},
    {"family", 0.008, 0.0113},
    {"friends", 0.006, 0.0089},
    {"anxiety", 0.006, 0.0089},
    {"sadness", 0.008, 0.0113},
    {"body", 0.011, 0.0194},
    {"leisure", 0.020, 0.0275},
    {"religious", 0.012, 0.0040},
    {"health", 0.012, 0.0178},
    {"food", 0.014, 0.0211},
    {"stress_interpersonal", 0.005, 0.0073},
    {"stress_smoking", 0.004, 0.0065},
    {"stress_family", 0.0045, 0.0065},
    {"stress_financial", 0.007, 0.0028},
    {"stress_selfesteem", 0.0065, 0.0024},
    {"money", 0.009, 0.0130},
    {"sentiment_pos", 0.034, 0.0470},
    {"sentiment_neg", 0.020, 0.0243},
    // decoy topic tokens that match no lexicon category: they absorb the
    // token mass the drunk cohort spends on drunk/boosted words, so the
    // filler share (and with it every function-word fraction) carries no
    // cohort signal
    {"neutral", 0.348, 0.0},
};
constexpr std::size_t kNumRates = std::size(kRates);
constexpr std::size_t kNeutralIndex = kNumRates - 1;

constexpr double kDefaultRate = 0.25;
constexpr double kOffPeakFactor = 0.7;  // drunk-token rate between bursts
constexpr double kBurstFactor = 3.2;    // drunk-token rate inside a burst tweet
constexpr double kMeanBurstGap = 40.0;  // tweets between planted bursts
constexpr std::int64_t kEpochStart = 1388534400;  // 2014-01-01 00:00:00 UTC

const char* kNeutralWords[] = {
    "airport",  "battery",  "batteries", "bridge",  "camera",   "curtain",  "engine",
    "envelope", "ladder",   "magnet",    "marble",  "mirror",   "notebook", "oxygen",
    "pencil",   "pigeon",   "planet",    "plastic", "pocket",   "printer",  "puzzle",
    "ribbon",   "rocket",   "sailboat",  "satellite", "scissors", "shelf",   "stapler",
    "statue",   "sticker",  "telescope", "ticket",  "tunnel",   "turbine",  "umbrella",
    "volcano",  "wheel",    "zipper",
};

const char* kFillers[] = {
    "day",    "thing", "things", "stuff",  "work",    "school", "classes", "road",  "city",
    "town",   "world", "news",   "phone",  "photo",   "picture", "post",   "tweets", "lol",
    "haha",   "omg",   "yeah",   "okay",   "ok",      "hey",    "wow",     "hmm",   "guys",
    "dude",   "man",   "week",   "story",  "song",    "video",  "book",    "page",  "door",
    "street", "car",   "bus",    "train",  "rain",    "sun",    "cloud",   "shoes", "shirt",
    "jacket", "desk",  "chair",  "lamp",   "paper",   "pen",    "bag",     "the",   "a",
    "an",     "and",   "or",     "but",    "to",      "of",     "in",      "on",    "at",
    "for",    "with",  "i",      "you",    "we",      "they",   "is",      "was",   "are",
    "this",   "that",  "so",     "just",   "really",  "very",   "now",     "today", "then",
    "here",   "there", "go",     "going",  "get",     "got",    "see",     "it",    "my",
};

struct TokenPools {
    std::array<std::vector<std::string>, kNumRates> by_category;
    std::vector<std::string> drunk;
    std::vector<std::string> fillers;
};

// Patterns become emittable tokens by stripping the stem '*'; anything that
// would collide with the drunk lexicon is dropped so non-drunk slots never
// produce a drunk match.
std::vector<std::string> material_tokens(const LexiconCategory& cat,
                                         const LexiconCategory* drunk) {
    std::vector<std::string> out;
    for (const auto& e : cat.entries) {
        std::string t = e.pattern;
        if (!t.empty() && t.back() == '*') t.pop_back();
        if (t.empty()) continue;
        if (drunk != nullptr && matches(t, *drunk)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

bool matches_any(const std::string& token, const LexiconSet& lexicons) {
    for (const auto& [name, cat] : lexicons.categories)
        if (matches(token, cat)) return true;
    return false;
}

TokenPools build_pools(const LexiconSet& lexicons) {
    if (!lexicons.has("drunk") || !lexicons.has("swear") || !lexicons.has("sentiment_pos") ||
        !lexicons.has("sentiment_neg"))
        throw InvalidConfig("generator needs drunk, swear, and sentiment categories");

    const LexiconCategory& drunk = lexicons.at("drunk");
    TokenPools pools;
    pools.drunk = material_tokens(drunk, nullptr);
    if (pools.drunk.empty()) throw EmptyLexicon("drunk");
    for (std::size_t c = 0; c + 1 < kNumRates; ++c) {
        if (!lexicons.has(kRates[c].category))
            throw InvalidConfig(std::string("generator needs lexicon category ") +
                                kRates[c].category);
        pools.by_category[c] = material_tokens(lexicons.at(kRates[c].category), &drunk);
        if (pools.by_category[c].empty())
            throw InvalidConfig(std::string("category unusable for generation: ") +
                                kRates[c].category);
    }
    for (const char* w : kNeutralWords)
        if (!matches_any(w, lexicons)) pools.by_category[kNeutralIndex].emplace_back(w);
    if (pools.by_category[kNeutralIndex].empty())
        throw InvalidConfig("no neutral decoy words survive the lexicon filter");
    for (const char* f : kFillers)
        if (!matches(f, drunk)) pools.fillers.emplace_back(f);
    return pools;
}

const std::string& pick(std::mt19937_64& g, const std::vector<std::string>& pool) {
    return pool[uniform_below(g, pool.size())];
}

std::string pad4(std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04zu", n);
    return buf;
}

void fill_social_ties(UserRecord& user, std::mt19937_64& g, bool is_drunk, std::size_t index) {
    // Drunk users draw most ties from a small per-group celebrity pool, so
    // same-group pairs share neighbors far above the baseline; everyone also
    // draws from a large global pool.
    const std::size_t group = index % 15;
    for (int rel = 0; rel < 2; ++rel) {
        const char* tag = rel == 0 ? "f" : "w";
        auto& dst = rel == 0 ? user.friends : user.followers;
        const auto n_ties = static_cast<std::size_t>(uniform_range(g, 8, 16));
        for (std::size_t i = 0; i < n_ties; ++i) {
            std::string id;
            if (is_drunk && bernoulli(g, 0.7)) {
                id = std::string("celeb") + tag + std::to_string(group) + "_" +
                     std::to_string(uniform_below(g, 30));
            } else {
                id = std::string("ext") + tag + "_" + std::to_string(uniform_below(g, 20000));
            }
            dst.insert(std::move(id));
        }
    }
}

UserRecord make_user(const SyntheticConfig& config, const TokenPools& pools, bool is_drunk,
                     std::size_t index) {
    // category boosts saturate at their calibrated values; only the drunk
    // token rate keeps growing past the default
    const double signal = std::min(1.0, config.drunk_token_rate / kDefaultRate);

    UserRecord user;
    user.user_id = (is_drunk ? "d" : "n") + pad4(index + 1);
    user.label = is_drunk ? Label::DrunkTexter : Label::NonDrunk;

    std::mt19937_64 g = substream(config.seed, "user:" + user.user_id);

    const auto n_tweets = static_cast<std::size_t>(
        uniform_range(g, static_cast<std::int64_t>(config.tweets_min),
                      static_cast<std::int64_t>(config.tweets_max)));

    // Per-user style jitter, same distribution in both cohorts: weak plants
    // and composition effects overlap across users instead of separating the
    // cohorts cleanly, the way real per-user variation does.
    auto jitter = [&g](double sigma) {
        return std::clamp(std::exp(normal(g, 0.0, sigma)), 0.5, 2.0);
    };
    const double drunk_jitter = is_drunk ? jitter(0.4) : 1.0;

    std::array<double, kNumRates> rate;
    double rate_sum = 0;
    for (std::size_t c = 0; c < kNumRates; ++c) {
        double r = is_drunk ? kRates[c].base + signal * (kRates[c].boosted - kRates[c].base)
                            : kRates[c].base;
        rate[c] = std::max(0.0, r) * jitter(0.35);
        rate_sum += rate[c];
    }

    // planted binge positions, geometric gaps with mean kMeanBurstGap
    std::vector<bool> burst(n_tweets, false);
    if (is_drunk && config.drunk_token_rate > 0) {
        std::int64_t pos = geometric_trials(g, 1.0 / kMeanBurstGap) - 1;
        while (pos < static_cast<std::int64_t>(n_tweets)) {
            burst[static_cast<std::size_t>(pos)] = true;
            pos += geometric_trials(g, 1.0 / kMeanBurstGap);
        }
    }

    std::int64_t ts = kEpochStart + uniform_range(g, 0, 27) * 86400 + uniform_range(g, 0, 86399);
    user.tweets.reserve(n_tweets);
    for (std::size_t i = 0; i < n_tweets; ++i) {
        ts += uniform_range(g, 1, 20) * 3600 + uniform_range(g, 0, 59) * 60;
        // bursts stay at full strength so planted peaks survive the jitter
        const double q_drunk =
            !is_drunk ? 0.0
                      : std::min(1.0, config.drunk_token_rate *
                                          (burst[i] ? kBurstFactor
                                                    : kOffPeakFactor * drunk_jitter));

        // categories compress on burst tweets when the drunk mass would
        // overflow the unit interval
        const double scale = q_drunk + rate_sum > 1.0 ? (1.0 - q_drunk) / rate_sum : 1.0;

        const auto n_tokens = static_cast<std::size_t>(uniform_range(g, 6, 14));
        std::string text;
        for (std::size_t t = 0; t < n_tokens; ++t) {
            const std::string* token;
            double u = uniform_real(g);
            if (u < q_drunk) {
                token = &pick(g, pools.drunk);
            } else {
                u -= q_drunk;
                std::size_t c = 0;
                while (c < kNumRates && u >= rate[c] * scale) u -= rate[c] * scale, ++c;
                token = c < kNumRates ? &pick(g, pools.by_category[c]) : &pick(g, pools.fillers);
            }
            if (!text.empty()) text.push_back(' ');
            text += *token;
        }

        Tweet tw;
        tw.tweet_id = user.user_id + "-" + pad4(i + 1);
        tw.user_id = user.user_id;
        tw.timestamp_utc = ts;
        tw.text = std::move(text);
        user.tweets.push_back(std::move(tw));
    }

    fill_social_ties(user, g, is_drunk, index);
    return user;
}

}  // namespace

std::vector<UserRecord> generate_synthetic(const SyntheticConfig& config,
                                           const LexiconSet& lexicons) {
    if (config.n_drunk == 0 || config.n_nondrunk == 0)
        throw InvalidConfig("user counts must be positive");
    if (config.tweets_min < 1 || config.tweets_min > config.tweets_max)
        throw InvalidConfig("tweets_per_user range must satisfy 1 <= min <= max");
    if (config.drunk_token_rate < 0 || config.drunk_token_rate > 1)
        throw InvalidConfig("drunk_token_rate must be in [0, 1]");

    TokenPools pools = build_pools(lexicons);

    std::vector<UserRecord> users;
    users.reserve(config.n_drunk + config.n_nondrunk);
    for (std::size_t i = 0; i < config.n_drunk; ++i)
        users.push_back(make_user(config, pools, true, i));
    for (std::size_t i = 0; i < config.n_nondrunk; ++i)
        users.push_back(make_user(config, pools, false, i));
    return users;
}

}  // namespace drunktext
