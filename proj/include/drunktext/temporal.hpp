#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "drunktext/corpus.hpp"
#include "drunktext/lexicon.hpp"

namespace drunktext {

// Per-tweet drunk scores in timeline order. Indexing is by tweet sequence,
// not wall clock: inter-peak distances are measured in tweets.
struct ScoreSeries {
    std::string user_id;
    std::vector<double> scores;  // one per tweet, in [0, 1]
    std::size_t window = 1;      // smoothing used by the last detection, for reporting
};

struct Peak {
    std::size_t index = 0;
    double height = 0;  // smoothed value at the peak
    std::size_t left_min_index = 0;
    std::size_t right_min_index = 0;
};

struct PeakProfile {
    std::string user_id;
    std::size_t n_peaks = 0;
    std::optional<double> mean_height;
    std::optional<double> se_height;  // sample std / sqrt(n), needs >= 2 peaks
    std::optional<double> max_height;
    std::optional<double> mean_interval;  // successive index differences, >= 2 peaks
    std::optional<double> se_interval;
};

struct BotFlag {
    std::string user_id;
    double drunk_tweet_fraction = 0;
    bool flagged = false;  // strictly more than 99% drunk-related tweets
};

/// Per tweet: weighted drunk-lexicon mass over token count, clamped to [0,1].
ScoreSeries score_series(const UserRecord& user, const LexiconCategory& weighted);

/// Centered moving average of width w, truncated at the edges.
std::vector<double> smooth(const std::vector<double>& values, std::size_t w);

/// Peaks are strict local maxima of the smoothed series above mu + k*sigma
/// (moments of the smoothed series); a flat run higher than both neighbors
/// counts once, at its leftmost index. Endpoints cannot be peaks.
std::vector<Peak> detect_peaks(const ScoreSeries& series, std::size_t w, double k);

PeakProfile peak_profile(const ScoreSeries& series, const std::vector<Peak>& peaks);

/// Tweet-level rule: fraction of tweets containing any drunk token; flagged
/// iff fraction > 0.99. Users with no tweets stay unflagged at fraction 0.
std::vector<BotFlag> detect_bots(const std::vector<UserRecord>& users,
                                 const LexiconCategory& drunk);

struct HeightSummary {
    std::size_t n = 0;
    double mean = 0;
    double stddev = 0;
    std::optional<double> skewness;        // undefined when spread is 0
    std::optional<double> excess_kurtosis;
};

/// Moment summary of mean peak height across users; descriptive only, no
/// hypothesis test. Profiles without peaks are skipped.
HeightSummary height_normality_summary(const std::vector<PeakProfile>& profiles);

}  // namespace drunktext
