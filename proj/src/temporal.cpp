#include "drunktext/temporal.hpp"

#include <algorithm>
#include <cmath>

#include "drunktext/errors.hpp"

namespace drunktext {

ScoreSeries score_series(const UserRecord& user, const LexiconCategory& weighted) {
    ScoreSeries s;
    s.user_id = user.user_id;
    s.scores.reserve(user.tweets.size());
    for (const auto& tweet : user.tweets) {
        auto tokens = tokenize(tweet.text);
        auto r = match_count(tokens, weighted);
        double score = r.weight_sum / std::max<double>(1.0, static_cast<double>(tokens.size()));
        s.scores.push_back(std::clamp(score, 0.0, 1.0));
    }
    return s;
}

std::vector<double> smooth(const std::vector<double>& values, std::size_t w) {
    if (w <= 1) return values;
    const std::size_t n = values.size();
    const std::size_t half = (w - 1) / 2;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= half ? i - half : 0;
        std::size_t hi = std::min(n - 1, i + half);
        double sum = 0;
        for (std::size_t j = lo; j <= hi; ++j) sum += values[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<Peak> detect_peaks(const ScoreSeries& series, std::size_t w, double k) {
    if (w < 1 || w % 2 == 0) throw InvalidConfig("window must be odd and >= 1");
    if (k < 0) throw InvalidConfig("k must be >= 0");

    const std::vector<double> s = smooth(series.scores, w);
    const std::size_t n = s.size();
    std::vector<Peak> peaks;
    if (n < 3) return peaks;

    double mu = 0;
    for (double v : s) mu += v;
    mu /= static_cast<double>(n);
    double var = 0;
    for (double v : s) var += (v - mu) * (v - mu);
    var /= static_cast<double>(n);
    const double threshold = mu + k * std::sqrt(var);

    // walk plateaus: a run of equal values is one candidate, anchored left
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && s[j + 1] == s[i]) ++j;
        const bool rises_left = i > 0 && s[i - 1] < s[i];
        const bool falls_right = j + 1 < n && s[j + 1] < s[i];
        if (rises_left && falls_right && s[i] > threshold) {
            Peak p;
            p.index = i;
            p.height = s[i];
            peaks.push_back(p);
        }
        i = j + 1;
    }

    // prominence context: leftmost argmin between neighboring peaks (or the
    // series edge)
    for (std::size_t pi = 0; pi < peaks.size(); ++pi) {
        std::size_t lo = pi == 0 ? 0 : peaks[pi - 1].index;
        std::size_t hi = pi + 1 < peaks.size() ? peaks[pi + 1].index : n - 1;
        std::size_t lmin = lo, rmin = peaks[pi].index;
        for (std::size_t t = lo; t <= peaks[pi].index; ++t)
            if (s[t] < s[lmin]) lmin = t;
        for (std::size_t t = peaks[pi].index; t <= hi; ++t)
            if (s[t] < s[rmin]) rmin = t;
        peaks[pi].left_min_index = lmin;
        peaks[pi].right_min_index = rmin;
    }
    return peaks;
}

namespace {

struct MeanSe {
    double mean = 0, se = 0;
};

MeanSe mean_and_se(const std::vector<double>& xs) {
    MeanSe r;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) r.mean += x;
    r.mean /= n;
    if (xs.size() >= 2) {
        double ss = 0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(ss / (n - 1)) / std::sqrt(n);
    }
    return r;
}

}  // namespace

PeakProfile peak_profile(const ScoreSeries& series, const std::vector<Peak>& peaks) {
    PeakProfile p;
    p.user_id = series.user_id;
    p.n_peaks = peaks.size();
    if (peaks.empty()) return p;

    std::vector<double> heights;
    heights.reserve(peaks.size());
    for (const auto& pk : peaks) heights.push_back(pk.height);
    MeanSe h = mean_and_se(heights);
    p.mean_height = h.mean;
    p.max_height = *std::max_element(heights.begin(), heights.end());
    if (peaks.size() >= 2) {
        p.se_height = h.se;
        std::vector<double> intervals;
        intervals.reserve(peaks.size() - 1);
        for (std::size_t i = 1; i < peaks.size(); ++i)
            intervals.push_back(static_cast<double>(peaks[i].index - peaks[i - 1].index));
        MeanSe iv = mean_and_se(intervals);
        p.mean_interval = iv.mean;
        if (intervals.size() >= 2) p.se_interval = iv.se;
        else p.se_interval = 0.0;  // single interval has no spread
    }
    return p;
}

std::vector<BotFlag> detect_bots(const std::vector<UserRecord>& users,
                                 const LexiconCategory& drunk) {
    if (drunk.empty()) throw EmptyLexicon(drunk.name);
    std::vector<BotFlag> flags;
    flags.reserve(users.size());
    for (const auto& user : users) {
        BotFlag f;
        f.user_id = user.user_id;
        if (!user.tweets.empty()) {
            std::size_t matching = 0;
            for (const auto& t : user.tweets)
                if (match_count(tokenize(t.text), drunk).count > 0) ++matching;
            f.drunk_tweet_fraction =
                static_cast<double>(matching) / static_cast<double>(user.tweets.size());
        }
        f.flagged = f.drunk_tweet_fraction > 0.99;
        flags.push_back(std::move(f));
    }
    return flags;
}

HeightSummary height_normality_summary(const std::vector<PeakProfile>& profiles) {
    std::vector<double> means;
    for (const auto& p : profiles)
        if (p.mean_height) means.push_back(*p.mean_height);
    if (means.size() < 3) throw TooFewProfiles(means.size());

    HeightSummary s;
    s.n = means.size();
    const double n = static_cast<double>(means.size());
    for (double m : means) s.mean += m;
    s.mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double m : means) {
        double d = m - s.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.stddev = std::sqrt(m2);
    if (m2 > 0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

}  // namespace drunktext
