#include "drunktext/rank.hpp"

#include <algorithm>
#include <cmath>

#include "drunktext/errors.hpp"

namespace drunktext {

Discretization discretize(const std::vector<double>& values, std::size_t b) {
    if (b < 2) throw InvalidConfig("bin count must be >= 2");

    Discretization d;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    for (std::size_t i = 1; i < b && n > 0; ++i) {
        double edge = sorted[i * n / b];
        if (d.edges.empty() || edge > d.edges.back()) d.edges.push_back(edge);
    }

    d.bins.resize(values.size());
    std::size_t max_bin = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        // bin = number of edges <= value
        std::size_t bin = static_cast<std::size_t>(
            std::upper_bound(d.edges.begin(), d.edges.end(), values[i]) - d.edges.begin());
        d.bins[i] = bin;
        max_bin = std::max(max_bin, bin);
    }

    // merge away empty bins so ids are dense
    std::vector<std::size_t> remap(max_bin + 1, 0);
    std::vector<bool> used(max_bin + 1, false);
    for (std::size_t bin : d.bins) used[bin] = true;
    std::size_t next = 0;
    for (std::size_t bin = 0; bin <= max_bin; ++bin)
        if (used[bin]) remap[bin] = next++;
    for (auto& bin : d.bins) bin = remap[bin];
    d.n_bins = next;
    return d;
}

namespace {

struct Contingency {
    std::vector<std::size_t> pos, neg;  // per bin
    std::size_t n_pos = 0, n_neg = 0, n = 0;
};

Contingency tabulate(const std::vector<std::size_t>& bins, const std::vector<int>& labels) {
    if (bins.size() != labels.size()) throw PipelineError("bins/labels length mismatch");
    std::size_t n_bins = 0;
    for (std::size_t b : bins) n_bins = std::max(n_bins, b + 1);
    Contingency t;
    t.pos.assign(n_bins, 0);
    t.neg.assign(n_bins, 0);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (labels[i] == 1) {
            ++t.pos[bins[i]];
            ++t.n_pos;
        } else {
            ++t.neg[bins[i]];
            ++t.n_neg;
        }
    }
    t.n = t.n_pos + t.n_neg;
    if (t.n_pos == 0 || t.n_neg == 0) throw SingleClass("contingency table");
    return t;
}

double entropy_bits(double p) {
    if (p <= 0 || p >= 1) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace

double chi_square(const std::vector<std::size_t>& bins, const std::vector<int>& labels) {
    Contingency t = tabulate(bins, labels);
    double chi2 = 0;
    for (std::size_t b = 0; b < t.pos.size(); ++b) {
        double row = static_cast<double>(t.pos[b] + t.neg[b]);
        for (int cls = 0; cls < 2; ++cls) {
            double observed = static_cast<double>(cls == 1 ? t.pos[b] : t.neg[b]);
            double expected =
                row * static_cast<double>(cls == 1 ? t.n_pos : t.n_neg) / static_cast<double>(t.n);
            if (expected > 0) chi2 += (observed - expected) * (observed - expected) / expected;
        }
    }
    return chi2;
}

double info_gain(const std::vector<std::size_t>& bins, const std::vector<int>& labels) {
    Contingency t = tabulate(bins, labels);
    const double n = static_cast<double>(t.n);
    double h = entropy_bits(static_cast<double>(t.n_pos) / n);
    double h_cond = 0;
    for (std::size_t b = 0; b < t.pos.size(); ++b) {
        double row = static_cast<double>(t.pos[b] + t.neg[b]);
        if (row == 0) continue;
        h_cond += (row / n) * entropy_bits(static_cast<double>(t.pos[b]) / row);
    }
    return h - h_cond;
}

FeatureRanking rank_features(const Dataset& data, std::size_t b, RankCriterion criterion) {
    FeatureRanking ranking;
    std::vector<double> column(data.n_rows());
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        for (std::size_t i = 0; i < data.n_rows(); ++i) column[i] = data.rows[i][f];
        Discretization d = discretize(column, b);
        FeatureRanking::Row row;
        row.feature = data.schema.names[f];
        row.chi2 = chi_square(d.bins, data.labels);
        row.info_gain = info_gain(d.bins, data.labels);
        ranking.rows.push_back(std::move(row));
    }

    auto key = [criterion](const FeatureRanking::Row& r) {
        return criterion == RankCriterion::Chi2 ? r.chi2 : r.info_gain;
    };
    std::sort(ranking.rows.begin(), ranking.rows.end(),
              [&](const FeatureRanking::Row& a, const FeatureRanking::Row& b_) {
                  if (key(a) != key(b_)) return key(a) > key(b_);
                  return a.feature < b_.feature;
              });
    for (std::size_t i = 0; i < ranking.rows.size(); ++i) ranking.rows[i].rank = i + 1;
    return ranking;
}

}  // namespace drunktext
