#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "drunktext/features.hpp"

namespace drunktext {

// Equal-frequency binning; duplicate quantile edges collapse, so constant
// features land in a single bin. Bin ids are dense, 0..n_bins-1.
struct Discretization {
    std::vector<double> edges;       // strictly increasing cut points
    std::vector<std::size_t> bins;   // per-row assignment
    std::size_t n_bins = 0;
};

Discretization discretize(const std::vector<double>& values, std::size_t b);

/// Pearson chi-square of the bins x classes contingency table; cells with
/// zero expectation contribute nothing.
double chi_square(const std::vector<std::size_t>& bins, const std::vector<int>& labels);

/// Information gain H(labels) - H(labels | bins), in bits.
double info_gain(const std::vector<std::size_t>& bins, const std::vector<int>& labels);

enum class RankCriterion { Chi2, InfoGain };

struct FeatureRanking {
    struct Row {
        std::size_t rank = 0;
        std::string feature;
        double chi2 = 0;
        double info_gain = 0;
    };
    std::vector<Row> rows;  // descending by the active criterion, ties by name
};

/// Ranks every schema feature by the chosen criterion; both statistics are
/// reported either way.
FeatureRanking rank_features(const Dataset& data, std::size_t b, RankCriterion criterion);

}  // namespace drunktext
