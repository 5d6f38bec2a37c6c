#include <algorithm>
#include <cmath>
#include <numeric>

#include "drunktext/errors.hpp"
#include "drunktext/rng.hpp"
#include "internal.hpp"

namespace drunktext {

namespace {

double entropy_bits(std::size_t pos, std::size_t total) {
    if (total == 0 || pos == 0 || pos == total) return 0.0;
    double p = static_cast<double>(pos) / static_cast<double>(total);
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;
    std::size_t left = 0, right = 0;
    double pos_frac = 0;
};

struct Tree {
    std::vector<TreeNode> nodes;

    double leaf_pos_frac(const std::vector<double>& x) const {
        std::size_t at = 0;
        while (nodes[at].feature >= 0)
            at = x[static_cast<std::size_t>(nodes[at].feature)] <= nodes[at].threshold
                     ? nodes[at].left
                     : nodes[at].right;
        return nodes[at].pos_frac;
    }
};

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0;
    double gain = 0;        // information gain, bits
    double gain_ratio = 0;  // gain / split info
};

class TreeBuilder {
public:
    TreeBuilder(const Rows& rows, const std::vector<int>& labels, std::size_t min_leaf,
                std::size_t features_per_split, std::mt19937_64* rng)
        : rows_(rows),
          labels_(labels),
          min_leaf_(min_leaf),
          features_per_split_(features_per_split),
          rng_(rng) {}

    Tree build(const std::vector<std::size_t>& row_indices) {
        tree_.nodes.clear();
        grow(row_indices);
        return std::move(tree_);
    }

private:
    // C4.5-style: per feature the threshold with the highest gain, across
    // features the highest gain ratio. Ties resolve to the lower feature
    // index and lower threshold.
    SplitChoice best_split(const std::vector<std::size_t>& idx,
                           const std::vector<std::size_t>& features) {
        const std::size_t m = idx.size();
        std::size_t pos_total = 0;
        for (std::size_t i : idx) pos_total += static_cast<std::size_t>(labels_[i] == 1);
        const double h_parent = entropy_bits(pos_total, m);

        SplitChoice best;
        std::vector<std::pair<double, int>> vals(m);
        for (std::size_t f : features) {
            for (std::size_t i = 0; i < m; ++i)
                vals[i] = {rows_[idx[i]][f], labels_[idx[i]]};
            std::sort(vals.begin(), vals.end());

            std::size_t pos_left = 0;
            double f_gain = -1, f_threshold = 0, f_split_info = 0;
            for (std::size_t i = 1; i < m; ++i) {
                pos_left += static_cast<std::size_t>(vals[i - 1].second == 1);
                if (vals[i].first == vals[i - 1].first) continue;
                if (i < min_leaf_ || m - i < min_leaf_) continue;
                double frac = static_cast<double>(i) / static_cast<double>(m);
                double gain = h_parent - frac * entropy_bits(pos_left, i) -
                              (1 - frac) * entropy_bits(pos_total - pos_left, m - i);
                if (gain > f_gain) {
                    f_gain = gain;
                    f_threshold = 0.5 * (vals[i - 1].first + vals[i].first);
                    f_split_info = -frac * std::log2(frac) - (1 - frac) * std::log2(1 - frac);
                }
            }
            if (f_gain <= 1e-12 || f_split_info <= 0) continue;
            double ratio = f_gain / f_split_info;
            if (!best.found || ratio > best.gain_ratio) {
                best = {true, f, f_threshold, f_gain, ratio};
            }
        }
        return best;
    }

    std::vector<std::size_t> candidate_features() {
        const std::size_t d = rows_[0].size();
        std::vector<std::size_t> features(d);
        std::iota(features.begin(), features.end(), 0);
        if (features_per_split_ > 0 && features_per_split_ < d && rng_ != nullptr) {
            shuffle_seeded(features, *rng_);
            features.resize(features_per_split_);
            std::sort(features.begin(), features.end());
        }
        return features;
    }

    std::size_t grow(const std::vector<std::size_t>& idx) {
        std::size_t pos = 0;
        for (std::size_t i : idx) pos += static_cast<std::size_t>(labels_[i] == 1);

        const std::size_t at = tree_.nodes.size();
        tree_.nodes.emplace_back();
        tree_.nodes[at].pos_frac = static_cast<double>(pos) / static_cast<double>(idx.size());

        if (pos == 0 || pos == idx.size() || idx.size() < 2 * min_leaf_) return at;

        SplitChoice split = best_split(idx, candidate_features());
        if (!split.found) return at;

        std::vector<std::size_t> left, right;
        for (std::size_t i : idx)
            (rows_[i][split.feature] <= split.threshold ? left : right).push_back(i);

        std::size_t l = grow(left);
        std::size_t r = grow(right);
        tree_.nodes[at].feature = static_cast<int>(split.feature);
        tree_.nodes[at].threshold = split.threshold;
        tree_.nodes[at].left = l;
        tree_.nodes[at].right = r;
        return at;
    }

    const Rows& rows_;
    const std::vector<int>& labels_;
    std::size_t min_leaf_;
    std::size_t features_per_split_;
    std::mt19937_64* rng_;
    Tree tree_;
};

class DecisionTreeModel final : public Model {
public:
    explicit DecisionTreeModel(Tree tree) : tree_(std::move(tree)) {}
    double score(const std::vector<double>& x) const override { return tree_.leaf_pos_frac(x); }

private:
    Tree tree_;
};

// Vote share of trees predicting positive; a tree's vote is its leaf
// majority, ties going negative.
class EnsembleModel final : public Model {
public:
    explicit EnsembleModel(std::vector<Tree> trees) : trees_(std::move(trees)) {}

    double score(const std::vector<double>& x) const override {
        std::size_t votes = 0;
        for (const auto& t : trees_) votes += static_cast<std::size_t>(t.leaf_pos_frac(x) > 0.5);
        return static_cast<double>(votes) / static_cast<double>(trees_.size());
    }

private:
    std::vector<Tree> trees_;
};

std::vector<std::size_t> bootstrap(std::size_t n, std::mt19937_64& g) {
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = static_cast<std::size_t>(uniform_below(g, n));
    return idx;
}

std::vector<Tree> fit_forest(const Rows& rows, const std::vector<int>& labels, std::size_t n_trees,
                             std::size_t min_leaf, std::size_t features_per_split,
                             std::uint64_t seed) {
    std::vector<Tree> trees;
    trees.reserve(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t) {
        auto g = substream(seed, "tree:" + std::to_string(t));
        auto idx = bootstrap(rows.size(), g);
        TreeBuilder builder(rows, labels, min_leaf, features_per_split, &g);
        trees.push_back(builder.build(idx));
    }
    return trees;
}

}  // namespace

std::shared_ptr<const Model> fit_decision_tree(const ClassifierSpec& spec, const Rows& rows,
                                               const std::vector<int>& labels) {
    std::vector<std::size_t> idx(rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    TreeBuilder builder(rows, labels, static_cast<std::size_t>(spec.tree_min_leaf), 0, nullptr);
    return std::make_shared<DecisionTreeModel>(builder.build(idx));
}

std::shared_ptr<const Model> fit_random_forest(const ClassifierSpec& spec, const Rows& rows,
                                               const std::vector<int>& labels) {
    const std::size_t d = rows[0].size();
    const auto per_split =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
    return std::make_shared<EnsembleModel>(fit_forest(
        rows, labels, static_cast<std::size_t>(spec.rf_trees), 1, per_split, spec.seed));
}

std::shared_ptr<const Model> fit_bagging(const ClassifierSpec& spec, const Rows& rows,
                                         const std::vector<int>& labels) {
    return std::make_shared<EnsembleModel>(
        fit_forest(rows, labels, static_cast<std::size_t>(spec.bagging_trees),
                   static_cast<std::size_t>(spec.tree_min_leaf), 0, spec.seed));
}

namespace {

struct Stump {
    std::size_t feature = 0;
    double threshold = 0;
    int left_class = 1;  // prediction for x[f] <= threshold; right side is the opposite
    double alpha = 0;

    int predict(const std::vector<double>& x) const {
        return x[feature] <= threshold ? left_class : -left_class;
    }
};

struct StumpFit {
    bool found = false;
    Stump stump;
    double error = 1.0;
};

StumpFit best_stump(const Rows& rows, const std::vector<int>& labels,
                    const std::vector<double>& weights) {
    const std::size_t n = rows.size(), d = rows[0].size();
    StumpFit best;
    std::vector<std::pair<double, std::size_t>> vals(n);
    for (std::size_t f = 0; f < d; ++f) {
        for (std::size_t i = 0; i < n; ++i) vals[i] = {rows[i][f], i};
        std::sort(vals.begin(), vals.end());

        double w_pos_left = 0, w_neg_left = 0, w_pos = 0, w_neg = 0;
        for (std::size_t i = 0; i < n; ++i)
            (labels[i] == 1 ? w_pos : w_neg) += weights[i];

        for (std::size_t i = 1; i < n; ++i) {
            const auto row = vals[i - 1].second;
            (labels[row] == 1 ? w_pos_left : w_neg_left) += weights[row];
            if (vals[i].first == vals[i - 1].first) continue;
            // left predicted positive: wrong on left negatives and right positives
            double err_pos_left = w_neg_left + (w_pos - w_pos_left);
            for (int left_class : {1, -1}) {
                double err = left_class == 1 ? err_pos_left : 1.0 - err_pos_left;
                if (!best.found || err < best.error) {
                    best.found = true;
                    best.error = err;
                    best.stump.feature = f;
                    best.stump.threshold = 0.5 * (vals[i - 1].first + vals[i].first);
                    best.stump.left_class = left_class;
                }
            }
        }
    }
    return best;
}

class AdaBoostModel final : public Model {
public:
    explicit AdaBoostModel(std::vector<Stump> stumps) : stumps_(std::move(stumps)) {
        for (const auto& s : stumps_) alpha_total_ += s.alpha;
    }

    double score(const std::vector<double>& x) const override {
        if (alpha_total_ <= 0) return 0.5;
        double pos = 0;
        for (const auto& s : stumps_)
            if (s.predict(x) == 1) pos += s.alpha;
        return pos / alpha_total_;
    }

private:
    std::vector<Stump> stumps_;
    double alpha_total_ = 0;
};

}  // namespace

std::shared_ptr<const Model> fit_adaboost(const ClassifierSpec& spec, const Rows& rows,
                                          const std::vector<int>& labels) {
    const std::size_t n = rows.size();
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<Stump> stumps;

    for (int round = 0; round < spec.ada_stumps; ++round) {
        StumpFit fit = best_stump(rows, labels, weights);
        if (!fit.found) break;
        double eps = std::clamp(fit.error, 1e-12, 1.0 - 1e-12);
        if (fit.error >= 0.5 && !stumps.empty()) break;
        fit.stump.alpha = 0.5 * std::log((1.0 - eps) / eps);
        stumps.push_back(fit.stump);
        if (fit.error <= 1e-12) break;  // perfect stump dominates the vote

        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double y = labels[i] == 1 ? 1.0 : -1.0;
            weights[i] *= std::exp(-fit.stump.alpha * y *
                                   static_cast<double>(fit.stump.predict(rows[i])));
            total += weights[i];
        }
        for (double& w : weights) w /= total;
    }
    return std::make_shared<AdaBoostModel>(std::move(stumps));
}

}  // namespace drunktext
