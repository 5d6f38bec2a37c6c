#include <algorithm>
#include <numeric>

#include "drunktext/classify.hpp"
#include "drunktext/errors.hpp"

namespace drunktext {

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    std::size_t n_pos = 0, n_neg = 0;
    for (int y : labels) (y == 1 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("roc_auc");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // midranks over tie groups
    double rank_sum_pos = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t t = i; t < j; ++t)
            if (labels[order[t]] == 1) rank_sum_pos += midrank;
        i = j;
    }
    double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

namespace eval_detail {

// Weka-style class-weighted averages from a pooled confusion. A class with
// no predicted members contributes precision 0.
void fill_weighted_metrics(EvalReport& report, const Confusion& c) {
    const double n = static_cast<double>(c.total());
    const double pos_support = static_cast<double>(c.tp + c.fn);
    const double neg_support = static_cast<double>(c.tn + c.fp);

    auto ratio = [](double num, double den) { return den > 0 ? num / den : 0.0; };
    const double prec_pos = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    const double rec_pos = ratio(static_cast<double>(c.tp), pos_support);
    const double prec_neg = ratio(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fn));
    const double rec_neg = ratio(static_cast<double>(c.tn), neg_support);
    auto f1_of = [&](double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; };

    const double w_pos = pos_support / n;
    const double w_neg = neg_support / n;
    report.accuracy_pct = 100.0 * static_cast<double>(c.tp + c.tn) / n;
    report.precision = w_pos * prec_pos + w_neg * prec_neg;
    report.recall = w_pos * rec_pos + w_neg * rec_neg;
    report.f1 = w_pos * f1_of(prec_pos, rec_pos) + w_neg * f1_of(prec_neg, rec_neg);
}

}  // namespace eval_detail

}  // namespace drunktext
