#pragma once

#include <memory>
#include <vector>

#include "drunktext/classify.hpp"

namespace drunktext {

using Rows = std::vector<std::vector<double>>;

// z-score parameters fit on training rows; zero-spread features pass through
struct Standardizer {
    std::vector<double> mean, sd;

    static Standardizer fit(const Rows& rows);
    std::vector<double> apply(const std::vector<double>& x) const;
};

std::shared_ptr<const Model> fit_logistic_regression(const ClassifierSpec& spec, const Rows& rows,
                                                     const std::vector<int>& labels,
                                                     bool& converged);
std::shared_ptr<const Model> fit_linear_svm(const ClassifierSpec& spec, const Rows& rows,
                                            const std::vector<int>& labels);
std::shared_ptr<const Model> fit_naive_bayes(const ClassifierSpec& spec, const Rows& rows,
                                             const std::vector<int>& labels);
std::shared_ptr<const Model> fit_decision_tree(const ClassifierSpec& spec, const Rows& rows,
                                               const std::vector<int>& labels);
std::shared_ptr<const Model> fit_random_forest(const ClassifierSpec& spec, const Rows& rows,
                                               const std::vector<int>& labels);
std::shared_ptr<const Model> fit_bagging(const ClassifierSpec& spec, const Rows& rows,
                                         const std::vector<int>& labels);
std::shared_ptr<const Model> fit_adaboost(const ClassifierSpec& spec, const Rows& rows,
                                          const std::vector<int>& labels);

namespace eval_detail {
void fill_weighted_metrics(EvalReport& report, const Confusion& c);
}

}  // namespace drunktext
