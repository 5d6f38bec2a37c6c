#include <cmath>

#include "drunktext/errors.hpp"
#include "drunktext/rng.hpp"
#include "internal.hpp"

namespace drunktext {

namespace {

void check_dataset(const Dataset& data) {
    if (data.n_rows() < 2) throw EmptyDataset();
    bool has_pos = false, has_neg = false;
    for (int y : data.labels) (y == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw SingleClass("training data");
    for (const auto& row : data.rows) {
        if (row.size() != data.schema.size())
            throw DimensionMismatch(row.size(), data.schema.size());
        for (double v : row)
            if (!std::isfinite(v)) throw PipelineError("non-finite feature value");
    }
}

}  // namespace

TrainedModel train(const ClassifierSpec& spec, const Dataset& data) {
    spec.validate();
    check_dataset(data);

    TrainedModel model;
    model.n_features = data.schema.size();
    switch (spec.kind) {
        case ClassifierKind::LR: {
            bool converged = true;
            model.impl = fit_logistic_regression(spec, data.rows, data.labels, converged);
            model.converged = converged;
            break;
        }
        case ClassifierKind::SVM:
            model.impl = fit_linear_svm(spec, data.rows, data.labels);
            break;
        case ClassifierKind::NB:
            model.impl = fit_naive_bayes(spec, data.rows, data.labels);
            break;
        case ClassifierKind::DT:
            model.impl = fit_decision_tree(spec, data.rows, data.labels);
            break;
        case ClassifierKind::RF:
            model.impl = fit_random_forest(spec, data.rows, data.labels);
            break;
        case ClassifierKind::Bagging:
            model.impl = fit_bagging(spec, data.rows, data.labels);
            break;
        case ClassifierKind::AdaBoost:
            model.impl = fit_adaboost(spec, data.rows, data.labels);
            break;
    }
    return model;
}

double predict_score(const TrainedModel& model, const std::vector<double>& x) {
    if (x.size() != model.n_features) throw DimensionMismatch(x.size(), model.n_features);
    return model.impl->score(x);
}

EvalReport cross_validate(const ClassifierSpec& spec, const Dataset& data, std::size_t k,
                          std::uint64_t seed) {
    spec.validate();
    check_dataset(data);
    FoldAssignment folds = stratified_folds(data.labels, k, seed);

    EvalReport report;
    report.kind = spec.kind;
    report.folds.resize(k);
    std::vector<double> pooled_scores;
    std::vector<int> pooled_labels;
    pooled_scores.reserve(data.n_rows());
    pooled_labels.reserve(data.n_rows());

    for (std::size_t fold = 0; fold < k; ++fold) {
        Dataset train_data;
        train_data.schema = data.schema;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < data.n_rows(); ++i) {
            if (folds.fold_of[i] == fold) {
                test_rows.push_back(i);
            } else {
                train_data.rows.push_back(data.rows[i]);
                train_data.labels.push_back(data.labels[i]);
                train_data.ids.push_back(data.ids.empty() ? "" : data.ids[i]);
            }
        }

        ClassifierSpec fold_spec = spec;
        fold_spec.seed = substream_seed(splitmix64(spec.seed) ^ seed,
                                        "fold:" + std::to_string(fold));
        TrainedModel model = train(fold_spec, train_data);
        if (!model.converged) ++report.convergence_warnings;

        Confusion& c = report.folds[fold];
        for (std::size_t i : test_rows) {
            double s = predict_score(model, data.rows[i]);
            bool predicted_pos = s > 0.5;  // ties classify negative
            if (data.labels[i] == 1)
                predicted_pos ? ++c.tp : ++c.fn;
            else
                predicted_pos ? ++c.fp : ++c.tn;
            pooled_scores.push_back(s);
            pooled_labels.push_back(data.labels[i]);
        }
    }

    Confusion pooled;
    for (const auto& c : report.folds) {
        pooled.tp += c.tp;
        pooled.fp += c.fp;
        pooled.tn += c.tn;
        pooled.fn += c.fn;
    }
    eval_detail::fill_weighted_metrics(report, pooled);
    report.roc_auc = roc_auc(pooled_scores, pooled_labels);
    return report;
}

}  // namespace drunktext
