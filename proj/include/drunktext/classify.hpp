#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drunktext/features.hpp"

namespace drunktext {

enum class ClassifierKind { SVM, LR, RF, Bagging, DT, NB, AdaBoost };

const char* classifier_name(ClassifierKind kind);
ClassifierKind classifier_from_name(const std::string& name);
std::vector<ClassifierKind> all_classifiers();

// Hyperparameters with fixed defaults; only the fields of the active kind
// matter. Linear models standardize features internally with statistics fit
// on their training rows.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::SVM;
    std::uint64_t seed = 0;

    double lr_lambda = 1e-4;  // L2 on weights, bias excluded
    int lr_max_epochs = 500;
    double lr_tol = 1e-8;

    double svm_lambda = 1e-4;
    int svm_epochs = 100;

    double nb_var_floor = 1e-9;

    int tree_min_leaf = 2;  // J48-style minimum instances per leaf
    int rf_trees = 100;
    int bagging_trees = 10;
    int ada_stumps = 50;

    void validate() const;
};

class Model {
public:
    virtual ~Model() = default;
    /// Probability-like score in [0, 1]; higher = more likely DrunkTexter.
    virtual double score(const std::vector<double>& x) const = 0;
};

struct TrainedModel {
    std::shared_ptr<const Model> impl;
    std::size_t n_features = 0;
    bool converged = true;  // NoConvergence is a flag, never a failure
};

TrainedModel train(const ClassifierSpec& spec, const Dataset& data);

double predict_score(const TrainedModel& model, const std::vector<double>& x);

struct FoldAssignment {
    std::vector<std::size_t> fold_of;  // fold index per row
    std::size_t k = 0;
};

/// Within each class, rows are shuffled by seed then dealt round-robin, so
/// per-fold class counts are within 1 of perfect proportion.
FoldAssignment stratified_folds(const std::vector<int>& labels, std::size_t k,
                                std::uint64_t seed);

struct Confusion {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::size_t total() const { return tp + fp + tn + fn; }
};

struct EvalReport {
    ClassifierKind kind = ClassifierKind::SVM;
    double accuracy_pct = 0;  // pooled over folds
    double precision = 0;     // class-weighted averages
    double recall = 0;        // equals accuracy_pct / 100 by construction
    double f1 = 0;
    double roc_auc = 0;
    std::vector<Confusion> folds;
    int convergence_warnings = 0;
};

/// Mann-Whitney AUC with midranks for ties; labels are 1 = positive.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Per fold: fit on the other k-1 folds (including standardization), score
/// the held-out rows; confusions and scores pool across folds.
EvalReport cross_validate(const ClassifierSpec& spec, const Dataset& data, std::size_t k,
                          std::uint64_t seed);

// Regularized logistic loss and gradient over raw (unstandardized) features;
// theta = weights then bias. Exposed for gradient checking.
double lr_loss(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
               const std::vector<double>& theta, double lambda);
std::vector<double> lr_gradient(const std::vector<std::vector<double>>& rows,
                                const std::vector<int>& labels,
                                const std::vector<double>& theta, double lambda);

}  // namespace drunktext
