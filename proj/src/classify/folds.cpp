#include <algorithm>

#include "drunktext/classify.hpp"
#include "drunktext/errors.hpp"
#include "drunktext/rng.hpp"

namespace drunktext {

const char* classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::SVM: return "svm";
        case ClassifierKind::LR: return "lr";
        case ClassifierKind::RF: return "rf";
        case ClassifierKind::Bagging: return "bagging";
        case ClassifierKind::DT: return "dt";
        case ClassifierKind::NB: return "nb";
        case ClassifierKind::AdaBoost: return "adaboost";
    }
    return "svm";
}

ClassifierKind classifier_from_name(const std::string& name) {
    for (ClassifierKind k : all_classifiers())
        if (name == classifier_name(k)) return k;
    throw InvalidConfig("unknown classifier: " + name);
}

std::vector<ClassifierKind> all_classifiers() {
    return {ClassifierKind::SVM,     ClassifierKind::LR, ClassifierKind::RF,
            ClassifierKind::Bagging, ClassifierKind::DT, ClassifierKind::NB,
            ClassifierKind::AdaBoost};
}

void ClassifierSpec::validate() const {
    if (lr_lambda < 0 || svm_lambda < 0) throw InvalidConfig("lambda must be >= 0");
    if (lr_max_epochs < 1 || svm_epochs < 1) throw InvalidConfig("epochs must be >= 1");
    if (lr_tol <= 0) throw InvalidConfig("tolerance must be > 0");
    if (nb_var_floor <= 0) throw InvalidConfig("variance floor must be > 0");
    if (tree_min_leaf < 1) throw InvalidConfig("min leaf must be >= 1");
    if (rf_trees < 1 || bagging_trees < 1 || ada_stumps < 1)
        throw InvalidConfig("ensemble size must be >= 1");
}

FoldAssignment stratified_folds(const std::vector<int>& labels, std::size_t k,
                                std::uint64_t seed) {
    if (k < 2) throw InvalidConfig("k must be >= 2");

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1 ? pos : neg).push_back(i);
    for (const auto* cls : {&pos, &neg})
        if (cls->size() < k) throw TooFewPerClass(cls->size(), k);

    FoldAssignment fa;
    fa.k = k;
    fa.fold_of.assign(labels.size(), 0);
    auto g = substream(seed, "folds");
    // each class starts dealing where the previous class's remainder ended,
    // so short folds never coincide and totals stay within 1 of each other
    std::size_t offset = 0;
    for (auto* cls : {&pos, &neg}) {
        shuffle_seeded(*cls, g);
        for (std::size_t i = 0; i < cls->size(); ++i) fa.fold_of[(*cls)[i]] = (i + offset) % k;
        offset = (offset + cls->size()) % k;
    }
    return fa;
}

}  // namespace drunktext
