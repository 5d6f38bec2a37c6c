#include <cmath>

#include "drunktext/errors.hpp"
#include "internal.hpp"

namespace drunktext {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

class GaussianNbModel final : public Model {
public:
    GaussianNbModel(std::vector<double> log_prior, Rows mean, Rows var)
        : log_prior_(std::move(log_prior)), mean_(std::move(mean)), var_(std::move(var)) {}

    double score(const std::vector<double>& x) const override {
        double log_joint[2];
        for (int c = 0; c < 2; ++c) {
            double lj = log_prior_[c];
            for (std::size_t f = 0; f < x.size(); ++f) {
                double dlt = x[f] - mean_[c][f];
                lj -= 0.5 * (kLog2Pi + std::log(var_[c][f]) + dlt * dlt / var_[c][f]);
            }
            log_joint[c] = lj;
        }
        // posterior of class 1 via logsumexp
        double mx = std::max(log_joint[0], log_joint[1]);
        double z0 = std::exp(log_joint[0] - mx), z1 = std::exp(log_joint[1] - mx);
        return z1 / (z0 + z1);
    }

private:
    std::vector<double> log_prior_;  // [negative, positive]
    Rows mean_, var_;
};

}  // namespace

std::shared_ptr<const Model> fit_naive_bayes(const ClassifierSpec& spec, const Rows& rows,
                                             const std::vector<int>& labels) {
    const std::size_t n = rows.size(), d = rows.empty() ? 0 : rows[0].size();

    std::size_t count[2] = {0, 0};
    Rows mean(2, std::vector<double>(d, 0.0)), var(2, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        int c = labels[i] == 1 ? 1 : 0;
        ++count[c];
        for (std::size_t f = 0; f < d; ++f) mean[c][f] += rows[i][f];
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t f = 0; f < d; ++f)
            if (count[c]) mean[c][f] /= static_cast<double>(count[c]);
    for (std::size_t i = 0; i < n; ++i) {
        int c = labels[i] == 1 ? 1 : 0;
        for (std::size_t f = 0; f < d; ++f) {
            double dlt = rows[i][f] - mean[c][f];
            var[c][f] += dlt * dlt;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t f = 0; f < d; ++f) {
            if (count[c]) var[c][f] /= static_cast<double>(count[c]);
            var[c][f] = std::max(var[c][f], spec.nb_var_floor);
        }

    // degenerate only when every feature is constant over the whole
    // training set (within-class zero spread is normal and floored)
    bool any_variance = false;
    for (std::size_t f = 0; f < d && !any_variance; ++f) {
        for (std::size_t i = 1; i < n; ++i)
            if (rows[i][f] != rows[0][f]) {
                any_variance = true;
                break;
            }
    }
    if (!any_variance) throw Degenerate("all features have zero variance");

    std::vector<double> log_prior(2);
    for (int c = 0; c < 2; ++c)
        log_prior[c] = std::log(static_cast<double>(count[c]) / static_cast<double>(n));
    return std::make_shared<GaussianNbModel>(std::move(log_prior), std::move(mean),
                                             std::move(var));
}

}  // namespace drunktext
