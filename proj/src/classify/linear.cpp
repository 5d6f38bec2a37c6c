#include <algorithm>
#include <cmath>

#include "drunktext/errors.hpp"
#include "drunktext/rng.hpp"
#include "internal.hpp"

namespace drunktext {

Standardizer Standardizer::fit(const Rows& rows) {
    const std::size_t n = rows.size(), d = rows.empty() ? 0 : rows[0].size();
    Standardizer s;
    s.mean.assign(d, 0.0);
    s.sd.assign(d, 1.0);
    for (const auto& r : rows)
        for (std::size_t f = 0; f < d; ++f) s.mean[f] += r[f];
    for (std::size_t f = 0; f < d; ++f) s.mean[f] /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t f = 0; f < d; ++f) {
            double dlt = r[f] - s.mean[f];
            var[f] += dlt * dlt;
        }
    for (std::size_t f = 0; f < d; ++f) {
        double sd = std::sqrt(var[f] / static_cast<double>(n));
        s.sd[f] = sd > 0 ? sd : 1.0;
    }
    return s;
}

std::vector<double> Standardizer::apply(const std::vector<double>& x) const {
    std::vector<double> z(x.size());
    for (std::size_t f = 0; f < x.size(); ++f) z[f] = (x[f] - mean[f]) / sd[f];
    return z;
}

namespace {

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(-m)) without overflow
double log1p_exp_neg(double m) {
    if (m > 0) return std::log1p(std::exp(-m));
    return -m + std::log1p(std::exp(m));
}

double dot_theta(const std::vector<double>& theta, const std::vector<double>& x) {
    double z = theta.back();  // bias
    for (std::size_t f = 0; f < x.size(); ++f) z += theta[f] * x[f];
    return z;
}

}  // namespace

double lr_loss(const Rows& rows, const std::vector<int>& labels, const std::vector<double>& theta,
               double lambda) {
    const double n = static_cast<double>(rows.size());
    double loss = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double y = labels[i] == 1 ? 1.0 : -1.0;
        loss += log1p_exp_neg(y * dot_theta(theta, rows[i]));
    }
    loss /= n;
    for (std::size_t f = 0; f + 1 < theta.size(); ++f) loss += 0.5 * lambda * theta[f] * theta[f];
    return loss;
}

std::vector<double> lr_gradient(const Rows& rows, const std::vector<int>& labels,
                                const std::vector<double>& theta, double lambda) {
    const double n = static_cast<double>(rows.size());
    std::vector<double> grad(theta.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double y = labels[i] == 1 ? 1.0 : -1.0;
        double coeff = -y * sigmoid(-y * dot_theta(theta, rows[i]));
        for (std::size_t f = 0; f < rows[i].size(); ++f) grad[f] += coeff * rows[i][f];
        grad.back() += coeff;
    }
    for (double& g : grad) g /= n;
    for (std::size_t f = 0; f + 1 < theta.size(); ++f) grad[f] += lambda * theta[f];
    return grad;
}

namespace {

class LogisticModel final : public Model {
public:
    LogisticModel(Standardizer std, std::vector<double> theta)
        : std_(std::move(std)), theta_(std::move(theta)) {}

    double score(const std::vector<double>& x) const override {
        return sigmoid(dot_theta(theta_, std_.apply(x)));
    }

private:
    Standardizer std_;
    std::vector<double> theta_;
};

}  // namespace

std::shared_ptr<const Model> fit_logistic_regression(const ClassifierSpec& spec, const Rows& rows,
                                                     const std::vector<int>& labels,
                                                     bool& converged) {
    Standardizer std_ = Standardizer::fit(rows);
    Rows z;
    z.reserve(rows.size());
    for (const auto& r : rows) z.push_back(std_.apply(r));

    const std::size_t d = z.empty() ? 0 : z[0].size();
    std::vector<double> theta(d + 1, 0.0);

    // full-batch gradient descent with Armijo backtracking
    converged = false;
    double loss = lr_loss(z, labels, theta, spec.lr_lambda);
    for (int epoch = 0; epoch < spec.lr_max_epochs; ++epoch) {
        std::vector<double> grad = lr_gradient(z, labels, theta, spec.lr_lambda);
        double g_inf = 0, g_sq = 0;
        for (double g : grad) {
            g_inf = std::max(g_inf, std::fabs(g));
            g_sq += g * g;
        }
        if (g_inf < spec.lr_tol) {
            converged = true;
            break;
        }
        double step = 1.0;
        std::vector<double> trial(theta.size());
        double new_loss = loss;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t f = 0; f < theta.size(); ++f) trial[f] = theta[f] - step * grad[f];
            new_loss = lr_loss(z, labels, trial, spec.lr_lambda);
            if (new_loss <= loss - 1e-4 * step * g_sq) break;
            step *= 0.5;
        }
        if (new_loss >= loss) break;  // no descent direction left at double precision
        theta = trial;
        loss = new_loss;
    }
    return std::make_shared<LogisticModel>(std::move(std_), std::move(theta));
}

namespace {

class LinearSvmModel final : public Model {
public:
    LinearSvmModel(Standardizer std, std::vector<double> w, double lo, double hi)
        : std_(std::move(std)), w_(std::move(w)), lo_(lo), hi_(hi) {}

    double decision(const std::vector<double>& x) const {
        return dot_theta(w_, std_.apply(x));
    }

    // rank-preserving min-max calibration over training decision values
    double score(const std::vector<double>& x) const override {
        double f = decision(x);
        if (hi_ <= lo_) return 0.5;
        return std::clamp((f - lo_) / (hi_ - lo_), 0.0, 1.0);
    }

private:
    Standardizer std_;
    std::vector<double> w_;  // weights then bias
    double lo_, hi_;
};

}  // namespace

std::shared_ptr<const Model> fit_linear_svm(const ClassifierSpec& spec, const Rows& rows,
                                            const std::vector<int>& labels) {
    Standardizer std_ = Standardizer::fit(rows);
    Rows z;
    z.reserve(rows.size());
    for (const auto& r : rows) z.push_back(std_.apply(r));

    const std::size_t n = z.size();
    const std::size_t d = z.empty() ? 0 : z[0].size();
    const double lambda = spec.svm_lambda;
    std::vector<double> w(d + 1, 0.0);  // bias folded in as a regularized constant feature

    auto g = substream(spec.seed, "pegasos");
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    const double radius = 1.0 / std::sqrt(lambda);
    std::size_t t = 0;
    for (int epoch = 0; epoch < spec.svm_epochs; ++epoch) {
        shuffle_seeded(order, g);
        for (std::size_t idx : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double y = labels[idx] == 1 ? 1.0 : -1.0;
            const double margin = y * dot_theta(w, z[idx]);
            const double keep = 1.0 - eta * lambda;
            for (double& wf : w) wf *= keep;
            if (margin < 1.0) {
                for (std::size_t f = 0; f < d; ++f) w[f] += eta * y * z[idx][f];
                w.back() += eta * y;
            }
            double norm_sq = 0;
            for (double wf : w) norm_sq += wf * wf;
            if (norm_sq > radius * radius) {
                double scale = radius / std::sqrt(norm_sq);
                for (double& wf : w) wf *= scale;
            }
        }
    }

    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = dot_theta(w, z[i]);
        if (i == 0) lo = hi = f;
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    return std::make_shared<LinearSvmModel>(std::move(std_), std::move(w), lo, hi);
}

}  // namespace drunktext
