#include "collarml/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "collarml/errors.hpp"

namespace collarml {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Shared fit-time state: standardized, weighted, centered design with the
// orthonormal span/eigenvalues needed for O(1)-per-alpha LOO.
struct Prepared {
    std::vector<Behaviour> classes;
    std::vector<double> feature_mean;
    std::vector<double> feature_scale;
    std::vector<double> w;  // sample weights
    double wsum = 0.0;
    VectorXd xbar, ybar;    // weighted means (zero when no intercept)
    MatrixXd A;             // sqrt(w)-scaled centered design
    MatrixXd T;             // sqrt(w)-scaled centered +-1 targets
    MatrixXd U;             // orthonormal columns
    VectorXd lambda;        // squared singular values of A
    bool fit_intercept = true;
};

Prepared prepare(const FeatureMatrix& X, const RidgeCVSpec& spec) {
    const std::size_t n = X.rows();
    const std::size_t p = X.cols();
    if (n < 2) throw ContractError("ridge: need at least 2 rows");
    if (X.labels.size() != n) throw ContractError("ridge: label count mismatch");
    for (double v : X.values) {
        if (std::isnan(v)) throw DataError("ridge: NaN in feature matrix");
    }

    Prepared pr;
    pr.fit_intercept = spec.fit_intercept;
    {
        std::set<Behaviour> seen(X.labels.begin(), X.labels.end());
        pr.classes.assign(seen.begin(), seen.end());
    }
    if (pr.classes.size() < 2) throw ContractError("ridge: need at least 2 classes");
    const std::size_t K = pr.classes.size();

    pr.feature_mean.assign(p, 0.0);
    pr.feature_scale.assign(p, 1.0);
    for (std::size_t c = 0; c < p; ++c) {
        double mu = 0.0;
        for (std::size_t r = 0; r < n; ++r) mu += X.at(r, c);
        mu /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double d = X.at(r, c) - mu;
            var += d * d;
        }
        var /= static_cast<double>(n);
        pr.feature_mean[c] = mu;
        pr.feature_scale[c] = var > 0.0 ? std::sqrt(var) : 1.0;
    }

    std::vector<std::size_t> class_index(n);
    std::vector<double> class_count(K, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto it = std::find(pr.classes.begin(), pr.classes.end(), X.labels[r]);
        class_index[r] = static_cast<std::size_t>(it - pr.classes.begin());
        class_count[class_index[r]] += 1.0;
    }
    pr.w.assign(n, 1.0);
    if (spec.class_weight == ClassWeight::balanced) {
        for (std::size_t r = 0; r < n; ++r) {
            pr.w[r] = static_cast<double>(n) /
                      (static_cast<double>(K) * class_count[class_index[r]]);
        }
    }
    for (double v : pr.w) pr.wsum += v;

    MatrixXd Xs(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            Xs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                (X.at(r, c) - pr.feature_mean[c]) / pr.feature_scale[c];
        }
    }
    MatrixXd Y = MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(K), -1.0);
    for (std::size_t r = 0; r < n; ++r) {
        Y(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(class_index[r])) = 1.0;
    }

    pr.xbar = VectorXd::Zero(static_cast<Eigen::Index>(p));
    pr.ybar = VectorXd::Zero(static_cast<Eigen::Index>(K));
    if (spec.fit_intercept) {
        for (std::size_t r = 0; r < n; ++r) {
            pr.xbar += pr.w[r] * Xs.row(static_cast<Eigen::Index>(r)).transpose();
            pr.ybar += pr.w[r] * Y.row(static_cast<Eigen::Index>(r)).transpose();
        }
        pr.xbar /= pr.wsum;
        pr.ybar /= pr.wsum;
        Xs.rowwise() -= pr.xbar.transpose();
        Y.rowwise() -= pr.ybar.transpose();
    }
    VectorXd sqw(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) sqw(static_cast<Eigen::Index>(r)) = std::sqrt(pr.w[r]);
    pr.A = sqw.asDiagonal() * Xs;
    pr.T = sqw.asDiagonal() * Y;

    if (n <= p) {
        const MatrixXd G = pr.A * pr.A.transpose();
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(G);
        pr.U = eig.eigenvectors();
        pr.lambda = eig.eigenvalues().cwiseMax(0.0);
    } else {
        const MatrixXd C = pr.A.transpose() * pr.A;
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
        const VectorXd ev = eig.eigenvalues().cwiseMax(0.0);
        const double tol = 1e-12 * std::max(1.0, ev.maxCoeff());
        std::vector<Eigen::Index> keep;
        for (Eigen::Index j = 0; j < ev.size(); ++j) {
            if (ev(j) > tol) keep.push_back(j);
        }
        pr.U.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(keep.size()));
        pr.lambda.resize(static_cast<Eigen::Index>(keep.size()));
        for (std::size_t j = 0; j < keep.size(); ++j) {
            pr.lambda(static_cast<Eigen::Index>(j)) = ev(keep[j]);
            pr.U.col(static_cast<Eigen::Index>(j)) =
                pr.A * eig.eigenvectors().col(keep[j]) / std::sqrt(ev(keep[j]));
        }
    }
    return pr;
}

// Scaled-space LOO residuals at one alpha, via e_i / (1 - h_ii).
MatrixXd loo_residuals(const Prepared& pr, double alpha) {
    const auto n = pr.A.rows();
    VectorXd f(pr.lambda.size());
    for (Eigen::Index j = 0; j < pr.lambda.size(); ++j) {
        f(j) = pr.lambda(j) / (pr.lambda(j) + alpha);
    }
    VectorXd h = pr.U.cwiseProduct(pr.U) * f;
    if (pr.fit_intercept) {
        for (Eigen::Index r = 0; r < n; ++r) {
            h(r) += pr.w[static_cast<std::size_t>(r)] / pr.wsum;
        }
    }
    const MatrixXd fitted = pr.U * (f.asDiagonal() * (pr.U.transpose() * pr.T));
    MatrixXd e = pr.T - fitted;
    for (Eigen::Index r = 0; r < n; ++r) {
        e.row(r) /= std::max(1e-12, 1.0 - h(r));
    }
    return e;
}

}  // namespace

std::vector<double> logspace_alphas(double lo_exp, double hi_exp, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double e = count == 1 ? lo_exp
                                    : lo_exp + (hi_exp - lo_exp) * static_cast<double>(i) /
                                                   static_cast<double>(count - 1);
        out[i] = std::pow(10.0, e);
    }
    return out;
}

RidgeModel ridge_cv_fit(const FeatureMatrix& X, const RidgeCVSpec& spec) {
    if (spec.alphas.empty()) throw ContractError("ridge_cv_fit: empty alpha grid");
    for (double a : spec.alphas) {
        if (!(a > 0.0)) throw ContractError("ridge_cv_fit: alphas must be positive");
    }
    Prepared pr = prepare(X, spec);
    const std::size_t K = pr.classes.size();
    const std::size_t p = X.cols();

    RidgeModel model;
    model.classes = pr.classes;
    model.feature_names = X.feature_names;
    model.feature_mean = pr.feature_mean;
    model.feature_scale = pr.feature_scale;
    model.alphas = spec.alphas;
    std::sort(model.alphas.begin(), model.alphas.end());

    double best_err = 0.0;
    std::size_t best_idx = 0;
    for (std::size_t ai = 0; ai < model.alphas.size(); ++ai) {
        const MatrixXd e = loo_residuals(pr, model.alphas[ai]);
        const double err = e.squaredNorm() / (pr.wsum * static_cast<double>(K));
        model.loo_errors.push_back(err);
        if (ai == 0 || err < best_err) {  // strict: ties keep the smallest alpha
            best_err = err;
            best_idx = ai;
        }
    }
    model.chosen_alpha = model.alphas[best_idx];

    VectorXd inv(pr.lambda.size());
    for (Eigen::Index j = 0; j < pr.lambda.size(); ++j) {
        inv(j) = 1.0 / (pr.lambda(j) + model.chosen_alpha);
    }
    const MatrixXd beta = pr.A.transpose() * (pr.U * (inv.asDiagonal() * (pr.U.transpose() * pr.T)));

    model.weights.assign(p * K, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t k = 0; k < K; ++k) {
            model.weights[c * K + k] =
                beta(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k));
        }
    }
    model.intercepts.assign(K, 0.0);
    if (spec.fit_intercept) {
        const VectorXd b0 = pr.ybar - beta.transpose() * pr.xbar;
        for (std::size_t k = 0; k < K; ++k) model.intercepts[k] = b0(static_cast<Eigen::Index>(k));
    }
    return model;
}

std::vector<double> ridge_loo_residuals(const FeatureMatrix& X, const RidgeCVSpec& spec,
                                        double alpha) {
    if (!(alpha > 0.0)) throw ContractError("ridge_loo_residuals: alpha must be positive");
    Prepared pr = prepare(X, spec);
    const MatrixXd e = loo_residuals(pr, alpha);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(e.size()));
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
        for (Eigen::Index k = 0; k < e.cols(); ++k) out.push_back(e(r, k));
    }
    return out;
}

std::vector<double> ridge_decision(const RidgeModel& model, const FeatureMatrix& X) {
    if (X.feature_names != model.feature_names) {
        throw ContractError("ridge_decision: feature schema mismatch");
    }
    const std::size_t n = X.rows();
    const std::size_t p = X.cols();
    const std::size_t K = model.classes.size();
    std::vector<double> scores(n * K);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < K; ++k) {
            double s = model.intercepts[k];
            for (std::size_t c = 0; c < p; ++c) {
                s += (X.at(r, c) - model.feature_mean[c]) / model.feature_scale[c] *
                     model.weights[c * K + k];
            }
            scores[r * K + k] = s;
        }
    }
    return scores;
}

std::vector<Behaviour> ridge_predict(const RidgeModel& model, const FeatureMatrix& X) {
    const auto scores = ridge_decision(model, X);
    const std::size_t K = model.classes.size();
    std::vector<Behaviour> out(X.rows());
    for (std::size_t r = 0; r < X.rows(); ++r) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < K; ++k) {
            if (scores[r * K + k] > scores[r * K + best]) best = k;
        }
        out[r] = model.classes[best];
    }
    return out;
}

}  // namespace collarml
