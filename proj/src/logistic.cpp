#include "netstress/logistic.hpp"

#include <cmath>

#include "netstress/error.hpp"

namespace netstress {

namespace {

double sigmoid(double t) {
    if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

// log(1 + e^t) without overflow
double log1pexp(double t) {
    if (t > 35) return t;
    if (t < -35) return std::exp(t);
    return std::log1p(std::exp(t));
}

double penalized_ll(const Eigen::VectorXd& eta, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& w, double lambda) {
    double ll = 0;
    for (long long i = 0; i < eta.size(); ++i) ll += y[i] * eta[i] - log1pexp(eta[i]);
    return ll - 0.5 * lambda * w.squaredNorm();
}

} // namespace

double LogisticModel::predict_proba(const Eigen::RowVectorXd& raw_row) const {
    double eta = intercept;
    for (long long j = 0; j < weights.size(); ++j)
        eta += weights[j] * (raw_row[j] - mean[j]) / scale[j];
    return sigmoid(eta);
}

LogisticModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const LogisticOptions& opts) {
    const long long n = X.rows();
    const long long p = X.cols();
    if (n == 0) throw ValidationError("logistic fit: no training rows");
    bool has_pos = false, has_neg = false;
    for (long long i = 0; i < n; ++i) (y[i] > 0.5 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw ValidationError("logistic fit: training labels are single-class");

    LogisticModel model;
    model.mean = X.colwise().mean();
    model.scale.resize(p);
    Eigen::MatrixXd Z(n, p);
    for (long long j = 0; j < p; ++j) {
        double var = (X.col(j).array() - model.mean[j]).square().sum() / double(n);
        double sd = std::sqrt(var);
        model.scale[j] = sd > 1e-12 ? sd : 1.0; // constants stay centered only
        Z.col(j) = (X.col(j).array() - model.mean[j]) / model.scale[j];
    }

    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    double b = 0;
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double ll = penalized_ll(eta, y, w, opts.lambda);

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        model.iterations = iter;
        Eigen::VectorXd mu(n), wt(n);
        for (long long i = 0; i < n; ++i) {
            mu[i] = sigmoid(eta[i]);
            wt[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-10);
        }

        // Newton step on [intercept, w] with ridge on w only.
        Eigen::MatrixXd Zw = Z.array().colwise() * wt.array();
        Eigen::MatrixXd H(p + 1, p + 1);
        H(0, 0) = wt.sum();
        H.block(0, 1, 1, p) = wt.transpose() * Z;
        H.block(1, 0, p, 1) = H.block(0, 1, 1, p).transpose();
        H.block(1, 1, p, p) = Z.transpose() * Zw;
        for (long long j = 0; j < p; ++j) H(j + 1, j + 1) += opts.lambda;

        Eigen::VectorXd g(p + 1);
        Eigen::VectorXd r = y - mu;
        g[0] = r.sum();
        g.tail(p) = Z.transpose() * r - opts.lambda * w;

        Eigen::VectorXd step = H.ldlt().solve(g);

        double b_new = b;
        Eigen::VectorXd w_new = w;
        double ll_new = ll;
        double scale_step = 1.0;
        for (int half = 0; half < 40; ++half) {
            b_new = b + scale_step * step[0];
            w_new = w + scale_step * step.tail(p);
            Eigen::VectorXd eta_new = (Z * w_new).array() + b_new;
            ll_new = penalized_ll(eta_new, y, w_new, opts.lambda);
            if (ll_new >= ll) {
                eta = std::move(eta_new);
                break;
            }
            scale_step *= 0.5;
        }
        if (ll_new < ll) break; // no ascent direction left

        b = b_new;
        w = w_new;
        double change = std::fabs(ll_new - ll) / (std::fabs(ll_new) + 0.1);
        ll = ll_new;
        if (change < opts.tol) {
            model.converged = true;
            break;
        }
    }

    model.weights = w;
    model.intercept = b;
    model.log_likelihood = ll;
    return model;
}

double accuracy(const LogisticModel& model, const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() == 0) return 0.0;
    long long correct = 0;
    for (long long i = 0; i < X.rows(); ++i) {
        bool pred = model.predict(X.row(i));
        if (pred == (y[i] > 0.5)) ++correct;
    }
    return double(correct) / double(X.rows());
}

} // namespace netstress
