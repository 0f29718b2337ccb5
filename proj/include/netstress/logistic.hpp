#pragma once

#include <Eigen/Dense>
#include <vector>

namespace netstress {

struct LogisticOptions {
    double lambda = 1e-3; // L2 penalty on weights (intercept unpenalized)
    int max_iter = 100;
    double tol = 1e-8;    // relative penalized log-likelihood change
};

struct LogisticModel {
    Eigen::VectorXd weights; // per standardized feature
    double intercept = 0;
    Eigen::VectorXd mean, scale; // training standardization (scale 1 for constants)
    int iterations = 0;
    double log_likelihood = 0; // penalized, at the returned weights
    bool converged = false;

    double predict_proba(const Eigen::RowVectorXd& raw_row) const;
    bool predict(const Eigen::RowVectorXd& raw_row) const { return predict_proba(raw_row) >= 0.5; }
};

// IRLS on standardized features; standardization statistics come from the
// training rows only and are stored in the model. Labels are 0/1.
LogisticModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const LogisticOptions& opts);

double accuracy(const LogisticModel& model, const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

} // namespace netstress
