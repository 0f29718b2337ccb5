#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "netstress/dataset.hpp"
#include "netstress/graphs.hpp"

namespace netstress {

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd std_error;
    Eigen::VectorXd t_stat;
    Eigen::VectorXd p_value; // two-sided, t distribution with n - p dof
    double r_squared = 0;
    Eigen::VectorXd residuals;
    std::vector<std::string> names;
    long long n_rows = 0;
    long long dropped_rows = 0;
};

// Least squares via column-pivoted QR with classical standard errors.
// Rank deficiency is an error naming the dependent columns.
OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const std::vector<std::string>& names);

enum class FixedEffects { stock, industry };

struct PanelDesign {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<std::string> names;
    std::vector<std::pair<SymbolIdx, Day>> row_keys; // aligned with rows
    long long dropped_rows = 0; // archive rows lost to missing lags/bars
};

// Rows: (s,d) with non-null f, two trading-calendar lags of f, |delta| and
// VIX. Columns: intercept, |delta|, f-lag1, f-lag2, vix, weekday dummies and
// group dummies, one reference level each absorbed into the intercept.
PanelDesign build_design(const Dataset& ds, const FeatureArchive& archive, Feature f,
                         FixedEffects fe);

enum class DwVerdict { no_evidence, evidence, inconclusive };

struct DwStock {
    SymbolIdx symbol = 0;
    long long n = 0;
    double dw = 0;
    DwVerdict positive = DwVerdict::inconclusive; // evidence of positive serial correlation?
    DwVerdict negative = DwVerdict::inconclusive;
};

struct DwSummary {
    std::vector<DwStock> stocks;
    long long skipped = 0; // too few rows or unfittable reduced regression
    double frac_no_positive = 0; // share of tested stocks without positive-correlation evidence
    double frac_no_negative = 0;
    long long inconclusive_positive = 0;
    long long inconclusive_negative = 0;
};

double durbin_watson(const std::vector<double>& residuals);

// Per-stock reduced regressions f ~ |delta| + lag1 + lag2 (no intercept),
// residuals ordered by trading day; 5% d_L/d_U bounds interpolated by n.
DwSummary durbin_watson_panel(const Dataset& ds, const FeatureArchive& archive, Feature f);

double student_t_two_sided_p(double t, double dof);

} // namespace netstress
