#include "netstress/ols.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "netstress/error.hpp"
#include "netstress/shocks.hpp"

namespace netstress {

double student_t_two_sided_p(double t, double dof) {
    if (dof <= 0) return 1.0;
    boost::math::students_t dist(dof);
    return 2.0 * boost::math::cdf(dist, -std::fabs(t));
}

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const std::vector<std::string>& names) {
    const long long n = X.rows();
    const long long p = X.cols();
    if (n < p)
        throw ValidationError("ols: fewer rows (" + std::to_string(n) + ") than columns (" +
                              std::to_string(p) + ")");
    if (std::size_t(p) != names.size())
        throw RuntimeFailure("ols: column name count mismatch");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    long long rank = qr.rank();
    if (rank < p) {
        // Columns permuted beyond the numerical rank are linear combinations
        // of the ones before them.
        const auto& perm = qr.colsPermutation().indices();
        std::string cols;
        for (long long i = rank; i < p; ++i) {
            if (!cols.empty()) cols += ", ";
            cols += names[std::size_t(perm[i])];
        }
        throw ValidationError("ols: design is rank-deficient; collinear columns: " + cols);
    }

    OlsFit fit;
    fit.names = names;
    fit.n_rows = n;
    fit.beta = qr.solve(y);
    fit.residuals = y - X * fit.beta;

    double rss = fit.residuals.squaredNorm();
    double dof = double(n - rank);
    double sigma2 = dof > 0 ? rss / dof : 0.0;

    // Covariance via the R factor: (X^T X)^-1 = R^-1 R^-T after permutation.
    Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    Eigen::MatrixXd Rinv = R.inverse();
    Eigen::MatrixXd cov_perm = Rinv * Rinv.transpose();
    Eigen::MatrixXd P = qr.colsPermutation();
    Eigen::MatrixXd cov = P * cov_perm * P.transpose() * sigma2;

    fit.std_error.resize(p);
    fit.t_stat.resize(p);
    fit.p_value.resize(p);
    for (long long j = 0; j < p; ++j) {
        fit.std_error[j] = std::sqrt(std::max(cov(j, j), 0.0));
        fit.t_stat[j] = fit.std_error[j] > 0 ? fit.beta[j] / fit.std_error[j] : 0.0;
        fit.p_value[j] = student_t_two_sided_p(fit.t_stat[j], dof);
    }

    double mean_y = y.mean();
    double tss = (y.array() - mean_y).matrix().squaredNorm();
    fit.r_squared = tss > 0 ? 1.0 - rss / tss : 1.0;
    return fit;
}

namespace {

struct PanelRow {
    SymbolIdx symbol;
    Day day;
    double f, lag1, lag2, abs_delta, vix;
    int weekday;
};

std::vector<PanelRow> panel_rows(const Dataset& ds, const FeatureArchive& archive, Feature f,
                                 long long& dropped) {
    std::vector<PanelRow> rows;
    dropped = 0;
    for (const ArchiveRow& row : archive.rows) {
        auto value = row.value(f);
        if (!value) {
            ++dropped;
            continue;
        }
        int idx = ds.calendar.index_of(row.day);
        if (idx < 2) {
            ++dropped;
            continue;
        }
        const ArchiveRow* l1 = archive.lookup(row.symbol, ds.calendar.at(idx - 1));
        const ArchiveRow* l2 = archive.lookup(row.symbol, ds.calendar.at(idx - 2));
        auto v1 = l1 ? l1->value(f) : std::nullopt;
        auto v2 = l2 ? l2->value(f) : std::nullopt;
        auto pc = price_change(ds, row.symbol, row.day);
        auto vix = ds.vix_at(row.day);
        if (!v1 || !v2 || !pc || !vix) {
            ++dropped;
            continue;
        }
        rows.push_back(PanelRow{row.symbol, row.day, *value, *v1, *v2, std::fabs(pc->delta),
                                *vix, weekday_index(row.day)});
    }
    return rows;
}

} // namespace

PanelDesign build_design(const Dataset& ds, const FeatureArchive& archive, Feature f,
                         FixedEffects fe) {
    long long dropped = 0;
    std::vector<PanelRow> rows = panel_rows(ds, archive, f, dropped);
    if (rows.empty()) throw ValidationError("panel design has no usable rows");

    std::set<int> weekdays;
    std::set<std::string> groups;
    auto group_of = [&](const PanelRow& r) -> std::string {
        if (fe == FixedEffects::stock) return ds.symbols.symbols[r.symbol];
        const std::string& ind = ds.industry_of[r.symbol];
        if (ind.empty())
            throw ValidationError("stock '" + ds.symbols.symbols[r.symbol] +
                                  "' missing from industry map (industry fixed effects)");
        return ind;
    };
    for (const PanelRow& r : rows) {
        weekdays.insert(r.weekday);
        groups.insert(group_of(r));
    }

    // Reference levels (first weekday / first group) are absorbed into the
    // intercept.
    std::map<int, long long> weekday_col;
    std::map<std::string, long long> group_col;
    std::vector<std::string> names = {"intercept", "abs_delta", "lag1", "lag2", "vix"};
    {
        bool first = true;
        for (int w : weekdays) {
            if (first) { first = false; continue; }
            weekday_col[w] = (long long)(names.size());
            names.push_back(std::string("wd_") + weekday_name(w));
        }
        first = true;
        for (const std::string& g : groups) {
            if (first) { first = false; continue; }
            group_col[g] = (long long)(names.size());
            names.push_back("fe_" + g);
        }
    }

    PanelDesign design;
    design.dropped_rows = dropped;
    design.names = names;
    design.X = Eigen::MatrixXd::Zero((long long)(rows.size()), (long long)(names.size()));
    design.y.resize((long long)(rows.size()));
    design.row_keys.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const PanelRow& r = rows[i];
        long long ri = (long long)(i);
        design.X(ri, 0) = 1.0;
        design.X(ri, 1) = r.abs_delta;
        design.X(ri, 2) = r.lag1;
        design.X(ri, 3) = r.lag2;
        design.X(ri, 4) = r.vix;
        auto wit = weekday_col.find(r.weekday);
        if (wit != weekday_col.end()) design.X(ri, wit->second) = 1.0;
        auto git = group_col.find(group_of(r));
        if (git != group_col.end()) design.X(ri, git->second) = 1.0;
        design.y[ri] = r.f;
        design.row_keys.emplace_back(r.symbol, r.day);
    }
    return design;
}

double durbin_watson(const std::vector<double>& residuals) {
    if (residuals.size() < 2)
        throw ValidationError("durbin-watson needs at least 2 residuals");
    double num = 0, den = 0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        den += residuals[t] * residuals[t];
        if (t >= 1) {
            double d = residuals[t] - residuals[t - 1];
            num += d * d;
        }
    }
    if (den == 0) return 0.0;
    return num / den;
}

namespace {

// Savin-White 5% significance points for k' = 3 regressors (no intercept
// adjustment applied; the reduced per-stock form has exactly three terms).
struct DwBound {
    int n;
    double dl, du;
};

const DwBound kDwBounds[] = {
    {15, 0.814, 1.750}, {20, 0.998, 1.676}, {25, 1.123, 1.654},
    {30, 1.214, 1.650}, {40, 1.338, 1.659}, {50, 1.421, 1.674},
    {70, 1.525, 1.703}, {100, 1.613, 1.736}, {150, 1.693, 1.774},
    {200, 1.738, 1.799},
};

bool dw_bounds(long long n, double& dl, double& du) {
    const auto* first = std::begin(kDwBounds);
    const auto* last = std::end(kDwBounds) - 1;
    if (n < first->n) return false; // below table range: inconclusive
    if (n >= last->n) {
        dl = last->dl;
        du = last->du;
        return true;
    }
    for (const auto* it = first; it + 1 <= last; ++it) {
        if (n >= it->n && n <= (it + 1)->n) {
            double w = double(n - it->n) / double((it + 1)->n - it->n);
            dl = it->dl + w * ((it + 1)->dl - it->dl);
            du = it->du + w * ((it + 1)->du - it->du);
            return true;
        }
    }
    return false;
}

DwVerdict classify(double stat, double dl, double du) {
    if (stat > du) return DwVerdict::no_evidence;
    if (stat < dl) return DwVerdict::evidence;
    return DwVerdict::inconclusive;
}

} // namespace

DwSummary durbin_watson_panel(const Dataset& ds, const FeatureArchive& archive, Feature f) {
    long long dropped = 0;
    std::vector<PanelRow> rows = panel_rows(ds, archive, f, dropped);
    std::map<SymbolIdx, std::vector<const PanelRow*>> by_stock;
    for (const PanelRow& r : rows) by_stock[r.symbol].push_back(&r);

    DwSummary summary;
    long long tested = 0, no_pos = 0, no_neg = 0;
    for (auto& [symbol, stock_rows] : by_stock) {
        if (stock_rows.size() < 4) { // need > 3 residual dof for the 3-term fit
            ++summary.skipped;
            continue;
        }
        std::sort(stock_rows.begin(), stock_rows.end(),
                  [](const PanelRow* a, const PanelRow* b) { return a->day < b->day; });
        Eigen::MatrixXd X((long long)(stock_rows.size()), 3);
        Eigen::VectorXd y((long long)(stock_rows.size()));
        for (std::size_t i = 0; i < stock_rows.size(); ++i) {
            X((long long)(i), 0) = stock_rows[i]->abs_delta;
            X((long long)(i), 1) = stock_rows[i]->lag1;
            X((long long)(i), 2) = stock_rows[i]->lag2;
            y[(long long)(i)] = stock_rows[i]->f;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        qr.setThreshold(1e-10);
        if (qr.rank() < 3) {
            ++summary.skipped;
            continue;
        }
        Eigen::VectorXd resid = y - X * qr.solve(y);
        std::vector<double> e(resid.data(), resid.data() + resid.size());

        DwStock st;
        st.symbol = symbol;
        st.n = (long long)(e.size());
        st.dw = durbin_watson(e);
        double dl = 0, du = 0;
        if (dw_bounds(st.n, dl, du)) {
            st.positive = classify(st.dw, dl, du);
            st.negative = classify(4.0 - st.dw, dl, du);
        } else {
            st.positive = DwVerdict::inconclusive;
            st.negative = DwVerdict::inconclusive;
        }
        ++tested;
        if (st.positive == DwVerdict::no_evidence) ++no_pos;
        if (st.negative == DwVerdict::no_evidence) ++no_neg;
        if (st.positive == DwVerdict::inconclusive) ++summary.inconclusive_positive;
        if (st.negative == DwVerdict::inconclusive) ++summary.inconclusive_negative;
        summary.stocks.push_back(st);
    }
    summary.frac_no_positive = tested ? double(no_pos) / double(tested) : 0.0;
    summary.frac_no_negative = tested ? double(no_neg) / double(tested) : 0.0;
    return summary;
}

} // namespace netstress
