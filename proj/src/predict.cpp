#include "netstress/predict.hpp"

#include <algorithm>
#include <cmath>

#include "netstress/error.hpp"
#include "netstress/rng.hpp"
#include "netstress/shocks.hpp"

namespace netstress {

const char* task_name(Task t) {
    switch (t) {
        case Task::conformance: return "conformance";
        case Task::optimality: return "optimality";
        case Task::sudden: return "sudden";
    }
    return "?";
}

std::optional<Task> task_from_name(const std::string& name) {
    if (name == "conformance") return Task::conformance;
    if (name == "optimality") return Task::optimality;
    if (name == "sudden") return Task::sudden;
    return std::nullopt;
}

FeatureSet parse_feature_set(const std::string& text, Task task) {
    FeatureSet set;
    set.label = text;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t plus = text.find('+', pos);
        std::string part = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
        if (part == "network") set.mask |= unsigned(FeatureGroup::network);
        else if (part == "price") set.mask |= unsigned(FeatureGroup::price);
        else if (part == "history") set.mask |= unsigned(FeatureGroup::history);
        else if (part == "all")
            set.mask |= unsigned(FeatureGroup::network) | unsigned(FeatureGroup::price) |
                        unsigned(FeatureGroup::history);
        else throw ValidationError("unknown feature set component '" + part + "'");
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    if (task != Task::sudden) set.mask &= ~unsigned(FeatureGroup::history);
    if (set.mask == 0)
        throw ValidationError("feature set '" + text + "' selects nothing for this task");
    return set;
}

namespace {

// Network features fed to the classifiers; every structural measure plus
// the history-based normalizations.
const Feature kNetworkFeatures[] = {
    Feature::nbar,         Feature::nu_edges,    Feature::clustering,
    Feature::nu_clustering, Feature::eps_clustering, Feature::strength,
    Feature::border_frac,  Feature::largest_frac, Feature::components90,
};
constexpr int kNetworkFeatureCount = 9;

struct RowKey {
    SymbolIdx symbol;
    Day day;
    bool label;
};

void fill_network_row(const Dataset& ds, const FeatureArchive& archive, SymbolIdx s,
                      int cal_idx, Eigen::MatrixXd& m, long long row) {
    long long col = 0;
    for (int lag = 0; lag < kLagCount; ++lag) {
        const ArchiveRow* ar = nullptr;
        if (cal_idx - lag >= 0) ar = archive.lookup(s, ds.calendar.at(cal_idx - lag));
        for (const Feature f : kNetworkFeatures) {
            std::optional<double> v = ar ? ar->value(f) : std::nullopt;
            m(row, col) = v.value_or(0.0);
            m(row, col + 1) = v ? 0.0 : 1.0;
            col += 2;
        }
    }
}

void fill_price_row(const Dataset& ds, SymbolIdx s, int cal_idx, Eigen::MatrixXd& m,
                    long long row) {
    long long col = 0;
    for (int lag = 0; lag < kLagCount; ++lag) {
        std::optional<double> delta;
        if (cal_idx - lag >= 0) {
            auto pc = price_change(ds, s, ds.calendar.at(cal_idx - lag));
            if (pc) delta = pc->delta;
        }
        m(row, col) = delta.value_or(0.0);
        m(row, col + 1) = delta ? 0.0 : 1.0;
        m(row, col + 2) = delta ? std::fabs(*delta) : 0.0;
        m(row, col + 3) = delta ? 0.0 : 1.0;
        col += 4;
    }
}

void fill_history_row(const Dataset& ds, SymbolIdx s, int cal_idx, int k, Eigen::MatrixXd& m,
                      long long row) {
    // Traded indicators for the 7 trading days before the 5k-day gap.
    for (int j = 0; j < 7; ++j) {
        int idx = cal_idx - 5 * k - 1 - j;
        bool traded = idx >= 0 && traded_on(ds, s, ds.calendar.at(idx));
        m(row, j) = traded ? 1.0 : 0.0;
    }
}

std::vector<std::string> network_names() {
    std::vector<std::string> names;
    for (int lag = 0; lag < kLagCount; ++lag)
        for (const Feature f : kNetworkFeatures) {
            names.push_back(std::string(feature_name(f)) + "@" + std::to_string(lag));
            names.push_back(std::string(feature_name(f)) + "@" + std::to_string(lag) + ".miss");
        }
    return names;
}

std::vector<std::string> price_names() {
    std::vector<std::string> names;
    for (int lag = 0; lag < kLagCount; ++lag) {
        names.push_back("delta@" + std::to_string(lag));
        names.push_back("delta@" + std::to_string(lag) + ".miss");
        names.push_back("abs_delta@" + std::to_string(lag));
        names.push_back("abs_delta@" + std::to_string(lag) + ".miss");
    }
    return names;
}

std::vector<std::string> history_names(int k) {
    std::vector<std::string> names;
    for (int j = 0; j < 7; ++j)
        names.push_back("traded@-" + std::to_string(5 * k + 1 + j));
    return names;
}

} // namespace

TaskRows assemble(Task task, const AssembleInputs& in, const std::string& category, int k) {
    const Dataset& ds = *in.dataset;
    const FeatureArchive& archive = *in.archive;

    std::vector<RowKey> keys;
    std::string target;
    switch (task) {
        case Task::conformance: {
            if (!in.scores || !in.lexicon)
                throw RuntimeFailure("conformance task needs lexicon scores");
            auto cat = in.lexicon->category_index(category);
            if (!cat) throw ValidationError("unknown lexicon category '" + category + "'");
            target = category;
            for (const CategoryScore& cs : *in.scores)
                if (cs.category == *cat)
                    keys.push_back(RowKey{cs.symbol, cs.day, cs.conforms});
            break;
        }
        case Task::optimality: {
            if (!in.trade_labels) throw RuntimeFailure("optimality task needs trade labels");
            if (k < 0) throw ValidationError("optimality k must be nonnegative");
            target = "k=" + std::to_string(k);
            for (const TradeLabel& label : in.trade_labels->labels) {
                const Trade& t = ds.trades[label.trade_index];
                if (consecutive_days(ds, t.symbol, t.day) < k) continue;
                keys.push_back(RowKey{t.symbol, t.day, label.optimal});
            }
            break;
        }
        case Task::sudden: {
            if (k < 0) throw ValidationError("sudden k must be nonnegative");
            target = "k=" + std::to_string(k);
            for (int idx = 0; idx < ds.calendar.size(); ++idx) {
                Day d = ds.calendar.at(idx);
                for (SymbolIdx s : k_unobserved(ds, k, d))
                    keys.push_back(RowKey{s, d, traded_on(ds, s, d)});
            }
            break;
        }
    }

    TaskRows rows;
    rows.task = task;
    rows.target = target;
    rows.network_names = network_names();
    rows.price_names = price_names();
    if (task == Task::sudden) rows.history_names = history_names(k);

    std::vector<std::pair<RowKey, int>> usable;
    usable.reserve(keys.size());
    for (const RowKey& key : keys) {
        int idx = ds.calendar.index_of(key.day);
        if (idx < 0) {
            ++rows.dropped_rows;
            continue;
        }
        usable.emplace_back(key, idx);
    }

    long long n = (long long)(usable.size());
    rows.network.resize(n, (long long)(rows.network_names.size()));
    rows.price.resize(n, (long long)(rows.price_names.size()));
    rows.history.resize(n, (long long)(rows.history_names.size()));
    rows.labels.resize(n);
    rows.cal_idx.resize(std::size_t(n));

    for (long long i = 0; i < n; ++i) {
        const auto& [key, idx] = usable[std::size_t(i)];
        fill_network_row(ds, archive, key.symbol, idx, rows.network, i);
        fill_price_row(ds, key.symbol, idx, rows.price, i);
        if (task == Task::sudden) fill_history_row(ds, key.symbol, idx, k, rows.history, i);
        rows.labels[i] = key.label ? 1.0 : 0.0;
        rows.cal_idx[std::size_t(i)] = idx;
    }
    return rows;
}

Eigen::MatrixXd TaskRows::gather(const FeatureSet& set, const std::vector<long long>& sel) const {
    long long cols = 0;
    if (set.mask & unsigned(FeatureGroup::network)) cols += network.cols();
    if (set.mask & unsigned(FeatureGroup::price)) cols += price.cols();
    if (set.mask & unsigned(FeatureGroup::history)) cols += history.cols();
    Eigen::MatrixXd out((long long)(sel.size()), cols);
    for (std::size_t i = 0; i < sel.size(); ++i) {
        long long r = sel[i];
        long long c = 0;
        if (set.mask & unsigned(FeatureGroup::network)) {
            out.block(long(i), c, 1, network.cols()) = network.row(r);
            c += network.cols();
        }
        if (set.mask & unsigned(FeatureGroup::price)) {
            out.block(long(i), c, 1, price.cols()) = price.row(r);
            c += price.cols();
        }
        if (set.mask & unsigned(FeatureGroup::history)) {
            out.block(long(i), c, 1, history.cols()) = history.row(r);
            c += history.cols();
        }
    }
    return out;
}

std::vector<std::string> TaskRows::column_names(const FeatureSet& set) const {
    std::vector<std::string> names;
    if (set.mask & unsigned(FeatureGroup::network))
        names.insert(names.end(), network_names.begin(), network_names.end());
    if (set.mask & unsigned(FeatureGroup::price))
        names.insert(names.end(), price_names.begin(), price_names.end());
    if (set.mask & unsigned(FeatureGroup::history))
        names.insert(names.end(), history_names.begin(), history_names.end());
    return names;
}

TimeBins time_bins(const Dataset& ds, int bin_size) {
    if (bin_size < 2) throw ValidationError("bin size must be at least 2 trading days");
    int n_days = ds.calendar.size();
    if (n_days < 2 * bin_size)
        throw ValidationError("corpus has " + std::to_string(n_days) +
                              " trading days; need at least " + std::to_string(2 * bin_size) +
                              " for walk-forward evaluation (use a smaller --bin)");
    TimeBins bins;
    bins.bin_size = bin_size;
    bins.n_bins = (n_days + bin_size - 1) / bin_size;
    return bins;
}

std::vector<long long> balance_rows(const Eigen::VectorXd& labels,
                                    const std::vector<long long>& candidates,
                                    std::uint64_t seed) {
    std::vector<long long> pos, neg;
    for (long long r : candidates) (labels[r] > 0.5 ? pos : neg).push_back(r);
    if (pos.empty() || neg.empty()) return {};
    std::vector<long long>& minority = pos.size() <= neg.size() ? pos : neg;
    std::vector<long long>& majority = pos.size() <= neg.size() ? neg : pos;

    // Partial Fisher-Yates to draw |minority| rows from the majority.
    Rng rng(seed);
    std::size_t want = minority.size();
    for (std::size_t i = 0; i < want; ++i) {
        std::size_t j = i + std::size_t(rng.index(majority.size() - i));
        std::swap(majority[i], majority[j]);
    }
    std::vector<long long> out(minority.begin(), minority.end());
    out.insert(out.end(), majority.begin(), majority.begin() + long(want));
    std::sort(out.begin(), out.end());
    return out;
}

SplitModel fit_split(const TaskRows& rows, const FeatureSet& set, const TimeBins& bins,
                     int test_bin, const EvalOptions& opts) {
    SplitModel sm;
    std::vector<long long> train_candidates, test_candidates;
    for (std::size_t i = 0; i < rows.cal_idx.size(); ++i) {
        int bin = bins.bin_of(rows.cal_idx[i]);
        if (bin < test_bin) train_candidates.push_back((long long)(i));
        else if (bin == test_bin) test_candidates.push_back((long long)(i));
    }

    // Balancing is seeded independently of the feature set so that feature
    // sets are compared on identical row samples.
    std::uint64_t salt = derive_seed(
        opts.seed, {hash_str(task_name(rows.task)), hash_str(rows.target),
                    std::uint64_t(test_bin)});
    sm.train_rows = balance_rows(rows.labels, train_candidates, derive_seed(salt, {1}));
    sm.test_rows = balance_rows(rows.labels, test_candidates, derive_seed(salt, {2}));
    if (sm.train_rows.empty() || sm.test_rows.empty()) {
        sm.skipped = true;
        sm.skip_reason = sm.train_rows.empty() ? "single-class training bin"
                                               : "single-class test bin";
        return sm;
    }

    Eigen::MatrixXd X = rows.gather(set, sm.train_rows);
    Eigen::VectorXd y((long long)(sm.train_rows.size()));
    for (std::size_t i = 0; i < sm.train_rows.size(); ++i) y[long(i)] = rows.labels[sm.train_rows[i]];
    sm.model = fit_logistic(X, y, opts.logistic);
    return sm;
}

EvalReport evaluate_task(const TaskRows& rows, const Dataset& ds, const FeatureSet& set,
                         const EvalOptions& opts) {
    TimeBins bins = time_bins(ds, opts.bin_size);

    EvalReport rep;
    rep.task = rows.task;
    rep.target = rows.target;
    rep.feature_set = set.label;
    rep.splits.resize(std::size_t(bins.n_bins - 1));

    for (int test_bin = 1; test_bin < bins.n_bins; ++test_bin) {
        SplitResult& res = rep.splits[std::size_t(test_bin - 1)];
        res.test_bin = test_bin;
        res.bin_start = ds.calendar.at(std::min(test_bin * bins.bin_size,
                                                ds.calendar.size() - 1));
        SplitModel sm = fit_split(rows, set, bins, test_bin, opts);
        if (sm.skipped) {
            res.skipped = true;
            res.skip_reason = sm.skip_reason;
            continue;
        }
        Eigen::MatrixXd Xt = rows.gather(set, sm.test_rows);
        Eigen::VectorXd yt((long long)(sm.test_rows.size()));
        for (std::size_t i = 0; i < sm.test_rows.size(); ++i)
            yt[long(i)] = rows.labels[sm.test_rows[i]];
        res.accuracy = accuracy(sm.model, Xt, yt);
        res.n_train = (long long)(sm.train_rows.size());
        res.n_test = (long long)(sm.test_rows.size());
        res.converged = sm.model.converged;
    }

    double weighted = 0;
    long long total = 0;
    for (const SplitResult& res : rep.splits) {
        if (res.skipped) continue;
        weighted += res.accuracy * double(res.n_test);
        total += res.n_test;
    }
    rep.pooled_accuracy = total ? weighted / double(total) : 0.0;
    rep.pooled_n = total;
    return rep;
}

} // namespace netstress
