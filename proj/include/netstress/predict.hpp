#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netstress/dataset.hpp"
#include "netstress/graphs.hpp"
#include "netstress/lexicon.hpp"
#include "netstress/logistic.hpp"
#include "netstress/trades.hpp"

namespace netstress {

enum class Task { conformance, optimality, sudden };

const char* task_name(Task t);
std::optional<Task> task_from_name(const std::string& name);

// Feature groups selectable per run; lags 0..7 for network and price groups.
enum class FeatureGroup : unsigned { network = 1, price = 2, history = 4 };

struct FeatureSet {
    unsigned mask = 0;
    std::string label;
};

// Parses "network", "price", "history", "network+price", "all", ...
FeatureSet parse_feature_set(const std::string& text, Task task);

constexpr int kLagCount = 8; // lags 0..7

// Assembled rows for one (task, target). Network and price groups carry a
// missingness companion column per feature; history is 7 traded indicators
// for the days before the k-week gap.
struct TaskRows {
    Task task = Task::conformance;
    std::string target; // category name, or "k=<n>"
    std::vector<std::string> network_names, price_names, history_names;
    Eigen::MatrixXd network, price, history;
    Eigen::VectorXd labels;   // 0/1
    std::vector<int> cal_idx; // trading-calendar index per row
    long long dropped_rows = 0; // rows on non-trading days

    Eigen::MatrixXd gather(const FeatureSet& set, const std::vector<long long>& rows) const;
    std::vector<std::string> column_names(const FeatureSet& set) const;
};

struct AssembleInputs {
    const Dataset* dataset = nullptr;
    const FeatureArchive* archive = nullptr;
    const Lexicon* lexicon = nullptr;                   // conformance task
    const std::vector<CategoryScore>* scores = nullptr; // conformance task
    const LabelSummary* trade_labels = nullptr;         // optimality task
};

TaskRows assemble(Task task, const AssembleInputs& in, const std::string& category, int k);

struct TimeBins {
    int bin_size = 100;
    int n_bins = 0;
    int bin_of(int cal_idx) const { return cal_idx / bin_size; }
};

// Consecutive bin_size-trading-day windows; a corpus shorter than two full
// bins is an error. Splits test bin i >= 1 against all earlier bins.
TimeBins time_bins(const Dataset& ds, int bin_size);

// All minority rows plus an equal-size uniform sample of the majority,
// returned as sorted row indices.
std::vector<long long> balance_rows(const Eigen::VectorXd& labels,
                                    const std::vector<long long>& candidates,
                                    std::uint64_t seed);

struct EvalOptions {
    std::uint64_t seed = 7;
    int bin_size = 100;
    LogisticOptions logistic;
    int jobs = 0;
};

struct SplitResult {
    int test_bin = 0;
    Day bin_start = 0;
    double accuracy = 0;
    long long n_train = 0, n_test = 0;
    bool skipped = false;
    std::string skip_reason;
    bool converged = true;
};

struct EvalReport {
    Task task = Task::conformance;
    std::string target;
    std::string feature_set;
    std::vector<SplitResult> splits;
    double pooled_accuracy = 0; // test-size weighted over non-skipped splits
    long long pooled_n = 0;
};

EvalReport evaluate_task(const TaskRows& rows, const Dataset& ds, const FeatureSet& set,
                         const EvalOptions& opts);

// Fits the model for one split; exposed for the leakage probe.
struct SplitModel {
    LogisticModel model;
    std::vector<long long> train_rows, test_rows; // balanced, sorted
    bool skipped = false;
    std::string skip_reason;
};

SplitModel fit_split(const TaskRows& rows, const FeatureSet& set, const TimeBins& bins,
                     int test_bin, const EvalOptions& opts);

} // namespace netstress
