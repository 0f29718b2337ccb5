#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netstress/dataset.hpp"
#include "netstress/graphs.hpp"
#include "netstress/lexicon.hpp"
#include "netstress/ols.hpp"
#include "netstress/predict.hpp"
#include "netstress/shocks.hpp"
#include "netstress/synth.hpp"
#include "netstress/trades.hpp"

namespace netstress {

// CSV emission for each pipeline stage. Numbers use shortest-round-trip
// formatting; nulls serialize as empty fields.

void write_metrics_csv(const Dataset& ds, const FeatureArchive& archive,
                       const std::string& path);

void write_shocks_csv(const Dataset& ds, double x, const std::string& path);

// feature is a graph feature name or "wordpct:<category>" (needs lexicon).
void write_curve_csv(const Dataset& ds, const FeatureArchive& archive, const Lexicon* lexicon,
                     const std::string& feature, double grid_lo, double grid_hi,
                     double grid_step, const std::string& path);

void write_response_csv(const Dataset& ds, const FeatureArchive& archive,
                        const std::string& feature, double x, int horizon, double band,
                        const std::string& path);

void write_conformance_csv(const Dataset& ds, const Lexicon& lexicon, const std::string& path);

void write_regress_csv(const Dataset& ds, const FeatureArchive& archive, FixedEffects fe,
                       const std::string& feature, const std::string& path);

void write_trade_labels_csv(const Dataset& ds, const std::string& path);
void write_trade_baseline_csv(const Dataset& ds, std::uint64_t seed, const std::string& path);
void write_trade_loss_csv(const Dataset& ds, std::uint64_t seed, NextDayPrice which,
                          const std::string& path);

struct PredictRequest {
    Task task = Task::conformance;
    std::vector<std::string> feature_sets;   // defaults per task when empty
    std::vector<std::string> categories;     // conformance; all lexicon categories when empty
    int k_min = 0, k_max = 6;                // optimality / sudden
    EvalOptions options;
};

std::vector<EvalReport> run_predict(const Dataset& ds, const FeatureArchive& archive,
                                    const Lexicon* lexicon, const PredictRequest& request);

void write_predict_csv(const std::vector<EvalReport>& reports, const std::string& path);

void tag_mentions(const std::string& messages_in, const std::string& prices,
                  const std::string& out);

struct ReportOptions {
    double alpha = 0.1;
    int min_nodes = 2;
    TieOrientation orientation = TieOrientation::incidence;
    double x = 0.05;
    int horizon = 7;
    double band = 0.25;
    std::uint64_t seed = 7;
    int bin_size = 100;
    double lambda = 1e-3;
    int jobs = 0;
    NextDayPrice next_price = NextDayPrice::close;
};

// Chains every stage over datadir with defaults; returns the files written
// (paths relative to outdir).
std::vector<std::string> run_report(const std::string& datadir, const std::string& outdir,
                                    const ReportOptions& options);

} // namespace netstress
