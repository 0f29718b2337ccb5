#pragma once

#include <optional>
#include <vector>

#include "netstress/dataset.hpp"
#include "netstress/graphs.hpp"

namespace netstress {

struct PriceChange {
    SymbolIdx symbol = 0;
    Day day = 0;
    double delta = 0; // (close - open) / open

    bool operator==(const PriceChange&) const = default;
};

std::optional<PriceChange> price_change(const Dataset& ds, SymbolIdx s, Day d);
std::vector<PriceChange> all_price_changes(const Dataset& ds);

struct ShockEvent {
    SymbolIdx symbol = 0;
    Day day = 0;
    double delta = 0;

    bool operator==(const ShockEvent&) const = default;
};

// (s,d) is an x-shock when |delta| > x on d and |delta| <= x on the three
// preceding trading days. Days without three prior trading days, or where
// the stock lacks a bar on any of them, are ineligible.
std::vector<ShockEvent> detect_shocks(const Dataset& ds, double x);

struct CurvePoint {
    double grid = 0;
    std::optional<double> mean, ci_lo, ci_hi;
    long long n = 0;
};

// Price-conditioned aggregation: at grid value g > 0 the mean of f over
// pairs with delta >= g, at g < 0 over pairs with delta <= g, at 0 over all.
// CIs are mean +/- 1.96 sd/sqrt(n).
std::vector<CurvePoint> aggregation_curve(const std::vector<std::pair<double, double>>& samples,
                                          const std::vector<double>& grid);

std::vector<double> make_grid(double lo, double hi, double step); // must contain 0

// Joins archive rows with price changes for one feature.
std::vector<std::pair<double, double>> feature_delta_samples(const Dataset& ds,
                                                             const FeatureArchive& archive,
                                                             Feature f);

struct MeanCi {
    std::optional<double> mean, ci_lo, ci_hi;
    long long n = 0;
};

struct ResponseReport {
    std::vector<MeanCi> offsets;   // t = 0..horizon after the shock day
    MeanCi shock_days;             // feature on shock (s,d)
    MeanCi nonshock_days;          // feature on non-shock (s,d) that have a bar
    double grand_mean = 0;
    double grand_sd = 0;
    std::optional<int> recovery_day; // first t >= 1 within band*sd of grand mean
    double band = 0;
};

ResponseReport shock_response(const Dataset& ds, const FeatureArchive& archive,
                              const std::vector<ShockEvent>& shocks, Feature f, int horizon,
                              double band);

} // namespace netstress
