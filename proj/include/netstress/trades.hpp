#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netstress/dataset.hpp"

namespace netstress {

enum class NextDayPrice { close, open }; // which next-day price enters the loss formula

struct TradeLabel {
    std::size_t trade_index = 0; // into the labeled trade list
    bool optimal = false;
    double counterfactual = 0;   // next-day max (buys) or min (sells)
};

struct LabelSummary {
    std::vector<TradeLabel> labels;
    long long labeled_buys = 0, labeled_sells = 0;
    long long suboptimal_buys = 0, suboptimal_sells = 0;
    long long dropped = 0; // no next trading day or no bar for it

    double suboptimal_rate(Side side) const;
};

// Buy suboptimal iff price > next trading day's max; sell suboptimal iff
// price > next trading day's min (strict). Trades whose symbol lacks a bar
// on the next trading day are dropped and counted.
LabelSummary label_trades(const Dataset& ds, const std::vector<Trade>& trades);

inline LabelSummary label_optimality(const Dataset& ds) { return label_trades(ds, ds.trades); }

struct LossReport {
    std::vector<double> per_trade; // aligned with labels; 0 for optimal trades
    double total = 0;
};

// Loss V * |p - p_next| summed over locally suboptimal trades, with p_next
// the next trading day's close (or open).
LossReport trade_loss(const Dataset& ds, const std::vector<Trade>& trades,
                      const LabelSummary& labels, NextDayPrice which);

// Same symbol and shares, uniformly random day among the symbol's bar days,
// price uniform in [min, max] of the chosen bar. One seeded stream over the
// canonically ordered trade list.
std::vector<Trade> random_baseline(const Dataset& ds, std::uint64_t seed);

// Size of the largest k such that s traded on each of the k trading days
// before d.
int consecutive_days(const Dataset& ds, SymbolIdx s, Day d);

enum class WeekConvention { trading_days5, calendar_days7 };

// Symbols with zero trades in the k-week window before d (k = 0: every
// symbol carrying at least one price bar).
std::vector<SymbolIdx> k_unobserved(const Dataset& ds, int k, Day d,
                                    WeekConvention week = WeekConvention::trading_days5);

bool traded_on(const Dataset& ds, SymbolIdx s, Day d);

} // namespace netstress
