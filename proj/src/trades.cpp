#include "netstress/trades.hpp"

#include <algorithm>
#include <cmath>

#include "netstress/error.hpp"
#include "netstress/rng.hpp"

namespace netstress {

double LabelSummary::suboptimal_rate(Side side) const {
    long long n = side == Side::buy ? labeled_buys : labeled_sells;
    long long k = side == Side::buy ? suboptimal_buys : suboptimal_sells;
    return n ? double(k) / double(n) : 0.0;
}

namespace {

const PriceBar* next_day_bar(const Dataset& ds, SymbolIdx s, Day d) {
    int idx = ds.calendar.index_of(d);
    if (idx < 0 || idx + 1 >= ds.calendar.size()) return nullptr;
    return ds.bar(s, ds.calendar.at(idx + 1));
}

} // namespace

LabelSummary label_trades(const Dataset& ds, const std::vector<Trade>& trades) {
    LabelSummary out;
    for (std::size_t i = 0; i < trades.size(); ++i) {
        const Trade& t = trades[i];
        const PriceBar* next = next_day_bar(ds, t.symbol, t.day);
        if (!next) {
            ++out.dropped;
            continue;
        }
        TradeLabel label;
        label.trade_index = i;
        label.counterfactual = t.side == Side::buy ? next->high : next->low;
        bool suboptimal = t.price > label.counterfactual; // strict
        label.optimal = !suboptimal;
        if (t.side == Side::buy) {
            ++out.labeled_buys;
            if (suboptimal) ++out.suboptimal_buys;
        } else {
            ++out.labeled_sells;
            if (suboptimal) ++out.suboptimal_sells;
        }
        out.labels.push_back(label);
    }
    return out;
}

LossReport trade_loss(const Dataset& ds, const std::vector<Trade>& trades,
                      const LabelSummary& labels, NextDayPrice which) {
    LossReport rep;
    rep.per_trade.assign(labels.labels.size(), 0.0);
    for (std::size_t i = 0; i < labels.labels.size(); ++i) {
        const TradeLabel& label = labels.labels[i];
        if (label.optimal) continue;
        const Trade& t = trades[label.trade_index];
        const PriceBar* next = next_day_bar(ds, t.symbol, t.day); // exists: trade was labeled
        double next_price = which == NextDayPrice::close ? next->close : next->open;
        double loss = double(t.shares) * std::fabs(t.price - next_price);
        rep.per_trade[i] = loss;
        rep.total += loss;
    }
    return rep;
}

std::vector<Trade> random_baseline(const Dataset& ds, std::uint64_t seed) {
    // Bar days per symbol, in symbol order.
    std::vector<std::vector<const PriceBar*>> bars_of(ds.symbols.size());
    for (const PriceBar& b : ds.bars) bars_of[b.symbol].push_back(&b);

    Rng rng(derive_seed(seed, {hash_str("trade-baseline")}));
    std::vector<Trade> out;
    out.reserve(ds.trades.size());
    for (const Trade& t : ds.trades) {
        const auto& days = bars_of[t.symbol];
        const PriceBar* bar = days[std::size_t(rng.index(days.size()))];
        Trade alt = t;
        alt.day = bar->day;
        alt.price = rng.uniform(bar->low, bar->high);
        out.push_back(alt);
    }
    return out;
}

int consecutive_days(const Dataset& ds, SymbolIdx s, Day d) {
    int idx = ds.calendar.index_of(d);
    if (idx < 0) throw ValidationError("consecutive-days query for a non-trading day");
    const std::vector<Day>& traded = ds.traded_days(s);
    int k = 0;
    while (idx - 1 - k >= 0 &&
           std::binary_search(traded.begin(), traded.end(), ds.calendar.at(idx - 1 - k)))
        ++k;
    return k;
}

bool traded_on(const Dataset& ds, SymbolIdx s, Day d) {
    const std::vector<Day>& traded = ds.traded_days(s);
    return std::binary_search(traded.begin(), traded.end(), d);
}

std::vector<SymbolIdx> k_unobserved(const Dataset& ds, int k, Day d, WeekConvention week) {
    if (k < 0) throw ValidationError("k must be nonnegative");

    std::vector<bool> has_bar(ds.symbols.size(), false);
    for (const PriceBar& b : ds.bars) has_bar[b.symbol] = true;

    std::vector<SymbolIdx> out;
    for (SymbolIdx s = 0; s < ds.symbols.size(); ++s) {
        if (!has_bar[s]) continue;
        if (k == 0) {
            out.push_back(s);
            continue;
        }
        const std::vector<Day>& traded = ds.traded_days(s);
        bool any = false;
        if (week == WeekConvention::trading_days5) {
            int idx = ds.calendar.index_of(d);
            if (idx < 0) throw ValidationError("k-unobserved query for a non-trading day");
            for (int back = 1; back <= 5 * k && idx - back >= 0 && !any; ++back)
                any = std::binary_search(traded.begin(), traded.end(),
                                         ds.calendar.at(idx - back));
        } else {
            Day lo = d - 7 * k;
            auto it = std::lower_bound(traded.begin(), traded.end(), lo);
            any = it != traded.end() && *it < d;
        }
        if (!any) out.push_back(s);
    }
    return out;
}

} // namespace netstress
