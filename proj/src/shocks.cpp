#include "netstress/shocks.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "netstress/error.hpp"

namespace netstress {

std::optional<PriceChange> price_change(const Dataset& ds, SymbolIdx s, Day d) {
    const PriceBar* bar = ds.bar(s, d);
    if (!bar) return std::nullopt;
    return PriceChange{s, d, (bar->close - bar->open) / bar->open};
}

std::vector<PriceChange> all_price_changes(const Dataset& ds) {
    std::vector<PriceChange> out;
    out.reserve(ds.bars.size());
    for (const PriceBar& b : ds.bars)
        out.push_back(PriceChange{b.symbol, b.day, (b.close - b.open) / b.open});
    return out;
}

std::vector<ShockEvent> detect_shocks(const Dataset& ds, double x) {
    if (!(x > 0)) throw ValidationError("shock threshold x must be positive");
    std::vector<ShockEvent> out;
    for (const PriceBar& b : ds.bars) {
        int idx = ds.calendar.index_of(b.day);
        if (idx < 3) continue;
        double delta = (b.close - b.open) / b.open;
        if (!(std::fabs(delta) > x)) continue;
        bool calm = true;
        for (int back = 1; back <= 3 && calm; ++back) {
            const PriceBar* prev = ds.bar(b.symbol, ds.calendar.at(idx - back));
            if (!prev) calm = false; // unverifiable window
            else if (std::fabs((prev->close - prev->open) / prev->open) > x) calm = false;
        }
        if (calm) out.push_back(ShockEvent{b.symbol, b.day, delta});
    }
    std::sort(out.begin(), out.end(), [](const ShockEvent& a, const ShockEvent& b) {
        return std::tie(a.day, a.symbol) < std::tie(b.day, b.symbol);
    });
    return out;
}

namespace {

MeanCi mean_ci(const std::vector<double>& values) {
    MeanCi r;
    r.n = (long long)(values.size());
    if (values.empty()) return r;
    double sum = 0;
    for (double v : values) sum += v;
    double mean = sum / double(values.size());
    r.mean = mean;
    if (values.size() >= 2) {
        double ss = 0;
        for (double v : values) ss += (v - mean) * (v - mean);
        double sd = std::sqrt(ss / double(values.size() - 1));
        double half = 1.96 * sd / std::sqrt(double(values.size()));
        r.ci_lo = mean - half;
        r.ci_hi = mean + half;
    }
    return r;
}

} // namespace

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0) || !(hi >= lo)) throw ValidationError("invalid grid specification");
    long long n = std::llround((hi - lo) / step);
    std::vector<double> grid;
    bool has_zero = false;
    for (long long i = 0; i <= n; ++i) {
        double v = lo + double(i) * step;
        if (std::fabs(v) < step * 1e-9) {
            v = 0.0;
            has_zero = true;
        }
        grid.push_back(v);
    }
    if (!has_zero) throw ValidationError("grid must include 0");
    return grid;
}

std::vector<CurvePoint> aggregation_curve(const std::vector<std::pair<double, double>>& samples,
                                          const std::vector<double>& grid) {
    if (std::find(grid.begin(), grid.end(), 0.0) == grid.end())
        throw ValidationError("grid must include 0");
    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    std::vector<double> bucket;
    for (double g : grid) {
        bucket.clear();
        for (auto& [delta, f] : samples) {
            bool in = g > 0 ? delta >= g : (g < 0 ? delta <= g : true);
            if (in) bucket.push_back(f);
        }
        MeanCi mc = mean_ci(bucket);
        out.push_back(CurvePoint{g, mc.mean, mc.ci_lo, mc.ci_hi, mc.n});
    }
    return out;
}

std::vector<std::pair<double, double>> feature_delta_samples(const Dataset& ds,
                                                             const FeatureArchive& archive,
                                                             Feature f) {
    std::vector<std::pair<double, double>> out;
    for (const ArchiveRow& row : archive.rows) {
        auto v = row.value(f);
        if (!v) continue;
        auto pc = price_change(ds, row.symbol, row.day);
        if (!pc) continue;
        out.emplace_back(pc->delta, *v);
    }
    return out;
}

ResponseReport shock_response(const Dataset& ds, const FeatureArchive& archive,
                              const std::vector<ShockEvent>& shocks, Feature f, int horizon,
                              double band) {
    if (horizon < 1) throw ValidationError("response horizon must be >= 1");
    if (!(band > 0)) throw ValidationError("recovery band must be positive");
    if (shocks.empty()) throw ValidationError("no shocks found at this threshold");

    ResponseReport rep;
    rep.band = band;

    std::vector<double> all_values;
    for (const ArchiveRow& row : archive.rows) {
        auto v = row.value(f);
        if (v) all_values.push_back(*v);
    }
    if (all_values.empty())
        throw ValidationError("feature has no defined values in the archive");
    double sum = 0;
    for (double v : all_values) sum += v;
    rep.grand_mean = sum / double(all_values.size());
    double ss = 0;
    for (double v : all_values) ss += (v - rep.grand_mean) * (v - rep.grand_mean);
    rep.grand_sd = all_values.size() >= 2 ? std::sqrt(ss / double(all_values.size() - 1)) : 0.0;

    std::vector<double> cohort;
    for (int t = 0; t <= horizon; ++t) {
        cohort.clear();
        for (const ShockEvent& ev : shocks) {
            int idx = ds.calendar.index_of(ev.day);
            if (idx < 0 || idx + t >= ds.calendar.size()) continue;
            const ArchiveRow* row = archive.lookup(ev.symbol, ds.calendar.at(idx + t));
            if (!row) continue;
            auto v = row->value(f);
            if (v) cohort.push_back(*v);
        }
        rep.offsets.push_back(mean_ci(cohort));
        if (t >= 1 && !rep.recovery_day && rep.offsets.back().mean &&
            std::fabs(*rep.offsets.back().mean - rep.grand_mean) <= band * rep.grand_sd)
            rep.recovery_day = t;
    }

    std::vector<double> shock_vals, nonshock_vals;
    std::set<std::pair<SymbolIdx, Day>> shock_set;
    for (const ShockEvent& ev : shocks) shock_set.emplace(ev.symbol, ev.day);
    for (const ArchiveRow& row : archive.rows) {
        auto v = row.value(f);
        if (!v) continue;
        if (shock_set.count({row.symbol, row.day})) shock_vals.push_back(*v);
        else if (ds.bar(row.symbol, row.day)) nonshock_vals.push_back(*v);
    }
    rep.shock_days = mean_ci(shock_vals);
    rep.nonshock_days = mean_ci(nonshock_vals);
    return rep;
}

} // namespace netstress
