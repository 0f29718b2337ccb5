#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netstress/error.hpp"
#include "netstress/rng.hpp"
#include "netstress/shocks.hpp"
#include "oracle.hpp"
#include "testutil.hpp"

using namespace netstress;
using testutil::Fixture;
using testutil::TempDir;

namespace {

// One symbol, consecutive calendar days, close chosen to hit each delta.
Dataset delta_series(const std::vector<double>& deltas, const TempDir& dir,
                     double scale = 1.0) {
    Fixture fx;
    fx.person("a", true);
    Day start = parse_date("2010-01-04");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        double open = 100.0 * scale;
        double close = open * (1.0 + deltas[i]);
        fx.bar("S1", format_date(start + Day(i)), open, close);
    }
    return fx.parse(dir);
}

} // namespace

TEST_CASE("price change definition") {
    TempDir dir;
    Fixture fx;
    fx.person("a", true);
    fx.bar("S1", "2010-01-04", 100, 105);
    fx.bar("S1", "2010-01-05", 100, 100);
    fx.bar("S1", "2010-01-06", 50, 40);
    Dataset ds = fx.parse(dir);
    SymbolIdx s = *ds.symbols.find("S1");
    CHECK(price_change(ds, s, parse_date("2010-01-04"))->delta == doctest::Approx(0.05));
    CHECK(price_change(ds, s, parse_date("2010-01-05"))->delta == 0.0);
    CHECK(price_change(ds, s, parse_date("2010-01-06"))->delta == doctest::Approx(-0.2));
    CHECK_FALSE(price_change(ds, s, parse_date("2010-01-07")).has_value());
}

TEST_CASE("price change is invariant under currency rescaling") {
    std::vector<double> deltas = {0.01, -0.03, 0.07, 0.0, -0.055};
    TempDir d1, d2;
    Dataset a = delta_series(deltas, d1, 1.0);
    Dataset b = delta_series(deltas, d2, 17.25);
    auto ca = all_price_changes(a);
    auto cb = all_price_changes(b);
    REQUIRE(ca.size() == cb.size());
    for (std::size_t i = 0; i < ca.size(); ++i)
        CHECK(ca[i].delta == doctest::Approx(cb[i].delta).epsilon(1e-12));
}

TEST_CASE("shock detection hand cases") {
    SUBCASE("calm ramp then jump") {
        TempDir dir;
        Dataset ds = delta_series({0.01, 0.02, 0.03, 0.08}, dir);
        auto shocks = detect_shocks(ds, 0.05);
        REQUIRE(shocks.size() == 1);
        CHECK(format_date(shocks[0].day) == "2010-01-07");
    }
    SUBCASE("d-3 exceeding x blocks the shock") {
        TempDir dir;
        Dataset ds = delta_series({0.06, 0.01, 0.01, 0.08}, dir);
        CHECK(detect_shocks(ds, 0.05).empty());
    }
    SUBCASE("constant below threshold yields nothing") {
        TempDir dir;
        Dataset ds = delta_series({0.04, 0.04, 0.04, 0.04, 0.04}, dir);
        CHECK(detect_shocks(ds, 0.05).empty());
    }
    SUBCASE("negative shocks count by magnitude") {
        TempDir dir;
        Dataset ds = delta_series({0.01, -0.02, 0.03, -0.09}, dir);
        CHECK(detect_shocks(ds, 0.05).size() == 1);
    }
    SUBCASE("threshold must be positive") {
        TempDir dir;
        Dataset ds = delta_series({0.01}, dir);
        CHECK_THROWS_AS(detect_shocks(ds, 0.0), ValidationError);
    }
    SUBCASE("a gap in the stock's own bars makes the day ineligible") {
        TempDir dir;
        Fixture fx;
        fx.person("a", true);
        // calendar provided by a second symbol; S1 misses day 2
        for (int i = 0; i < 4; ++i)
            fx.bar("FILL", format_date(parse_date("2010-01-04") + i), 100, 100.1);
        fx.bar("S1", "2010-01-04", 100, 101);
        fx.bar("S1", "2010-01-06", 100, 101);
        fx.bar("S1", "2010-01-07", 100, 108);
        Dataset ds = fx.parse(dir);
        for (const auto& ev : detect_shocks(ds, 0.05))
            CHECK(ds.symbols.symbols[ev.symbol] != "S1");
    }
}

TEST_CASE("shock detection matches the window-scan oracle on random series") {
    Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<double> deltas;
        int n = 6 + int(rng.index(40));
        for (int i = 0; i < n; ++i) {
            double mag = rng.bernoulli(0.2) ? rng.uniform(0.05, 0.12) : rng.uniform(0.0, 0.05);
            deltas.push_back(rng.bernoulli(0.5) ? mag : -mag);
        }
        TempDir dir;
        Dataset ds = delta_series(deltas, dir);
        auto expected = oracle::shock_days(deltas, 0.05);
        auto actual = detect_shocks(ds, 0.05);
        REQUIRE(actual.size() == expected.size());
        Day start = parse_date("2010-01-04");
        for (std::size_t i = 0; i < actual.size(); ++i)
            CHECK(actual[i].day == start + expected[i]);
    }
}

TEST_CASE("shock |delta| component is antitone in x") {
    Rng rng(7);
    std::vector<double> deltas;
    for (int i = 0; i < 300; ++i) deltas.push_back(rng.normal(0, 0.04));
    TempDir dir;
    Dataset ds = delta_series(deltas, dir);
    double x1 = 0.03, x2 = 0.06;
    for (const auto& ev : detect_shocks(ds, x2)) CHECK(std::fabs(ev.delta) > x1);
}

TEST_CASE("aggregation curve semantics") {
    // two-point toy: f = 1 at delta +0.1, f = 3 at delta +0.2
    std::vector<std::pair<double, double>> samples = {{0.1, 1.0}, {0.2, 3.0}};
    auto grid = make_grid(-0.2, 0.2, 0.05);
    auto curve = aggregation_curve(samples, grid);

    auto at = [&](double g) {
        for (const auto& pt : curve)
            if (std::fabs(pt.grid - g) < 1e-12) return pt;
        FAIL("grid point not found");
        return CurvePoint{};
    };
    CHECK(*at(0.15).mean == 3.0);       // only the 0.2 sample
    CHECK(*at(0.05).mean == 2.0);       // both samples
    CHECK(*at(0.0).mean == 2.0);        // grand mean
    CHECK(at(-0.05).n == 0);            // nothing at or below -0.05
    CHECK_FALSE(at(-0.05).mean.has_value());
    CHECK(at(0.2).n == 1);

    SUBCASE("sample counts are nonincreasing in |grid| on each side") {
        Rng rng(3);
        std::vector<std::pair<double, double>> big;
        for (int i = 0; i < 500; ++i) big.emplace_back(rng.normal(0, 0.05), rng.uniform());
        auto c = aggregation_curve(big, make_grid(-0.1, 0.1, 0.01));
        long long last_neg = -1;
        for (const auto& pt : c) {
            if (pt.grid < 0) {
                if (last_neg >= 0) CHECK(pt.n >= last_neg);
                last_neg = pt.n;
            }
        }
        long long prev = -1;
        for (const auto& pt : c) {
            if (pt.grid > 0) {
                if (prev >= 0) CHECK(pt.n <= prev);
                prev = pt.n;
            }
        }
    }

    SUBCASE("grid must include zero") {
        CHECK_THROWS_AS(make_grid(0.01, 0.1, 0.01), ValidationError);
        CHECK_THROWS_AS(aggregation_curve(samples, {0.1, 0.2}), ValidationError);
    }
}

TEST_CASE("curve confidence intervals use 1.96 sd / sqrt(n)") {
    std::vector<std::pair<double, double>> samples = {{0.1, 1.0}, {0.15, 2.0}, {0.2, 3.0}};
    auto curve = aggregation_curve(samples, make_grid(0.0, 0.0, 1.0));
    REQUIRE(curve.size() == 1);
    double mean = 2.0, sd = 1.0;
    CHECK(*curve[0].mean == doctest::Approx(mean));
    CHECK(*curve[0].ci_lo == doctest::Approx(mean - 1.96 * sd / std::sqrt(3.0)));
    CHECK(*curve[0].ci_hi == doctest::Approx(mean + 1.96 * sd / std::sqrt(3.0)));
}

namespace {

// Archive whose clustering is planted: elevated for exactly two days after
// each shock, at the grand mean otherwise.
struct ResponseWorld {
    TempDir dir;
    Dataset ds;
    FeatureArchive archive;
    std::vector<ShockEvent> shocks;
};

ResponseWorld make_response_world() {
    ResponseWorld w;
    Fixture fx;
    for (const char* id : {"a", "b", "c"}) fx.person(id, true);
    Day start = parse_date("2010-01-04");
    int n = 40;
    int shock_day = 20;
    for (int i = 0; i < n; ++i) {
        double delta = i == shock_day ? 0.08 : 0.001;
        fx.bar("S1", format_date(start + i), 100, 100 * (1 + delta));
        // triangle (clustering 1) on the shock day and the next day,
        // path (clustering 0) otherwise
        std::string day = format_date(start + i);
        bool elevated = i == shock_day || i == shock_day + 1;
        fx.msg(day + "T09:00:00", "a", "b", "w", "S1");
        fx.msg(day + "T09:01:00", "b", "c", "w", "S1");
        if (elevated) fx.msg(day + "T09:02:00", "a", "c", "w", "S1");
    }
    w.ds = fx.parse(w.dir);
    w.archive = compute_archive(w.ds, ArchiveOptions{});
    w.shocks = detect_shocks(w.ds, 0.05);
    return w;
}

} // namespace

TEST_CASE("shock response with a planted two-day elevation") {
    ResponseWorld w = make_response_world();
    REQUIRE(w.shocks.size() == 1);
    ResponseReport rep = shock_response(w.ds, w.archive, w.shocks, Feature::clustering, 7, 0.25);
    // offsets 0 and 1 are elevated (clustering 1), offset 2 returns to 0
    CHECK(*rep.offsets[0].mean == 1.0);
    CHECK(*rep.offsets[1].mean == 1.0);
    CHECK(*rep.offsets[2].mean == 0.0);
    REQUIRE(rep.recovery_day.has_value());
    CHECK(*rep.recovery_day == 2);
    CHECK(*rep.shock_days.mean == 1.0);
    CHECK(*rep.nonshock_days.mean < 0.1);

    SUBCASE("constant feature recovers immediately with equal means") {
        ResponseReport flat =
            shock_response(w.ds, w.archive, w.shocks, Feature::largest_frac, 7, 0.25);
        // L = 1 everywhere in this fixture
        REQUIRE(flat.recovery_day.has_value());
        CHECK(*flat.recovery_day == 1);
        CHECK(*flat.shock_days.mean == *flat.nonshock_days.mean);
    }

    SUBCASE("horizon below one is rejected") {
        CHECK_THROWS_AS(shock_response(w.ds, w.archive, w.shocks, Feature::clustering, 0, 0.25),
                        ValidationError);
    }

    SUBCASE("no shocks is an error") {
        CHECK_THROWS_AS(shock_response(w.ds, w.archive, {}, Feature::clustering, 7, 0.25),
                        ValidationError);
    }
}
