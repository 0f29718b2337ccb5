#pragma once

#include <cstdint>
#include <string>

#include "netstress/tomlmini.hpp"

namespace netstress {

// Seeded corpus generator. Behavioral mode simulates message/price/trade
// processes with configurable planted couplings; panel mode constructs
// graphs whose clustering and border fraction follow exact linear models in
// |delta| for coefficient-recovery checks.
struct SynthConfig {
    std::string mode = "behavioral"; // or "panel"
    std::uint64_t seed = 7;

    int n_insiders = 150;
    int n_outsiders = 300;
    int n_stocks = 200;
    int n_days = 500;
    std::string start_date = "2010-01-04"; // must be a weekday

    // message process
    double base_rate = 6.0;     // mean messages per stock-day
    double border_frac = 0.25;  // baseline chance a message goes to an outsider
    double strong_frac = 0.30;  // baseline chance of a strong-tie partner choice
    double closure_frac = 0.15; // baseline chance of a triadic-closure choice
    double kappa = 3.0;         // turtling multiplier on stressed days
    double cross_mention = 0.04;

    // prices
    double shock_prob = 0.010;
    double shock_mag_min = 0.06;
    double shock_mag_max = 0.12;
    double daily_vol = 0.012;

    // stress and lexicon coupling
    std::string stress_source = "price"; // "price" or "random"
    double stress_prob = 0.25;           // random mode: P(z = 1)
    double lexicon_base = 0.03;          // baseline category token rate
    double lexicon_coupling = 4.0;       // token-rate multiplier at full stress

    // trades
    double active_frac = 0.6;
    double trade_prob_active = 0.45; // active stocks, not traded yesterday
    double trade_persist = 0.90;     // traded yesterday
    double trade_resume = 0.02;      // sporadic stocks, not traded yesterday
    double resume_boost = 5.0;       // message multiplier on resumption days
    double resume_boost_prob = 0.85;
    double spurious_boost_prob = 0.03;
    double optimality_bias = 0.25;

    // panel mode
    double panel_beta_clustering = 0.3;
    double panel_beta_border = -0.2;
    double panel_noise_sigma = 0.01;

    static SynthConfig from_toml(const TomlConfig& toml);
    void validate() const;
};

// Writes messages/prices/trades/vix/industry/directory/lexicon CSVs.
void synth_generate(const SynthConfig& config, const std::string& outdir);

} // namespace netstress
