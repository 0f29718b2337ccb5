#include "netstress/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include "netstress/csv.hpp"
#include "netstress/dates.hpp"
#include "netstress/error.hpp"
#include "netstress/rng.hpp"

namespace netstress {

namespace {

struct CategorySpec {
    const char* name;
    double base_mult;          // scales lexicon_base
    int coupling;              // +1 rises with delta, -1 falls, 0 tracks |delta|
    std::vector<const char*> words;
    std::vector<const char*> patterns; // lexicon file entries
};

// Word lists and the demonstration lexicon are aligned; filler words below
// are chosen to match none of the patterns.
const std::vector<CategorySpec>& categories() {
    static const std::vector<CategorySpec> cats = {
        {"posemo", 1.0, +1,
         {"good", "great", "gain", "gains", "gained", "winning", "wins", "happy", "strong"},
         {"good", "great", "gain*", "win*", "happy", "strong"}},
        {"negemo", 1.0, -1,
         {"bad", "ugly", "loss", "losses", "weak", "hurt", "hurting", "missed", "misses"},
         {"bad", "ugly", "loss*", "weak", "hurt*", "miss*"}},
        {"anger", 0.4, -1,
         {"angry", "mad", "furious", "rage", "annoyed", "annoying"},
         {"angry", "mad", "furious", "rage", "annoy*"}},
        {"anxiety", 0.4, -1,
         {"worried", "worry", "fear", "fears", "nervous", "panic", "anxious"},
         {"worry*", "worri*", "fear*", "nervous", "panic", "anxious"}},
        {"sadness", 0.4, -1,
         {"sad", "crying", "gloomy", "regret", "regrets", "sorry"},
         {"sad", "cry*", "gloom*", "regret*", "sorry"}},
        {"cognitive", 1.5, 0,
         {"think", "thinking", "thinks", "because", "why", "reason", "idea", "ideas", "cause",
          "causes", "maybe", "perhaps", "believe", "believes"},
         {"think*", "because", "why", "reason", "idea*", "cause*", "maybe", "perhaps",
          "believe*"}},
    };
    return cats;
}

const std::vector<const char*>& filler_words() {
    static const std::vector<const char*> words = {
        "the",   "a",      "to",     "on",     "for",   "at",     "it",     "is",
        "we",    "you",    "they",   "market", "order", "desk",   "flow",   "level",
        "size",  "note",   "call",   "chart",  "data",  "report", "number", "page",
        "model", "sheet",  "update", "client", "room",  "line",   "quote",  "system",
        "ticket","book",   "print",  "tape",   "lunch", "later",  "today",  "tomorrow"};
    return words;
}

std::string stock_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "S%04d", i + 1);
    return buf;
}

std::string insider_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "E%04d", i + 1);
    return buf;
}

std::string outsider_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "X%04d", i + 1);
    return buf;
}

std::vector<Day> build_calendar(const std::string& start_date, int n_days) {
    Day d = parse_date(start_date);
    if (weekday_index(d) >= 5)
        throw ValidationError("synth start_date must be a weekday");
    std::vector<Day> days;
    days.reserve(std::size_t(n_days));
    while (int(days.size()) < n_days) {
        if (weekday_index(d) < 5) days.push_back(d);
        ++d;
    }
    return days;
}

struct OutFile {
    std::ofstream stream;
    explicit OutFile(const std::string& path) : stream(path, std::ios::binary) {
        if (!stream) throw RuntimeFailure("cannot open output file: " + path);
    }
};

struct Bar {
    double open, close, high, low, delta;
};

// ---------------------------------------------------------------------------
// behavioral mode

struct TradePlan {
    std::vector<std::vector<std::uint8_t>> traded; // [stock][day]
    std::vector<std::vector<std::uint8_t>> resume; // resumption after gap >= 5
};

void generate_behavioral(const SynthConfig& cfg, const std::string& outdir) {
    namespace fs = std::filesystem;
    const auto& cats = categories();
    std::vector<Day> days = build_calendar(cfg.start_date, cfg.n_days);

    // --- teams ------------------------------------------------------------
    Rng team_rng(derive_seed(cfg.seed, {hash_str("teams")}));
    std::vector<std::vector<int>> team(std::size_t(cfg.n_stocks));
    std::vector<std::vector<int>> opool(std::size_t(cfg.n_stocks));
    for (int s = 0; s < cfg.n_stocks; ++s) {
        int tsize = std::min(cfg.n_insiders, 12 + int(team_rng.index(8)));
        std::vector<int> pool(std::size_t(cfg.n_insiders));
        for (int i = 0; i < cfg.n_insiders; ++i) pool[std::size_t(i)] = i;
        for (int i = 0; i < tsize; ++i) {
            int j = i + int(team_rng.index(std::uint64_t(cfg.n_insiders - i)));
            std::swap(pool[std::size_t(i)], pool[std::size_t(j)]);
        }
        team[std::size_t(s)].assign(pool.begin(), pool.begin() + tsize);
        int osize = std::min(cfg.n_outsiders, 6 + int(team_rng.index(6)));
        for (int i = 0; i < osize; ++i)
            opool[std::size_t(s)].push_back(int(team_rng.index(std::uint64_t(cfg.n_outsiders))));
    }

    // --- prices -----------------------------------------------------------
    Rng price_rng(derive_seed(cfg.seed, {hash_str("prices")}));
    std::vector<std::vector<Bar>> bars(std::size_t(cfg.n_stocks));
    for (int s = 0; s < cfg.n_stocks; ++s) {
        double open = price_rng.uniform(20.0, 150.0);
        for (int d = 0; d < cfg.n_days; ++d) {
            double delta;
            if (price_rng.bernoulli(cfg.shock_prob)) {
                double mag = price_rng.uniform(cfg.shock_mag_min, cfg.shock_mag_max);
                delta = price_rng.bernoulli(0.5) ? mag : -mag;
            } else {
                delta = price_rng.normal(0.0, cfg.daily_vol);
            }
            Bar b;
            b.open = open;
            b.delta = delta;
            b.close = open * (1.0 + delta);
            double hi_pad = std::fabs(price_rng.normal(0.0, 0.004));
            double lo_pad = std::fabs(price_rng.normal(0.0, 0.004));
            b.high = std::max(b.open, b.close) * (1.0 + hi_pad);
            b.low = std::min(b.open, b.close) * (1.0 - lo_pad);
            bars[std::size_t(s)].push_back(b);
            open = b.close;
        }
    }

    // --- trades -----------------------------------------------------------
    Rng trade_rng(derive_seed(cfg.seed, {hash_str("trades")}));
    TradePlan plan;
    plan.traded.assign(std::size_t(cfg.n_stocks),
                       std::vector<std::uint8_t>(std::size_t(cfg.n_days), 0));
    plan.resume = plan.traded;
    struct TradeRow {
        int stock, day;
        bool buy;
        double price;
        int shares;
    };
    std::vector<TradeRow> trade_rows;
    for (int s = 0; s < cfg.n_stocks; ++s) {
        bool active = trade_rng.bernoulli(cfg.active_frac);
        bool yesterday = false;
        int gap = 999;
        for (int d = 0; d < cfg.n_days; ++d) {
            double p = yesterday ? cfg.trade_persist
                                 : (active ? cfg.trade_prob_active : cfg.trade_resume);
            bool trade_today = trade_rng.bernoulli(p);
            if (trade_today) {
                if (gap >= 5) plan.resume[std::size_t(s)][std::size_t(d)] = 1;
                plan.traded[std::size_t(s)][std::size_t(d)] = 1;
                const Bar& bar = bars[std::size_t(s)][std::size_t(d)];
                int count = 1 + trade_rng.poisson(0.7);
                for (int i = 0; i < count; ++i) {
                    TradeRow row;
                    row.stock = s;
                    row.day = d;
                    row.buy = trade_rng.bernoulli(0.5);
                    row.price = trade_rng.uniform(bar.low, bar.high);
                    row.shares = 100 * (1 + int(trade_rng.index(9)));
                    // Stress days tilt executions toward locally suboptimal
                    // prices relative to the next day's range.
                    double z = std::min(1.0, std::fabs(bar.delta) / cfg.shock_mag_min);
                    if (d + 1 < cfg.n_days && trade_rng.bernoulli(cfg.optimality_bias * z)) {
                        const Bar& next = bars[std::size_t(s)][std::size_t(d + 1)];
                        double ref = row.buy ? next.high : next.low;
                        if (ref < bar.high)
                            row.price = trade_rng.uniform(std::max(bar.low, ref), bar.high);
                    }
                    trade_rows.push_back(row);
                }
                gap = 0;
                yesterday = true;
            } else {
                ++gap;
                yesterday = false;
            }
        }
    }

    // --- messages ----------------------------------------------------------
    Rng msg_rng(derive_seed(cfg.seed, {hash_str("messages")}));
    OutFile messages((fs::path(outdir) / "messages.csv").string());
    messages.stream << "msg_id,timestamp,sender,receiver,tokens,mentions\n";
    long long msg_counter = 0;

    // generator-side communication history for strong-tie choices
    std::vector<std::map<int, int>> history(std::size_t(cfg.n_insiders));

    std::vector<std::pair<int, int>> day_folds; // (insider, partner-or-(-1-outsider))
    for (int d = 0; d < cfg.n_days; ++d) {
        day_folds.clear();
        for (int s = 0; s < cfg.n_stocks; ++s) {
            const Bar& bar = bars[std::size_t(s)][std::size_t(d)];
            double z;
            if (cfg.stress_source == "random") {
                z = msg_rng.bernoulli(cfg.stress_prob) ? 1.0 : 0.0;
            } else {
                z = std::min(1.0, std::fabs(bar.delta) / cfg.shock_mag_min);
            }

            double mult = 1.0 + 0.8 * cfg.kappa * z;
            bool resume = plan.resume[std::size_t(s)][std::size_t(d)] != 0;
            if (resume && msg_rng.bernoulli(cfg.resume_boost_prob)) mult *= cfg.resume_boost;
            else if (!resume && msg_rng.bernoulli(cfg.spurious_boost_prob))
                mult *= cfg.resume_boost;

            int count = msg_rng.poisson(cfg.base_rate * mult);
            const auto& members = team[std::size_t(s)];
            const auto& outs = opool[std::size_t(s)];

            double border_p = cfg.border_frac / (1.0 + cfg.kappa * z);
            double strong_p = std::min(0.85, cfg.strong_frac * (1.0 + cfg.kappa * z));
            double closure_p = std::min(0.85, cfg.closure_frac * (1.0 + cfg.kappa * z));

            std::map<int, std::vector<int>> today_adj; // internal adjacency for closure
            for (int i = 0; i < count; ++i) {
                int sender = members[std::size_t(msg_rng.index(members.size()))];
                int receiver = -1;
                bool border = msg_rng.bernoulli(border_p);
                if (border && !outs.empty()) {
                    int out = outs[std::size_t(msg_rng.index(outs.size()))];
                    receiver = -1 - out; // outsider partners fold on the insider side
                    day_folds.emplace_back(sender, receiver);
                } else {
                    if (msg_rng.bernoulli(closure_p)) {
                        // close a triangle: pick a node with two neighbors today
                        std::vector<int> hubs;
                        for (auto& [node, nbrs] : today_adj)
                            if (nbrs.size() >= 2) hubs.push_back(node);
                        if (!hubs.empty()) {
                            int v = hubs[std::size_t(msg_rng.index(hubs.size()))];
                            auto& nbrs = today_adj[v];
                            std::size_t a = std::size_t(msg_rng.index(nbrs.size()));
                            std::size_t b = std::size_t(msg_rng.index(nbrs.size() - 1));
                            if (b >= a) ++b;
                            sender = nbrs[a];
                            receiver = nbrs[b];
                        }
                    }
                    if (receiver < 0 && msg_rng.bernoulli(strong_p)) {
                        // strongest prior insider partner, weight ~ count^2
                        const auto& partners = history[std::size_t(sender)];
                        double total = 0;
                        for (auto& [partner, cnt] : partners)
                            if (partner >= 0) total += double(cnt) * double(cnt);
                        if (total > 0) {
                            double pick = msg_rng.uniform() * total;
                            for (auto& [partner, cnt] : partners) {
                                if (partner < 0) continue;
                                pick -= double(cnt) * double(cnt);
                                if (pick <= 0) {
                                    receiver = partner;
                                    break;
                                }
                            }
                        }
                    }
                    if (receiver < 0 || receiver == sender) {
                        do {
                            receiver = members[std::size_t(msg_rng.index(members.size()))];
                        } while (receiver == sender && members.size() > 1);
                    }
                    if (receiver == sender) continue; // single-member team, drop
                    today_adj[sender].push_back(receiver);
                    today_adj[receiver].push_back(sender);
                    day_folds.emplace_back(sender, receiver);
                }

                // tokens
                int len = 4 + msg_rng.poisson(6.0);
                len = std::min(len, 20);
                std::string tokens;
                for (int t = 0; t < len; ++t) {
                    const char* word = nullptr;
                    for (std::size_t c = 0; c < cats.size(); ++c) {
                        double sig;
                        if (cfg.stress_source == "random") sig = z;
                        else if (cats[c].coupling > 0)
                            sig = std::min(1.0, std::max(bar.delta, 0.0) / 0.05);
                        else if (cats[c].coupling < 0)
                            sig = std::min(1.0, std::max(-bar.delta, 0.0) / 0.05);
                        else sig = std::min(1.0, std::fabs(bar.delta) / 0.05);
                        double rate = cfg.lexicon_base * cats[c].base_mult *
                                      (1.0 + cfg.lexicon_coupling * sig);
                        if (msg_rng.bernoulli(rate)) {
                            word = cats[c].words[std::size_t(
                                msg_rng.index(cats[c].words.size()))];
                            break;
                        }
                    }
                    if (!word)
                        word = filler_words()[std::size_t(
                            msg_rng.index(filler_words().size()))];
                    if (t) tokens += ' ';
                    tokens += word;
                }

                std::string mentions = stock_name(s);
                if (msg_rng.bernoulli(cfg.cross_mention) && cfg.n_stocks > 1) {
                    int other = int(msg_rng.index(std::uint64_t(cfg.n_stocks)));
                    if (other != s) mentions += " " + stock_name(other);
                }

                ++msg_counter;
                char id[24];
                std::snprintf(id, sizeof id, "m%09lld", msg_counter);
                int tod = 9 * 3600 + int(msg_rng.index(23400));
                std::string sender_id = insider_name(sender);
                std::string receiver_id =
                    receiver >= 0 ? insider_name(receiver) : outsider_name(-1 - receiver);
                write_csv_row(messages.stream,
                              std::vector<std::string>{id, format_timestamp(days[std::size_t(d)], tod),
                                                       sender_id, receiver_id, tokens, mentions});
            }
        }
        // history folds only become visible to strong-tie choices on later days
        for (auto& [a, b] : day_folds) {
            if (b >= 0) {
                history[std::size_t(a)][b] += 1;
                history[std::size_t(b)][a] += 1;
            } else {
                history[std::size_t(a)][b] += 1; // outsider partners tracked on insider side
            }
        }
    }

    // --- files ---------------------------------------------------------------
    {
        OutFile prices((fs::path(outdir) / "prices.csv").string());
        prices.stream << "symbol,day,open,close,max,min\n";
        for (int s = 0; s < cfg.n_stocks; ++s)
            for (int d = 0; d < cfg.n_days; ++d) {
                const Bar& b = bars[std::size_t(s)][std::size_t(d)];
                write_csv_row(prices.stream,
                              std::vector<std::string>{stock_name(s), format_date(days[std::size_t(d)]),
                                                       format_double(b.open), format_double(b.close),
                                                       format_double(b.high), format_double(b.low)});
            }
    }
    {
        OutFile trades((fs::path(outdir) / "trades.csv").string());
        trades.stream << "symbol,day,side,price,shares\n";
        for (const auto& row : trade_rows)
            write_csv_row(trades.stream,
                          std::vector<std::string>{stock_name(row.stock),
                                                   format_date(days[std::size_t(row.day)]),
                                                   row.buy ? "buy" : "sell",
                                                   format_double(row.price),
                                                   std::to_string(row.shares)});
    }
    {
        Rng vix_rng(derive_seed(cfg.seed, {hash_str("vix")}));
        OutFile vix((fs::path(outdir) / "vix.csv").string());
        vix.stream << "day,value\n";
        double level = 20.0;
        for (int d = 0; d < cfg.n_days; ++d) {
            level = std::clamp(level + vix_rng.normal(0.0, 0.6), 12.0, 45.0);
            write_csv_row(vix.stream, std::vector<std::string>{format_date(days[std::size_t(d)]),
                                                               format_double(level)});
        }
    }
    {
        OutFile industry((fs::path(outdir) / "industry.csv").string());
        industry.stream << "symbol,industry\n";
        for (int s = 0; s < cfg.n_stocks; ++s) {
            char ind[8];
            std::snprintf(ind, sizeof ind, "IND%02d", s % 10 + 1);
            write_csv_row(industry.stream, std::vector<std::string>{stock_name(s), ind});
        }
    }
    {
        OutFile directory((fs::path(outdir) / "directory.csv").string());
        directory.stream << "person_id,insider\n";
        for (int i = 0; i < cfg.n_insiders; ++i)
            write_csv_row(directory.stream, std::vector<std::string>{insider_name(i), "1"});
        for (int i = 0; i < cfg.n_outsiders; ++i)
            write_csv_row(directory.stream, std::vector<std::string>{outsider_name(i), "0"});
    }
    {
        OutFile lex((fs::path(outdir) / "lexicon.csv").string());
        lex.stream << "category,pattern\n";
        for (const auto& cat : cats)
            for (const char* pattern : cat.patterns)
                write_csv_row(lex.stream, std::vector<std::string>{cat.name, pattern});
    }
}

// ---------------------------------------------------------------------------
// panel mode: graphs assembled from components with known mean clustering.

struct DialEntry {
    double value;
    int triangles, diamonds, pairs;
    int nodes, edges;
};

const std::vector<DialEntry>& dial_table() {
    static const std::vector<DialEntry> table = [] {
        std::vector<DialEntry> t;
        for (int tri = 0; tri <= 12; ++tri)
            for (int dia = 0; dia <= 10; ++dia)
                for (int pr = 0; pr <= 14; ++pr) {
                    int nodes = 3 * tri + 4 * dia + 2 * pr;
                    if (nodes == 0 || nodes > 56) continue;
                    int edges = 3 * tri + 5 * dia + pr;
                    if (edges == 0) continue;
                    double value = (3.0 * tri + (10.0 / 3.0) * dia) / double(nodes);
                    t.push_back(DialEntry{value, tri, dia, pr, nodes, edges});
                }
        std::sort(t.begin(), t.end(), [](const DialEntry& a, const DialEntry& b) {
            if (a.value != b.value) return a.value < b.value;
            if (a.nodes != b.nodes) return a.nodes < b.nodes;
            return std::tie(a.triangles, a.diamonds, a.pairs) <
                   std::tie(b.triangles, b.diamonds, b.pairs);
        });
        return t;
    }();
    return table;
}

const DialEntry& dial_nearest(double target) {
    const auto& table = dial_table();
    auto it = std::lower_bound(table.begin(), table.end(), target,
                               [](const DialEntry& e, double v) { return e.value < v; });
    if (it == table.end()) return table.back();
    if (it == table.begin()) return table.front();
    const DialEntry& hi = *it;
    const DialEntry& lo = *(it - 1);
    return (target - lo.value) <= (hi.value - target) ? lo : hi;
}

void generate_panel(const SynthConfig& cfg, const std::string& outdir) {
    namespace fs = std::filesystem;
    std::vector<Day> days = build_calendar(cfg.start_date, cfg.n_days);
    if (cfg.n_insiders < 64 || cfg.n_outsiders < 16)
        throw ValidationError("panel mode needs at least 64 insiders and 16 outsiders");

    Rng rng(derive_seed(cfg.seed, {hash_str("panel")}));

    OutFile messages((fs::path(outdir) / "messages.csv").string());
    OutFile prices((fs::path(outdir) / "prices.csv").string());
    OutFile trades((fs::path(outdir) / "trades.csv").string());
    messages.stream << "msg_id,timestamp,sender,receiver,tokens,mentions\n";
    prices.stream << "symbol,day,open,close,max,min\n";
    trades.stream << "symbol,day,side,price,shares\n";

    long long msg_counter = 0;
    auto emit_message = [&](int day_idx, const std::string& from, const std::string& to,
                            const std::string& mention) {
        ++msg_counter;
        char id[24];
        std::snprintf(id, sizeof id, "m%09lld", msg_counter);
        int tod = 10 * 3600 + int(msg_counter % 14400);
        write_csv_row(messages.stream,
                      std::vector<std::string>{id, format_timestamp(days[std::size_t(day_idx)], tod),
                                               from, to, "status update for the desk", mention});
    };

    // Planted coefficients apply when kappa > 0; kappa = 0 removes every
    // network-price coupling so the null fit can be checked.
    double beta_c = cfg.kappa > 0 ? cfg.panel_beta_clustering : 0.0;
    double beta_o = cfg.kappa > 0 ? cfg.panel_beta_border : 0.0;

    for (int s = 0; s < cfg.n_stocks; ++s) {
        double base_c = rng.uniform(0.30, 0.40);
        double base_o = rng.uniform(0.24, 0.34);
        int pool_start = int((std::uint64_t(s) * 37) % std::uint64_t(cfg.n_insiders - 64 + 1));
        int opool_start = cfg.n_outsiders >= 16
                              ? int((std::uint64_t(s) * 13) % std::uint64_t(cfg.n_outsiders - 16 + 1))
                              : 0;

        double open = rng.uniform(50.0, 150.0);
        for (int d = 0; d < cfg.n_days; ++d) {
            double mag = rng.uniform(0.0, 0.10);
            double delta = rng.bernoulli(0.5) ? mag : -mag;
            double close = open * (1.0 + delta);
            double high = std::max(open, close) * 1.01;
            double low = std::min(open, close) * 0.99;
            write_csv_row(prices.stream,
                          std::vector<std::string>{stock_name(s), format_date(days[std::size_t(d)]),
                                                   format_double(open), format_double(close),
                                                   format_double(high), format_double(low)});

            double c_target = std::clamp(base_c + beta_c * mag + rng.normal(0.0, cfg.panel_noise_sigma),
                                         0.02, 0.98);
            double o_target = std::clamp(base_o + beta_o * mag + rng.normal(0.0, cfg.panel_noise_sigma),
                                         0.02, 0.90);

            const DialEntry& dial = dial_nearest(c_target);
            int border = int(std::llround(o_target * double(dial.edges) / (1.0 - o_target)));
            border = std::clamp(border, 1, 60);

            // lay out components over the stock's insider block
            int next_node = 0;
            auto node = [&](int offset) { return insider_name(pool_start + offset); };
            std::string mention = stock_name(s);
            for (int t = 0; t < dial.triangles; ++t) {
                int a = next_node, b = next_node + 1, c = next_node + 2;
                next_node += 3;
                emit_message(d, node(a), node(b), mention);
                emit_message(d, node(b), node(c), mention);
                emit_message(d, node(a), node(c), mention);
            }
            for (int m = 0; m < dial.diamonds; ++m) {
                int a = next_node, b = next_node + 1, c = next_node + 2, e = next_node + 3;
                next_node += 4;
                emit_message(d, node(a), node(b), mention);
                emit_message(d, node(a), node(c), mention);
                emit_message(d, node(a), node(e), mention);
                emit_message(d, node(b), node(c), mention);
                emit_message(d, node(b), node(e), mention);
            }
            for (int p = 0; p < dial.pairs; ++p) {
                int a = next_node, b = next_node + 1;
                next_node += 2;
                emit_message(d, node(a), node(b), mention);
            }
            for (int b = 0; b < border; ++b)
                emit_message(d, node(b % 64), outsider_name(opool_start + b % 16), mention);

            if (d % 5 == 2) {
                double price = rng.uniform(low, high);
                write_csv_row(trades.stream,
                              std::vector<std::string>{stock_name(s),
                                                       format_date(days[std::size_t(d)]),
                                                       rng.bernoulli(0.5) ? "buy" : "sell",
                                                       format_double(price), "100"});
            }
            open = close;
        }
    }

    {
        Rng vix_rng(derive_seed(cfg.seed, {hash_str("vix")}));
        OutFile vix((fs::path(outdir) / "vix.csv").string());
        vix.stream << "day,value\n";
        double level = 20.0;
        for (int d = 0; d < cfg.n_days; ++d) {
            level = std::clamp(level + vix_rng.normal(0.0, 0.6), 12.0, 45.0);
            write_csv_row(vix.stream, std::vector<std::string>{format_date(days[std::size_t(d)]),
                                                               format_double(level)});
        }
    }
    {
        OutFile industry((fs::path(outdir) / "industry.csv").string());
        industry.stream << "symbol,industry\n";
        for (int s = 0; s < cfg.n_stocks; ++s) {
            char ind[8];
            std::snprintf(ind, sizeof ind, "IND%02d", s % 10 + 1);
            write_csv_row(industry.stream, std::vector<std::string>{stock_name(s), ind});
        }
    }
    {
        OutFile directory((fs::path(outdir) / "directory.csv").string());
        directory.stream << "person_id,insider\n";
        for (int i = 0; i < cfg.n_insiders; ++i)
            write_csv_row(directory.stream, std::vector<std::string>{insider_name(i), "1"});
        for (int i = 0; i < cfg.n_outsiders; ++i)
            write_csv_row(directory.stream, std::vector<std::string>{outsider_name(i), "0"});
    }
    {
        OutFile lex((fs::path(outdir) / "lexicon.csv").string());
        lex.stream << "category,pattern\n";
        for (const auto& cat : categories())
            for (const char* pattern : cat.patterns)
                write_csv_row(lex.stream, std::vector<std::string>{cat.name, pattern});
    }
}

} // namespace

SynthConfig SynthConfig::from_toml(const TomlConfig& toml) {
    SynthConfig cfg;
    cfg.mode = toml.get_string("mode", cfg.mode);
    cfg.seed = std::uint64_t(toml.get_int("seed", std::int64_t(cfg.seed)));
    cfg.n_insiders = int(toml.get_int("n_insiders", cfg.n_insiders));
    cfg.n_outsiders = int(toml.get_int("n_outsiders", cfg.n_outsiders));
    cfg.n_stocks = int(toml.get_int("n_stocks", cfg.n_stocks));
    cfg.n_days = int(toml.get_int("n_days", cfg.n_days));
    cfg.start_date = toml.get_string("start_date", cfg.start_date);
    cfg.base_rate = toml.get_double("base_rate", cfg.base_rate);
    cfg.border_frac = toml.get_double("border_frac", cfg.border_frac);
    cfg.strong_frac = toml.get_double("strong_frac", cfg.strong_frac);
    cfg.closure_frac = toml.get_double("closure_frac", cfg.closure_frac);
    cfg.kappa = toml.get_double("kappa", cfg.kappa);
    cfg.cross_mention = toml.get_double("cross_mention", cfg.cross_mention);
    cfg.shock_prob = toml.get_double("shock_prob", cfg.shock_prob);
    cfg.shock_mag_min = toml.get_double("shock_mag_min", cfg.shock_mag_min);
    cfg.shock_mag_max = toml.get_double("shock_mag_max", cfg.shock_mag_max);
    cfg.daily_vol = toml.get_double("daily_vol", cfg.daily_vol);
    cfg.stress_source = toml.get_string("stress_source", cfg.stress_source);
    cfg.stress_prob = toml.get_double("stress_prob", cfg.stress_prob);
    cfg.lexicon_base = toml.get_double("lexicon_base", cfg.lexicon_base);
    cfg.lexicon_coupling = toml.get_double("lexicon_coupling", cfg.lexicon_coupling);
    cfg.active_frac = toml.get_double("active_frac", cfg.active_frac);
    cfg.trade_prob_active = toml.get_double("trade_prob_active", cfg.trade_prob_active);
    cfg.trade_persist = toml.get_double("trade_persist", cfg.trade_persist);
    cfg.trade_resume = toml.get_double("trade_resume", cfg.trade_resume);
    cfg.resume_boost = toml.get_double("resume_boost", cfg.resume_boost);
    cfg.resume_boost_prob = toml.get_double("resume_boost_prob", cfg.resume_boost_prob);
    cfg.spurious_boost_prob = toml.get_double("spurious_boost_prob", cfg.spurious_boost_prob);
    cfg.optimality_bias = toml.get_double("optimality_bias", cfg.optimality_bias);
    cfg.panel_beta_clustering = toml.get_double("panel_beta_clustering", cfg.panel_beta_clustering);
    cfg.panel_beta_border = toml.get_double("panel_beta_border", cfg.panel_beta_border);
    cfg.panel_noise_sigma = toml.get_double("panel_noise_sigma", cfg.panel_noise_sigma);
    cfg.validate();
    return cfg;
}

void SynthConfig::validate() const {
    if (mode != "behavioral" && mode != "panel")
        throw ValidationError("synth mode must be 'behavioral' or 'panel'");
    if (n_insiders < 1) throw ValidationError("synth needs at least one insider");
    if (n_outsiders < 1) throw ValidationError("synth needs at least one outsider");
    if (n_stocks < 1 || n_days < 1)
        throw ValidationError("synth needs at least one stock and one day");
    if (stress_source != "price" && stress_source != "random")
        throw ValidationError("stress_source must be 'price' or 'random'");
    for (double rate : {base_rate, border_frac, strong_frac, closure_frac, kappa, shock_prob,
                        daily_vol, stress_prob, lexicon_base, lexicon_coupling, active_frac,
                        trade_prob_active, trade_persist, trade_resume, resume_boost,
                        optimality_bias, panel_noise_sigma})
        if (rate < 0) throw ValidationError("synth rates must be nonnegative");
    if (shock_mag_min <= 0 || shock_mag_max < shock_mag_min)
        throw ValidationError("shock magnitude range is invalid");
}

void synth_generate(const SynthConfig& config, const std::string& outdir) {
    config.validate();
    std::filesystem::create_directories(outdir);
    if (config.mode == "panel") generate_panel(config, outdir);
    else generate_behavioral(config, outdir);
}

} // namespace netstress
