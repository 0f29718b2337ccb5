#include "netstress/lexicon.hpp"

#include <algorithm>
#include <map>

#include "netstress/error.hpp"

namespace netstress {

std::optional<double> message_pct(const Message& msg, const Lexicon& lex,
                                  std::size_t category) {
    if (msg.tokens.empty()) return std::nullopt;
    long long hits = 0;
    for (const std::string& tok : msg.tokens)
        if (lex.matches(category, tok)) ++hits;
    return double(hits) / double(msg.tokens.size());
}

bool message_contains(const Message& msg, const Lexicon& lex, std::size_t category) {
    for (const std::string& tok : msg.tokens)
        if (lex.matches(category, tok)) return true;
    return false;
}

std::vector<CategoryScore> conformance(const Dataset& ds, const Lexicon& lex) {
    if (lex.size() == 0) throw ValidationError("lexicon is empty");

    struct Accum {
        long long messages = 0;
        std::vector<long long> containing;  // per category
        std::vector<double> pct_sum;        // per category, empty-token msgs skipped
        std::vector<long long> pct_n;
    };

    std::map<std::pair<SymbolIdx, Day>, Accum> per_day;
    std::map<SymbolIdx, Accum> per_stock;

    // Per-message category stats are computed once, then folded into the
    // daily and whole-corpus accumulators of every mentioned stock.
    std::vector<std::optional<double>> pct(lex.size());
    auto fold = [&](Accum& acc) {
        if (acc.containing.empty()) {
            acc.containing.assign(lex.size(), 0);
            acc.pct_sum.assign(lex.size(), 0.0);
            acc.pct_n.assign(lex.size(), 0);
        }
        ++acc.messages;
        for (std::size_t c = 0; c < lex.size(); ++c) {
            if (pct[c] && *pct[c] > 0.0) ++acc.containing[c];
            if (pct[c]) {
                acc.pct_sum[c] += *pct[c];
                ++acc.pct_n[c];
            }
        }
    };

    for (const Message& m : ds.messages) {
        if (m.mentions.empty()) continue;
        for (std::size_t c = 0; c < lex.size(); ++c) pct[c] = message_pct(m, lex, c);
        for (SymbolIdx s : m.mentions) {
            fold(per_day[{s, m.day}]);
            fold(per_stock[s]);
        }
    }

    std::vector<CategoryScore> out;
    out.reserve(per_day.size() * lex.size());
    for (auto& [key, acc] : per_day) {
        const Accum& base = per_stock.at(key.first);
        for (std::size_t c = 0; c < lex.size(); ++c) {
            CategoryScore cs;
            cs.symbol = key.first;
            cs.day = key.second;
            cs.category = c;
            cs.msg_frac = double(acc.containing[c]) / double(acc.messages);
            cs.word_pct = acc.pct_n[c] ? acc.pct_sum[c] / double(acc.pct_n[c]) : 0.0;
            cs.baseline = double(base.containing[c]) / double(base.messages);
            cs.conforms = cs.msg_frac > cs.baseline;
            out.push_back(cs);
        }
    }
    // map iteration is already (symbol, day, category)-ordered
    return out;
}

} // namespace netstress
