#pragma once

#include <optional>
#include <vector>

#include "netstress/dataset.hpp"

namespace netstress {

// Share of a message's tokens matching the category; null for empty messages.
std::optional<double> message_pct(const Message& msg, const Lexicon& lex, std::size_t category);

bool message_contains(const Message& msg, const Lexicon& lex, std::size_t category);

struct CategoryScore {
    SymbolIdx symbol = 0;
    Day day = 0;
    std::size_t category = 0;
    double msg_frac = 0;  // share of s-mentioning messages with >= 1 category word
    double word_pct = 0;  // mean per-message token share for the category
    double baseline = 0;  // msg_frac over the full corpus for this (s, category)
    bool conforms = false; // msg_frac > baseline, strict

    bool operator==(const CategoryScore&) const = default;
};

// One row per (symbol, day, category) with at least one s-mentioning message
// on that day. Baselines are computed over all days of the corpus.
std::vector<CategoryScore> conformance(const Dataset& ds, const Lexicon& lex);

} // namespace netstress
