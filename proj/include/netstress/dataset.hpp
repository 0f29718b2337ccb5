#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "netstress/dates.hpp"

namespace netstress {

using PersonIdx = std::uint32_t;
using SymbolIdx = std::uint32_t;

struct PersonTable {
    std::vector<std::string> ids;     // sorted lexicographically
    std::vector<std::uint8_t> insider;
    std::unordered_map<std::string, PersonIdx> index;

    PersonIdx require(const std::string& id, const char* context) const;
    bool is_insider(PersonIdx p) const { return insider[p] != 0; }
    bool operator==(const PersonTable& o) const { return ids == o.ids && insider == o.insider; }
};

struct SymbolTable {
    std::vector<std::string> symbols; // sorted lexicographically
    std::unordered_map<std::string, SymbolIdx> index;

    SymbolIdx require(const std::string& sym, const char* context) const;
    std::optional<SymbolIdx> find(const std::string& sym) const;
    std::size_t size() const { return symbols.size(); }
    bool operator==(const SymbolTable& o) const { return symbols == o.symbols; }
};

struct Message {
    std::string id;
    Day day = 0;
    int tod = 0; // seconds of day
    PersonIdx sender = 0;
    PersonIdx receiver = 0;
    std::vector<std::string> tokens;      // lowercase, canonical tokenization
    std::vector<SymbolIdx> mentions;      // sorted unique

    bool operator==(const Message&) const = default;
};

enum class Side : std::uint8_t { buy, sell };

struct PriceBar {
    SymbolIdx symbol = 0;
    Day day = 0;
    double open = 0, close = 0, high = 0, low = 0;

    bool operator==(const PriceBar&) const = default;
};

struct Trade {
    SymbolIdx symbol = 0;
    Day day = 0;
    Side side = Side::buy;
    double price = 0;
    std::int64_t shares = 0;

    bool operator==(const Trade&) const = default;
};

struct LexiconPattern {
    std::string text;   // lowercase stem or literal
    bool prefix = false; // true when the source pattern carried a trailing '*'

    bool operator==(const LexiconPattern&) const = default;
};

struct Lexicon {
    std::vector<std::string> categories;                    // sorted
    std::vector<std::vector<LexiconPattern>> patterns;      // per category, sorted

    std::size_t size() const { return categories.size(); }
    std::optional<std::size_t> category_index(const std::string& name) const;
    bool matches(std::size_t category, const std::string& token) const;
};

struct TradingCalendar {
    std::vector<Day> days; // sorted unique days carrying at least one price bar

    // Index of `day`, or -1 when the day is not a trading day.
    int index_of(Day day) const;
    int size() const { return int(days.size()); }
    Day at(int idx) const { return days[std::size_t(idx)]; }
    bool operator==(const TradingCalendar&) const = default;
};

struct ValidationReport {
    std::vector<std::string> warnings;
};

struct DatasetPaths {
    std::string messages, prices, trades, vix, industry, directory;

    static DatasetPaths in_dir(const std::string& dir);
};

struct Dataset {
    PersonTable people;
    SymbolTable symbols;
    std::vector<Message> messages;   // sorted by (day, tod, id)
    std::vector<PriceBar> bars;      // sorted by (symbol, day)
    std::vector<Trade> trades;       // sorted by (day, symbol, side, price, shares)
    std::vector<std::pair<Day, double>> vix;  // sorted by day
    std::vector<std::string> industry_of;     // per symbol, "" when unmapped
    TradingCalendar calendar;
    ValidationReport report;

    const PriceBar* bar(SymbolIdx s, Day d) const;
    std::optional<double> vix_at(Day d) const;

    // Messages grouped by day, ascending; spans index into `messages`.
    std::span<const Message> day_messages(Day d) const;
    const std::vector<Day>& message_days() const { return message_days_; }

    // Days on which `s` traded (sorted unique), for gap/consecutiveness scans.
    const std::vector<Day>& traded_days(SymbolIdx s) const;

    bool operator==(const Dataset& o) const;

    void rebuild_indexes(); // called by the parser; also after manual edits in tests

private:
    std::vector<Day> message_days_;
    std::vector<std::pair<std::size_t, std::size_t>> message_ranges_;
    std::unordered_map<std::uint64_t, std::size_t> bar_index_;
    std::vector<std::vector<Day>> traded_days_;
};

Dataset parse_dataset(const DatasetPaths& paths);
Lexicon parse_lexicon(const std::string& path);

// Canonical re-serialization (sorted rows, shortest-round-trip numbers).
void write_dataset(const Dataset& ds, const DatasetPaths& paths);

// Canonical tokenization: split on non-alphanumeric, lowercase, drop empties.
std::vector<std::string> tokenize(std::string_view text);

const char* side_name(Side s);

} // namespace netstress
