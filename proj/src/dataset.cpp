#include "netstress/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "netstress/csv.hpp"
#include "netstress/error.hpp"

namespace netstress {

namespace {

std::uint64_t bar_key(SymbolIdx s, Day d) {
    return (std::uint64_t(s) << 32) | std::uint32_t(d);
}

struct CsvFile {
    std::string path;
    std::ifstream stream;
    CsvReader reader;
    std::vector<std::string> fields;

    explicit CsvFile(const std::string& p) : path(p), stream(p), reader(stream) {
        if (!stream) throw ValidationError("cannot open input file: " + p);
    }

    bool next() { return reader.next(fields); }

    [[noreturn]] void fail(const std::string& reason) const {
        throw ValidationError(path + ":" + std::to_string(reader.record_line()) + ": " + reason);
    }

    void expect_columns(std::size_t n) {
        if (fields.size() != n)
            fail("expected " + std::to_string(n) + " columns, got " +
                 std::to_string(fields.size()));
    }

    // typed field access with file:line context on failure
    double num(std::size_t i, const char* what) {
        try {
            return parse_double(fields[i], what);
        } catch (const ValidationError& e) {
            fail(e.what());
        }
    }
    std::int64_t integer(std::size_t i, const char* what) {
        try {
            return parse_int(fields[i], what);
        } catch (const ValidationError& e) {
            fail(e.what());
        }
    }
    Day date(std::size_t i) {
        try {
            return parse_date(fields[i]);
        } catch (const ValidationError& e) {
            fail(e.what());
        }
    }

    // Consumes the header row when it matches; data files without headers
    // are rejected so that schema drift fails loudly.
    void require_header(std::span<const std::string> names) {
        if (!next()) fail("empty file, expected header row");
        if (fields.size() != names.size() ||
            !std::equal(fields.begin(), fields.end(), names.begin()))
            fail("unexpected header; expected '" + [&] {
                std::string h;
                for (std::size_t i = 0; i < names.size(); ++i) {
                    if (i) h += ',';
                    h += names[i];
                }
                return h;
            }() + "'");
    }
};

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(char(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

const char* side_name(Side s) { return s == Side::buy ? "buy" : "sell"; }

PersonIdx PersonTable::require(const std::string& id, const char* context) const {
    auto it = index.find(id);
    if (it == index.end())
        throw ValidationError(std::string(context) + ": unknown person '" + id +
                              "' (not in directory)");
    return it->second;
}

SymbolIdx SymbolTable::require(const std::string& sym, const char* context) const {
    auto it = index.find(sym);
    if (it == index.end())
        throw ValidationError(std::string(context) + ": unknown symbol '" + sym + "'");
    return it->second;
}

std::optional<SymbolIdx> SymbolTable::find(const std::string& sym) const {
    auto it = index.find(sym);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Lexicon::category_index(const std::string& name) const {
    auto it = std::lower_bound(categories.begin(), categories.end(), name);
    if (it == categories.end() || *it != name) return std::nullopt;
    return std::size_t(it - categories.begin());
}

bool Lexicon::matches(std::size_t category, const std::string& token) const {
    for (const auto& p : patterns[category]) {
        if (p.prefix) {
            if (token.size() >= p.text.size() &&
                token.compare(0, p.text.size(), p.text) == 0)
                return true;
        } else if (token == p.text) {
            return true;
        }
    }
    return false;
}

int TradingCalendar::index_of(Day day) const {
    auto it = std::lower_bound(days.begin(), days.end(), day);
    if (it == days.end() || *it != day) return -1;
    return int(it - days.begin());
}

DatasetPaths DatasetPaths::in_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    DatasetPaths p;
    p.messages = (fs::path(dir) / "messages.csv").string();
    p.prices = (fs::path(dir) / "prices.csv").string();
    p.trades = (fs::path(dir) / "trades.csv").string();
    p.vix = (fs::path(dir) / "vix.csv").string();
    p.industry = (fs::path(dir) / "industry.csv").string();
    p.directory = (fs::path(dir) / "directory.csv").string();
    return p;
}

const PriceBar* Dataset::bar(SymbolIdx s, Day d) const {
    auto it = bar_index_.find(bar_key(s, d));
    if (it == bar_index_.end()) return nullptr;
    return &bars[it->second];
}

std::optional<double> Dataset::vix_at(Day d) const {
    auto it = std::lower_bound(vix.begin(), vix.end(), d,
                               [](const auto& a, Day b) { return a.first < b; });
    if (it == vix.end() || it->first != d) return std::nullopt;
    return it->second;
}

std::span<const Message> Dataset::day_messages(Day d) const {
    auto it = std::lower_bound(message_days_.begin(), message_days_.end(), d);
    if (it == message_days_.end() || *it != d) return {};
    auto [b, e] = message_ranges_[std::size_t(it - message_days_.begin())];
    return {messages.data() + b, e - b};
}

const std::vector<Day>& Dataset::traded_days(SymbolIdx s) const { return traded_days_[s]; }

bool Dataset::operator==(const Dataset& o) const {
    return people == o.people && symbols == o.symbols && messages == o.messages &&
           bars == o.bars && trades == o.trades && vix == o.vix &&
           industry_of == o.industry_of && calendar == o.calendar;
}

void Dataset::rebuild_indexes() {
    std::sort(messages.begin(), messages.end(), [](const Message& a, const Message& b) {
        return std::tie(a.day, a.tod, a.id) < std::tie(b.day, b.tod, b.id);
    });
    std::sort(bars.begin(), bars.end(), [](const PriceBar& a, const PriceBar& b) {
        return std::tie(a.symbol, a.day) < std::tie(b.symbol, b.day);
    });
    std::sort(trades.begin(), trades.end(), [](const Trade& a, const Trade& b) {
        return std::tie(a.day, a.symbol, a.side, a.price, a.shares) <
               std::tie(b.day, b.symbol, b.side, b.price, b.shares);
    });
    std::sort(vix.begin(), vix.end());

    message_days_.clear();
    message_ranges_.clear();
    for (std::size_t i = 0; i < messages.size();) {
        std::size_t j = i;
        while (j < messages.size() && messages[j].day == messages[i].day) ++j;
        message_days_.push_back(messages[i].day);
        message_ranges_.emplace_back(i, j);
        i = j;
    }

    bar_index_.clear();
    std::set<Day> cal_days;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        bar_index_.emplace(bar_key(bars[i].symbol, bars[i].day), i);
        cal_days.insert(bars[i].day);
    }
    calendar.days.assign(cal_days.begin(), cal_days.end());

    traded_days_.assign(symbols.size(), {});
    for (const Trade& t : trades) traded_days_[t.symbol].push_back(t.day);
    for (auto& v : traded_days_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

namespace {

struct RawMessage {
    std::string id;
    Day day;
    int tod;
    std::string sender, receiver;
    std::vector<std::string> tokens;
    std::vector<std::string> mentions;
    std::string origin;
};

} // namespace

Dataset parse_dataset(const DatasetPaths& paths) {
    Dataset ds;

    { // directory.csv: person_id,insider
        CsvFile f(paths.directory);
        f.require_header(std::vector<std::string>{"person_id", "insider"});
        std::vector<std::pair<std::string, std::uint8_t>> entries;
        while (f.next()) {
            f.expect_columns(2);
            if (f.fields[0].empty()) f.fail("empty person_id");
            if (f.fields[1] != "0" && f.fields[1] != "1") f.fail("insider flag must be 0 or 1");
            entries.emplace_back(f.fields[0], f.fields[1] == "1" ? 1 : 0);
        }
        std::sort(entries.begin(), entries.end());
        for (std::size_t i = 0; i + 1 < entries.size(); ++i)
            if (entries[i].first == entries[i + 1].first)
                throw ValidationError(paths.directory + ": duplicate person '" +
                                      entries[i].first + "'");
        bool any_insider = false;
        for (auto& [id, flag] : entries) {
            ds.people.index.emplace(id, PersonIdx(ds.people.ids.size()));
            ds.people.ids.push_back(id);
            ds.people.insider.push_back(flag);
            any_insider = any_insider || flag;
        }
        if (entries.empty()) throw ValidationError(paths.directory + ": directory is empty");
        if (!any_insider)
            throw ValidationError(paths.directory + ": no insider present in directory");
    }

    struct RawBar {
        std::string symbol;
        Day day;
        double open, close, high, low;
        std::string origin;
    };
    struct RawTrade {
        std::string symbol;
        Day day;
        Side side;
        double price;
        std::int64_t shares;
        std::string origin;
    };

    std::vector<RawBar> raw_bars;
    std::vector<RawTrade> raw_trades;
    std::vector<RawMessage> raw_msgs;
    std::vector<std::pair<std::string, std::string>> raw_industry;
    std::set<std::string> universe;

    { // prices.csv: symbol,day,open,close,max,min
        CsvFile f(paths.prices);
        f.require_header(std::vector<std::string>{"symbol", "day", "open", "close", "max", "min"});
        while (f.next()) {
            f.expect_columns(6);
            RawBar b;
            b.symbol = f.fields[0];
            if (b.symbol.empty()) f.fail("empty symbol");
            b.day = f.date(1);
            b.open = f.num(2, "open");
            b.close = f.num(3, "close");
            b.high = f.num(4, "max");
            b.low = f.num(5, "min");
            if (b.open <= 0) f.fail("price-bar open must be positive");
            if (!(b.low <= std::min(b.open, b.close) && std::max(b.open, b.close) <= b.high))
                f.fail("price-bar ordering violated (min <= open/close <= max required)");
            b.origin = paths.prices + ":" + std::to_string(f.reader.record_line());
            universe.insert(b.symbol);
            raw_bars.push_back(std::move(b));
        }
    }

    { // trades.csv: symbol,day,side,price,shares
        CsvFile f(paths.trades);
        f.require_header(std::vector<std::string>{"symbol", "day", "side", "price", "shares"});
        while (f.next()) {
            f.expect_columns(5);
            RawTrade t;
            t.symbol = f.fields[0];
            if (t.symbol.empty()) f.fail("empty symbol");
            t.day = f.date(1);
            if (f.fields[2] == "buy") t.side = Side::buy;
            else if (f.fields[2] == "sell") t.side = Side::sell;
            else f.fail("side must be buy or sell");
            t.price = f.num(3, "price");
            t.shares = f.integer(4, "shares");
            if (t.price <= 0) f.fail("trade price must be positive");
            if (t.shares <= 0) f.fail("trade shares must be positive");
            t.origin = paths.trades + ":" + std::to_string(f.reader.record_line());
            universe.insert(t.symbol);
            raw_trades.push_back(std::move(t));
        }
    }

    { // industry.csv: symbol,industry
        CsvFile f(paths.industry);
        f.require_header(std::vector<std::string>{"symbol", "industry"});
        while (f.next()) {
            f.expect_columns(2);
            if (f.fields[0].empty()) f.fail("empty symbol");
            if (f.fields[1].empty()) f.fail("empty industry label");
            universe.insert(f.fields[0]);
            raw_industry.emplace_back(f.fields[0], f.fields[1]);
        }
    }

    { // messages.csv: msg_id,timestamp,sender,receiver,tokens,mentions
        CsvFile f(paths.messages);
        f.require_header(std::vector<std::string>{"msg_id", "timestamp", "sender", "receiver",
                                                  "tokens", "mentions"});
        while (f.next()) {
            f.expect_columns(6);
            RawMessage m;
            m.id = f.fields[0];
            if (m.id.empty()) f.fail("empty msg_id");
            try {
                auto [day, tod] = parse_timestamp(f.fields[1]);
                m.day = day;
                m.tod = tod;
            } catch (const ValidationError& e) {
                f.fail(e.what());
            }
            m.sender = f.fields[2];
            m.receiver = f.fields[3];
            m.tokens = tokenize(f.fields[4]);
            m.mentions = split_ws(f.fields[5]);
            std::sort(m.mentions.begin(), m.mentions.end());
            m.mentions.erase(std::unique(m.mentions.begin(), m.mentions.end()),
                             m.mentions.end());
            m.origin = paths.messages + ":" + std::to_string(f.reader.record_line());
            for (const auto& sym : m.mentions) universe.insert(sym);
            raw_msgs.push_back(std::move(m));
        }
    }

    for (const auto& sym : universe) {
        ds.symbols.index.emplace(sym, SymbolIdx(ds.symbols.symbols.size()));
        ds.symbols.symbols.push_back(sym);
    }
    ds.industry_of.assign(ds.symbols.size(), "");
    for (auto& [sym, ind] : raw_industry) {
        SymbolIdx s = ds.symbols.require(sym, paths.industry.c_str());
        if (!ds.industry_of[s].empty() && ds.industry_of[s] != ind)
            throw ValidationError(paths.industry + ": conflicting industry for '" + sym + "'");
        ds.industry_of[s] = ind;
    }

    std::set<std::pair<SymbolIdx, Day>> seen_bars;
    for (auto& b : raw_bars) {
        PriceBar bar{ds.symbols.require(b.symbol, b.origin.c_str()), b.day,
                     b.open, b.close, b.high, b.low};
        if (!seen_bars.emplace(bar.symbol, bar.day).second)
            throw ValidationError(b.origin + ": duplicate price bar for " + b.symbol + " on " +
                                  format_date(b.day));
        ds.bars.push_back(bar);
    }

    std::set<std::string> seen_ids;
    std::vector<std::string> offenders;
    for (auto& m : raw_msgs) {
        Message msg;
        msg.id = m.id;
        msg.day = m.day;
        msg.tod = m.tod;
        msg.sender = ds.people.require(m.sender, m.origin.c_str());
        msg.receiver = ds.people.require(m.receiver, m.origin.c_str());
        if (!seen_ids.insert(m.id).second)
            throw ValidationError(m.origin + ": duplicate msg_id '" + m.id + "'");
        if (msg.sender == msg.receiver)
            throw ValidationError(m.origin + ": sender equals receiver ('" + m.sender + "')");
        if (!ds.people.is_insider(msg.sender) && !ds.people.is_insider(msg.receiver))
            offenders.push_back(m.origin + ": msg '" + m.id + "' (" + m.sender + " -> " +
                                m.receiver + ")");
        msg.tokens = std::move(m.tokens);
        for (const auto& sym : m.mentions)
            msg.mentions.push_back(ds.symbols.require(sym, m.origin.c_str()));
        ds.messages.push_back(std::move(msg));
    }
    if (!offenders.empty()) {
        std::string err = "no insider endpoint on " + std::to_string(offenders.size()) +
                          " message(s):";
        for (std::size_t i = 0; i < offenders.size() && i < 10; ++i) err += "\n  " + offenders[i];
        if (offenders.size() > 10) err += "\n  ...";
        throw ValidationError(err);
    }

    for (auto& t : raw_trades)
        ds.trades.push_back(Trade{ds.symbols.require(t.symbol, t.origin.c_str()), t.day, t.side,
                                  t.price, t.shares});

    { // vix.csv: day,value
        CsvFile f(paths.vix);
        f.require_header(std::vector<std::string>{"day", "value"});
        std::set<Day> seen;
        while (f.next()) {
            f.expect_columns(2);
            Day d = f.date(0);
            double v = f.num(1, "value");
            if (v < 0) f.fail("volatility index value must be nonnegative");
            if (!seen.insert(d).second) f.fail("duplicate volatility entry for " + f.fields[0]);
            ds.vix.emplace_back(d, v);
        }
    }

    ds.rebuild_indexes();

    if (ds.calendar.days.empty())
        throw ValidationError(paths.prices + ": no price bars; trading calendar is empty");

    for (const Trade& t : ds.trades)
        if (!ds.bar(t.symbol, t.day))
            throw ValidationError(paths.trades + ": trade of '" +
                                  ds.symbols.symbols[t.symbol] + "' on " + format_date(t.day) +
                                  " has no matching price bar");

    for (Day d : ds.calendar.days)
        if (!ds.vix_at(d))
            throw ValidationError(paths.vix + ": missing volatility value for trading day " +
                                  format_date(d));

    // Warnings: mentioned symbols that never carry a price bar.
    {
        std::vector<bool> has_bar(ds.symbols.size(), false);
        for (const PriceBar& b : ds.bars) has_bar[b.symbol] = true;
        std::set<SymbolIdx> flagged;
        for (const Message& m : ds.messages)
            for (SymbolIdx s : m.mentions)
                if (!has_bar[s]) flagged.insert(s);
        for (SymbolIdx s : flagged)
            ds.report.warnings.push_back("mentioned symbol '" + ds.symbols.symbols[s] +
                                         "' has no price bars");
        std::set<SymbolIdx> unmapped;
        for (const PriceBar& b : ds.bars)
            if (ds.industry_of[b.symbol].empty()) unmapped.insert(b.symbol);
        for (SymbolIdx s : unmapped)
            ds.report.warnings.push_back("symbol '" + ds.symbols.symbols[s] +
                                         "' has price bars but no industry mapping");
    }

    return ds;
}

Lexicon parse_lexicon(const std::string& path) {
    CsvFile f(path);
    f.require_header(std::vector<std::string>{"category", "pattern"});
    std::map<std::string, std::set<std::pair<std::string, bool>>> cats;
    while (f.next()) {
        f.expect_columns(2);
        const std::string& cat = f.fields[0];
        std::string pat = f.fields[1];
        if (cat.empty()) f.fail("empty category name");
        if (pat.empty()) f.fail("empty pattern");
        bool prefix = pat.back() == '*';
        if (prefix) pat.pop_back();
        if (pat.empty()) f.fail("pattern is a bare wildcard");
        for (char c : pat)
            if (std::isupper(static_cast<unsigned char>(c)))
                f.fail("pattern '" + f.fields[1] + "' must be lowercase");
        cats[cat].emplace(pat, prefix);
    }
    if (cats.empty()) throw ValidationError(path + ": lexicon has no entries");
    Lexicon lex;
    for (auto& [cat, pats] : cats) {
        lex.categories.push_back(cat);
        std::vector<LexiconPattern> v;
        for (auto& [text, prefix] : pats) v.push_back(LexiconPattern{text, prefix});
        lex.patterns.push_back(std::move(v));
    }
    return lex;
}

void write_dataset(const Dataset& ds, const DatasetPaths& paths) {
    auto open = [](const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw RuntimeFailure("cannot open output file: " + path);
        return out;
    };
    {
        auto out = open(paths.directory);
        out << "person_id,insider\n";
        for (std::size_t i = 0; i < ds.people.ids.size(); ++i)
            write_csv_row(out, std::vector<std::string>{ds.people.ids[i],
                                                        ds.people.insider[i] ? "1" : "0"});
    }
    {
        auto out = open(paths.prices);
        out << "symbol,day,open,close,max,min\n";
        for (const PriceBar& b : ds.bars)
            write_csv_row(out, std::vector<std::string>{
                                   ds.symbols.symbols[b.symbol], format_date(b.day),
                                   format_double(b.open), format_double(b.close),
                                   format_double(b.high), format_double(b.low)});
    }
    {
        auto out = open(paths.trades);
        out << "symbol,day,side,price,shares\n";
        for (const Trade& t : ds.trades)
            write_csv_row(out, std::vector<std::string>{
                                   ds.symbols.symbols[t.symbol], format_date(t.day),
                                   side_name(t.side), format_double(t.price),
                                   std::to_string(t.shares)});
    }
    {
        auto out = open(paths.vix);
        out << "day,value\n";
        for (auto& [d, v] : ds.vix)
            write_csv_row(out, std::vector<std::string>{format_date(d), format_double(v)});
    }
    {
        auto out = open(paths.industry);
        out << "symbol,industry\n";
        for (std::size_t s = 0; s < ds.symbols.size(); ++s)
            if (!ds.industry_of[s].empty())
                write_csv_row(out, std::vector<std::string>{ds.symbols.symbols[s],
                                                            ds.industry_of[s]});
    }
    {
        auto out = open(paths.messages);
        out << "msg_id,timestamp,sender,receiver,tokens,mentions\n";
        for (const Message& m : ds.messages) {
            std::string tokens;
            for (std::size_t i = 0; i < m.tokens.size(); ++i) {
                if (i) tokens += ' ';
                tokens += m.tokens[i];
            }
            std::string mentions;
            for (std::size_t i = 0; i < m.mentions.size(); ++i) {
                if (i) mentions += ' ';
                mentions += ds.symbols.symbols[m.mentions[i]];
            }
            write_csv_row(out, std::vector<std::string>{
                                   m.id, format_timestamp(m.day, m.tod),
                                   ds.people.ids[m.sender], ds.people.ids[m.receiver], tokens,
                                   mentions});
        }
    }
}

} // namespace netstress
