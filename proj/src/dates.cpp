#include "netstress/dates.hpp"

#include <charconv>
#include <chrono>

#include "netstress/error.hpp"

namespace netstress {

namespace {

int parse_int_field(std::string_view text, size_t pos, size_t len, int lo, int hi,
                    const char* what) {
    if (pos + len > text.size())
        throw ValidationError("bad date/time '" + std::string(text) + "': truncated " + what);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (ec != std::errc() || ptr != text.data() + pos + len || value < lo || value > hi)
        throw ValidationError("bad date/time '" + std::string(text) + "': invalid " + what);
    return value;
}

} // namespace

Day parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw ValidationError("bad date '" + std::string(text) + "': expected YYYY-MM-DD");
    int y = parse_int_field(text, 0, 4, 1583, 9999, "year");
    int m = parse_int_field(text, 5, 2, 1, 12, "month");
    int d = parse_int_field(text, 8, 2, 1, 31, "day");
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok())
        throw ValidationError("bad date '" + std::string(text) + "': no such calendar day");
    auto serial = std::chrono::sys_days(ymd).time_since_epoch().count();
    return static_cast<Day>(serial);
}

std::string format_date(Day day) {
    std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::pair<Day, int> parse_timestamp(std::string_view text) {
    if (text.size() == 10) return {parse_date(text), 0};
    std::string_view body = text;
    if (!body.empty() && (body.back() == 'Z' || body.back() == 'z')) body.remove_suffix(1);
    if (body.size() != 19 || (body[10] != 'T' && body[10] != ' ') || body[13] != ':' ||
        body[16] != ':')
        throw ValidationError("bad timestamp '" + std::string(text) +
                              "': expected YYYY-MM-DDTHH:MM:SS");
    Day day = parse_date(body.substr(0, 10));
    int h = parse_int_field(body, 11, 2, 0, 23, "hour");
    int mi = parse_int_field(body, 14, 2, 0, 59, "minute");
    int s = parse_int_field(body, 17, 2, 0, 59, "second");
    return {day, h * 3600 + mi * 60 + s};
}

std::string format_timestamp(Day day, int tod_seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02d", format_date(day).c_str(),
                  tod_seconds / 3600, (tod_seconds / 60) % 60, tod_seconds % 60);
    return buf;
}

int weekday_index(Day day) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    int w = int((day + 3) % 7);
    return w < 0 ? w + 7 : w;
}

const char* weekday_name(int index) {
    static const char* names[7] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    return names[index];
}

} // namespace netstress
