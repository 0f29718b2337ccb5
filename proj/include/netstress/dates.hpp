#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace netstress {

// Calendar day as days since 1970-01-01.
using Day = std::int32_t;

Day parse_date(std::string_view text);               // "YYYY-MM-DD"
std::string format_date(Day day);

// "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SS[Z]"; returns (day, seconds of day).
std::pair<Day, int> parse_timestamp(std::string_view text);
std::string format_timestamp(Day day, int tod_seconds);

int weekday_index(Day day);                          // 0 = Monday .. 6 = Sunday
const char* weekday_name(int index);                 // "Mon".."Sun"

} // namespace netstress
