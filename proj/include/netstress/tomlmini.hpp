#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace netstress {

// Flat TOML subset: comments, [section] headers and scalar `key = value`
// pairs (strings, numbers, booleans). Keys inside a section are exposed as
// "section.key". Arrays and nested tables are rejected.
class TomlConfig {
public:
    static TomlConfig parse_file(const std::string& path);
    static TomlConfig parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

} // namespace netstress
