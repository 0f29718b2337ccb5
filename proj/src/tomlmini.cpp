#include "netstress/tomlmini.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "netstress/csv.hpp"
#include "netstress/error.hpp"

namespace netstress {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

TomlConfig TomlConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

TomlConfig TomlConfig::parse_string(const std::string& text, const std::string& origin) {
    TomlConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        auto where = [&] { return origin + ":" + std::to_string(lineno); };
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ValidationError(where() + ": malformed section header");
            section = trim(body.substr(1, body.size() - 2));
            if (section.empty()) throw ValidationError(where() + ": empty section name");
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ValidationError(where() + ": expected key = value");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ValidationError(where() + ": empty key");
        // strip trailing comment on unquoted values
        if (!value.empty() && value.front() != '"') {
            size_t hash = value.find('#');
            if (hash != std::string::npos) value = trim(value.substr(0, hash));
        }
        if (value.empty()) throw ValidationError(where() + ": empty value");
        if (value.front() == '[' || value.front() == '{')
            throw ValidationError(where() + ": arrays/tables not supported in this config");
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ValidationError(where() + ": unterminated string");
            value = value.substr(1, value.size() - 2);
        }
        std::string full = section.empty() ? key : section + "." + key;
        if (!cfg.values_.emplace(full, value).second)
            throw ValidationError(where() + ": duplicate key '" + full + "'");
    }
    return cfg;
}

std::string TomlConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double TomlConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return parse_double(it->second, key.c_str());
}

std::int64_t TomlConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return parse_int(it->second, key.c_str());
}

bool TomlConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ValidationError("config key '" + key + "' expects true/false, got '" + it->second + "'");
}

} // namespace netstress
