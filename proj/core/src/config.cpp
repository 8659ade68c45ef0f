#include "wvl/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wvl {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& tok, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ConfigError("config: '" + key + "' is not a number: " + tok);
    return v;
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line, table;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        bool in_string = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_string = !in_string;
            if (line[i] == '#' && !in_string) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed table header at line " + std::to_string(lineno));
            table = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key =
            (table.empty() ? "" : table + ".") + trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty())
            throw ConfigError("config: empty value for '" + key + "'");
        if (val.front() == '[') {
            if (val.back() != ']')
                throw ConfigError("config: malformed array for '" + key + "'");
            std::vector<double> arr;
            std::string item;
            std::istringstream as(val.substr(1, val.size() - 2));
            while (std::getline(as, item, ',')) {
                item = trim(item);
                if (!item.empty()) arr.push_back(parse_number(item, key));
            }
            cfg.arrays_[key] = arr;
        } else if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"')
                throw ConfigError("config: unterminated string for '" + key + "'");
            cfg.values_[key] = val.substr(1, val.size() - 2);
            cfg.is_string_[key] = true;
        } else {
            cfg.values_[key] = val;
            cfg.is_string_[key] = false;
        }
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

double Config::number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
    return parse_number(it->second, key);
}
double Config::number_or(const std::string& key, double fallback) const {
    return values_.count(key) ? number(key) : fallback;
}
long Config::integer(const std::string& key) const {
    const double v = number(key);
    const long n = static_cast<long>(v);
    if (static_cast<double>(n) != v)
        throw ConfigError("config: '" + key + "' must be an integer");
    return n;
}
long Config::integer_or(const std::string& key, long fallback) const {
    return values_.count(key) ? integer(key) : fallback;
}
bool Config::boolean_or(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ConfigError("config: '" + key + "' must be true or false");
}
std::string Config::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
    return it->second;
}
std::string Config::str_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}
std::vector<double> Config::numbers(const std::string& key) const {
    auto it = arrays_.find(key);
    if (it == arrays_.end()) throw ConfigError("config: missing array '" + key + "'");
    return it->second;
}

} // namespace wvl
