#ifndef WVL_CONFIG_HPP
#define WVL_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "wvl/error.hpp"

namespace wvl {

// Minimal key/value + nested-table config reader. Accepted syntax:
//   # comment
//   key = value          value: string "..." | number | true/false | [v, v, ...]
//   [table] / [table.sub]
// Keys are addressed as "table.sub.key".
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0 || arrays_.count(key) > 0; }

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    long integer(const std::string& key) const;
    long integer_or(const std::string& key, long fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;

    // full resolved key/value view (for provenance echoes)
    const std::map<std::string, std::string>& scalars() const { return values_; }
    const std::map<std::string, std::vector<double>>& arrays() const { return arrays_; }

private:
    std::map<std::string, std::string> values_; // raw scalar text (strings unquoted)
    std::map<std::string, std::vector<double>> arrays_;
    std::map<std::string, bool> is_string_;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace wvl

#endif
