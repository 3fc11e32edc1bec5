#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nsc {

// Flat key/value configuration with dotted-key nesting:
//   # comment
//   experiment = picard
//   grid.n = 24
//   omega.values = [1, 10, 100, 1000]
// Values: strings, numbers, booleans, [..] arrays of numbers or strings.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::optional<std::string> raw(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<std::string> get_strings(const std::string& key) const;

    // validation-oriented getters: on missing key or parse failure, appends
    // a message to `errors` and returns the fallback
    std::string require_string(const std::string& key, std::vector<std::string>& errors) const;
    double require_double(const std::string& key, std::vector<std::string>& errors) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }
    std::string canonical_text() const; // sorted key = value lines

private:
    std::map<std::string, std::string> kv_;
};

} // namespace nsc
