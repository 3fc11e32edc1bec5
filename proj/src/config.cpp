#include "nsc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsc {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_array(const std::string& inner)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : inner) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    const std::string last = trim(cur);
    if (!last.empty()) out.push_back(last);
    return out;
}

} // namespace

Config Config::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text)
{
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " + std::to_string(lineno));
        cfg.kv_[key] = val;
    }
    return cfg;
}

std::optional<std::string> Config::raw(const std::string& key) const
{
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const
{
    auto v = raw(key);
    return v ? *v : fallback;
}

double Config::get_double(const std::string& key, double fallback) const
{
    auto v = raw(key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const double d = std::stod(*v, &pos);
        if (trim(v->substr(pos)).empty()) return d;
    } catch (...) {
    }
    throw std::runtime_error("config: key '" + key + "' is not a number: " + *v);
}

int Config::get_int(const std::string& key, int fallback) const
{
    const double d = get_double(key, fallback);
    return static_cast<int>(std::llround(d));
}

bool Config::get_bool(const std::string& key, bool fallback) const
{
    auto v = raw(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw std::runtime_error("config: key '" + key + "' is not a boolean: " + *v);
}

std::vector<double> Config::get_doubles(const std::string& key) const
{
    auto v = raw(key);
    std::vector<double> out;
    if (!v) return out;
    std::string s = trim(*v);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    for (const auto& item : split_array(s)) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw std::runtime_error("config: key '" + key + "' has a non-numeric entry: " + item);
        }
    }
    return out;
}

std::vector<std::string> Config::get_strings(const std::string& key) const
{
    auto v = raw(key);
    std::vector<std::string> out;
    if (!v) return out;
    std::string s = trim(*v);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    return split_array(s);
}

std::string Config::require_string(const std::string& key, std::vector<std::string>& errors) const
{
    auto v = raw(key);
    if (!v) {
        errors.push_back("missing required key '" + key + "'");
        return "";
    }
    return *v;
}

double Config::require_double(const std::string& key, std::vector<std::string>& errors) const
{
    auto v = raw(key);
    if (!v) {
        errors.push_back("missing required key '" + key + "'");
        return 0.0;
    }
    try {
        return std::stod(*v);
    } catch (...) {
        errors.push_back("key '" + key + "' is not a number: " + *v);
        return 0.0;
    }
}

std::string Config::canonical_text() const
{
    std::string out;
    for (const auto& kv : kv_) out += kv.first + " = " + kv.second + "\n";
    return out;
}

} // namespace nsc
