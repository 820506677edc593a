#include "coordscan/kvconfig.hpp"

#include <istream>

#include "coordscan/errors.hpp"

namespace coordscan {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

const std::vector<std::string> kEmpty;

} // namespace

KvConfig KvConfig::parse(std::istream& in) {
    KvConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(std::string_view(stripped).substr(0, eq));
        std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        cfg.values_[key].push_back(value);
        cfg.entries_.emplace_back(std::move(key), std::move(value));
    }
    return cfg;
}

bool KvConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> KvConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second.back();
}

const std::vector<std::string>& KvConfig::all(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? kEmpty : it->second;
}

std::int64_t KvConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const std::int64_t out = std::stoll(*v, &used);
        if (used != v->size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': '" + *v + "' is not an integer");
    }
}

double KvConfig::get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const double out = std::stod(*v, &used);
        if (used != v->size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': '" + *v + "' is not a number");
    }
}

bool KvConfig::get_bool(const std::string& key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw ConfigError("config key '" + key + "': '" + *v + "' is not a boolean");
}

} // namespace coordscan
