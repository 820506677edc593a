#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coordscan {

// Flat "key = value" config text: one pair per line, '#' starts a comment,
// repeated keys allowed (order preserved per key).
class KvConfig {
public:
    static KvConfig parse(std::istream& in);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const; // last value wins
    const std::vector<std::string>& all(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    // Typed readers; throw ConfigError naming the key on bad values.
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

private:
    std::map<std::string, std::vector<std::string>> values_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace coordscan
