#include "coordscan/windowing.hpp"

#include <algorithm>
#include <tuple>

#include "coordscan/errors.hpp"

namespace coordscan {

void validate(const WindowConfig& cfg) {
    if (cfg.gamma_minutes <= 0)
        throw ConfigError("gamma must be a positive number of minutes, got " +
                          std::to_string(cfg.gamma_minutes));
}

WindowId window_of(std::int64_t timestamp, const WindowConfig& cfg) {
    return timestamp / (cfg.gamma_minutes * 60);
}

std::map<WindowId, std::vector<Interaction>> partition(std::vector<Interaction> interactions,
                                                       const WindowConfig& cfg) {
    validate(cfg);
    auto order = [](const Interaction& a, const Interaction& b) {
        return std::tie(a.timestamp, a.source_post, a.kind, a.key) <
               std::tie(b.timestamp, b.source_post, b.kind, b.key);
    };
    std::sort(interactions.begin(), interactions.end(), order);

    std::map<WindowId, std::vector<Interaction>> buckets;
    for (auto& x : interactions) {
        const WindowId w = window_of(x.timestamp, cfg);
        buckets[w].push_back(std::move(x));
    }
    return buckets;
}

} // namespace coordscan
