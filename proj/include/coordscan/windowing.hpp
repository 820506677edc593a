#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "coordscan/interaction.hpp"

namespace coordscan {

// Tumbling window width. Windows are anchored at the Unix epoch, never at the
// corpus start, so subsets of a corpus land in the same windows.
struct WindowConfig {
    std::int64_t gamma_minutes = 15;
};

// Throws ConfigError unless gamma_minutes > 0.
void validate(const WindowConfig& cfg);

using WindowId = std::int64_t;

// floor(t / (gamma * 60)) for t >= 0.
WindowId window_of(std::int64_t timestamp, const WindowConfig& cfg);

// Buckets interactions into discrete windows. Input order does not matter:
// each bucket is sorted by (timestamp, source_post, kind, key). Empty windows
// do not appear in the map.
std::map<WindowId, std::vector<Interaction>> partition(std::vector<Interaction> interactions,
                                                       const WindowConfig& cfg);

} // namespace coordscan
