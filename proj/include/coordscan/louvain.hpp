#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coordscan/lcn.hpp"

namespace coordscan {

// Weighted modularity Q of a vertex partition of g.
double modularity(const MergedLcn& g, const std::vector<std::vector<std::string>>& communities);

// Two-phase greedy modularity maximization (local moving + aggregation) on a
// weighted undirected graph. Deterministic for a given seed: each level visits
// vertices in one seeded shuffle order that stays fixed across the passes of
// that level. Communities come back with members sorted and the list ordered
// by first member.
std::vector<std::vector<std::string>> louvain(const MergedLcn& g, std::uint64_t seed);

} // namespace coordscan
