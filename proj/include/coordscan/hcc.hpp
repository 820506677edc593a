#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coordscan/lcn.hpp"

namespace coordscan {

struct WeightedEdge {
    std::string u;
    std::string v;
    double weight = 0.0;
};

// An extracted community: at least two members, the edges that bind them, and
// their mean edge weight.
struct Hcc {
    std::vector<std::string> members;        // sorted
    std::vector<WeightedEdge> internal_edges; // sorted by (u, v)
    double mew = 0.0;
};

struct FsaVParams {
    double theta = 0.3;              // growth threshold, in (0, 1]
    bool final_filter_strict = true; // experiment flag: false relaxes > to >=
};

// Greedy heaviest-edge community growth inside each Louvain community.
// Per community: seed with the heaviest edge, then repeatedly attach the
// heaviest edge adjacent to the candidate; stop when the candidate mean would
// drop below the graph mean or below theta times its previous value. Only
// candidates whose mean strictly exceeds the graph mean survive. Ties on edge
// weight break by canonical (u, v) order.
std::vector<Hcc> fsa_v(const MergedLcn& g, const FsaVParams& params, std::uint64_t seed);

// Per-vertex top-k edge retention with k = max(1, round(ln |V|)); communities
// are the connected components of the union of retained edges.
std::vector<Hcc> knn_extract(const MergedLcn& g);

// Keeps the floor(fraction * |E|) heaviest edges (at least one) and returns
// the connected components of what is left.
std::vector<Hcc> threshold_extract(const MergedLcn& g, double fraction);

} // namespace coordscan
