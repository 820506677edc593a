#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coordscan/linkage.hpp"

namespace coordscan {

// Canonical typed edge key: u < v, one entry per criterion.
struct EdgeKey {
    std::string u;
    std::string v;
    Criterion criterion;

    friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.criterion < b.criterion;
    }
    friend bool operator==(const EdgeKey& a, const EdgeKey& b) {
        return a.u == b.u && a.v == b.v && a.criterion == b.criterion;
    }
};

// Latent connection network: accounts joined by typed, integer-weighted
// multi-edges. Weights stay integral until a mean is taken.
struct Lcn {
    std::set<std::string> vertices;
    std::map<EdgeKey, std::int64_t> edges;
};

using AccountPair = std::pair<std::string, std::string>;

struct MergedEdge {
    double weight = 0.0;                           // sum over criteria
    std::map<Criterion, std::int64_t> breakdown;   // how the edge collapsed
};

// The multi-edges collapsed to one scalar-weighted edge per account pair.
struct MergedLcn {
    std::set<std::string> vertices;
    std::map<AccountPair, MergedEdge> edges;
};

// Optional per-criterion multipliers applied during the merge. Criteria not
// present in the map weigh 1.0, which reduces the merge to a plain summation.
using CriterionWeights = std::map<Criterion, double>;

// Accumulates the links of one window into a typed graph. All links must
// carry the given window id.
Lcn build_lcn(const std::vector<InferredLink>& links, WindowId window);

// Sums per-window graphs edge-by-edge; the vertex set is the union.
// Order-independent.
Lcn aggregate(const std::vector<Lcn>& lcns);

// Collapses typed multi-edges into scalar weights, keeping the per-criterion
// breakdown for later analysis.
MergedLcn merge_multi_edges(const Lcn& lcn, const CriterionWeights& multipliers = {});

// Arithmetic mean; throws UndefinedMeanError on an empty set.
double mean_edge_weight(const std::vector<double>& weights);
double mean_edge_weight(const MergedLcn& g);

} // namespace coordscan
