#include "coordscan/hcc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "coordscan/errors.hpp"
#include "coordscan/louvain.hpp"

namespace coordscan {

namespace {

bool heavier(const WeightedEdge& a, const WeightedEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
}

Hcc make_hcc(std::vector<WeightedEdge> edges) {
    Hcc h;
    double sum = 0.0;
    for (const auto& e : edges) {
        h.members.push_back(e.u);
        h.members.push_back(e.v);
        sum += e.weight;
    }
    std::sort(h.members.begin(), h.members.end());
    h.members.erase(std::unique(h.members.begin(), h.members.end()), h.members.end());
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    h.internal_edges = std::move(edges);
    h.mew = sum / static_cast<double>(h.internal_edges.size());
    return h;
}

// Connected components of the retained edge set; singleton vertices drop out
// because components are induced by edges.
std::vector<Hcc> components_of(const std::vector<WeightedEdge>& retained) {
    std::map<std::string, int> index;
    for (const auto& e : retained) {
        index.emplace(e.u, static_cast<int>(index.size()));
        index.emplace(e.v, static_cast<int>(index.size()));
    }
    std::vector<int> parent(index.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : retained) {
        const int a = find(index.at(e.u));
        const int b = find(index.at(e.v));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::map<int, std::vector<WeightedEdge>> by_root;
    for (const auto& e : retained) by_root[find(index.at(e.u))].push_back(e);

    std::vector<Hcc> out;
    for (auto& [_, edges] : by_root) out.push_back(make_hcc(std::move(edges)));
    std::sort(out.begin(), out.end(),
              [](const Hcc& a, const Hcc& b) { return a.members.front() < b.members.front(); });
    return out;
}

} // namespace

std::vector<Hcc> fsa_v(const MergedLcn& g, const FsaVParams& params, std::uint64_t seed) {
    if (!(params.theta > 0.0 && params.theta <= 1.0))
        throw ConfigError("theta must be in (0, 1], got " + std::to_string(params.theta));
    if (g.edges.empty()) return {};

    const double g_mean = mean_edge_weight(g);
    const auto communities = louvain(g, seed);

    std::vector<Hcc> result;
    for (const auto& community : communities) {
        std::unordered_set<std::string_view> in_community(community.begin(), community.end());

        std::vector<WeightedEdge> edges;
        for (const auto& [pair, edge] : g.edges)
            if (in_community.count(pair.first) && in_community.count(pair.second))
                edges.push_back(WeightedEdge{pair.first, pair.second, edge.weight});
        if (edges.empty()) continue;
        std::sort(edges.begin(), edges.end(), heavier);

        // grow from the heaviest edge
        std::vector<bool> taken(edges.size(), false);
        std::unordered_set<std::string_view> members;
        std::vector<WeightedEdge> candidate;
        taken[0] = true;
        members.insert(edges[0].u);
        members.insert(edges[0].v);
        candidate.push_back(edges[0]);
        double sum = edges[0].weight;

        while (true) {
            std::size_t pick = edges.size();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (taken[i]) continue;
                if (members.count(edges[i].u) || members.count(edges[i].v)) {
                    pick = i;
                    break;
                }
            }
            if (pick == edges.size()) break;

            const double old_mean = sum / static_cast<double>(candidate.size());
            const double new_mean =
                (sum + edges[pick].weight) / static_cast<double>(candidate.size() + 1);
            if (new_mean < g_mean || new_mean < old_mean * params.theta) break;

            taken[pick] = true;
            members.insert(edges[pick].u);
            members.insert(edges[pick].v);
            candidate.push_back(edges[pick]);
            sum += edges[pick].weight;
        }

        const double mew = sum / static_cast<double>(candidate.size());
        const bool keep = params.final_filter_strict ? mew > g_mean : mew >= g_mean;
        if (keep) result.push_back(make_hcc(std::move(candidate)));
    }
    return result;
}

std::vector<Hcc> knn_extract(const MergedLcn& g) {
    const std::size_t n = g.vertices.size();
    if (n < 2 || g.edges.empty()) return {};
    const std::size_t k = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(std::log(static_cast<double>(n)))));

    std::vector<WeightedEdge> edges;
    edges.reserve(g.edges.size());
    for (const auto& [pair, edge] : g.edges)
        edges.push_back(WeightedEdge{pair.first, pair.second, edge.weight});

    std::unordered_map<std::string_view, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        incident[edges[i].u].push_back(i);
        incident[edges[i].v].push_back(i);
    }

    std::vector<bool> retained(edges.size(), false);
    for (auto& [_, ids] : incident) {
        std::sort(ids.begin(), ids.end(),
                  [&](std::size_t a, std::size_t b) { return heavier(edges[a], edges[b]); });
        for (std::size_t i = 0; i < ids.size() && i < k; ++i) retained[ids[i]] = true;
    }

    std::vector<WeightedEdge> kept;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (retained[i]) kept.push_back(edges[i]);
    return components_of(kept);
}

std::vector<Hcc> threshold_extract(const MergedLcn& g, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ConfigError("threshold fraction must be in (0, 1], got " + std::to_string(fraction));
    if (g.edges.empty()) return {};

    std::vector<WeightedEdge> edges;
    edges.reserve(g.edges.size());
    for (const auto& [pair, edge] : g.edges)
        edges.push_back(WeightedEdge{pair.first, pair.second, edge.weight});
    std::sort(edges.begin(), edges.end(), heavier);

    const std::size_t keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(edges.size()))));
    edges.resize(std::min(keep, edges.size()));
    return components_of(edges);
}

} // namespace coordscan
