#include "coordscan/louvain.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "coordscan/rng.hpp"

namespace coordscan {

namespace {

struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj; // no self entries
    std::vector<double> self_loop;                        // appears at aggregated levels
    std::vector<double> degree;                           // incident weight + 2 * self
    double two_m = 0.0;

    explicit LevelGraph(int n) : adj(n), self_loop(n, 0.0), degree(n, 0.0) {}
    int size() const { return static_cast<int>(adj.size()); }
};

LevelGraph from_merged(const MergedLcn& g, std::vector<std::string>& names) {
    names.assign(g.vertices.begin(), g.vertices.end());
    std::unordered_map<std::string, int> index;
    index.reserve(names.size());
    for (int i = 0; i < static_cast<int>(names.size()); ++i) index[names[i]] = i;

    LevelGraph lg(static_cast<int>(names.size()));
    for (const auto& [pair, edge] : g.edges) {
        const int u = index.at(pair.first);
        const int v = index.at(pair.second);
        lg.adj[u].emplace_back(v, edge.weight);
        lg.adj[v].emplace_back(u, edge.weight);
        lg.degree[u] += edge.weight;
        lg.degree[v] += edge.weight;
        lg.two_m += 2.0 * edge.weight;
    }
    return lg;
}

// One level of local moving. Visits nodes in the given order, repeatedly,
// until a full pass moves nothing. Returns whether anything moved at all.
bool local_moving(const LevelGraph& g, std::vector<int>& community, const std::vector<int>& order) {
    const int n = g.size();
    std::vector<double> comm_tot(n, 0.0);
    for (int i = 0; i < n; ++i) comm_tot[community[i]] += g.degree[i];

    bool any_move = false;
    bool moved = true;
    for (int pass = 0; moved && pass < 10000; ++pass) {
        moved = false;
        for (const int i : order) {
            const int ci = community[i];
            std::map<int, double> w_to; // ordered: deterministic candidate scan
            for (const auto& [j, w] : g.adj[i]) w_to[community[j]] += w;

            comm_tot[ci] -= g.degree[i];
            const auto it_ci = w_to.find(ci);
            double best_gain = (it_ci == w_to.end() ? 0.0 : it_ci->second) -
                               g.degree[i] * comm_tot[ci] / g.two_m;
            int best = ci;
            for (const auto& [c, w] : w_to) {
                if (c == ci) continue;
                const double gain = w - g.degree[i] * comm_tot[c] / g.two_m;
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
            }
            comm_tot[best] += g.degree[i];
            if (best != ci) {
                community[i] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Relabels communities as 0..k-1 in order of their smallest member index.
int renumber(std::vector<int>& community) {
    std::vector<int> label(community.size(), -1);
    int next = 0;
    for (int& c : community) {
        if (label[c] < 0) label[c] = next++;
        c = label[c];
    }
    return next;
}

LevelGraph aggregate_level(const LevelGraph& g, const std::vector<int>& community, int ncomm) {
    LevelGraph out(ncomm);
    std::map<std::pair<int, int>, double> between;
    for (int i = 0; i < g.size(); ++i) {
        out.self_loop[community[i]] += g.self_loop[i];
        for (const auto& [j, w] : g.adj[i]) {
            if (j < i) continue; // each undirected edge once
            const int cu = community[i];
            const int cv = community[j];
            if (cu == cv)
                out.self_loop[cu] += w;
            else
                between[{std::min(cu, cv), std::max(cu, cv)}] += w;
        }
    }
    for (const auto& [pair, w] : between) {
        out.adj[pair.first].emplace_back(pair.second, w);
        out.adj[pair.second].emplace_back(pair.first, w);
        out.degree[pair.first] += w;
        out.degree[pair.second] += w;
    }
    for (int c = 0; c < ncomm; ++c) out.degree[c] += 2.0 * out.self_loop[c];
    out.two_m = g.two_m;
    return out;
}

} // namespace

double modularity(const MergedLcn& g, const std::vector<std::vector<std::string>>& communities) {
    double total = 0.0;
    for (const auto& [_, edge] : g.edges) total += edge.weight;
    if (total <= 0.0) return 0.0;

    std::unordered_map<std::string, int> comm_of;
    for (int c = 0; c < static_cast<int>(communities.size()); ++c)
        for (const auto& v : communities[c]) comm_of[v] = c;

    std::vector<double> internal(communities.size(), 0.0);
    std::vector<double> degree_sum(communities.size(), 0.0);
    for (const auto& [pair, edge] : g.edges) {
        const int cu = comm_of.at(pair.first);
        const int cv = comm_of.at(pair.second);
        if (cu == cv) internal[cu] += edge.weight;
        degree_sum[cu] += edge.weight;
        degree_sum[cv] += edge.weight;
    }

    double q = 0.0;
    for (std::size_t c = 0; c < communities.size(); ++c) {
        const double a = degree_sum[c] / (2.0 * total);
        q += internal[c] / total - a * a;
    }
    return q;
}

std::vector<std::vector<std::string>> louvain(const MergedLcn& g, std::uint64_t seed) {
    std::vector<std::string> names;
    LevelGraph lg = from_merged(g, names);
    const int n = lg.size();
    if (n == 0) return {};

    std::vector<int> node_final(n);
    std::iota(node_final.begin(), node_final.end(), 0);

    if (lg.two_m > 0.0) {
        Rng rng(seed);
        while (true) {
            std::vector<int> order(lg.size());
            std::iota(order.begin(), order.end(), 0);
            shuffle(order, rng);

            std::vector<int> community(lg.size());
            std::iota(community.begin(), community.end(), 0);
            const bool improved = local_moving(lg, community, order);
            const int ncomm = renumber(community);
            if (!improved) break;
            for (int& c : node_final) c = community[c];
            if (ncomm == lg.size()) break;
            lg = aggregate_level(lg, community, ncomm);
        }
    }

    std::map<int, std::vector<std::string>> grouped;
    for (int i = 0; i < n; ++i) grouped[node_final[i]].push_back(names[i]);

    std::vector<std::vector<std::string>> out;
    out.reserve(grouped.size());
    for (auto& [_, members] : grouped) out.push_back(std::move(members)); // members already sorted
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

} // namespace coordscan
