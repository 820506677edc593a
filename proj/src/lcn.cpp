#include "coordscan/lcn.hpp"

#include <stdexcept>

#include "coordscan/errors.hpp"

namespace coordscan {

Lcn build_lcn(const std::vector<InferredLink>& links, WindowId window) {
    Lcn g;
    for (const auto& link : links) {
        if (link.window != window)
            throw std::logic_error("build_lcn: link carries window " +
                                   std::to_string(link.window) + ", expected " +
                                   std::to_string(window));
        g.vertices.insert(link.u);
        g.vertices.insert(link.v);
        g.edges[EdgeKey{link.u, link.v, link.criterion}] += link.weight;
    }
    return g;
}

Lcn aggregate(const std::vector<Lcn>& lcns) {
    Lcn out;
    for (const auto& g : lcns) {
        out.vertices.insert(g.vertices.begin(), g.vertices.end());
        for (const auto& [key, w] : g.edges) out.edges[key] += w;
    }
    return out;
}

MergedLcn merge_multi_edges(const Lcn& lcn, const CriterionWeights& multipliers) {
    MergedLcn out;
    out.vertices = lcn.vertices;
    for (const auto& [key, w] : lcn.edges) {
        auto& edge = out.edges[AccountPair{key.u, key.v}];
        auto mult = multipliers.find(key.criterion);
        edge.weight += (mult == multipliers.end() ? 1.0 : mult->second) * static_cast<double>(w);
        edge.breakdown[key.criterion] += w;
    }
    return out;
}

double mean_edge_weight(const std::vector<double>& weights) {
    if (weights.empty()) throw UndefinedMeanError();
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum / static_cast<double>(weights.size());
}

double mean_edge_weight(const MergedLcn& g) {
    if (g.edges.empty()) throw UndefinedMeanError();
    double sum = 0.0;
    for (const auto& [_, edge] : g.edges) sum += edge.weight;
    return sum / static_cast<double>(g.edges.size());
}

} // namespace coordscan
