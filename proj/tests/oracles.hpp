#pragma once

// Test-only oracles and fixture generators. Everything here is deliberately
// written the dumb way (all-pairs scans, compensated sums, textbook formulas)
// and stays independent of the library code paths it checks.

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "coordscan/interaction.hpp"
#include "coordscan/lcn.hpp"
#include "coordscan/linkage.hpp"
#include "coordscan/rng.hpp"

namespace oracle {

using coordscan::Corpus;
using coordscan::Criterion;
using coordscan::Interaction;
using coordscan::InferredLink;
using coordscan::Lcn;
using coordscan::MergedLcn;
using coordscan::Post;
using coordscan::Rng;
using coordscan::WindowId;

// Kahan-compensated mean.
inline double compensated_mean(const std::vector<double>& xs) {
    double sum = 0.0, carry = 0.0;
    for (double x : xs) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(xs.size());
}

using LinkTuple = std::tuple<WindowId, int, std::string, std::string, std::string>;

inline std::vector<LinkTuple> link_tuples(const std::vector<InferredLink>& links) {
    std::vector<LinkTuple> out;
    out.reserve(links.size());
    for (const auto& l : links)
        out.emplace_back(l.window, static_cast<int>(l.criterion), l.u, l.v, l.key);
    std::sort(out.begin(), out.end());
    return out;
}

// All-pairs O(n^2) scan: a link exists per distinct (window, criterion, key,
// account pair) coincidence.
inline std::vector<LinkTuple> brute_force_links(const std::vector<Interaction>& interactions,
                                                const std::set<Criterion>& criteria,
                                                std::int64_t gamma_minutes) {
    std::set<LinkTuple> found;
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        for (std::size_t j = i + 1; j < interactions.size(); ++j) {
            const auto& a = interactions[i];
            const auto& b = interactions[j];
            if (a.kind != b.kind || a.key != b.key || a.actor == b.actor) continue;
            if (a.timestamp / (gamma_minutes * 60) != b.timestamp / (gamma_minutes * 60)) continue;
            for (Criterion c : criteria) {
                if (coordscan::criterion_kind(c) != a.kind) continue;
                const auto& u = std::min(a.actor, b.actor);
                const auto& v = std::max(a.actor, b.actor);
                found.emplace(a.timestamp / (gamma_minutes * 60), static_cast<int>(c), u, v, a.key);
            }
        }
    }
    return {found.begin(), found.end()};
}

// Q = sum over communities of (e_ii - a_i^2).
inline double modularity_oracle(const MergedLcn& g,
                                const std::vector<std::vector<std::string>>& communities) {
    double total = 0.0;
    for (const auto& [_, e] : g.edges) total += e.weight;
    if (total == 0.0) return 0.0;

    std::unordered_map<std::string, int> comm;
    for (int c = 0; c < static_cast<int>(communities.size()); ++c)
        for (const auto& v : communities[c]) comm[v] = c;

    double q = 0.0;
    for (int c = 0; c < static_cast<int>(communities.size()); ++c) {
        double internal = 0.0, degree = 0.0;
        for (const auto& [pair, e] : g.edges) {
            const bool u_in = comm.at(pair.first) == c;
            const bool v_in = comm.at(pair.second) == c;
            if (u_in && v_in) internal += e.weight;
            if (u_in) degree += e.weight;
            if (v_in) degree += e.weight;
        }
        const double a = degree / (2.0 * total);
        q += internal / total - a * a;
    }
    return q;
}

// Small corpus with enough entity collisions to exercise every criterion.
inline std::vector<Post> random_posts(Rng& rng, int n_posts, int n_accounts,
                                      std::int64_t t_span) {
    using coordscan::rand_index;
    using coordscan::rand_range;
    using coordscan::rand_unit;

    const char* tags[] = {"alpha", "beta", "gamma", "delta", "epsi", "zeta"};
    const char* urls[] = {"http://a.example/x", "http://b.example/y", "HTTP://A.Example/x/"};
    const char* roots[] = {"root1", "root2", "root3"};

    std::vector<Post> posts;
    for (int i = 0; i < n_posts; ++i) {
        Post p;
        p.post_id = "p" + std::to_string(i);
        p.account_id = "a" + std::to_string(rand_index(rng, n_accounts));
        p.timestamp = rand_range(rng, 0, t_span);
        p.text = "text " + std::to_string(i);
        if (!posts.empty() && rand_unit(rng) < 0.3) {
            const auto& target = posts[rand_index(rng, posts.size())];
            p.reposted_post_id = target.post_id;
            p.reposted_account_id = target.account_id;
        }
        if (rand_unit(rng) < 0.4) {
            const std::size_t n = 1 + rand_index(rng, 3);
            for (std::size_t k = 0; k < n; ++k) p.hashtags.push_back(tags[rand_index(rng, 6)]);
        }
        if (rand_unit(rng) < 0.3) {
            const std::size_t n = 1 + rand_index(rng, 2);
            for (std::size_t k = 0; k < n; ++k)
                p.mentions.push_back("a" + std::to_string(rand_index(rng, n_accounts)));
        }
        if (rand_unit(rng) < 0.2) p.urls.push_back(urls[rand_index(rng, 3)]);
        if (rand_unit(rng) < 0.25) p.conversation_root_id = roots[rand_index(rng, 3)];
        posts.push_back(std::move(p));
    }
    return posts;
}

// Random merged graph over v0..v{n-1} with integer weights in [1, max_w].
inline MergedLcn random_merged_lcn(Rng& rng, int n, double density, int max_w) {
    using coordscan::rand_index;
    using coordscan::rand_unit;
    MergedLcn g;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(1000 + i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rand_unit(rng) < density) {
                coordscan::MergedEdge e;
                e.weight = static_cast<double>(1 + rand_index(rng, max_w));
                e.breakdown[Criterion::CoRetweet] = static_cast<std::int64_t>(e.weight);
                g.edges[{names[i], names[j]}] = std::move(e);
                g.vertices.insert(names[i]);
                g.vertices.insert(names[j]);
            }
    return g;
}

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("coordscan_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace oracle
