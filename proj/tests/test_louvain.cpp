#include <doctest.h>

#include "coordscan/louvain.hpp"
#include "coordscan/rng.hpp"
#include "oracles.hpp"

using namespace coordscan;

namespace {

void add_edge(MergedLcn& g, const std::string& u, const std::string& v, double w) {
    MergedEdge e;
    e.weight = w;
    e.breakdown[Criterion::CoRetweet] = static_cast<std::int64_t>(w);
    g.edges[{std::min(u, v), std::max(u, v)}] = std::move(e);
    g.vertices.insert(u);
    g.vertices.insert(v);
}

MergedLcn two_triangles(double heavy, double light) {
    MergedLcn g;
    add_edge(g, "a", "b", heavy);
    add_edge(g, "a", "c", heavy);
    add_edge(g, "b", "c", heavy);
    add_edge(g, "d", "e", light);
    add_edge(g, "d", "f", light);
    add_edge(g, "e", "f", light);
    return g;
}

// 20 vertices in two planted groups; dense heavy edges inside, a couple of
// light bridges between.
MergedLcn planted_partition(Rng& rng) {
    MergedLcn g;
    auto name = [](int i) { return "n" + std::to_string(10 + i); };
    for (int group = 0; group < 2; ++group)
        for (int i = 0; i < 10; ++i)
            for (int j = i + 1; j < 10; ++j)
                if (rand_unit(rng) < 0.85)
                    add_edge(g, name(group * 10 + i), name(group * 10 + j), 5.0);
    add_edge(g, name(0), name(10), 1.0);
    add_edge(g, name(5), name(15), 1.0);
    return g;
}

} // namespace

TEST_CASE("two disconnected triangles split into exactly two communities") {
    const auto communities = louvain(two_triangles(10, 1), 1);
    REQUIRE(communities.size() == 2);
    CHECK(communities[0] == std::vector<std::string>{"a", "b", "c"});
    CHECK(communities[1] == std::vector<std::string>{"d", "e", "f"});
}

TEST_CASE("a clique collapses into one community") {
    MergedLcn g;
    const char* names[] = {"p", "q", "r", "s", "t"};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) add_edge(g, names[i], names[j], 1.0);
    const auto communities = louvain(g, 9);
    REQUIRE(communities.size() == 1);
    CHECK(communities[0].size() == 5);
}

TEST_CASE("planted partition beats singletons and reaches Q >= 0.3") {
    Rng rng(89);
    const MergedLcn g = planted_partition(rng);
    const auto communities = louvain(g, 5);

    std::vector<std::vector<std::string>> singletons;
    for (const auto& v : g.vertices) singletons.push_back({v});

    const double q = oracle::modularity_oracle(g, communities);
    CHECK(q >= oracle::modularity_oracle(g, singletons));
    CHECK(q >= 0.3);

    // the library's own modularity agrees with the oracle formula
    CHECK(modularity(g, communities) == doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("louvain covers every vertex exactly once") {
    Rng rng(97);
    for (int round = 0; round < 10; ++round) {
        const MergedLcn g = oracle::random_merged_lcn(rng, 40, 0.1, 9);
        if (g.vertices.empty()) continue;
        const auto communities = louvain(g, round);
        std::set<std::string> seen;
        for (const auto& c : communities)
            for (const auto& v : c) CHECK(seen.insert(v).second);
        CHECK(seen.size() == g.vertices.size());
    }
}

TEST_CASE("louvain is deterministic under a fixed seed") {
    Rng rng(101);
    const MergedLcn g = oracle::random_merged_lcn(rng, 60, 0.08, 20);
    const auto a = louvain(g, 42);
    const auto b = louvain(g, 42);
    CHECK(a == b);
}

TEST_CASE("louvain of an empty graph is empty") {
    CHECK(louvain(MergedLcn{}, 3).empty());
}
