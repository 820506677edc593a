#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coordscan/interaction.hpp"
#include "coordscan/windowing.hpp"

namespace coordscan {

// A coincidence rule. Each criterion watches exactly one interaction kind and
// keys on that kind's coincidence key.
enum class Criterion {
    CoRetweet,          // same reposted post
    CoRetweetedAccount, // same reposted account
    CoHashtag,          // same tag
    CoUrl,              // same normalized URL
    CoMention,          // same mentioned account
    CoConv,             // same conversation root
};

inline constexpr Criterion kAllCriteria[] = {
    Criterion::CoRetweet,  Criterion::CoRetweetedAccount, Criterion::CoHashtag,
    Criterion::CoUrl,      Criterion::CoMention,          Criterion::CoConv,
};

InteractionKind criterion_kind(Criterion c);
const char* criterion_name(Criterion c);
std::optional<Criterion> criterion_from_name(std::string_view name);

// Parses a comma-separated criteria list ("co_retweet,co_hashtag").
// Unknown names and empty lists throw ConfigError.
std::set<Criterion> parse_criteria(std::string_view list);

// Evidence that u and v coincided on one criterion key inside one window.
// u < v always (undirected canonical form). The key is kept so later analyses
// can show *why* two accounts were linked.
struct InferredLink {
    std::string u;
    std::string v;
    Criterion criterion = Criterion::CoRetweet;
    WindowId window = 0;
    std::string key;
    std::int64_t weight = 1;
};

struct LinkageOptions {
    // Key groups with more distinct actors than this are dropped with a
    // warning: a globally trending key yields quadratic pairs of pure
    // coincidence. 0 disables the cap.
    std::size_t max_group_size = 1000;
    unsigned jobs = 1; // window-level parallelism in find_coordination
};

// Keeps the interactions whose kind matches one of the active criteria,
// in input order. An empty criteria set is a configuration error.
std::vector<Interaction> filter_interactions(const std::vector<Interaction>& all,
                                             const std::set<Criterion>& criteria);

// Pairs up distinct actors that share a key within one window bucket.
// An account appearing n times on the same key counts once; a pair sharing
// n distinct keys yields n links. Output sorted by (u, v, key).
std::vector<InferredLink> infer_links(const std::vector<Interaction>& bucket, Criterion criterion,
                                      WindowId window, const LinkageOptions& opt = {},
                                      std::vector<std::string>* warnings = nullptr);

// Runs infer_links over every (window, criterion) pair of the partition and
// concatenates the results, sorted by (window, criterion, u, v, key).
std::vector<InferredLink> find_coordination(const std::map<WindowId, std::vector<Interaction>>& partition,
                                            const std::set<Criterion>& criteria,
                                            const LinkageOptions& opt = {},
                                            std::vector<std::string>* warnings = nullptr);

} // namespace coordscan
