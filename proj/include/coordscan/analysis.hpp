#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "coordscan/hcc.hpp"
#include "coordscan/interaction.hpp"
#include "coordscan/linkage.hpp"

namespace coordscan {

// A named set of accounts: a detected HCC, a ground-truth group, or a RANDOM
// baseline group. All validation analytics run over these.
struct AccountGroup {
    std::string id;
    std::vector<std::string> members; // sorted
};

std::vector<AccountGroup> groups_from_hccs(const std::vector<Hcc>& hccs);

struct TextOptions {
    bool normalize = true; // lowercase + collapse whitespace runs
    bool binary = false;   // presence instead of counts
};

// An account's pooled posts as a bag of overlapping 5-character substrings.
struct AccountDocument {
    std::string account_id;
    std::map<std::string, std::int64_t> ngram_counts;
};

AccountDocument build_document(const std::string& account, const CorpusIndex& index,
                               const TextOptions& opts = {});

double cosine_similarity(const AccountDocument& a, const AccountDocument& b);

// Pairwise cosine over group members' documents. Rows/columns ordered by
// (group, account); zero-vector accounts get 0 everywhere, including the
// diagonal.
struct SimilarityMatrix {
    std::vector<std::string> accounts;       // row order
    std::vector<std::string> group_of;       // group id per row
    std::vector<std::vector<double>> values; // square, symmetric
};

SimilarityMatrix similarity_matrix(const std::vector<AccountGroup>& groups,
                                   const CorpusIndex& index, const TextOptions& opts = {});

// Shannon entropy (bits) of the pooled value distribution of each feature the
// group used. Features a group never used are omitted.
struct FeatureEntropy {
    double entropy = 0.0;
    std::size_t distinct_values = 0;
    std::int64_t total_uses = 0;
};

inline constexpr const char* kEntropyFeatures[] = {
    "hashtags", "urls", "domains", "mentioned_accounts", "retweeted_accounts",
};

std::map<std::string, FeatureEntropy> feature_entropy(const AccountGroup& group,
                                                      const CorpusIndex& index);

// Internal retweet / mention ratios; absent when the group produced no
// retweets (or mentions) at all.
struct InternalRatios {
    std::int64_t internal_reposts = 0;
    std::int64_t total_reposts = 0;
    std::int64_t internal_mentions = 0;
    std::int64_t total_mentions = 0;
    std::optional<double> irr;
    std::optional<double> imr;
};

InternalRatios internal_ratios(const AccountGroup& group, const CorpusIndex& index);

enum class ActivityBucket { Daily, Weekly };

// Mean posts per member, per bucket, per group, plus the cross-group mean.
// Buckets are epoch-aligned UTC days or ISO weeks (Monday start) covering the
// full activity range of the listed groups.
struct ActivitySeries {
    std::int64_t bucket_seconds = 86400;
    std::vector<std::int64_t> bucket_start;      // epoch seconds, contiguous
    std::vector<std::vector<double>> group_values; // [group][bucket]
    std::vector<double> mean_values;             // [bucket], mean over groups
};

ActivitySeries temporal_activity(const std::vector<AccountGroup>& groups,
                                 const CorpusIndex& index, ActivityBucket bucket);

// Samples groups of non-HCC accounts matching the HCC size multiset, without
// replacement. Throws DataError when the pool is too small.
std::vector<AccountGroup> random_baseline(const std::vector<std::string>& all_accounts,
                                          const std::vector<AccountGroup>& hccs,
                                          std::uint64_t seed);

// Hashtags used by group members, joined when they appear in the same post.
struct TagCooccurrence {
    std::set<std::string> tags;
    std::map<std::pair<std::string, std::string>, std::int64_t> edges; // post count
};

TagCooccurrence hashtag_cooccurrence(const AccountGroup& group, const CorpusIndex& index);

// HCC members joined to the reason keys (mention targets, conversation roots,
// tags, reposted posts...) that caused their links. Edge weight counts the
// distinct windows in which the member was linked on that key.
struct ReasonGraph {
    std::map<std::string, std::string> account_group;    // member -> group id
    std::set<std::pair<Criterion, std::string>> reasons; // reason vertices
    std::map<std::tuple<std::string, Criterion, std::string>, std::int64_t> edges;
};

ReasonGraph expand_reasons(const std::vector<AccountGroup>& groups,
                           const std::vector<InferredLink>& links);

} // namespace coordscan
