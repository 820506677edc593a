#include "coordscan/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string_view>
#include <unordered_set>

#include "coordscan/errors.hpp"
#include "coordscan/rng.hpp"

namespace coordscan {

namespace {

constexpr std::size_t kNgramLength = 5;

std::string normalize_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = true; // swallows leading whitespace
    for (char raw : text) {
        const unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

std::int64_t day_of(std::int64_t ts) {
    return ts / 86400;
}

// Monday of the ISO week containing the timestamp, as a day index.
// Day 0 (1970-01-01) was a Thursday, i.e. 3 days after its Monday.
std::int64_t iso_week_start_day(std::int64_t ts) {
    const std::int64_t d = day_of(ts);
    return d - (d + 3) % 7;
}

} // namespace

std::vector<AccountGroup> groups_from_hccs(const std::vector<Hcc>& hccs) {
    std::vector<AccountGroup> out;
    out.reserve(hccs.size());
    char id[16];
    for (std::size_t i = 0; i < hccs.size(); ++i) {
        std::snprintf(id, sizeof(id), "h%04zu", i);
        out.push_back(AccountGroup{id, hccs[i].members});
    }
    return out;
}

AccountDocument build_document(const std::string& account, const CorpusIndex& index,
                               const TextOptions& opts) {
    AccountDocument doc;
    doc.account_id = account;

    std::string text;
    for (const Post* p : index.posts_of(account)) {
        if (!text.empty()) text.push_back(' ');
        text += opts.normalize ? normalize_text(p->text) : p->text;
    }
    if (text.size() < kNgramLength) return doc;
    for (std::size_t i = 0; i + kNgramLength <= text.size(); ++i) {
        auto& count = doc.ngram_counts[text.substr(i, kNgramLength)];
        count = opts.binary ? 1 : count + 1;
    }
    return doc;
}

double cosine_similarity(const AccountDocument& a, const AccountDocument& b) {
    const auto& small = a.ngram_counts.size() <= b.ngram_counts.size() ? a : b;
    const auto& large = a.ngram_counts.size() <= b.ngram_counts.size() ? b : a;

    double dot = 0.0;
    for (const auto& [gram, count] : small.ngram_counts) {
        auto it = large.ngram_counts.find(gram);
        if (it != large.ngram_counts.end())
            dot += static_cast<double>(count) * static_cast<double>(it->second);
    }
    double na = 0.0, nb = 0.0;
    for (const auto& [_, c] : a.ngram_counts) na += static_cast<double>(c) * c;
    for (const auto& [_, c] : b.ngram_counts) nb += static_cast<double>(c) * c;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

SimilarityMatrix similarity_matrix(const std::vector<AccountGroup>& groups,
                                   const CorpusIndex& index, const TextOptions& opts) {
    SimilarityMatrix m;
    std::vector<AccountDocument> docs;
    for (const auto& g : groups) {
        std::vector<std::string> members = g.members;
        std::sort(members.begin(), members.end());
        for (const auto& account : members) {
            m.accounts.push_back(account);
            m.group_of.push_back(g.id);
            docs.push_back(build_document(account, index, opts));
        }
    }

    const std::size_t n = docs.size();
    m.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        m.values[i][i] = docs[i].ngram_counts.empty() ? 0.0 : 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = cosine_similarity(docs[i], docs[j]);
            m.values[i][j] = s;
            m.values[j][i] = s;
        }
    }
    return m;
}

std::map<std::string, FeatureEntropy> feature_entropy(const AccountGroup& group,
                                                      const CorpusIndex& index) {
    std::map<std::string, std::map<std::string, std::int64_t>> uses;
    for (const auto& member : group.members) {
        for (const Post* p : index.posts_of(member)) {
            for (const auto& tag : p->hashtags)
                if (!tag.empty()) ++uses["hashtags"][tag];
            for (const auto& raw : p->urls) {
                if (raw.empty()) continue;
                ++uses["urls"][normalize_url(raw)];
                const std::string host = url_host(raw);
                if (!host.empty()) ++uses["domains"][host];
            }
            for (const auto& target : p->mentions) ++uses["mentioned_accounts"][target];
            if (p->reposted_account_id) ++uses["retweeted_accounts"][*p->reposted_account_id];
        }
    }

    std::map<std::string, FeatureEntropy> out;
    for (const auto& [feature, counts] : uses) {
        FeatureEntropy fe;
        fe.distinct_values = counts.size();
        for (const auto& [_, c] : counts) fe.total_uses += c;
        for (const auto& [_, c] : counts) {
            const double p = static_cast<double>(c) / static_cast<double>(fe.total_uses);
            fe.entropy -= p * std::log2(p);
        }
        if (fe.entropy < 0.0) fe.entropy = 0.0; // -0.0 from the degenerate case
        out[feature] = fe;
    }
    return out;
}

InternalRatios internal_ratios(const AccountGroup& group, const CorpusIndex& index) {
    std::unordered_set<std::string_view> members(group.members.begin(), group.members.end());
    InternalRatios r;
    for (const auto& member : group.members) {
        for (const Post* p : index.posts_of(member)) {
            if (p->reposted_account_id) {
                ++r.total_reposts;
                if (members.count(*p->reposted_account_id)) ++r.internal_reposts;
            }
            for (const auto& target : p->mentions) {
                ++r.total_mentions;
                if (members.count(target)) ++r.internal_mentions;
            }
        }
    }
    if (r.total_reposts > 0)
        r.irr = static_cast<double>(r.internal_reposts) / static_cast<double>(r.total_reposts);
    if (r.total_mentions > 0)
        r.imr = static_cast<double>(r.internal_mentions) / static_cast<double>(r.total_mentions);
    return r;
}

ActivitySeries temporal_activity(const std::vector<AccountGroup>& groups,
                                 const CorpusIndex& index, ActivityBucket bucket) {
    ActivitySeries series;
    series.bucket_seconds = bucket == ActivityBucket::Daily ? 86400 : 7 * 86400;
    auto start_of = [&](std::int64_t ts) {
        return bucket == ActivityBucket::Daily ? day_of(ts) * 86400
                                               : iso_week_start_day(ts) * 86400;
    };

    std::int64_t lo = 0, hi = 0;
    bool any = false;
    for (const auto& g : groups)
        for (const auto& member : g.members)
            for (const Post* p : index.posts_of(member)) {
                const std::int64_t s = start_of(p->timestamp);
                if (!any) {
                    lo = hi = s;
                    any = true;
                } else {
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
            }
    if (!any || groups.empty()) return series;

    const std::size_t buckets =
        static_cast<std::size_t>((hi - lo) / series.bucket_seconds) + 1;
    for (std::size_t b = 0; b < buckets; ++b)
        series.bucket_start.push_back(lo + static_cast<std::int64_t>(b) * series.bucket_seconds);

    series.group_values.assign(groups.size(), std::vector<double>(buckets, 0.0));
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (groups[gi].members.empty()) continue;
        for (const auto& member : groups[gi].members)
            for (const Post* p : index.posts_of(member)) {
                const std::size_t b =
                    static_cast<std::size_t>((start_of(p->timestamp) - lo) / series.bucket_seconds);
                series.group_values[gi][b] += 1.0;
            }
        for (auto& v : series.group_values[gi])
            v /= static_cast<double>(groups[gi].members.size());
    }

    series.mean_values.assign(buckets, 0.0);
    for (std::size_t b = 0; b < buckets; ++b) {
        for (std::size_t gi = 0; gi < groups.size(); ++gi)
            series.mean_values[b] += series.group_values[gi][b];
        series.mean_values[b] /= static_cast<double>(groups.size());
    }
    return series;
}

std::vector<AccountGroup> random_baseline(const std::vector<std::string>& all_accounts,
                                          const std::vector<AccountGroup>& hccs,
                                          std::uint64_t seed) {
    std::unordered_set<std::string_view> taken;
    std::size_t needed = 0;
    for (const auto& g : hccs) {
        needed += g.members.size();
        taken.insert(g.members.begin(), g.members.end());
    }

    std::vector<std::string> pool;
    for (const auto& account : all_accounts)
        if (!taken.count(account)) pool.push_back(account);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    if (pool.size() < needed)
        throw DataError("random baseline needs " + std::to_string(needed) +
                        " non-HCC accounts but only " + std::to_string(pool.size()) +
                        " are available (short by " + std::to_string(needed - pool.size()) + ")");

    Rng rng(seed);
    shuffle(pool, rng);

    std::vector<AccountGroup> out;
    std::size_t next = 0;
    char id[16];
    for (std::size_t i = 0; i < hccs.size(); ++i) {
        std::snprintf(id, sizeof(id), "r%04zu", i);
        AccountGroup g{id, {}};
        g.members.assign(pool.begin() + next, pool.begin() + next + hccs[i].members.size());
        std::sort(g.members.begin(), g.members.end());
        next += hccs[i].members.size();
        out.push_back(std::move(g));
    }
    return out;
}

TagCooccurrence hashtag_cooccurrence(const AccountGroup& group, const CorpusIndex& index) {
    TagCooccurrence out;
    for (const auto& member : group.members) {
        for (const Post* p : index.posts_of(member)) {
            std::set<std::string> tags(p->hashtags.begin(), p->hashtags.end());
            tags.erase("");
            out.tags.insert(tags.begin(), tags.end());
            for (auto it = tags.begin(); it != tags.end(); ++it)
                for (auto jt = std::next(it); jt != tags.end(); ++jt)
                    ++out.edges[{*it, *jt}];
        }
    }
    return out;
}

ReasonGraph expand_reasons(const std::vector<AccountGroup>& groups,
                           const std::vector<InferredLink>& links) {
    ReasonGraph out;
    for (const auto& g : groups)
        for (const auto& member : g.members)
            out.account_group.emplace(member, g.id);

    // weight = distinct windows in which the member was linked on the key
    std::set<std::tuple<std::string, Criterion, std::string, WindowId>> seen;
    for (const auto& link : links) {
        for (const std::string* endpoint : {&link.u, &link.v}) {
            if (!out.account_group.count(*endpoint)) continue;
            out.reasons.emplace(link.criterion, link.key);
            if (seen.emplace(*endpoint, link.criterion, link.key, link.window).second)
                ++out.edges[{*endpoint, link.criterion, link.key}];
        }
    }
    return out;
}

} // namespace coordscan
