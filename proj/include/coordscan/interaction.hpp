#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coordscan {

// One raw post record, as ingested from the newline-delimited input format.
// Hashtags are stored lowercased and without the leading '#'; everything else
// is kept verbatim.
struct Post {
    std::string post_id;
    std::string account_id;
    std::int64_t timestamp = 0; // seconds since Unix epoch, UTC
    std::string text;
    std::optional<std::string> reposted_post_id;
    std::optional<std::string> reposted_account_id;
    std::optional<std::string> replied_to_post_id;
    std::optional<std::string> conversation_root_id;
    std::optional<std::string> liked_post_id; // accepted but drives no criterion
    std::vector<std::string> mentions;
    std::vector<std::string> hashtags;
    std::vector<std::string> urls;
};

// Common interaction primitives shared across platforms. RepostAccount is the
// account-boost variant of Repost: same event, keyed by the reposted account
// instead of the reposted post.
enum class InteractionKind {
    Post,
    Repost,
    RepostAccount,
    Reply,
    Mention,
    Tag,
    Url,
    Like,
};

const char* kind_name(InteractionKind kind);

// One primitive action: who did what, when, and on which coincidence key.
struct Interaction {
    InteractionKind kind = InteractionKind::Post;
    std::string actor;
    std::int64_t timestamp = 0;
    std::string key; // empty only for Post
    std::string source_post;
};

struct ParseStats {
    std::size_t parsed = 0;
    std::size_t malformed = 0;
    std::vector<std::string> warnings; // one entry per malformed line
};

// Parses newline-delimited post records. Malformed lines are counted and
// skipped; an unreadable stream throws DataError.
std::vector<Post> parse_posts(std::istream& in, ParseStats& stats);

// Writes one post back out in the ingestion record format (one line).
void write_post_record(const Post& p, std::ostream& out);

// Expands a post into its interaction primitives, in fixed order:
// Post, Repost, RepostAccount, Reply, Mention*, Tag*, Url*, Like.
// Entity lists are deduplicated and emitted in lexicographic key order.
std::vector<Interaction> extract_interactions(const Post& p);

// Lowercases scheme and host, strips the fragment and any trailing slashes,
// keeps the query. Idempotent. Unparseable input comes back verbatim with
// *parsed_ok set to false.
std::string normalize_url(std::string_view raw, bool* parsed_ok = nullptr);

// Host of a normalized URL with a leading "www." dropped; "" if unparseable.
std::string url_host(std::string_view url);

// An ordered post stream plus optional ground-truth labels (synthetic mode).
struct Corpus {
    std::vector<Post> posts;                    // sorted by (timestamp, post_id)
    std::map<std::string, std::string> truth;   // account_id -> group_id
};

// Sorts posts by (timestamp, post_id) and wraps them as a corpus.
Corpus make_corpus(std::vector<Post> posts,
                   std::map<std::string, std::string> truth = {});

// Per-account view over a corpus; analyses share one of these.
class CorpusIndex {
public:
    explicit CorpusIndex(const Corpus& corpus);

    const Corpus& corpus() const { return *corpus_; }
    // Posts of one account in corpus order; empty if the account is unknown.
    const std::vector<const Post*>& posts_of(const std::string& account) const;
    // All account ids seen in the corpus, sorted.
    const std::vector<std::string>& accounts() const { return accounts_; }

private:
    const Corpus* corpus_;
    std::map<std::string, std::vector<const Post*>> by_account_;
    std::vector<std::string> accounts_;
    std::vector<const Post*> empty_;
};

} // namespace coordscan
