#include "coordscan/interaction.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "coordscan/errors.hpp"

namespace coordscan {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string lower_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Strips a leading '#' and lowercases; input tags may arrive either way.
std::string normalize_tag(std::string tag) {
    if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
    return lower_ascii(std::move(tag));
}

bool read_string(const json& j, const char* field, std::string& out, std::string& err) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        err = std::string("missing field '") + field + "'";
        return false;
    }
    if (!it->is_string()) {
        err = std::string("field '") + field + "' is not a string";
        return false;
    }
    out = it->get<std::string>();
    return true;
}

bool read_opt_string(const json& j, const char* field, std::optional<std::string>& out,
                     std::string& err) {
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) {
        out.reset();
        return true;
    }
    if (!it->is_string()) {
        err = std::string("field '") + field + "' is not a string";
        return false;
    }
    out = it->get<std::string>();
    return true;
}

bool read_string_list(const json& j, const char* field, std::vector<std::string>& out,
                      std::string& err) {
    out.clear();
    auto it = j.find(field);
    if (it == j.end() || it->is_null()) return true; // absent list reads as empty
    if (!it->is_array()) {
        err = std::string("field '") + field + "' is not an array";
        return false;
    }
    for (const auto& v : *it) {
        if (!v.is_string()) {
            err = std::string("field '") + field + "' has a non-string entry";
            return false;
        }
        out.push_back(v.get<std::string>());
    }
    return true;
}

// Validates one record line into a Post. Returns an error message on failure.
std::optional<std::string> parse_record(const std::string& line, Post& p) {
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return "not a JSON object";

    std::string err;
    if (!read_string(j, "post_id", p.post_id, err)) return err;
    if (p.post_id.empty()) return "post_id is empty";
    if (!read_string(j, "account_id", p.account_id, err)) return err;
    if (p.account_id.empty()) return "account_id is empty";

    auto ts = j.find("timestamp");
    if (ts == j.end() || ts->is_null()) return "missing field 'timestamp'";
    if (!ts->is_number_integer() && !ts->is_number_unsigned())
        return "field 'timestamp' is not an integer";
    p.timestamp = ts->get<std::int64_t>();
    if (p.timestamp < 0) return "timestamp is negative";

    if (!read_string(j, "text", p.text, err)) return err;
    if (!read_opt_string(j, "reposted_post_id", p.reposted_post_id, err)) return err;
    if (!read_opt_string(j, "reposted_account_id", p.reposted_account_id, err)) return err;
    if (p.reposted_post_id.has_value() != p.reposted_account_id.has_value())
        return "reposted_post_id and reposted_account_id must appear together";
    if (!read_opt_string(j, "replied_to_post_id", p.replied_to_post_id, err)) return err;
    if (!read_opt_string(j, "conversation_root_id", p.conversation_root_id, err)) return err;
    if (!read_opt_string(j, "liked_post_id", p.liked_post_id, err)) return err;
    if (!read_string_list(j, "mentions", p.mentions, err)) return err;
    if (!read_string_list(j, "hashtags", p.hashtags, err)) return err;
    for (auto& t : p.hashtags) t = normalize_tag(std::move(t));
    if (!read_string_list(j, "urls", p.urls, err)) return err;
    return std::nullopt;
}

} // namespace

const char* kind_name(InteractionKind kind) {
    switch (kind) {
    case InteractionKind::Post: return "post";
    case InteractionKind::Repost: return "repost";
    case InteractionKind::RepostAccount: return "repost_account";
    case InteractionKind::Reply: return "reply";
    case InteractionKind::Mention: return "mention";
    case InteractionKind::Tag: return "tag";
    case InteractionKind::Url: return "url";
    case InteractionKind::Like: return "like";
    }
    return "?";
}

std::vector<Post> parse_posts(std::istream& in, ParseStats& stats) {
    if (!in.good()) throw DataError("input stream is not readable");

    std::vector<Post> posts;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        Post p;
        auto err = parse_record(line, p);
        if (!err && !seen_ids.insert(p.post_id).second)
            err = "duplicate post_id '" + p.post_id + "'";
        if (err) {
            ++stats.malformed;
            stats.warnings.push_back("line " + std::to_string(line_no) + ": " + *err);
            continue;
        }
        ++stats.parsed;
        posts.push_back(std::move(p));
    }
    if (in.bad()) throw DataError("input stream failed while reading");
    return posts;
}

void write_post_record(const Post& p, std::ostream& out) {
    ordered_json j;
    j["post_id"] = p.post_id;
    j["account_id"] = p.account_id;
    j["timestamp"] = p.timestamp;
    j["text"] = p.text;
    if (p.reposted_post_id) j["reposted_post_id"] = *p.reposted_post_id;
    if (p.reposted_account_id) j["reposted_account_id"] = *p.reposted_account_id;
    if (p.replied_to_post_id) j["replied_to_post_id"] = *p.replied_to_post_id;
    if (p.conversation_root_id) j["conversation_root_id"] = *p.conversation_root_id;
    if (p.liked_post_id) j["liked_post_id"] = *p.liked_post_id;
    j["mentions"] = p.mentions;
    j["hashtags"] = p.hashtags;
    j["urls"] = p.urls;
    out << j.dump() << '\n';
}

std::vector<Interaction> extract_interactions(const Post& p) {
    std::vector<Interaction> out;
    auto emit = [&](InteractionKind kind, std::string key) {
        out.push_back(Interaction{kind, p.account_id, p.timestamp, std::move(key), p.post_id});
    };

    emit(InteractionKind::Post, "");
    if (p.reposted_post_id) {
        emit(InteractionKind::Repost, *p.reposted_post_id);
        emit(InteractionKind::RepostAccount, *p.reposted_account_id);
    }
    if (p.conversation_root_id) emit(InteractionKind::Reply, *p.conversation_root_id);

    // std::set gives the per-kind dedup plus lexicographic emission order
    std::set<std::string> mentions(p.mentions.begin(), p.mentions.end());
    for (const auto& m : mentions) emit(InteractionKind::Mention, m);

    std::set<std::string> tags;
    for (const auto& t : p.hashtags) tags.insert(normalize_tag(t));
    tags.erase("");
    for (const auto& t : tags) emit(InteractionKind::Tag, t);

    std::set<std::string> urls;
    for (const auto& u : p.urls)
        if (!u.empty()) urls.insert(normalize_url(u));
    for (const auto& u : urls) emit(InteractionKind::Url, u);

    if (p.liked_post_id) emit(InteractionKind::Like, *p.liked_post_id);
    return out;
}

std::string normalize_url(std::string_view raw, bool* parsed_ok) {
    if (parsed_ok) *parsed_ok = false;
    const auto sep = raw.find("://");
    if (sep == std::string_view::npos || sep == 0) return std::string(raw);

    std::string_view scheme = raw.substr(0, sep);
    for (char c : scheme)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return std::string(raw);

    std::string_view rest = raw.substr(sep + 3);
    const auto auth_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, auth_end);
    std::string_view tail = auth_end == std::string_view::npos ? std::string_view{}
                                                               : rest.substr(auth_end);
    if (authority.empty()) return std::string(raw);

    // fragment goes, query stays
    if (const auto frag = tail.find('#'); frag != std::string_view::npos)
        tail = tail.substr(0, frag);
    std::string_view path = tail;
    std::string_view query;
    if (const auto q = tail.find('?'); q != std::string_view::npos) {
        path = tail.substr(0, q);
        query = tail.substr(q); // includes '?'
    }
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);

    // lowercase only the host part of the authority (after any userinfo)
    const auto at = authority.rfind('@');
    std::string auth_out(authority);
    const std::size_t host_from = at == std::string_view::npos ? 0 : at + 1;
    for (std::size_t i = host_from; i < auth_out.size(); ++i)
        auth_out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(auth_out[i])));

    if (parsed_ok) *parsed_ok = true;
    std::string out = lower_ascii(std::string(scheme));
    out += "://";
    out += auth_out;
    out += path;
    out += query;
    return out;
}

std::string url_host(std::string_view url) {
    bool ok = false;
    std::string norm = normalize_url(url, &ok);
    if (!ok) return "";
    std::string_view v = norm;
    v = v.substr(v.find("://") + 3);
    if (const auto end = v.find_first_of("/?#"); end != std::string_view::npos) v = v.substr(0, end);
    if (const auto at = v.rfind('@'); at != std::string_view::npos) v = v.substr(at + 1);
    if (const auto colon = v.rfind(':'); colon != std::string_view::npos) v = v.substr(0, colon);
    if (v.rfind("www.", 0) == 0) v = v.substr(4);
    return std::string(v);
}

Corpus make_corpus(std::vector<Post> posts, std::map<std::string, std::string> truth) {
    std::sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.post_id < b.post_id;
    });
    return Corpus{std::move(posts), std::move(truth)};
}

CorpusIndex::CorpusIndex(const Corpus& corpus) : corpus_(&corpus) {
    for (const auto& p : corpus.posts) by_account_[p.account_id].push_back(&p);
    accounts_.reserve(by_account_.size());
    for (const auto& [account, _] : by_account_) accounts_.push_back(account);
}

const std::vector<const Post*>& CorpusIndex::posts_of(const std::string& account) const {
    auto it = by_account_.find(account);
    return it == by_account_.end() ? empty_ : it->second;
}

} // namespace coordscan
