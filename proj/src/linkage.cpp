#include "coordscan/linkage.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <tuple>

#include "coordscan/errors.hpp"

namespace coordscan {

InteractionKind criterion_kind(Criterion c) {
    switch (c) {
    case Criterion::CoRetweet: return InteractionKind::Repost;
    case Criterion::CoRetweetedAccount: return InteractionKind::RepostAccount;
    case Criterion::CoHashtag: return InteractionKind::Tag;
    case Criterion::CoUrl: return InteractionKind::Url;
    case Criterion::CoMention: return InteractionKind::Mention;
    case Criterion::CoConv: return InteractionKind::Reply;
    }
    return InteractionKind::Post;
}

const char* criterion_name(Criterion c) {
    switch (c) {
    case Criterion::CoRetweet: return "co_retweet";
    case Criterion::CoRetweetedAccount: return "co_retweeted_account";
    case Criterion::CoHashtag: return "co_hashtag";
    case Criterion::CoUrl: return "co_url";
    case Criterion::CoMention: return "co_mention";
    case Criterion::CoConv: return "co_conv";
    }
    return "?";
}

std::optional<Criterion> criterion_from_name(std::string_view name) {
    for (Criterion c : kAllCriteria)
        if (name == criterion_name(c)) return c;
    return std::nullopt;
}

std::set<Criterion> parse_criteria(std::string_view list) {
    std::set<Criterion> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string_view::npos) comma = list.size();
        std::string_view item = list.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            auto c = criterion_from_name(item);
            if (!c) throw ConfigError("unknown criterion '" + std::string(item) + "'");
            out.insert(*c);
        }
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError("criteria list is empty");
    return out;
}

std::vector<Interaction> filter_interactions(const std::vector<Interaction>& all,
                                             const std::set<Criterion>& criteria) {
    if (criteria.empty()) throw ConfigError("criteria set is empty");
    bool wanted[8] = {};
    for (Criterion c : criteria) wanted[static_cast<int>(criterion_kind(c))] = true;

    std::vector<Interaction> out;
    for (const auto& x : all)
        if (wanted[static_cast<int>(x.kind)]) out.push_back(x);
    return out;
}

std::vector<InferredLink> infer_links(const std::vector<Interaction>& bucket, Criterion criterion,
                                      WindowId window, const LinkageOptions& opt,
                                      std::vector<std::string>* warnings) {
    const InteractionKind kind = criterion_kind(criterion);

    // hash-join on the key: the quadratic pair cost stays inside each group
    std::map<std::string_view, std::set<std::string_view>> actors_by_key;
    for (const auto& x : bucket) {
        if (x.kind != kind) continue;
        actors_by_key[x.key].insert(x.actor);
    }

    std::vector<InferredLink> links;
    for (const auto& [key, actors] : actors_by_key) {
        if (actors.size() < 2) continue;
        if (opt.max_group_size > 0 && actors.size() > opt.max_group_size) {
            if (warnings)
                warnings->push_back(std::string("window ") + std::to_string(window) + " " +
                                    criterion_name(criterion) + " key '" + std::string(key) +
                                    "': " + std::to_string(actors.size()) +
                                    " actors exceed the group cap of " +
                                    std::to_string(opt.max_group_size) + ", skipped");
            continue;
        }
        for (auto it = actors.begin(); it != actors.end(); ++it)
            for (auto jt = std::next(it); jt != actors.end(); ++jt)
                links.push_back(InferredLink{std::string(*it), std::string(*jt), criterion, window,
                                             std::string(key), 1});
    }
    std::sort(links.begin(), links.end(), [](const InferredLink& a, const InferredLink& b) {
        return std::tie(a.u, a.v, a.key) < std::tie(b.u, b.v, b.key);
    });
    return links;
}

std::vector<InferredLink> find_coordination(const std::map<WindowId, std::vector<Interaction>>& partition,
                                            const std::set<Criterion>& criteria,
                                            const LinkageOptions& opt,
                                            std::vector<std::string>* warnings) {
    if (criteria.empty()) throw ConfigError("criteria set is empty");

    std::vector<const std::pair<const WindowId, std::vector<Interaction>>*> windows;
    windows.reserve(partition.size());
    for (const auto& entry : partition) windows.push_back(&entry);

    std::vector<std::vector<InferredLink>> results(windows.size());
    std::vector<std::vector<std::string>> warn_slots(windows.size());

    auto run_window = [&](std::size_t i) {
        const auto& [window, bucket] = *windows[i];
        for (Criterion c : criteria) {
            auto links = infer_links(bucket, c, window, opt,
                                     warnings ? &warn_slots[i] : nullptr);
            results[i].insert(results[i].end(), std::make_move_iterator(links.begin()),
                              std::make_move_iterator(links.end()));
        }
    };

    unsigned jobs = opt.jobs ? opt.jobs : std::thread::hardware_concurrency();
    if (jobs <= 1 || windows.size() <= 1) {
        for (std::size_t i = 0; i < windows.size(); ++i) run_window(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < windows.size(); i = next.fetch_add(1))
                run_window(i);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
    }

    std::vector<InferredLink> all;
    for (auto& r : results)
        all.insert(all.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    if (warnings)
        for (auto& w : warn_slots)
            warnings->insert(warnings->end(), w.begin(), w.end());

    std::sort(all.begin(), all.end(), [](const InferredLink& a, const InferredLink& b) {
        return std::tie(a.window, a.criterion, a.u, a.v, a.key) <
               std::tie(b.window, b.criterion, b.u, b.v, b.key);
    });
    return all;
}

} // namespace coordscan
