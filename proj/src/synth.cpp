#include "coordscan/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "coordscan/errors.hpp"
#include "coordscan/kvconfig.hpp"
#include "coordscan/rng.hpp"

namespace coordscan {

namespace {

// Background vocabulary constants. Zipf keeps a realistic noise floor of
// coincidental co-use without swamping the implants.
constexpr std::size_t kVocabSize = 500;
constexpr std::size_t kUrlVocabSize = 50;
constexpr double kZipfExponent = 1.2;
constexpr double kRepostFraction = 0.25;
// steeper than the vocabularies: reposts chase the day's top posts, which is
// what produces the weight-1 coincidence floor real corpora have
constexpr double kTrendZipfExponent = 1.5;
constexpr double kHashtagChance = 0.5;
constexpr double kMentionChance = 0.15;
constexpr double kUrlChance = 0.1;

std::string fmt(const char* pattern, long long a, long long b = 0) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

// Word shapes come from a fixed stream so every scenario shares one lexicon.
std::vector<std::string> make_words(std::size_t n, std::uint64_t fixed_seed) {
    Rng rng(fixed_seed);
    std::vector<std::string> words;
    words.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = 4 + rand_index(rng, 6);
        std::string w;
        for (std::size_t k = 0; k < len; ++k)
            w.push_back(static_cast<char>('a' + rand_index(rng, 26)));
        words.push_back(std::move(w));
    }
    return words;
}

struct Generator {
    const ScenarioConfig& cfg;
    Rng rng;
    std::vector<Post> posts;
    std::map<std::string, std::string> truth;
    long long background_seq = 0;
    long long source_seq = 0;
    long long implant_seq = 0;

    std::vector<std::string> words = make_words(kVocabSize, 0x5eedbeef);
    std::vector<std::string> tags = make_words(kVocabSize, 0x7a65f00d);
    std::vector<std::string> url_paths = make_words(kUrlVocabSize, 0x11235813);
    ZipfSampler zipf{kVocabSize, kZipfExponent};
    ZipfSampler url_zipf{kUrlVocabSize, kZipfExponent};

    explicit Generator(const ScenarioConfig& c) : cfg(c), rng(c.seed) {}

    // topic_rotation shifts the Zipf head so each implant group has its own
    // dominant vocabulary slice (campaigns talk about their own topic)
    std::string random_text(std::size_t n_words, std::size_t topic_rotation = 0) {
        std::string text;
        for (std::size_t i = 0; i < n_words; ++i) {
            if (!text.empty()) text.push_back(' ');
            text += words[(zipf.sample(rng) + topic_rotation) % kVocabSize];
        }
        return text;
    }

    void generate_background() {
        const std::int64_t duration = static_cast<std::int64_t>(cfg.duration_days) * 86400;
        struct Slot {
            std::int64_t ts;
            int account;
        };
        std::vector<Slot> slots;
        for (int a = 0; a < cfg.background_accounts; ++a) {
            const auto n = rand_poisson(rng, cfg.background_rate * cfg.duration_days);
            for (std::uint64_t i = 0; i < n; ++i)
                slots.push_back(Slot{rand_range(rng, 0, duration), a});
        }
        std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
            if (a.ts != b.ts) return a.ts < b.ts;
            return a.account < b.account;
        });

        // Walked in time order so reposts can only target earlier originals
        // from the same day, rank-biased toward the day's oldest ("trending")
        // ones. Implant posts are never candidates.
        std::int64_t today = -1;
        std::vector<std::size_t> todays_originals; // indexes into posts
        for (const Slot& slot : slots) {
            const std::int64_t day = slot.ts / 86400;
            if (day != today) {
                today = day;
                todays_originals.clear();
            }
            Post p;
            p.post_id = fmt("b%07lld", background_seq++);
            p.account_id = fmt("u%05lld", slot.account);
            p.timestamp = slot.ts;

            const bool repost = !todays_originals.empty() && rand_unit(rng) < kRepostFraction;
            if (repost) {
                const std::size_t rank =
                    rand_zipf(rng, todays_originals.size(), kTrendZipfExponent);
                const Post& target = posts[todays_originals[rank]];
                p.text = target.text;
                p.reposted_post_id = target.post_id;
                p.reposted_account_id = target.account_id;
            } else {
                p.text = random_text(6 + rand_index(rng, 10));
                if (rand_unit(rng) < kHashtagChance) {
                    const std::size_t n_tags = 1 + rand_index(rng, 3);
                    for (std::size_t i = 0; i < n_tags; ++i)
                        p.hashtags.push_back(tags[zipf.sample(rng)]);
                }
                if (rand_unit(rng) < kMentionChance) {
                    const std::size_t n_mentions = 1 + rand_index(rng, 2);
                    for (std::size_t i = 0; i < n_mentions; ++i)
                        p.mentions.push_back(
                            fmt("u%05lld", rand_index(rng, cfg.background_accounts)));
                }
                if (rand_unit(rng) < kUrlChance)
                    p.urls.push_back("http://news.example/" + url_paths[url_zipf.sample(rng)]);
                todays_originals.push_back(posts.size());
            }
            posts.push_back(std::move(p));
        }
    }

    // Picks an episode start so that start + spread stays inside one window
    // (or anywhere in range when straddling is requested).
    std::int64_t episode_start(std::int64_t spread) {
        const std::int64_t duration = static_cast<std::int64_t>(cfg.duration_days) * 86400;
        if (cfg.straddle) return rand_range(rng, 0, duration - spread - 1);
        const std::int64_t ws = static_cast<std::int64_t>(cfg.window_minutes) * 60;
        const std::int64_t window = static_cast<std::int64_t>(rand_index(
            rng, static_cast<std::uint64_t>(duration / ws)));
        const std::int64_t offset = static_cast<std::int64_t>(rand_index(
            rng, static_cast<std::uint64_t>(ws - spread)));
        return window * ws + offset;
    }

    Post implant_post(std::string account, std::int64_t ts) {
        Post p;
        p.post_id = fmt("i%06lld", implant_seq++);
        p.account_id = std::move(account);
        p.timestamp = ts;
        return p;
    }

    Post source_post(std::string account, std::int64_t ts, std::string text) {
        Post p;
        p.post_id = fmt("s%05lld", source_seq++);
        p.account_id = std::move(account);
        p.timestamp = ts;
        p.text = std::move(text);
        return p;
    }

    void generate_implant(std::size_t index, const ImplantSpec& spec) {
        const std::string label = fmt("g%02lld", static_cast<long long>(index));
        std::vector<std::string> members;
        for (int m = 0; m < spec.group_size; ++m) {
            members.push_back(fmt("g%02lldm%02lld", static_cast<long long>(index), m));
            truth[members.back()] = label;
        }
        const std::int64_t spread = spec.within_window_seconds;
        const std::size_t topic = (index + 1) * 101 % kVocabSize;

        for (int e = 0; e < spec.events; ++e) {
            const std::int64_t t0 = episode_start(spread);
            auto member_time = [&](int i) {
                return t0 + 1 + spread * i / spec.group_size;
            };
            switch (spec.strategy) {
            case Strategy::Boost: {
                // one source account per group: the "client" being amplified
                Post src = source_post(label + "src", t0, random_text(10, topic));
                for (int i = 0; i < spec.group_size; ++i) {
                    Post p = implant_post(members[i], member_time(i));
                    p.text = src.text;
                    p.reposted_post_id = src.post_id;
                    p.reposted_account_id = src.account_id;
                    posts.push_back(std::move(p));
                }
                posts.push_back(std::move(src));
                break;
            }
            case Strategy::BoostAccount: {
                for (int i = 0; i < spec.group_size; ++i) {
                    Post src = source_post(label + "tgt", t0, random_text(10, topic));
                    Post p = implant_post(members[i], member_time(i));
                    p.text = src.text;
                    p.reposted_post_id = src.post_id;
                    p.reposted_account_id = src.account_id;
                    posts.push_back(std::move(src));
                    posts.push_back(std::move(p));
                }
                break;
            }
            case Strategy::Pollute: {
                const std::string tag = fmt("g%02llde%03lldflood",
                                            static_cast<long long>(index), e);
                for (int i = 0; i < spec.group_size; ++i) {
                    Post p = implant_post(members[i], member_time(i));
                    p.text = random_text(8, topic);
                    p.hashtags.push_back(tag);
                    posts.push_back(std::move(p));
                }
                break;
            }
            case Strategy::Bully: {
                const std::string victim = spec.target.value_or(label + "victim");
                Post root = source_post(victim, t0, random_text(8, topic));
                for (int i = 0; i < spec.group_size; ++i) {
                    Post p = implant_post(members[i], member_time(i));
                    p.text = random_text(6, topic);
                    p.mentions.push_back(victim);
                    if (i % 2 == 1) {
                        p.replied_to_post_id = root.post_id;
                        p.conversation_root_id = root.post_id;
                    }
                    posts.push_back(std::move(p));
                }
                posts.push_back(std::move(root));
                break;
            }
            }
        }
    }
};

} // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Boost: return "boost";
    case Strategy::BoostAccount: return "boost_account";
    case Strategy::Pollute: return "pollute";
    case Strategy::Bully: return "bully";
    }
    return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
    for (Strategy s : {Strategy::Boost, Strategy::BoostAccount, Strategy::Pollute, Strategy::Bully})
        if (name == strategy_name(s)) return s;
    return std::nullopt;
}

void validate(const ScenarioConfig& cfg) {
    std::vector<std::string> problems;
    if (cfg.duration_days <= 0) problems.push_back("duration_days must be positive");
    if (cfg.background_accounts <= 0) problems.push_back("background_accounts must be positive");
    if (!(cfg.background_rate > 0.0)) problems.push_back("background_rate must be positive");
    if (cfg.window_minutes <= 0) problems.push_back("window_minutes must be positive");

    const std::int64_t ws = static_cast<std::int64_t>(cfg.window_minutes) * 60;
    const std::int64_t duration = static_cast<std::int64_t>(cfg.duration_days) * 86400;
    for (std::size_t i = 0; i < cfg.implants.size(); ++i) {
        const auto& s = cfg.implants[i];
        const std::string at = "implant " + std::to_string(i) + ": ";
        if (s.group_size < 2) problems.push_back(at + "group_size must be at least 2");
        if (s.events <= 0) problems.push_back(at + "events must be positive");
        if (s.within_window_seconds <= 0)
            problems.push_back(at + "within_window_seconds must be positive");
        else if (!cfg.straddle && s.within_window_seconds >= ws)
            problems.push_back(at + "within_window_seconds must be below the window size (" +
                               std::to_string(ws) + "s)");
        else if (s.within_window_seconds + 2 > duration)
            problems.push_back(at + "within_window_seconds exceeds the scenario duration");
    }
    if (!problems.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ConfigError(msg);
    }
}

Corpus generate(const ScenarioConfig& cfg) {
    validate(cfg);
    Generator gen(cfg);
    gen.generate_background();
    for (std::size_t i = 0; i < cfg.implants.size(); ++i) gen.generate_implant(i, cfg.implants[i]);
    return make_corpus(std::move(gen.posts), std::move(gen.truth));
}

ScenarioConfig load_scenario(std::istream& in) {
    const KvConfig kv = KvConfig::parse(in);
    ScenarioConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
    cfg.duration_days = static_cast<int>(kv.get_int("duration_days", cfg.duration_days));
    cfg.background_accounts =
        static_cast<int>(kv.get_int("background_accounts", cfg.background_accounts));
    cfg.background_rate = kv.get_double("background_rate", cfg.background_rate);
    cfg.window_minutes = static_cast<int>(kv.get_int("window_minutes", cfg.window_minutes));
    cfg.straddle = kv.get_bool("straddle", cfg.straddle);

    for (const auto& line : kv.all("implant")) {
        std::istringstream tokens(line);
        std::string word;
        if (!(tokens >> word))
            throw ConfigError("implant line is empty");
        ImplantSpec spec;
        const auto strategy = strategy_from_name(word);
        if (!strategy)
            throw ConfigError("unknown implant strategy '" + word + "'");
        spec.strategy = *strategy;
        while (tokens >> word) {
            const auto eq = word.find('=');
            if (eq == std::string::npos)
                throw ConfigError("implant option '" + word + "' is not key=value");
            const std::string key = word.substr(0, eq);
            const std::string value = word.substr(eq + 1);
            try {
                if (key == "size") spec.group_size = std::stoi(value);
                else if (key == "events") spec.events = std::stoi(value);
                else if (key == "spread") spec.within_window_seconds = std::stoll(value);
                else if (key == "target") spec.target = value;
                else throw ConfigError("unknown implant option '" + key + "'");
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception&) {
                throw ConfigError("implant option '" + key + "': bad value '" + value + "'");
            }
        }
        cfg.implants.push_back(std::move(spec));
    }
    return cfg;
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
    for (const auto& p : corpus.posts) write_post_record(p, out);
}

void write_truth_csv(const Corpus& corpus, std::ostream& out) {
    out << "account_id,group_id\n";
    for (const auto& [account, group] : corpus.truth) out << account << ',' << group << '\n';
}

std::map<std::string, std::string> load_truth_csv(std::istream& in) {
    std::map<std::string, std::string> truth;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("account_id,", 0) == 0) continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DataError("truth csv: line without a comma: " + line);
        truth[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return truth;
}

DetectionScore score_detection(const std::map<std::string, std::string>& truth,
                               const std::vector<AccountGroup>& predicted) {
    std::vector<std::string> accounts;
    for (const auto& [account, _] : truth) accounts.push_back(account);
    for (const auto& g : predicted)
        accounts.insert(accounts.end(), g.members.begin(), g.members.end());
    std::sort(accounts.begin(), accounts.end());
    accounts.erase(std::unique(accounts.begin(), accounts.end()), accounts.end());

    std::unordered_map<std::string_view, std::vector<int>> predicted_in;
    for (int gi = 0; gi < static_cast<int>(predicted.size()); ++gi)
        for (const auto& m : predicted[gi].members) predicted_in[m].push_back(gi);

    auto share_predicted = [&](const std::string& a, const std::string& b) {
        auto ia = predicted_in.find(a);
        auto ib = predicted_in.find(b);
        if (ia == predicted_in.end() || ib == predicted_in.end()) return false;
        for (int g : ia->second)
            for (int h : ib->second)
                if (g == h) return true;
        return false;
    };

    DetectionScore score;
    for (std::size_t i = 0; i < accounts.size(); ++i) {
        auto ti = truth.find(accounts[i]);
        for (std::size_t j = i + 1; j < accounts.size(); ++j) {
            auto tj = truth.find(accounts[j]);
            const bool positive =
                ti != truth.end() && tj != truth.end() && ti->second == tj->second;
            const bool detected = share_predicted(accounts[i], accounts[j]);
            if (positive && detected) ++score.true_positive;
            else if (!positive && detected) ++score.false_positive;
            else if (positive && !detected) ++score.false_negative;
        }
    }

    const std::int64_t pred = score.true_positive + score.false_positive;
    const std::int64_t real = score.true_positive + score.false_negative;
    if (pred > 0)
        score.precision = static_cast<double>(score.true_positive) / static_cast<double>(pred);
    if (real > 0)
        score.recall = static_cast<double>(score.true_positive) / static_cast<double>(real);
    if (score.precision && score.recall) {
        const double p = *score.precision, r = *score.recall;
        score.f1 = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    }
    return score;
}

} // namespace coordscan
