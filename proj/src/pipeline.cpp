#include "coordscan/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <tuple>

#include <json.hpp>

#include "coordscan/errors.hpp"
#include "coordscan/synth.hpp"
#include "coordscan/windowing.hpp"
#include "coordscan/writers.hpp"

namespace coordscan {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.gamma_minutes <= 0) throw ConfigError("gamma must be positive");
    if (cfg.method != "fsa_v" && cfg.method != "knn" && cfg.method != "threshold")
        throw ConfigError("method must be one of fsa_v, knn, threshold; got '" + cfg.method + "'");
    if (!(cfg.theta > 0.0 && cfg.theta <= 1.0))
        throw ConfigError("theta must be in (0, 1], got " + std::to_string(cfg.theta));
    if (!(cfg.threshold_fraction > 0.0 && cfg.threshold_fraction <= 1.0))
        throw ConfigError("threshold-fraction must be in (0, 1], got " +
                          std::to_string(cfg.threshold_fraction));
    if (cfg.criteria.empty()) throw ConfigError("criteria list is empty");
    for (const auto& [_, mult] : cfg.criterion_weights)
        if (!(mult > 0.0)) throw ConfigError("criterion-weight multipliers must be positive");
}

} // namespace

CorpusStats corpus_stats(const Corpus& corpus, std::size_t malformed) {
    CorpusStats s;
    s.posts = corpus.posts.size();
    s.malformed = malformed;
    std::set<std::string> accounts;
    std::int64_t lo = 0, hi = 0;
    for (const auto& p : corpus.posts) {
        if (p.reposted_post_id) ++s.reposts;
        accounts.insert(p.account_id);
        if (s.posts > 0 && &p == &corpus.posts.front()) lo = hi = p.timestamp;
        lo = std::min(lo, p.timestamp);
        hi = std::max(hi, p.timestamp);
    }
    s.accounts = accounts.size();
    if (!corpus.posts.empty()) {
        s.days = hi / 86400 - lo / 86400 + 1;
        const double denom = static_cast<double>(s.accounts) * static_cast<double>(s.days);
        s.posts_per_account_day = static_cast<double>(s.posts) / denom;
        s.reposts_per_account_day = static_cast<double>(s.reposts) / denom;
    }
    return s;
}

void print_stats(const CorpusStats& s, std::ostream& out) {
    const double repost_share =
        s.posts ? 100.0 * static_cast<double>(s.reposts) / static_cast<double>(s.posts) : 0.0;
    char line[160];
    out << "posts = " << s.posts << '\n';
    if (s.malformed) out << "malformed = " << s.malformed << '\n';
    std::snprintf(line, sizeof(line),
                  "reposts = %zu (%.1f%%)\naccounts = %zu\ndays = %lld\n"
                  "posts_per_account_per_day = %.2f\nreposts_per_account_per_day = %.2f\n",
                  s.reposts, repost_share, s.accounts, static_cast<long long>(s.days),
                  s.posts_per_account_day, s.reposts_per_account_day);
    out << line;
}

Corpus load_corpus(const std::string& path, CorpusStats* stats,
                   std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ConfigError("input file not found: " + path);
    ParseStats ps;
    Corpus corpus = make_corpus(parse_posts(in, ps));
    if (warnings)
        for (auto& w : ps.warnings) warnings->push_back(path + ": " + w);
    if (stats) *stats = corpus_stats(corpus, ps.malformed);
    return corpus;
}

DetectResult run_detect(const RunConfig& cfg) {
    validate_config(cfg);

    DetectResult result;
    result.corpus = load_corpus(cfg.input, &result.stats, &result.warnings);

    for (const auto& p : result.corpus.posts) {
        auto xs = extract_interactions(p);
        result.interactions.insert(result.interactions.end(),
                                   std::make_move_iterator(xs.begin()),
                                   std::make_move_iterator(xs.end()));
    }

    const WindowConfig wc{cfg.gamma_minutes};
    auto buckets = partition(result.interactions, wc);

    LinkageOptions opt;
    opt.max_group_size = cfg.max_group_size;
    opt.jobs = cfg.jobs;
    result.links = find_coordination(buckets, cfg.criteria, opt, &result.warnings);

    // per-window LCNs, then the cross-window aggregate (links arrive sorted
    // by window, so each window is one contiguous run)
    std::vector<Lcn> window_lcns;
    std::size_t begin = 0;
    while (begin < result.links.size()) {
        std::size_t end = begin;
        while (end < result.links.size() && result.links[end].window == result.links[begin].window)
            ++end;
        window_lcns.push_back(
            build_lcn({result.links.begin() + begin, result.links.begin() + end},
                      result.links[begin].window));
        begin = end;
    }
    result.lcn = merge_multi_edges(aggregate(window_lcns), cfg.criterion_weights);

    if (cfg.method == "fsa_v")
        result.hccs = fsa_v(result.lcn, FsaVParams{cfg.theta, cfg.final_filter_strict}, cfg.seed);
    else if (cfg.method == "knn")
        result.hccs = knn_extract(result.lcn);
    else
        result.hccs = threshold_extract(result.lcn, cfg.threshold_fraction);

    std::sort(result.hccs.begin(), result.hccs.end(), [](const Hcc& a, const Hcc& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return a.members.front() < b.members.front();
    });
    return result;
}

std::string criteria_to_string(const std::set<Criterion>& criteria) {
    std::string out;
    for (Criterion c : criteria) {
        if (!out.empty()) out.push_back(',');
        out += criterion_name(c);
    }
    return out;
}

void write_manifest(const RunConfig& cfg, const CorpusStats& stats, std::ostream& out) {
    out << "# detection run manifest; replay with: coordscan detect --config <this file> --out <dir>\n"
        << "input = " << cfg.input << '\n'
        << "gamma = " << cfg.gamma_minutes << '\n'
        << "criteria = " << criteria_to_string(cfg.criteria) << '\n'
        << "method = " << cfg.method << '\n'
        << "theta = " << fmt_number(cfg.theta) << '\n'
        << "final-filter-strict = " << (cfg.final_filter_strict ? "true" : "false") << '\n'
        << "threshold-fraction = " << fmt_number(cfg.threshold_fraction) << '\n'
        << "seed = " << cfg.seed << '\n'
        << "max-group-size = " << cfg.max_group_size << '\n'
        << "jobs = " << cfg.jobs << '\n'
        << "graphml = " << (cfg.graphml ? "true" : "false") << '\n';
    for (const auto& [criterion, mult] : cfg.criterion_weights)
        out << "criterion-weight = " << criterion_name(criterion) << '=' << fmt_number(mult) << '\n';
    if (!cfg.dump_interactions.empty())
        out << "dump-interactions = " << cfg.dump_interactions << '\n';
    if (!cfg.dump_lcn.empty()) out << "dump-lcn = " << cfg.dump_lcn << '\n';
    out << "# corpus stats\n"
        << "# posts = " << stats.posts << '\n'
        << "# malformed_lines = " << stats.malformed << '\n'
        << "# retweets = " << stats.reposts << '\n'
        << "# accounts = " << stats.accounts << '\n'
        << "# days = " << stats.days << '\n'
        << "# posts_per_account_per_day = " << fmt_number(stats.posts_per_account_day) << '\n'
        << "# retweets_per_account_per_day = " << fmt_number(stats.reposts_per_account_day) << '\n';
}

RunConfig config_from_kv(const KvConfig& kv, const RunConfig& defaults) {
    static const std::set<std::string> known = {
        "input",     "gamma",          "criteria",       "method",
        "theta",     "final-filter-strict", "threshold-fraction", "seed",
        "max-group-size", "jobs",      "graphml",        "criterion-weight",
        "dump-interactions", "dump-lcn", "out"};
    for (const auto& [key, _] : kv.entries())
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

    RunConfig cfg = defaults;
    if (auto v = kv.get("input")) cfg.input = *v;
    if (auto v = kv.get("out")) cfg.out_dir = *v;
    cfg.gamma_minutes = kv.get_int("gamma", cfg.gamma_minutes);
    if (auto v = kv.get("criteria")) cfg.criteria = parse_criteria(*v);
    if (auto v = kv.get("method")) cfg.method = *v;
    cfg.theta = kv.get_double("theta", cfg.theta);
    cfg.final_filter_strict = kv.get_bool("final-filter-strict", cfg.final_filter_strict);
    cfg.threshold_fraction = kv.get_double("threshold-fraction", cfg.threshold_fraction);
    cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", static_cast<std::int64_t>(cfg.seed)));
    cfg.max_group_size = static_cast<std::size_t>(
        kv.get_int("max-group-size", static_cast<std::int64_t>(cfg.max_group_size)));
    cfg.jobs = static_cast<unsigned>(kv.get_int("jobs", cfg.jobs));
    cfg.graphml = kv.get_bool("graphml", cfg.graphml);
    if (auto v = kv.get("dump-interactions")) cfg.dump_interactions = *v;
    if (auto v = kv.get("dump-lcn")) cfg.dump_lcn = *v;
    for (const auto& entry : kv.all("criterion-weight")) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ConfigError("criterion-weight must look like co_hashtag=0.5, got '" + entry + "'");
        const auto criterion = criterion_from_name(entry.substr(0, eq));
        if (!criterion)
            throw ConfigError("criterion-weight: unknown criterion '" + entry.substr(0, eq) + "'");
        try {
            cfg.criterion_weights[*criterion] = std::stod(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("criterion-weight: bad multiplier in '" + entry + "'");
        }
    }
    return cfg;
}

void write_detect_outputs(const RunConfig& cfg, const DetectResult& result) {
    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);

    {
        auto f = open_out(out / "manifest.txt");
        write_manifest(cfg, result.stats, f);
    }
    {
        auto f = open_out(out / "lcn.tsv");
        write_lcn_tsv(result.lcn, f);
    }
    if (cfg.graphml) {
        auto f = open_out(out / "lcn.graphml");
        write_lcn_graphml(result.lcn, f);
    }
    if (!cfg.dump_lcn.empty()) {
        auto f = open_out(cfg.dump_lcn);
        write_lcn_tsv(result.lcn, f);
    }

    const auto groups = groups_from_hccs(result.hccs);
    {
        auto f = open_out(out / "hccs.csv");
        write_groups_csv(groups, f);
    }
    {
        ordered_json summary = ordered_json::array();
        for (std::size_t i = 0; i < result.hccs.size(); ++i) {
            const Hcc& h = result.hccs[i];
            ordered_json entry;
            entry["hcc_id"] = groups[i].id;
            entry["size"] = h.members.size();
            entry["edge_count"] = h.internal_edges.size();
            entry["mew"] = h.mew;
            ordered_json breakdown = ordered_json::object();
            std::map<Criterion, std::int64_t> sums;
            for (const auto& e : h.internal_edges) {
                const auto& merged = result.lcn.edges.at(AccountPair{e.u, e.v});
                for (const auto& [criterion, w] : merged.breakdown) sums[criterion] += w;
            }
            for (const auto& [criterion, w] : sums) breakdown[criterion_name(criterion)] = w;
            entry["criteria"] = std::move(breakdown);
            summary.push_back(std::move(entry));
        }
        auto f = open_out(out / "hcc_summary.json");
        f << summary.dump(2) << '\n';
    }
    if (!cfg.dump_interactions.empty()) {
        auto f = open_out(cfg.dump_interactions);
        write_interactions_tsv(result.interactions, f);
    }
}

void run_analyze(const AnalyzeConfig& acfg) {
    const fs::path run(acfg.run_dir);
    std::ifstream manifest_in(run / "manifest.txt");
    if (!manifest_in)
        throw ConfigError("missing detect outputs: " + (run / "manifest.txt").string());
    const RunConfig cfg = config_from_kv(KvConfig::parse(manifest_in));

    const std::string input = acfg.input_override.empty() ? cfg.input : acfg.input_override;
    if (input.empty()) throw ConfigError("corpus input path is not known; pass --input");
    const Corpus corpus = load_corpus(input);
    const CorpusIndex index(corpus);

    std::ifstream hccs_in(run / "hccs.csv");
    if (!hccs_in) throw ConfigError("missing detect outputs: " + (run / "hccs.csv").string());
    const std::vector<AccountGroup> groups = load_groups_csv(hccs_in);

    const fs::path out(acfg.out_dir.empty() ? acfg.run_dir : acfg.out_dir);
    fs::create_directories(out);

    if (acfg.similarity) {
        const auto m = similarity_matrix(groups, index);
        auto f = open_out(out / "similarity.csv");
        write_similarity_csv(m, f);
        auto fi = open_out(out / "similarity_index.csv");
        write_similarity_index_csv(m, fi);
    }
    if (acfg.entropy) {
        auto f = open_out(out / "entropy.csv");
        write_entropy_csv(groups, index, f);
    }
    if (acfg.ratios) {
        auto f = open_out(out / "ratios.csv");
        write_ratios_csv(groups, index, f);
    }
    if (acfg.activity) {
        {
            const auto series = temporal_activity(groups, index, ActivityBucket::Daily);
            auto f = open_out(out / "activity_daily.csv");
            write_activity_csv(groups, series, f);
        }
        if (acfg.weekly) {
            const auto series = temporal_activity(groups, index, ActivityBucket::Weekly);
            auto f = open_out(out / "activity_weekly.csv");
            write_activity_csv(groups, series, f);
        }
    }
    if (acfg.cooccurrence) {
        auto f = open_out(out / "hashtag_cooccurrence.tsv");
        write_cooccurrence_tsv(groups, index, f);
        auto fg = open_out(out / "hashtag_cooccurrence.graphml");
        write_cooccurrence_graphml(groups, index, fg);
    }
    if (acfg.reasons) {
        // links are cheap to recompute and the manifest pins every parameter
        std::vector<Interaction> interactions;
        for (const auto& p : corpus.posts) {
            auto xs = extract_interactions(p);
            interactions.insert(interactions.end(), xs.begin(), xs.end());
        }
        auto buckets = partition(std::move(interactions), WindowConfig{cfg.gamma_minutes});
        LinkageOptions opt;
        opt.max_group_size = cfg.max_group_size;
        opt.jobs = cfg.jobs;
        const auto links = find_coordination(buckets, cfg.criteria, opt);
        const auto rg = expand_reasons(groups, links);
        auto f = open_out(out / "reason_graph.tsv");
        write_reason_graph_tsv(rg, f);
        auto fg = open_out(out / "reason_graph.graphml");
        write_reason_graph_graphml(rg, fg);
    }
    if (acfg.random_baseline_groups) {
        const auto random_groups = random_baseline(index.accounts(), groups, acfg.seed);
        {
            auto f = open_out(out / "random_groups.csv");
            write_groups_csv(random_groups, f);
        }
        {
            auto f = open_out(out / "entropy_random.csv");
            write_entropy_csv(random_groups, index, f);
        }
        {
            const auto m = similarity_matrix(random_groups, index);
            auto f = open_out(out / "similarity_random.csv");
            write_similarity_csv(m, f);
            auto fi = open_out(out / "similarity_index_random.csv");
            write_similarity_index_csv(m, fi);
        }
        {
            auto f = open_out(out / "ratios_random.csv");
            write_ratios_csv(random_groups, index, f);
        }
    }
}

} // namespace coordscan
