#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coordscan/errors.hpp"
#include "coordscan/pipeline.hpp"
#include "coordscan/synth.hpp"
#include "coordscan/writers.hpp"

namespace {

using namespace coordscan;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

struct DetectFlags {
    std::string input;
    std::string out_dir;
    std::string config_path;
    std::int64_t gamma = 15;
    std::string criteria = "co_retweet";
    std::string method = "fsa_v";
    double theta = 0.3;
    bool final_filter_strict = true;
    double threshold_fraction = 0.9;
    std::uint64_t seed = 42;
    std::int64_t max_group_size = 1000;
    unsigned jobs = 0;
    bool graphml = false;
    std::vector<std::string> criterion_weights;
    std::string dump_interactions;
    std::string dump_lcn;
};

// Config file first, then any flag given on the command line wins.
RunConfig detect_config(const CLI::App& cmd, const DetectFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) throw ConfigError("config file not found: " + flags.config_path);
        cfg = config_from_kv(KvConfig::parse(in), cfg);
    }
    auto given = [&](const std::string& name) { return cmd.count(name) > 0; };
    if (given("--input")) cfg.input = flags.input;
    if (given("--out")) cfg.out_dir = flags.out_dir;
    if (given("--gamma")) cfg.gamma_minutes = flags.gamma;
    if (given("--criteria")) cfg.criteria = parse_criteria(flags.criteria);
    if (given("--method")) cfg.method = flags.method;
    if (given("--theta")) cfg.theta = flags.theta;
    if (given("--final-filter-strict")) cfg.final_filter_strict = flags.final_filter_strict;
    if (given("--threshold-fraction")) cfg.threshold_fraction = flags.threshold_fraction;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--max-group-size"))
        cfg.max_group_size = static_cast<std::size_t>(flags.max_group_size);
    if (given("--jobs")) cfg.jobs = flags.jobs;
    if (given("--graphml")) cfg.graphml = flags.graphml;
    if (given("--dump-interactions")) cfg.dump_interactions = flags.dump_interactions;
    if (given("--dump-lcn")) cfg.dump_lcn = flags.dump_lcn;
    for (const auto& entry : flags.criterion_weights) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--criterion-weight must look like co_hashtag=0.5");
        const auto criterion = criterion_from_name(entry.substr(0, eq));
        if (!criterion) throw ConfigError("--criterion-weight: unknown criterion");
        cfg.criterion_weights[*criterion] = std::stod(entry.substr(eq + 1));
    }
    if (cfg.input.empty()) throw ConfigError("--input is required");
    if (cfg.out_dir.empty()) throw ConfigError("--out is required");
    return cfg;
}

int cmd_ingest(const std::string& input, const std::string& dump_path) {
    CorpusStats stats;
    std::vector<std::string> warnings;
    Corpus corpus = load_corpus(input, &stats, &warnings);
    print_warnings(warnings);
    print_stats(stats, std::cout);
    if (!dump_path.empty()) {
        std::vector<Interaction> interactions;
        for (const auto& p : corpus.posts) {
            auto xs = extract_interactions(p);
            interactions.insert(interactions.end(), xs.begin(), xs.end());
        }
        std::ofstream out(dump_path);
        if (!out) throw DataError("cannot write " + dump_path);
        write_interactions_tsv(interactions, out);
        std::cout << "interactions = " << interactions.size() << '\n';
    }
    return kExitOk;
}

int cmd_detect(const RunConfig& cfg) {
    DetectResult result = run_detect(cfg);
    print_warnings(result.warnings);
    write_detect_outputs(cfg, result);
    std::cout << "links = " << result.links.size() << '\n'
              << "lcn_vertices = " << result.lcn.vertices.size() << '\n'
              << "lcn_edges = " << result.lcn.edges.size() << '\n'
              << "hccs = " << result.hccs.size() << '\n'
              << "outputs = " << cfg.out_dir << '\n';
    return kExitOk;
}

int cmd_synth(const std::string& config_path, const std::string& out_dir,
              const CLI::App& cmd, std::uint64_t seed, bool straddle) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config file not found: " + config_path);
    ScenarioConfig scenario = load_scenario(in);
    if (cmd.count("--seed")) scenario.seed = seed;
    if (cmd.count("--straddle")) scenario.straddle = straddle;

    const Corpus corpus = generate(scenario);
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(std::filesystem::path(out_dir) / "corpus.jsonl");
        if (!out) throw DataError("cannot write corpus.jsonl under " + out_dir);
        write_corpus(corpus, out);
    }
    {
        std::ofstream out(std::filesystem::path(out_dir) / "truth.csv");
        if (!out) throw DataError("cannot write truth.csv under " + out_dir);
        write_truth_csv(corpus, out);
    }
    std::cout << "posts = " << corpus.posts.size() << '\n'
              << "labelled_accounts = " << corpus.truth.size() << '\n'
              << "outputs = " << out_dir << '\n';
    return kExitOk;
}

int cmd_score(const std::string& truth_path, const std::string& hccs_path,
              const std::string& json_path) {
    std::ifstream truth_in(truth_path);
    if (!truth_in) throw ConfigError("truth file not found: " + truth_path);
    const auto truth = load_truth_csv(truth_in);

    std::ifstream hccs_in(hccs_path);
    if (!hccs_in) throw ConfigError("membership file not found: " + hccs_path);
    const auto groups = load_groups_csv(hccs_in);

    const DetectionScore score = score_detection(truth, groups);
    auto show = [](const std::optional<double>& v) { return v ? fmt_number(*v) : "n/a"; };
    std::cout << "pairs: tp=" << score.true_positive << " fp=" << score.false_positive
              << " fn=" << score.false_negative << '\n'
              << "precision = " << show(score.precision) << '\n'
              << "recall = " << show(score.recall) << '\n'
              << "f1 = " << show(score.f1) << '\n';
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw DataError("cannot write " + json_path);
        out << "{\n  \"tp\": " << score.true_positive << ",\n  \"fp\": " << score.false_positive
            << ",\n  \"fn\": " << score.false_negative << ",\n  \"precision\": "
            << (score.precision ? fmt_number(*score.precision) : "null") << ",\n  \"recall\": "
            << (score.recall ? fmt_number(*score.recall) : "null") << ",\n  \"f1\": "
            << (score.f1 ? fmt_number(*score.f1) : "null") << "\n}\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coordscan: detects covertly coordinating account groups in social media "
                 "post corpora via latent connection networks"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a corpus and report its stats");
    std::string ingest_input, ingest_dump;
    ingest->add_option("--input", ingest_input, "corpus file (one JSON record per line)")
        ->required();
    ingest->add_option("--dump-interactions", ingest_dump, "write interaction primitives as TSV");

    // detect
    auto* detect = app.add_subcommand("detect", "run the detection pipeline");
    DetectFlags df;
    detect->add_option("--input", df.input, "corpus file");
    detect->add_option("--out", df.out_dir, "output directory");
    detect->add_option("--config", df.config_path, "key=value config file (flags override)");
    detect->add_option("--gamma", df.gamma, "window size in minutes (default 15)");
    detect->add_option("--criteria", df.criteria,
                       "comma list: co_retweet, co_retweeted_account, co_hashtag, co_url, "
                       "co_mention, co_conv (default co_retweet)");
    detect->add_option("--method", df.method, "fsa_v | knn | threshold (default fsa_v)");
    detect->add_option("--theta", df.theta, "FSA_V growth threshold in (0,1] (default 0.3)");
    detect->add_option("--final-filter-strict", df.final_filter_strict,
                       "keep only HCCs with mean weight strictly above the graph mean");
    detect->add_option("--threshold-fraction", df.threshold_fraction,
                       "fraction of heaviest edges the threshold method keeps (default 0.9)");
    detect->add_option("--seed", df.seed, "seed for all randomness (default 42)");
    detect->add_option("--max-group-size", df.max_group_size,
                       "skip key groups with more actors than this (default 1000, 0 = off)");
    detect->add_option("--jobs", df.jobs, "worker threads (default: all cores)");
    detect->add_flag("--graphml", df.graphml, "also write the LCN as GraphML");
    detect->add_option("--criterion-weight", df.criterion_weights,
                       "per-criterion merge multiplier, e.g. co_hashtag=0.5 (repeatable)");
    detect->add_option("--dump-interactions", df.dump_interactions,
                       "write interaction primitives as TSV");
    detect->add_option("--dump-lcn", df.dump_lcn,
                       "write the merged LCN edge list to an extra path");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "validation reports over a detect run");
    AnalyzeConfig ac;
    analyze->add_option("--run", ac.run_dir, "detect output directory")->required();
    analyze->add_option("--input", ac.input_override, "corpus file (default: from manifest)");
    analyze->add_option("--out", ac.out_dir, "report directory (default: the run directory)");
    analyze->add_flag("--similarity,!--no-similarity", ac.similarity, "content similarity matrix");
    analyze->add_flag("--entropy,!--no-entropy", ac.entropy, "feature-use entropy");
    analyze->add_flag("--ratios,!--no-ratios", ac.ratios, "internal retweet/mention ratios");
    analyze->add_flag("--activity,!--no-activity", ac.activity, "temporal activity series");
    analyze->add_flag("--weekly", ac.weekly, "also write the weekly activity series");
    analyze->add_flag("--cooccurrence,!--no-cooccurrence", ac.cooccurrence,
                      "hashtag co-occurrence graphs");
    analyze->add_flag("--reasons,!--no-reasons", ac.reasons, "reason-expansion graph");
    analyze->add_flag("--random-baseline", ac.random_baseline_groups,
                      "also report on random non-HCC groups of matching sizes");
    analyze->add_option("--seed", ac.seed, "seed for the random baseline (default 42)");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a labelled synthetic corpus");
    std::string synth_config, synth_out;
    std::uint64_t synth_seed = 1;
    bool synth_straddle = false;
    synth->add_option("--config", synth_config, "scenario file")->required();
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--seed", synth_seed, "override the scenario seed");
    synth->add_flag("--straddle", synth_straddle,
                    "place episodes uniformly instead of window-interior");

    // score
    auto* score = app.add_subcommand("score", "pairwise precision/recall against ground truth");
    std::string score_truth, score_hccs, score_json;
    score->add_option("--truth", score_truth, "truth.csv (account_id,group_id)")->required();
    score->add_option("--hccs", score_hccs, "membership csv (hcc_id,account_id)")->required();
    score->add_option("--json", score_json, "also write the score as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(ingest_input, ingest_dump);
        if (app.got_subcommand(detect)) return cmd_detect(detect_config(*detect, df));
        if (app.got_subcommand(analyze)) {
            run_analyze(ac);
            std::cout << "outputs = " << (ac.out_dir.empty() ? ac.run_dir : ac.out_dir) << '\n';
            return kExitOk;
        }
        if (app.got_subcommand(synth))
            return cmd_synth(synth_config, synth_out, *synth, synth_seed, synth_straddle);
        if (app.got_subcommand(score)) return cmd_score(score_truth, score_hccs, score_json);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
