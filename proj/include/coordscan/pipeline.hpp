#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "coordscan/analysis.hpp"
#include "coordscan/hcc.hpp"
#include "coordscan/kvconfig.hpp"
#include "coordscan/lcn.hpp"
#include "coordscan/linkage.hpp"

namespace coordscan {

// One detection run, fully described. The manifest written next to the
// outputs echoes every field here, so a run can be replayed from it.
struct RunConfig {
    std::string input;
    std::string out_dir;
    std::int64_t gamma_minutes = 15;
    std::set<Criterion> criteria = {Criterion::CoRetweet};
    std::string method = "fsa_v"; // fsa_v | knn | threshold
    double theta = 0.3;
    bool final_filter_strict = true;
    double threshold_fraction = 0.9;
    std::uint64_t seed = 42;
    std::size_t max_group_size = 1000;
    unsigned jobs = 0; // 0 = all cores
    bool graphml = false;
    CriterionWeights criterion_weights; // optional merge multipliers
    std::string dump_interactions;      // optional TSV path
    std::string dump_lcn;               // optional extra edge-list path
};

struct CorpusStats {
    std::size_t posts = 0;
    std::size_t reposts = 0;
    std::size_t accounts = 0;
    std::int64_t days = 0;
    double posts_per_account_day = 0.0;
    double reposts_per_account_day = 0.0;
    std::size_t malformed = 0;
};

CorpusStats corpus_stats(const Corpus& corpus, std::size_t malformed = 0);
void print_stats(const CorpusStats& stats, std::ostream& out);

// Reads and validates a corpus file. Missing file is a ConfigError; a stream
// that fails mid-read is a DataError. Malformed-line warnings land in
// *warnings when given.
Corpus load_corpus(const std::string& path, CorpusStats* stats = nullptr,
                   std::vector<std::string>* warnings = nullptr);

struct DetectResult {
    Corpus corpus;
    CorpusStats stats;
    std::vector<Interaction> interactions;
    std::vector<InferredLink> links;
    MergedLcn lcn;
    std::vector<Hcc> hccs;                 // ordered by (size desc, first member)
    std::vector<std::string> warnings;
};

// Steps 1-5: parse, filter, pair, build/aggregate/merge, extract.
DetectResult run_detect(const RunConfig& cfg);

// Writes manifest.txt, lcn.tsv (+ .graphml), hccs.csv, hcc_summary.json and
// the optional interaction dump into cfg.out_dir.
void write_detect_outputs(const RunConfig& cfg, const DetectResult& result);

std::string criteria_to_string(const std::set<Criterion>& criteria);
void write_manifest(const RunConfig& cfg, const CorpusStats& stats, std::ostream& out);
// Rebuilds a RunConfig from manifest/config key-values (unknown keys throw).
RunConfig config_from_kv(const KvConfig& kv, const RunConfig& defaults = {});

struct AnalyzeConfig {
    std::string run_dir;        // a detect output directory
    std::string input_override; // corpus path; default comes from the manifest
    std::string out_dir;        // default: run_dir
    bool similarity = true;
    bool entropy = true;
    bool ratios = true;
    bool activity = true;
    bool weekly = false; // also write the weekly series
    bool cooccurrence = true;
    bool reasons = true;
    bool random_baseline_groups = false;
    std::uint64_t seed = 42;
};

// Validation reports over a finished detect run. Missing detect outputs are a
// ConfigError.
void run_analyze(const AnalyzeConfig& cfg);

} // namespace coordscan
