#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coordscan/analysis.hpp"
#include "coordscan/interaction.hpp"

namespace coordscan {

enum class Strategy {
    Boost,        // every member reposts the same fresh post
    BoostAccount, // members repost distinct fresh posts by one target account
    Pollute,      // every member posts with a fresh shared hashtag
    Bully,        // every member mentions the target; half also join its thread
};

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

// One coordinating group to implant into the background traffic.
struct ImplantSpec {
    Strategy strategy = Strategy::Boost;
    int group_size = 3;
    int events = 5;
    std::int64_t within_window_seconds = 300; // spread of one co-action episode
    std::optional<std::string> target;        // Bully victim override
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    int duration_days = 7;
    int background_accounts = 100;
    double background_rate = 0.5; // mean posts per account per day
    int window_minutes = 15;      // window size episodes are placed inside
    bool straddle = false;        // place episodes uniformly instead
    std::vector<ImplantSpec> implants;
};

// Throws ConfigError listing every violated field.
void validate(const ScenarioConfig& cfg);

// Builds the labelled corpus: seeded background chatter (Zipf vocabularies,
// trend-following reposts) plus the implanted coordination episodes. Group
// labels are "g00", "g01", ... in implant order; auxiliary accounts (boost
// sources, bully victims) stay unlabelled. Background accounts never repost
// implant posts.
Corpus generate(const ScenarioConfig& cfg);

// Scenario file in key=value form; the "implant" key repeats, e.g.
//   implant = boost size=5 events=10 spread=300
ScenarioConfig load_scenario(std::istream& in);

void write_corpus(const Corpus& corpus, std::ostream& out);
void write_truth_csv(const Corpus& corpus, std::ostream& out);
std::map<std::string, std::string> load_truth_csv(std::istream& in);

// Pairwise clustering score: a pair of accounts is positive when it shares a
// truth group, predicted positive when it shares a group in `predicted`.
// Accounts absent from the truth map are negatives.
struct DetectionScore {
    std::int64_t true_positive = 0;
    std::int64_t false_positive = 0;
    std::int64_t false_negative = 0;
    std::optional<double> precision; // absent when nothing was predicted
    std::optional<double> recall;    // absent when the truth has no pairs
    std::optional<double> f1;
};

DetectionScore score_detection(const std::map<std::string, std::string>& truth,
                               const std::vector<AccountGroup>& predicted);

} // namespace coordscan
