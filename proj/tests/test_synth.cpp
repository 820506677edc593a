#include <doctest.h>

#include <sstream>

#include "coordscan/errors.hpp"
#include "coordscan/synth.hpp"
#include "coordscan/windowing.hpp"
#include "oracles.hpp"

using namespace coordscan;

namespace {

ScenarioConfig small_scenario() {
    ScenarioConfig cfg;
    cfg.seed = 11;
    cfg.duration_days = 3;
    cfg.background_accounts = 40;
    cfg.background_rate = 1.0;
    cfg.window_minutes = 15;
    return cfg;
}

std::string corpus_bytes(const Corpus& corpus) {
    std::ostringstream out;
    write_corpus(corpus, out);
    write_truth_csv(corpus, out);
    return out.str();
}

} // namespace

TEST_CASE("no implants means no truth labels") {
    const Corpus corpus = generate(small_scenario());
    CHECK(corpus.truth.empty());
    CHECK(!corpus.posts.empty());
}

TEST_CASE("a boost group of 3 with 5 events makes 15 reposts of 5 posts") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::Boost, 3, 5, 120, std::nullopt});
    const Corpus corpus = generate(cfg);

    std::size_t implant_reposts = 0;
    std::set<std::string> reposted_ids;
    for (const auto& p : corpus.posts) {
        if (corpus.truth.count(p.account_id) && p.reposted_post_id) {
            ++implant_reposts;
            reposted_ids.insert(*p.reposted_post_id);
        }
    }
    CHECK(implant_reposts == 15);
    CHECK(reposted_ids.size() == 5);
    CHECK(corpus.truth.size() == 3);
    for (const auto& [_, group] : corpus.truth) CHECK(group == "g00");
}

TEST_CASE("generation is byte-identical under one seed") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::Boost, 4, 6, 300, std::nullopt});
    cfg.implants.push_back(ImplantSpec{Strategy::Pollute, 3, 4, 200, std::nullopt});
    CHECK(corpus_bytes(generate(cfg)) == corpus_bytes(generate(cfg)));

    ScenarioConfig other = cfg;
    other.seed = 12;
    CHECK(corpus_bytes(generate(other)) != corpus_bytes(generate(cfg)));
}

TEST_CASE("episodes land inside one window unless straddling is on") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::Boost, 5, 12, 600, std::nullopt});
    const Corpus corpus = generate(cfg);

    const WindowConfig wc{cfg.window_minutes};
    std::map<std::string, std::set<WindowId>> windows_by_source;
    for (const auto& p : corpus.posts)
        if (corpus.truth.count(p.account_id) && p.reposted_post_id)
            windows_by_source[*p.reposted_post_id].insert(window_of(p.timestamp, wc));
    REQUIRE(windows_by_source.size() == 12);
    for (const auto& [_, windows] : windows_by_source) CHECK(windows.size() == 1);
}

TEST_CASE("background accounts never repost implant posts") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::Boost, 6, 10, 300, std::nullopt});
    const Corpus corpus = generate(cfg);
    for (const auto& p : corpus.posts) {
        if (corpus.truth.count(p.account_id)) continue;
        if (p.reposted_post_id) CHECK((*p.reposted_post_id)[0] == 'b');
    }
}

TEST_CASE("pollute and bully implants produce their signature entities") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::Pollute, 3, 4, 120, std::nullopt});
    cfg.implants.push_back(ImplantSpec{Strategy::Bully, 4, 3, 120, std::string("victim")});
    const Corpus corpus = generate(cfg);

    std::set<std::string> flood_tags;
    std::size_t mentions_of_victim = 0, replies = 0;
    for (const auto& p : corpus.posts) {
        if (!corpus.truth.count(p.account_id)) continue;
        if (corpus.truth.at(p.account_id) == "g00")
            for (const auto& t : p.hashtags) flood_tags.insert(t);
        if (corpus.truth.at(p.account_id) == "g01") {
            for (const auto& m : p.mentions)
                if (m == "victim") ++mentions_of_victim;
            if (p.conversation_root_id) ++replies;
        }
    }
    CHECK(flood_tags.size() == 4);        // one fresh tag per event
    CHECK(mentions_of_victim == 4 * 3);   // every member, every event
    CHECK(replies == 2 * 3);              // half the group joins the thread
}

TEST_CASE("boost_account strategy links by account, not by post") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::BoostAccount, 4, 5, 300, std::nullopt});
    const Corpus corpus = generate(cfg);

    std::set<std::string> sources, targets;
    for (const auto& p : corpus.posts)
        if (corpus.truth.count(p.account_id) && p.reposted_post_id) {
            sources.insert(*p.reposted_post_id);
            targets.insert(*p.reposted_account_id);
        }
    CHECK(sources.size() == 4 * 5); // distinct posts
    CHECK(targets.size() == 1);     // one boosted account
}

TEST_CASE("scenario validation names each violation") {
    ScenarioConfig cfg = small_scenario();
    cfg.duration_days = 0;
    cfg.background_rate = 0.0;
    cfg.implants.push_back(ImplantSpec{Strategy::Boost, 1, 0, 2000, std::nullopt});
    try {
        generate(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("duration_days") != std::string::npos);
        CHECK(msg.find("background_rate") != std::string::npos);
        CHECK(msg.find("group_size") != std::string::npos);
        CHECK(msg.find("events") != std::string::npos);
        CHECK(msg.find("within_window_seconds") != std::string::npos);
    }
}

TEST_CASE("scenario files parse with repeated implant lines") {
    std::istringstream in(
        "seed = 9\n"
        "duration_days = 5\n"
        "background_accounts = 60   # comment\n"
        "background_rate = 0.4\n"
        "window_minutes = 15\n"
        "implant = boost size=5 events=10 spread=300\n"
        "implant = bully size=3 events=2 spread=60 target=mayor\n");
    const ScenarioConfig cfg = load_scenario(in);
    CHECK(cfg.seed == 9);
    CHECK(cfg.duration_days == 5);
    CHECK(cfg.background_accounts == 60);
    CHECK(cfg.background_rate == doctest::Approx(0.4));
    REQUIRE(cfg.implants.size() == 2);
    CHECK(cfg.implants[0].strategy == Strategy::Boost);
    CHECK(cfg.implants[0].group_size == 5);
    CHECK(cfg.implants[0].events == 10);
    CHECK(cfg.implants[0].within_window_seconds == 300);
    CHECK(cfg.implants[1].strategy == Strategy::Bully);
    CHECK(cfg.implants[1].target == "mayor");

    std::istringstream bad("implant = teleport size=2\n");
    CHECK_THROWS_AS(load_scenario(bad), ConfigError);
}

TEST_CASE("perfect detection scores 1.0 across the board") {
    std::map<std::string, std::string> truth = {{"a", "g1"}, {"b", "g1"}, {"c", "g2"},
                                                {"d", "g2"}, {"e", "g2"}};
    const std::vector<AccountGroup> predicted = {{"h0", {"a", "b"}}, {"h1", {"c", "d", "e"}}};
    const auto score = score_detection(truth, predicted);
    CHECK(score.precision == 1.0);
    CHECK(score.recall == 1.0);
    CHECK(score.f1 == 1.0);
    CHECK(score.true_positive == 4);
}

TEST_CASE("empty predictions have zero recall and no precision") {
    std::map<std::string, std::string> truth = {{"a", "g1"}, {"b", "g1"}};
    const auto score = score_detection(truth, {});
    CHECK_FALSE(score.precision.has_value());
    REQUIRE(score.recall.has_value());
    CHECK(*score.recall == 0.0);
    CHECK_FALSE(score.f1.has_value());
}

TEST_CASE("a split truth group recovers one of three pairs") {
    std::map<std::string, std::string> truth = {{"a", "g1"}, {"b", "g1"}, {"c", "g1"}};
    const std::vector<AccountGroup> predicted = {{"h0", {"a", "b"}}}; // c left out
    const auto score = score_detection(truth, predicted);
    CHECK(*score.precision == 1.0);
    CHECK(*score.recall == doctest::Approx(1.0 / 3.0));
    CHECK(score.false_negative == 2);
}

TEST_CASE("score matches the closed-form pair counts on random partitions") {
    Rng rng(149);
    for (int round = 0; round < 10; ++round) {
        std::map<std::string, std::string> truth;
        std::map<std::string, std::vector<std::string>> by_group;
        for (int i = 0; i < 30; ++i) {
            const std::string account = "a" + std::to_string(i);
            const std::string group = "g" + std::to_string(rand_index(rng, 5));
            truth[account] = group;
            by_group[group].push_back(account);
        }
        // predicted: same grouping -> P = R = 1
        std::vector<AccountGroup> predicted;
        for (const auto& [id, members] : by_group) predicted.push_back({id, members});
        const auto score = score_detection(truth, predicted);
        CHECK(*score.precision == 1.0);
        CHECK(*score.recall == 1.0);

        std::int64_t pairs = 0;
        for (const auto& [_, members] : by_group)
            pairs += static_cast<std::int64_t>(members.size()) *
                     static_cast<std::int64_t>(members.size() - 1) / 2;
        CHECK(score.true_positive == pairs);
    }
}

TEST_CASE("truth csv round-trips") {
    ScenarioConfig cfg = small_scenario();
    cfg.implants.push_back(ImplantSpec{Strategy::Boost, 3, 2, 60, std::nullopt});
    const Corpus corpus = generate(cfg);
    std::ostringstream out;
    write_truth_csv(corpus, out);
    std::istringstream in(out.str());
    CHECK(load_truth_csv(in) == corpus.truth);
}
