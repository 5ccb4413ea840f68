// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "dnas/errors.hpp"
#include "dnas/scenarios.hpp"

using namespace dnas;
using namespace dnas::sim;

namespace {

SimConfig cfg_for(const std::string& scenario, std::uint64_t seed = 7) {
    SimConfig cfg;
    cfg.scenario = scenario;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("identical configs give byte-identical reports and chain dumps") {
    const ScenarioRun a = run_scenario(cfg_for("t01-clone"));
    const ScenarioRun b = run_scenario(cfg_for("t01-clone"));
    CHECK(a.report.to_json() == b.report.to_json());
    CHECK(a.chain_jsonl == b.chain_jsonl);
    CHECK(a.stores == b.stores);

    const ScenarioRun c = run_scenario(cfg_for("t01-clone", 8));
    CHECK(c.chain_jsonl != a.chain_jsonl);  // the seed matters
}

TEST_CASE("happy path stays genuine end to end") {
    const ScenarioRun run = run_scenario(cfg_for("happy-path"));
    CHECK(run.report.passed);
    REQUIRE(!run.report.verdicts.empty());
    for (const auto& v : run.report.verdicts) CHECK(v.outcome == Outcome::Genuine);
    CHECK(run.report.blocks_produced > 0);
}

TEST_CASE("threat scenarios produce their expected verdict classes") {
    const std::map<std::string, Outcome> expected{
        {"t01-clone", Outcome::CloneDetected},
        {"t03-disable", Outcome::TagUnreadable},
        {"t04-modify", Outcome::ModificationDetected},
        {"reapplication", Outcome::ReapplicationDetected},
    };
    for (const auto& [scenario, outcome] : expected) {
        const ScenarioRun run = run_scenario(cfg_for(scenario));
        INFO(scenario);
        CHECK(run.report.passed);
        CHECK(run.report.detection_observed);
        const bool seen = std::any_of(run.report.verdicts.begin(), run.report.verdicts.end(),
                                      [&](const auto& v) { return v.outcome == outcome; });
        CHECK(seen);
    }
}

TEST_CASE("replay and spoof scenarios reject at admission") {
    const ScenarioRun replay = run_scenario(cfg_for("t08-replay"));
    CHECK(replay.report.passed);
    CHECK(replay.report.extra.at("replay_admission").get<std::string>() == "BadNonce");
    CHECK(replay.report.extra.at("redirected_admission").get<std::string>() == "BadSignature");
    CHECK(replay.report.extra.at("custody_entries").get<std::uint64_t>() == 1);

    const ScenarioRun spoof = run_scenario(cfg_for("t14-spoof"));
    CHECK(spoof.report.passed);
    CHECK(spoof.report.extra.at("forged_admission").get<std::string>() == "BadSignature");
    CHECK(spoof.report.extra.at("misrole_status").get<std::string>() == "Unauthorized");
}

TEST_CASE("dos scenario preserves honest throughput under spam") {
    SimConfig cfg = cfg_for("t11-dos");
    cfg.spam_txs = 1100;
    cfg.honest_txs = 10;
    const ScenarioRun run = run_scenario(cfg);
    CHECK(run.report.passed);
    CHECK(run.report.extra.at("honest_included").get<std::uint64_t>() == 10);
    CHECK(run.report.extra.at("spam_backlog").get<std::uint64_t>() >= 1000);
    CHECK(run.report.extra.at("max_block_gas").get<std::uint64_t>() <= cfg.block_gas_limit);
}

TEST_CASE("availability scenario: finality degrades and recovers with the quorum") {
    const ScenarioRun run = run_scenario(cfg_for("availability"));
    CHECK(run.report.passed);
    CHECK(run.report.extra.at("phase1_finality_continued").get<bool>());
    CHECK(run.report.extra.at("phase2_finality_halted").get<bool>());
    CHECK(run.report.extra.at("phase2_query_served").get<bool>());
    CHECK(run.report.extra.at("phase3_replicas_agree").get<bool>());
}

TEST_CASE("linkability equals the combinatorial oracle across the rotation grid") {
    CHECK(linkability_oracle(100, 10) == doctest::Approx(450.0 / 4950.0));
    CHECK(linkability_oracle(100, 0) == 1.0);
    CHECK(linkability_oracle(100, 1) == 0.0);

    SimConfig cfg = cfg_for("linkability");
    cfg.tx_count = 30;  // smaller grid cell; the acceptance suite runs k=10 over 100
    cfg.rotation_period = 5;
    const ScenarioRun run = run_scenario(cfg);
    REQUIRE(run.report.linkability.has_value());
    CHECK(*run.report.linkability == doctest::Approx(linkability_oracle(30, 5)).epsilon(1e-12));
}

TEST_CASE("liveness: an honest pool drains within one validator rotation") {
    SimConfig cfg = cfg_for("happy-path");
    const ScenarioRun run = run_scenario(cfg);
    // Every scripted step used run_until_pool_empty with a 64-round cap; the
    // report finishing with blocks < steps * validators implies each batch
    // landed within the rotation. Check the stronger direct property here:
    NetworkConfig net_cfg;
    net_cfg.entities.push_back({"winemaker-1", Role::Producer});
    Network net(net_cfg);
    net.register_entity_tx("winemaker-1", Role::Producer);
    const std::uint64_t before = net.reference().chain().length();
    net.advance_rounds(net_cfg.validator_count);
    CHECK(net.reference().pool().size() == 0);
    CHECK(net.reference().chain().length() > before);
    CHECK(run.report.passed);
}

TEST_CASE("replication: every honest node ends at the same state digest") {
    NetworkConfig cfg;
    cfg.entities.push_back({"winemaker-1", Role::Producer});
    cfg.entities.push_back({"retailer-1", Role::Retailer});
    Network net(cfg);
    net.register_entity_tx("winemaker-1", Role::Producer);
    net.register_entity_tx("retailer-1", Role::Retailer);
    net.run_until_pool_empty();

    const Digest digest = net.reference().state().state_digest();
    for (const auto& name : net.node_names()) {
        CHECK(net.node(name).state().state_digest() == digest);
        CHECK(net.node(name).chain().tip() == net.reference().chain().tip());
    }
}

TEST_CASE("store rebuilt from its log matches the incremental store") {
    const ScenarioRun run = run_scenario(cfg_for("happy-path"));
    for (const auto& [node, log] : run.stores) {
        const ProvenanceStore replayed = ProvenanceStore::from_jsonl(log, node);
        CHECK(replayed.to_jsonl() == log);
    }
    // Two honest nodes agree on the shared custody history.
    const ProvenanceStore distributor =
        ProvenanceStore::from_jsonl(run.stores.at("distributor-1"), "distributor-1");
    const ProvenanceStore retailer =
        ProvenanceStore::from_jsonl(run.stores.at("retailer-1"), "retailer-1");
    const auto& h1 = distributor.query_by_pid("W-0001").transaction_history;
    const auto& h2 = retailer.query_by_pid("W-0001").transaction_history;
    REQUIRE(h1.size() == h2.size());
    for (std::size_t i = 0; i < h1.size(); ++i) CHECK(h1[i].tx_hash == h2[i].tx_hash);
}

TEST_CASE("fuzzed honest runs produce zero false positives") {
    CHECK(fuzz_honest_false_positives(31337, 25) == 0);
}

TEST_CASE("unknown scenario ids are rejected") {
    CHECK_THROWS_AS(run_scenario(cfg_for("no-such-scenario")), dnas::Error);
    CHECK(scenario_known("t01-clone"));
    CHECK_FALSE(scenario_known("no-such-scenario"));
    CHECK(scenario_catalog().size() >= 10);
}

TEST_CASE("scenario config round trips through json") {
    SimConfig cfg = cfg_for("availability", 99);
    cfg.kills.push_back({"validator-1", 24, 120});
    cfg.rotation_period = 5;
    const SimConfig back = SimConfig::from_json(cfg.to_json());
    CHECK(back.scenario == cfg.scenario);
    CHECK(back.seed == cfg.seed);
    CHECK(back.kills.size() == 1);
    CHECK(back.kills[0].node == "validator-1");
    CHECK(back.kills[0].rejoin == 120);
    CHECK(back.rotation_period == 5);
}
