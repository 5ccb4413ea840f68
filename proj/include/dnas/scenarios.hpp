// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dnas/simnet.hpp"
#include "dnas/validation.hpp"

namespace dnas::sim {

struct KillSpec {
    std::string node;
    std::int64_t at = 0;      // simulated seconds
    std::int64_t rejoin = -1; // -1: stays down
};

/// Full run description; the seed determines the run bit-exactly. Loadable
/// from a declarative scenario JSON file (docs/formats.md).
struct SimConfig {
    std::string scenario = "happy-path";
    std::uint64_t seed = 1;
    std::size_t validators = 4;
    std::int64_t block_time = 12;
    std::uint64_t block_gas_limit = 800;
    std::vector<EntitySpec> entities;  // empty: scenario default roster

    // Scenario parameters.
    std::uint64_t hops = 2;            // custody transfers along the chain
    std::uint64_t rotation_period = 10;
    std::uint64_t tx_count = 100;
    std::uint64_t spam_txs = 1100;
    std::uint64_t honest_txs = 10;
    std::uint64_t trials = 1;
    bool forgeable_uid = false;
    std::vector<KillSpec> kills;

    nlohmann::json to_json() const;
    static SimConfig from_json(const nlohmann::json& j);
    static SimConfig from_file(const std::string& path);
};

struct VerdictRecord {
    std::string pid;
    std::string node;
    Outcome outcome = Outcome::Genuine;
    std::vector<CheckId> evidence;
    std::int64_t time = 0;
};

struct ScenarioReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string expected_detection;  // verdict class or rejection the run must observe
    bool detection_observed = false;
    bool passed = false;
    std::vector<VerdictRecord> verdicts;
    std::uint64_t blocks_produced = 0;
    std::uint64_t txs_finalized = 0;
    std::uint64_t txs_dropped = 0;
    nlohmann::json rejections = nlohmann::json::array();
    nlohmann::json availability = nlohmann::json::array();
    std::optional<double> linkability;
    nlohmann::json extra = nlohmann::json::object();
    std::vector<std::string> notes;

    std::string to_json() const;  // canonical, byte-stable for a fixed config
    std::string summary_table() const;
};

/// Report plus the run artifacts the CLI writes out.
struct ScenarioRun {
    ScenarioReport report;
    std::string chain_jsonl;
    std::map<std::string, std::string> stores;  // node -> provenance log
    std::map<std::string, std::string> tags;    // label -> tag fixture json
};

std::vector<std::string> scenario_catalog();
bool scenario_known(const std::string& id);

/// Executes the scripted schedule for config.scenario. Throws
/// UnknownScenario for ids outside the catalog.
ScenarioRun run_scenario(const SimConfig& config);

/// Randomized honest supply chains (register, hops, sale, interleaved
/// consumer reads); returns how many validations came back non-Genuine.
/// Zero is the expected answer at any seed.
std::uint64_t fuzz_honest_false_positives(std::uint64_t seed, std::uint64_t trials,
                                          std::uint64_t max_hops = 10);

/// Linkability of k-periodic rotation over n transactions predicted by pair
/// counting: sum over address groups of C(g,2) divided by C(n,2).
double linkability_oracle(std::uint64_t tx_count, std::uint64_t rotation_period);

}  // namespace dnas::sim
