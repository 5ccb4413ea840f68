// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "dnas/errors.hpp"
#include "dnas/provenance.hpp"

using namespace dnas;

namespace {

CustodyEntry hop(std::uint8_t n) {
    CustodyEntry e;
    e.from.bytes[0] = n;
    e.to.bytes[0] = static_cast<std::uint8_t>(n + 1);
    e.height = n;
    e.tx_hash.bytes[0] = n;
    return e;
}

}  // namespace

TEST_CASE("history appends and is idempotent on identical entries") {
    ProvenanceStore store("distributor-1");
    store.append_custody("W-0001", hop(1));
    CHECK(store.query_by_pid("W-0001").transaction_history.size() == 1);
    store.append_custody("W-0001", hop(1));  // identical digest: no growth
    CHECK(store.query_by_pid("W-0001").transaction_history.size() == 1);
    store.append_custody("W-0001", hop(2));
    CHECK(store.query_by_pid("W-0001").transaction_history.size() == 2);
}

TEST_CASE("pedigree replaces rather than appends") {
    ProvenanceStore store;
    PedigreeData p{"W-0001", {}, "2019", "2020-06-01"};
    store.upsert_pedigree("W-0001", p);
    p.vintage = "2020";
    store.upsert_pedigree("W-0001", p);
    CHECK(store.query_by_pid("W-0001").pedigree->vintage == "2020");
}

TEST_CASE("queries fail for unknown pids and unknown categories") {
    ProvenanceStore store;
    CHECK_THROWS_AS(store.query_by_pid("GHOST"), Error);
    CHECK_THROWS_AS(store.upsert_record("W-0001", "telemetry", "{}"), Error);
    CHECK(store.read_shadow("GHOST") == 0);
}

TEST_CASE("unsuccessful validations append in order and reject success verdicts") {
    ProvenanceStore store("retailer-1");
    store.record_unsuccessful("W-0001", "CloneDetected", "uid mismatch", 10);
    store.record_unsuccessful("W-0001", "CloneDetected", "uid mismatch", 25);
    const auto& record = store.query_by_pid("W-0001");
    REQUIRE(record.unsuccessful_validations.size() == 2);
    CHECK(record.unsuccessful_validations[0].time == 10);
    CHECK(record.unsuccessful_validations[1].time == 25);
    CHECK(record.unsuccessful_validations[0].reporting_node == "retailer-1");
    CHECK_THROWS_AS(store.record_unsuccessful("W-0001", "Genuine", "", 30), Error);
}

TEST_CASE("shadows only move up") {
    ProvenanceStore store;
    store.upsert_pedigree("W-0001", {"W-0001", {}, "2019", "2020"});
    store.sync_shadows("W-0001", 5, 2);
    CHECK(store.query_by_pid("W-0001").read_count_shadow == 5);
    CHECK(store.query_by_pid("W-0001").write_count_shadow == 2);
    store.sync_shadows("W-0001", 3, 1);  // lower tag counters: shadows hold
    CHECK(store.query_by_pid("W-0001").read_count_shadow == 5);
    CHECK(store.query_by_pid("W-0001").write_count_shadow == 2);
    CHECK_THROWS_AS(store.sync_shadows("GHOST", 1, 1), Error);
}

TEST_CASE("replaying the log rebuilds identical state") {
    ProvenanceStore store("node-a");
    store.upsert_pedigree("W-0001", {"W-0001", {}, "2019", "2020"});
    store.append_custody("W-0001", hop(1));
    store.append_custody("W-0001", hop(2));
    store.append_step("W-0001", {"node-a", "validation", 30});
    store.sync_shadows("W-0001", 4, 3);
    store.record_unsuccessful("W-0002", "TagUnreadable", "disabled", 44);

    const std::string log = store.to_jsonl();
    const ProvenanceStore replayed = ProvenanceStore::from_jsonl(log, "node-a");
    CHECK(replayed.to_jsonl() == log);
    CHECK(replayed.query_by_pid("W-0001").transaction_history.size() == 2);
    CHECK(replayed.query_by_pid("W-0001").read_count_shadow == 4);
    CHECK(replayed.query_by_pid("W-0002").unsuccessful_validations.size() == 1);
    CHECK(replayed.dump_record_json("W-0001") == store.dump_record_json("W-0001"));
}

TEST_CASE("generic upsert path accepts all four categories") {
    ProvenanceStore store;
    store.upsert_record("W-0001", "pedigree",
                        R"({"pid":"W-0001","producer":"0000000000000000000000000000000000000000",
                            "vintage":"2019","bottling_date":"2020"})");
    store.upsert_record("W-0001", "transaction_history",
                        R"({"from":"0100000000000000000000000000000000000000",
                            "to":"0200000000000000000000000000000000000000","height":3,
                            "tx_hash":"0000000000000000000000000000000000000000000000000000000000000000"})");
    store.upsert_record("W-0001", "supply_chain_data",
                        R"({"node":"n","note":"received","time":9})");
    store.upsert_record("W-0001", "unsuccessful_validation",
                        R"({"subject":"W-0001","verdict":"CloneDetected","context":"c",
                            "time":11,"reporting_node":"n"})");
    const auto& record = store.query_by_pid("W-0001");
    CHECK(record.pedigree.has_value());
    CHECK(record.transaction_history.size() == 1);
    CHECK(record.supply_chain_data.size() == 1);
    CHECK(record.unsuccessful_validations.size() == 1);
}
