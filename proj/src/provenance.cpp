// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/provenance.hpp"

#include <json.hpp>

#include "dnas/crypto.hpp"
#include "dnas/errors.hpp"

namespace dnas {

using nlohmann::json;

namespace {

json pedigree_to_json(const PedigreeData& p) {
    return json{{"pid", p.pid},
                {"producer", p.producer.hex()},
                {"vintage", p.vintage},
                {"bottling_date", p.bottling_date}};
}

PedigreeData pedigree_from_json(const json& j) {
    return {j.at("pid").get<std::string>(), Address::from_hex(j.at("producer").get<std::string>()),
            j.at("vintage").get<std::string>(), j.at("bottling_date").get<std::string>()};
}

json custody_to_json(const CustodyEntry& e) {
    return json{{"from", e.from.hex()},
                {"to", e.to.hex()},
                {"height", e.height},
                {"tx_hash", e.tx_hash.hex()}};
}

CustodyEntry custody_from_json(const json& j) {
    return {Address::from_hex(j.at("from").get<std::string>()),
            Address::from_hex(j.at("to").get<std::string>()), j.at("height").get<std::uint64_t>(),
            Digest::from_hex(j.at("tx_hash").get<std::string>())};
}

json step_to_json(const StepAnnotation& e) {
    return json{{"node", e.node}, {"note", e.note}, {"time", e.time}};
}

StepAnnotation step_from_json(const json& j) {
    return {j.at("node").get<std::string>(), j.at("note").get<std::string>(),
            j.at("time").get<std::int64_t>()};
}

json failed_to_json(const FailedValidationEntry& e) {
    return json{{"subject", e.subject},
                {"verdict", e.verdict},
                {"context", e.context},
                {"time", e.time},
                {"reporting_node", e.reporting_node}};
}

FailedValidationEntry failed_from_json(const json& j) {
    return {j.at("subject").get<std::string>(), j.at("verdict").get<std::string>(),
            j.at("context").get<std::string>(), j.at("time").get<std::int64_t>(),
            j.at("reporting_node").get<std::string>()};
}

Digest entry_digest(const json& j) { return crypto::sha256(as_span(j.dump())); }

}  // namespace

ProductRecord& ProvenanceStore::record_for(const std::string& pid) {
    auto it = records_.find(pid);
    if (it == records_.end()) {
        ProductRecord record;
        record.pid = pid;
        it = records_.emplace(pid, std::move(record)).first;
    }
    return it->second;
}

bool ProvenanceStore::remember(const std::string& pid, const std::string& category,
                               const Digest& digest) {
    return seen_[pid].insert(category + ":" + digest.hex()).second;
}

void ProvenanceStore::log_append(const std::string& op, const std::string& pid,
                                 const std::string& entry_json) {
    const json line{{"op", op}, {"pid", pid}, {"entry", json::parse(entry_json)}};
    log_.push_back(line.dump());
}

void ProvenanceStore::upsert_pedigree(const std::string& pid, const PedigreeData& pedigree) {
    const json entry = pedigree_to_json(pedigree);
    if (!remember(pid, "pedigree", entry_digest(entry))) return;
    record_for(pid).pedigree = pedigree;
    log_append("pedigree", pid, entry.dump());
}

void ProvenanceStore::append_custody(const std::string& pid, const CustodyEntry& entry) {
    const json j = custody_to_json(entry);
    if (!remember(pid, "transaction_history", entry_digest(j))) return;
    record_for(pid).transaction_history.push_back(entry);
    log_append("transaction_history", pid, j.dump());
}

void ProvenanceStore::append_step(const std::string& pid, const StepAnnotation& entry) {
    const json j = step_to_json(entry);
    if (!remember(pid, "supply_chain_data", entry_digest(j))) return;
    record_for(pid).supply_chain_data.push_back(entry);
    log_append("supply_chain_data", pid, j.dump());
}

void ProvenanceStore::record_unsuccessful(const std::string& subject, const std::string& verdict,
                                          const std::string& context, std::int64_t time) {
    if (verdict == "Genuine")
        throw Error(ErrorCode::ParseError, "a success verdict is not an unsuccessful validation");
    FailedValidationEntry entry{subject, verdict, context, time, node_};
    const json j = failed_to_json(entry);
    if (!remember(subject, "unsuccessful_validation", entry_digest(j))) return;
    record_for(subject).unsuccessful_validations.push_back(entry);
    log_append("unsuccessful_validation", subject, j.dump());
}

void ProvenanceStore::sync_shadows(const std::string& pid, std::uint64_t tag_read_count,
                                   std::uint64_t tag_write_count) {
    auto it = records_.find(pid);
    if (it == records_.end()) throw Error(ErrorCode::UnknownPid, pid);
    ProductRecord& record = it->second;
    const std::uint64_t rc = std::max(record.read_count_shadow, tag_read_count);
    const std::uint64_t wc = std::max(record.write_count_shadow, tag_write_count);
    if (rc == record.read_count_shadow && wc == record.write_count_shadow) return;
    record.read_count_shadow = rc;
    record.write_count_shadow = wc;
    const json j{{"read_count", rc}, {"write_count", wc}};
    log_append("shadows", pid, j.dump());
}

void ProvenanceStore::upsert_record(const std::string& pid, const std::string& category,
                                    const std::string& entry_json) {
    const json entry = json::parse(entry_json);
    if (category == "pedigree") {
        upsert_pedigree(pid, pedigree_from_json(entry));
    } else if (category == "transaction_history") {
        append_custody(pid, custody_from_json(entry));
    } else if (category == "supply_chain_data") {
        append_step(pid, step_from_json(entry));
    } else if (category == "unsuccessful_validation") {
        const auto e = failed_from_json(entry);
        record_unsuccessful(pid, e.verdict, e.context, e.time);
    } else {
        throw Error(ErrorCode::UnknownCategory, category);
    }
}

const ProductRecord& ProvenanceStore::query_by_pid(const std::string& pid) const {
    auto it = records_.find(pid);
    if (it == records_.end()) throw Error(ErrorCode::UnknownPid, pid);
    return it->second;
}

const ProductRecord* ProvenanceStore::find(const std::string& pid) const {
    auto it = records_.find(pid);
    return it == records_.end() ? nullptr : &it->second;
}

std::uint64_t ProvenanceStore::read_shadow(const std::string& pid) const {
    const ProductRecord* record = find(pid);
    return record == nullptr ? 0 : record->read_count_shadow;
}

std::string ProvenanceStore::to_jsonl() const {
    std::string out;
    for (const auto& line : log_) {
        out += line;
        out += '\n';
    }
    return out;
}

ProvenanceStore ProvenanceStore::from_jsonl(const std::string& text, std::string node_name) {
    ProvenanceStore store(std::move(node_name));
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        const json j = json::parse(line);
        const std::string op = j.at("op").get<std::string>();
        const std::string pid = j.at("pid").get<std::string>();
        const json& entry = j.at("entry");
        if (op == "shadows") {
            store.record_for(pid);
            store.sync_shadows(pid, entry.at("read_count").get<std::uint64_t>(),
                               entry.at("write_count").get<std::uint64_t>());
        } else if (op == "unsuccessful_validation") {
            const auto e = failed_from_json(entry);
            store.record_unsuccessful(pid, e.verdict, e.context, e.time);
        } else {
            store.upsert_record(pid, op, entry.dump());
        }
    }
    return store;
}

std::string ProvenanceStore::dump_record_json(const std::string& pid) const {
    const ProductRecord& record = query_by_pid(pid);
    json history = json::array();
    for (const auto& e : record.transaction_history) history.push_back(custody_to_json(e));
    json steps = json::array();
    for (const auto& e : record.supply_chain_data) steps.push_back(step_to_json(e));
    json failures = json::array();
    for (const auto& e : record.unsuccessful_validations) failures.push_back(failed_to_json(e));
    const json j{
        {"pid", record.pid},
        {"pedigree", record.pedigree ? pedigree_to_json(*record.pedigree) : json(nullptr)},
        {"transaction_history", history},
        {"supply_chain_data", steps},
        {"unsuccessful_validations", failures},
        {"read_count_shadow", record.read_count_shadow},
        {"write_count_shadow", record.write_count_shadow},
    };
    return j.dump(2) + "\n";
}

}  // namespace dnas
