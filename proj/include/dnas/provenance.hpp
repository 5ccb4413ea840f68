// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dnas/bytes.hpp"

namespace dnas {

/// Static product identity metadata, mirrored from the signed tag payload.
struct PedigreeData {
    std::string pid;
    Address producer;
    std::string vintage;
    std::string bottling_date;
};

/// One custody hop, mirroring an on-chain CustodyTransferred event.
struct CustodyEntry {
    Address from;
    Address to;
    std::uint64_t height = 0;
    Digest tx_hash;
};

struct StepAnnotation {
    std::string node;
    std::string note;
    std::int64_t time = 0;
};

struct FailedValidationEntry {
    std::string subject;  // pid, or tag uid hex when the pid is unknown
    std::string verdict;
    std::string context;
    std::int64_t time = 0;
    std::string reporting_node;
};

/// The four data categories a participant keeps per product, plus the
/// off-chain shadow counters used by the count-consistency check.
struct ProductRecord {
    std::string pid;
    std::optional<PedigreeData> pedigree;
    std::vector<CustodyEntry> transaction_history;
    std::vector<StepAnnotation> supply_chain_data;
    std::vector<FailedValidationEntry> unsuccessful_validations;
    std::uint64_t read_count_shadow = 0;
    std::uint64_t write_count_shadow = 0;
};

/// Per-participant off-chain database: an in-memory index over an
/// append-only JSON-lines log. Replaying the log rebuilds the identical
/// state. Single writer per node; history appends are idempotent on the
/// entry digest.
class ProvenanceStore {
public:
    explicit ProvenanceStore(std::string node_name = "node") : node_(std::move(node_name)) {}

    void upsert_pedigree(const std::string& pid, const PedigreeData& pedigree);
    void append_custody(const std::string& pid, const CustodyEntry& entry);
    void append_step(const std::string& pid, const StepAnnotation& entry);

    /// Records a failed validation. The verdict string must name a
    /// non-genuine outcome; passing "Genuine" violates the precondition.
    void record_unsuccessful(const std::string& subject, const std::string& verdict,
                             const std::string& context, std::int64_t time);

    /// Raises shadows to the tag counters, never lowering them. Called only
    /// after a successful validation so a cloned tag cannot advance the
    /// victim's shadows. Throws UnknownPid for an untracked product.
    void sync_shadows(const std::string& pid, std::uint64_t tag_read_count,
                      std::uint64_t tag_write_count);

    /// Generic entry path used by the CLI: category is one of "pedigree",
    /// "transaction_history", "supply_chain_data", "unsuccessful_validation"
    /// with a JSON entry body. Throws UnknownCategory.
    void upsert_record(const std::string& pid, const std::string& category,
                       const std::string& entry_json);

    const ProductRecord& query_by_pid(const std::string& pid) const;  // throws UnknownPid
    const ProductRecord* find(const std::string& pid) const;
    std::uint64_t read_shadow(const std::string& pid) const;  // 0 for untracked pids
    const std::map<std::string, ProductRecord>& records() const { return records_; }
    const std::string& node_name() const { return node_; }

    /// Append-only log round-trip; replaying to_jsonl() reproduces the store
    /// byte-exactly.
    std::string to_jsonl() const;
    static ProvenanceStore from_jsonl(const std::string& text, std::string node_name = "node");

    /// Four-category dump for one pid, canonical JSON.
    std::string dump_record_json(const std::string& pid) const;

private:
    ProductRecord& record_for(const std::string& pid);
    bool remember(const std::string& pid, const std::string& category, const Digest& entry_digest);
    void log_append(const std::string& op, const std::string& pid, const std::string& entry_json);

    std::string node_;
    std::map<std::string, ProductRecord> records_;
    std::map<std::string, std::set<std::string>> seen_;  // pid -> entry digests
    std::vector<std::string> log_;
};

}  // namespace dnas
