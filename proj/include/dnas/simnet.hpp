// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dnas/consensus.hpp"
#include "dnas/keyring.hpp"
#include "dnas/ledger.hpp"
#include "dnas/provenance.hpp"
#include "dnas/registry.hpp"

namespace dnas::sim {

/// Deterministic discrete-event loop. Events execute in (time, actor id,
/// sequence) order; a single thread hosts all logically concurrent actors.
class EventLoop {
public:
    void schedule(std::int64_t time, std::uint32_t actor, std::function<void()> fn);
    /// Runs every event due at or before `time` and advances the clock.
    void run_until(std::int64_t time);
    std::int64_t now() const { return now_; }

private:
    struct Entry {
        std::int64_t time;
        std::uint32_t actor;
        std::uint64_t seq;
        std::shared_ptr<std::function<void()>> fn;
        bool operator>(const Entry& other) const {
            if (time != other.time) return time > other.time;
            if (actor != other.actor) return actor > other.actor;
            return seq > other.seq;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
    std::int64_t now_ = 0;
    std::uint64_t next_seq_ = 0;
};

struct NodeTraceEvent {
    std::int64_t time = 0;
    std::string what;  // "killed" | "rejoined" | "resynced"
};

/// One blockchain node actor: validators vote on blocks, listeners only
/// replicate them. Every node keeps a full chain and state replica plus its
/// participant's off-chain provenance store.
class Node {
public:
    Node(std::string name, std::uint32_t actor_id, bool is_validator, const Block& genesis,
         RegistryState genesis_state, const ValidatorSet& validators, GasSchedule gas);

    const std::string& name() const { return name_; }
    std::uint32_t actor_id() const { return actor_id_; }
    bool is_validator() const { return is_validator_; }
    bool alive() const { return alive_; }
    void set_alive(bool alive) { alive_ = alive; }

    /// Verifies quorum votes, appends and executes the block, checks the
    /// sealed state root against the local replica and updates the off-chain
    /// store from custody events.
    void apply_block(const Block& block);

    /// Rebuilds chain and state by replaying the peer's blocks from genesis.
    void resync_from(const Node& peer);

    Chain& chain() { return chain_; }
    const Chain& chain() const { return chain_; }
    RegistryState& state() { return state_; }
    const RegistryState& state() const { return state_; }
    Mempool& pool() { return pool_; }
    ProvenanceStore& store() { return store_; }
    const ProvenanceStore& store() const { return store_; }
    const std::vector<std::vector<Receipt>>& receipts() const { return receipts_; }
    std::vector<NodeTraceEvent>& trace() { return trace_; }
    const std::vector<NodeTraceEvent>& trace() const { return trace_; }

private:
    std::string name_;
    std::uint32_t actor_id_;
    bool is_validator_;
    bool alive_ = true;
    Block genesis_;
    RegistryState genesis_state_;
    const ValidatorSet& validators_;
    GasSchedule gas_;
    Chain chain_;
    RegistryState state_;
    Mempool pool_;
    ProvenanceStore store_;
    std::vector<std::vector<Receipt>> receipts_;  // per applied block
    std::vector<NodeTraceEvent> trace_;
};

struct EntitySpec {
    std::string id;
    Role role = Role::None;
};

struct NetworkConfig {
    std::uint64_t seed = 1;
    std::size_t validator_count = 4;
    std::vector<EntitySpec> entities;
    std::int64_t block_time = 12;
    GasSchedule gas;
    std::map<std::string, std::int64_t> block_delivery_latency;  // per node name, default 0
};

struct AdmissionRecord {
    std::string context;
    Admission admission = Admission::Accepted;
    std::int64_t time = 0;
};

/// Permissioned network of validator and listener node actors driven by
/// round-robin PoA at fixed simulated block times. The administrator key is
/// derived from a constant seed so the genesis block is identical across
/// runs; every other key derives from the run seed.
class Network {
public:
    explicit Network(const NetworkConfig& config);

    static const char* admin_entity() { return "admin"; }

    // Identity and keys.
    Keystore& keystore() { return keystore_; }
    const Address& admin_address() const { return admin_address_; }
    const crypto::PublicKey& admin_public_key() const { return admin_key_.public_key; }
    const crypto::SecretKey& admin_secret_key() const { return admin_key_.secret_key; }
    Address entity_address(const std::string& entity) const;
    crypto::Signature sign_as(const std::string& entity, const Digest& digest) const;
    RotationRegistry& offchain_rotation() { return offchain_rotation_; }

    // Nodes.
    Node& node(const std::string& name);
    const Node& node(const std::string& name) const;
    Node& validator(std::size_t index);
    Node& reference();  // first alive node, for queries and tx building
    std::vector<std::string> node_names() const;
    const ValidatorSet& validator_set() const { return validator_set_; }
    const GasSchedule& gas() const { return gas_; }

    // Transactions.
    std::uint64_t next_nonce(const Address& sender);
    Transaction build_tx(const std::string& entity, Method method, Bytes params,
                         std::uint64_t gas_price = 1, std::uint64_t gas_limit = 100);
    /// Delivers to every alive node's pool; returns the reference admission.
    Admission submit_tx(const Transaction& tx, const std::string& context = "");

    // Consensus driving.
    void advance_round();
    void advance_rounds(std::size_t n);
    /// Advances until the reference pool drains (or max_rounds elapse).
    void run_until_pool_empty(std::size_t max_rounds = 64);
    std::int64_t now() const { return loop_.now(); }

    // Faults.
    void kill_node_at(const std::string& name, std::int64_t time);
    void rejoin_node_at(const std::string& name, std::int64_t time);

    // Key lifecycle.
    void register_entity_tx(const std::string& entity, Role role);  // admin-signed, submitted
    const EntityKey& rotate_entity(const std::string& entity);      // admin-authorized, tx submitted
    void mark_compromised(const std::string& entity);
    const std::set<Address>& compromised() const { return compromised_; }

    // Bookkeeping.
    std::uint64_t blocks_produced() const { return blocks_produced_; }
    std::uint64_t rounds_elapsed() const { return rounds_elapsed_; }
    std::uint64_t txs_finalized() const { return txs_finalized_; }
    const std::vector<AdmissionRecord>& rejections() const { return rejections_; }
    std::mt19937_64& rng() { return rng_; }

private:
    void run_proposal(std::uint64_t round);
    std::int64_t latency_of(const std::string& node_name) const;

    NetworkConfig config_;
    EventLoop loop_;
    GasSchedule gas_;
    Keystore admin_keystore_;
    Keystore keystore_;
    crypto::KeyMaterial admin_key_;
    Address admin_address_;
    RotationRegistry offchain_rotation_;
    ValidatorSet validator_set_;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::map<std::string, Node*> by_name_;
    std::map<std::string, Role> entity_roles_;
    std::map<Address, std::uint64_t> issued_nonce_;
    std::set<Address> compromised_;
    std::mt19937_64 rng_;
    std::uint64_t rounds_elapsed_ = 0;
    std::uint64_t blocks_produced_ = 0;
    std::uint64_t txs_finalized_ = 0;
    std::vector<AdmissionRecord> rejections_;
};

}  // namespace dnas::sim
