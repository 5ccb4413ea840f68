// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/simnet.hpp"

#include <algorithm>

#include "dnas/codec.hpp"
#include "dnas/errors.hpp"

namespace dnas::sim {

void EventLoop::schedule(std::int64_t time, std::uint32_t actor, std::function<void()> fn) {
    queue_.push({time, actor, next_seq_++,
                 std::make_shared<std::function<void()>>(std::move(fn))});
}

void EventLoop::run_until(std::int64_t time) {
    while (!queue_.empty() && queue_.top().time <= time) {
        Entry entry = queue_.top();
        queue_.pop();
        now_ = entry.time;
        (*entry.fn)();
    }
    now_ = std::max(now_, time);
}

Node::Node(std::string name, std::uint32_t actor_id, bool is_validator, const Block& genesis,
           RegistryState genesis_state, const ValidatorSet& validators, GasSchedule gas)
    : name_(std::move(name)),
      actor_id_(actor_id),
      is_validator_(is_validator),
      genesis_(genesis),
      genesis_state_(genesis_state),
      validators_(validators),
      gas_(gas),
      chain_(gas.block_gas_limit),
      state_(std::move(genesis_state)),
      store_(name_) {
    chain_.append_block(genesis_);
    receipts_.push_back({});
}

void Node::apply_block(const Block& block) {
    const auto decision = vote_and_finalize(block, validators_, block.votes);
    if (!decision.finalized)
        throw Error(ErrorCode::Unauthorized, "block lacks a validator quorum");
    chain_.append_block(block);

    std::vector<Receipt> block_receipts;
    std::uint64_t gas_used = 0;
    std::uint32_t ordinal = 0;
    for (const auto& tx : block.body) {
        Receipt receipt = state_.execute_transaction(tx, block.header.height, ordinal, gas_);
        gas_used += receipt.gas_used;
        // Off-chain history mirrors on-chain custody events as they finalize.
        for (const auto& event : receipt.events) {
            if (event.name == "CustodyTransferred") {
                const auto params = TransferCustodyParams::decode(as_span(tx.params));
                store_.append_custody(event.pid,
                                      {tx.sender, params.to, event.height, receipt.tx_hash});
            }
        }
        block_receipts.push_back(std::move(receipt));
        ++ordinal;
    }
    if (gas_used > gas_.block_gas_limit)
        throw Error(ErrorCode::GasLimitExceeded, "executed block exceeds gas limit");
    if (state_.state_digest() != block.header.state_root)
        throw Error(ErrorCode::StateRootMismatch,
                    "replica state diverges from sealed state root at height " +
                        std::to_string(block.header.height));
    receipts_.push_back(std::move(block_receipts));

    pool_.remove_included(block);
    pool_.prune(state_);
}

void Node::resync_from(const Node& peer) {
    chain_ = Chain(gas_.block_gas_limit);
    state_ = genesis_state_;
    receipts_.clear();
    chain_.append_block(genesis_);
    receipts_.push_back({});
    for (std::size_t height = 1; height < peer.chain().length(); ++height)
        apply_block(peer.chain().at_height(height));
}

namespace {

Digest admin_master_seed() {
    // Constant: the genesis admin key must not vary with the run seed, so
    // the checked-in genesis digest stays stable.
    return crypto::sha256(as_span(std::string_view{"dnas/genesis/admin/v1"}));
}

Digest run_master_seed(std::uint64_t seed) {
    CanonicalWriter w;
    w.field("dnas/run-seed").field_u64(seed);
    return crypto::sha256(w.bytes());
}

}  // namespace

Network::Network(const NetworkConfig& config)
    : config_(config),
      gas_(config.gas),
      admin_keystore_(admin_master_seed()),
      keystore_(run_master_seed(config.seed)),
      rng_(config.seed) {
    const EntityKey& admin = admin_keystore_.generate(admin_entity(), 0);
    admin_key_ = admin.material;
    admin_address_ = admin.address;
    offchain_rotation_.append(admin_entity(), admin_address_, 0);

    RegistryState genesis_state =
        RegistryState::genesis(admin_entity(), admin_address_, admin_key_.public_key);
    const Block genesis = make_genesis(genesis_state.state_digest());

    for (std::size_t i = 0; i < config.validator_count; ++i) {
        const std::string id = "validator-" + std::to_string(i);
        const EntityKey& key = keystore_.generate(id, 0);
        validator_set_.validators.push_back(key.address);
        validator_set_.keys[key.address] = key.material.public_key;
    }

    std::uint32_t actor = 0;
    for (std::size_t i = 0; i < config.validator_count; ++i) {
        const std::string id = "validator-" + std::to_string(i);
        nodes_.push_back(
            std::make_unique<Node>(id, actor++, true, genesis, genesis_state, validator_set_, gas_));
        by_name_[id] = nodes_.back().get();
    }
    for (const auto& spec : config.entities) {
        keystore_.generate(spec.id, 0);
        entity_roles_[spec.id] = spec.role;
        nodes_.push_back(std::make_unique<Node>(spec.id, actor++, false, genesis, genesis_state,
                                                validator_set_, gas_));
        by_name_[spec.id] = nodes_.back().get();
    }
    nodes_.push_back(std::make_unique<Node>("observer", actor++, false, genesis, genesis_state,
                                            validator_set_, gas_));
    by_name_["observer"] = nodes_.back().get();
}

Address Network::entity_address(const std::string& entity) const {
    if (entity == admin_entity()) return admin_address_;
    return keystore_.current_key(entity).address;
}

crypto::Signature Network::sign_as(const std::string& entity, const Digest& digest) const {
    if (entity == admin_entity()) return crypto::sign(admin_key_.secret_key, digest);
    return keystore_.sign(entity, digest);
}

Node& Network::node(const std::string& name) {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw Error(ErrorCode::NotFound, "no node named " + name);
    return *it->second;
}

const Node& Network::node(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw Error(ErrorCode::NotFound, "no node named " + name);
    return *it->second;
}

Node& Network::validator(std::size_t index) {
    return node("validator-" + std::to_string(index));
}

Node& Network::reference() {
    for (auto& n : nodes_)
        if (n->alive()) return *n;
    throw Error(ErrorCode::ChainUnavailable, "no node is alive");
}

std::vector<std::string> Network::node_names() const {
    std::vector<std::string> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n->name());
    return out;
}

std::uint64_t Network::next_nonce(const Address& sender) {
    std::uint64_t base = 0;
    const Account* account = reference().state().account(sender);
    if (account != nullptr) base = account->nonce;
    std::uint64_t next = std::max(base, issued_nonce_[sender]);
    issued_nonce_[sender] = next + 1;
    return next;
}

Transaction Network::build_tx(const std::string& entity, Method method, Bytes params,
                              std::uint64_t gas_price, std::uint64_t gas_limit) {
    const Address sender = entity_address(entity);
    Transaction tx;
    tx.sender = sender;
    tx.nonce = next_nonce(sender);
    tx.method = method;
    tx.params = std::move(params);
    tx.gas_limit = gas_limit;
    tx.gas_price = gas_price;
    tx.signature = sign_as(entity, tx.digest());
    return tx;
}

Admission Network::submit_tx(const Transaction& tx, const std::string& context) {
    std::optional<Admission> reference_admission;
    for (auto& n : nodes_) {
        if (!n->alive()) continue;
        const Admission a = n->pool().admit(tx, n->state(), gas_, compromised_);
        if (!reference_admission) reference_admission = a;
    }
    const Admission result = reference_admission.value_or(Admission::BadSignature);
    if (result != Admission::Accepted)
        rejections_.push_back({context.empty() ? std::string(method_id(tx.method)) : context,
                               result, loop_.now()});
    return result;
}

void Network::advance_round() {
    const std::uint64_t round = rounds_elapsed_++;
    const std::int64_t when = static_cast<std::int64_t>(rounds_elapsed_) * config_.block_time;
    const Address proposer = validator_set_.proposer_for_round(round);
    std::uint32_t proposer_actor = 0;
    for (std::size_t i = 0; i < validator_set_.validators.size(); ++i)
        if (validator_set_.validators[i] == proposer)
            proposer_actor = static_cast<std::uint32_t>(i);
    loop_.schedule(when, proposer_actor, [this, round] { run_proposal(round); });
    loop_.run_until(when);
}

void Network::advance_rounds(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) advance_round();
}

void Network::run_until_pool_empty(std::size_t max_rounds) {
    for (std::size_t i = 0; i < max_rounds; ++i) {
        if (reference().pool().size() == 0) return;
        advance_round();
    }
}

void Network::run_proposal(std::uint64_t round) {
    const Address proposer_address = validator_set_.proposer_for_round(round);
    Node* proposer = nullptr;
    for (std::size_t i = 0; i < validator_set_.validators.size(); ++i)
        if (validator_set_.validators[i] == proposer_address) proposer = &validator(i);
    if (proposer == nullptr || !proposer->alive()) return;  // dead proposer skips its round

    Block block = propose_block(proposer->pool(), proposer->chain().tip_block().header,
                                proposer_address, round, validator_set_, proposer->state(), gas_,
                                loop_.now());

    std::vector<Vote> votes;
    for (std::size_t i = 0; i < validator_set_.validators.size(); ++i) {
        Node& v = validator(i);
        if (!v.alive()) continue;
        if (v.chain().tip() != block.header.parent_hash) continue;
        const std::string id = "validator-" + std::to_string(i);
        const auto& key = keystore_.current_key(id).material.secret_key;
        votes.push_back(make_vote(key, validator_set_.validators[i], block));
    }

    const auto decision = vote_and_finalize(block, validator_set_, votes);
    if (!decision.finalized) return;  // no quorum, no finality this round

    block.votes = std::move(votes);
    blocks_produced_ += 1;
    txs_finalized_ += block.body.size();
    for (auto& n : nodes_) {
        if (!n->alive()) continue;
        Node* target = n.get();
        const std::int64_t at = loop_.now() + latency_of(target->name());
        loop_.schedule(at, target->actor_id(), [target, block] {
            if (target->alive()) target->apply_block(block);
        });
    }
    loop_.run_until(loop_.now());
}

std::int64_t Network::latency_of(const std::string& node_name) const {
    auto it = config_.block_delivery_latency.find(node_name);
    return it == config_.block_delivery_latency.end() ? 0 : it->second;
}

void Network::kill_node_at(const std::string& name, std::int64_t time) {
    Node* target = &node(name);
    loop_.schedule(time, target->actor_id(), [target, time] {
        target->set_alive(false);
        target->trace().push_back({time, "killed"});
    });
}

void Network::rejoin_node_at(const std::string& name, std::int64_t time) {
    Node* target = &node(name);
    loop_.schedule(time, target->actor_id(), [this, target, time] {
        target->set_alive(true);
        target->trace().push_back({time, "rejoined"});
        const Node* best = nullptr;
        for (const auto& peer : nodes_)
            if (peer->alive() && peer.get() != target &&
                (best == nullptr || peer->chain().length() > best->chain().length()))
                best = peer.get();
        if (best != nullptr && best->chain().length() > target->chain().length()) {
            target->resync_from(*best);
            target->trace().push_back({time, "resynced"});
        }
    });
}

void Network::register_entity_tx(const std::string& entity, Role role) {
    if (!keystore_.has(entity)) keystore_.generate(entity, loop_.now());
    entity_roles_[entity] = role;
    const EntityKey& key = keystore_.current_key(entity);
    if (offchain_rotation_.has(entity) == false)
        offchain_rotation_.append(entity, key.address, reference().chain().length());
    RegisterEntityParams params{entity, key.address, role, key.material.public_key};
    submit_tx(build_tx(admin_entity(), Method::RegisterEntity, params.encode()),
              "register_entity:" + entity);
}

const EntityKey& Network::rotate_entity(const std::string& entity) {
    const std::uint64_t height = reference().chain().length();
    const AdminAuth auth =
        make_rotation_auth(admin_key_.secret_key, admin_address_, entity, height);
    const EntityKey& fresh = rotate(keystore_, offchain_rotation_, entity, auth,
                                    admin_key_.public_key, height, loop_.now());
    const Role role = entity_roles_.count(entity) != 0 ? entity_roles_[entity] : Role::None;
    RegisterEntityParams params{entity, fresh.address, role, fresh.material.public_key};
    submit_tx(build_tx(admin_entity(), Method::RegisterEntity, params.encode()),
              "rotate:" + entity);
    return fresh;
}

void Network::mark_compromised(const std::string& entity) {
    compromised_.insert(entity_address(entity));
    keystore_.mark_compromised(entity);
}

}  // namespace dnas::sim
