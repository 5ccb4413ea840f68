// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dnas/errors.hpp"

namespace dnas {

const Address& ValidatorSet::proposer_for_round(std::uint64_t round) const {
    if (validators.empty()) throw Error(ErrorCode::ChainUnavailable, "empty validator set");
    return validators[round % validators.size()];
}

bool ValidatorSet::contains(const Address& a) const {
    return std::find(validators.begin(), validators.end(), a) != validators.end();
}

std::string_view admission_name(Admission a) {
    switch (a) {
        case Admission::Accepted: return "Accepted";
        case Admission::BadSignature: return "BadSignature";
        case Admission::BadNonce: return "BadNonce";
        case Admission::GasLimitExceeded: return "GasLimitExceeded";
        case Admission::KeyCompromised: return "KeyCompromised";
        case Admission::Duplicate: return "Duplicate";
    }
    return "Unknown";
}

Admission Mempool::admit(const Transaction& tx, const RegistryState& state, const GasSchedule& gas,
                         const std::set<Address>& compromised) {
    const Digest id = tx.digest();
    const Account* sender = state.account(tx.sender);
    if (sender == nullptr) return Admission::BadSignature;
    if (!crypto::verify(sender->public_key, id, tx.signature)) return Admission::BadSignature;
    if (compromised.count(tx.sender) != 0) return Admission::KeyCompromised;
    if (tx.gas_limit > gas.block_gas_limit) return Admission::GasLimitExceeded;
    if (tx.nonce < sender->nonce) return Admission::BadNonce;
    if (seen_.count(id) != 0) return Admission::Duplicate;
    seen_.insert(id);
    pending_.emplace(id, tx);
    return Admission::Accepted;
}

void Mempool::remove_included(const Block& block) {
    for (const auto& tx : block.body) pending_.erase(tx.digest());
}

void Mempool::prune(const RegistryState& state) {
    for (auto it = pending_.begin(); it != pending_.end();) {
        const Account* sender = state.account(it->second.sender);
        if (sender != nullptr && it->second.nonce < sender->nonce)
            it = pending_.erase(it);
        else
            ++it;
    }
}

std::vector<Transaction> Mempool::pending_in_packing_order() const {
    std::vector<Transaction> txs;
    txs.reserve(pending_.size());
    for (const auto& [_, tx] : pending_) txs.push_back(tx);
    std::stable_sort(txs.begin(), txs.end(), [](const Transaction& a, const Transaction& b) {
        if (a.gas_price != b.gas_price) return a.gas_price > b.gas_price;
        if (a.nonce != b.nonce) return a.nonce < b.nonce;
        return a.digest() < b.digest();
    });
    return txs;
}

Block propose_block(Mempool& pool, const BlockHeader& parent, const Address& proposer,
                    std::uint64_t round, const ValidatorSet& set, const RegistryState& state,
                    const GasSchedule& gas, std::int64_t timestamp) {
    if (set.proposer_for_round(round) != proposer)
        throw Error(ErrorCode::NotYourTurn,
                    "round " + std::to_string(round) + " belongs to another validator");

    Block block;
    block.header.height = parent.height + 1;
    block.header.parent_hash = hash_header(parent);
    block.header.timestamp = timestamp;
    block.header.proposer = proposer;

    RegistryState scratch = state;
    std::uint64_t budget = gas.block_gas_limit;
    auto candidates = pool.pending_in_packing_order();
    std::vector<bool> packed(candidates.size(), false);
    std::uint32_t ordinal = 0;
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (packed[i]) continue;
            const Transaction& tx = candidates[i];
            if (tx.gas_limit > budget) continue;
            const Account* sender = scratch.account(tx.sender);
            if (sender == nullptr || tx.nonce != sender->nonce) continue;
            scratch.execute_transaction(tx, block.header.height, ordinal, gas);
            block.body.push_back(tx);
            budget -= tx.gas_limit;
            packed[i] = true;
            ++ordinal;
            progressed = true;
        }
    }

    block.header.merkle_root = block.body_merkle_root();
    block.header.state_root = scratch.state_digest();
    return block;
}

Vote make_vote(const crypto::SecretKey& key, const Address& validator, const Block& block) {
    return {validator, crypto::sign(key, hash_header(block.header))};
}

FinalityDecision vote_and_finalize(const Block& block, const ValidatorSet& set,
                                   const std::vector<Vote>& votes) {
    const Digest message = hash_header(block.header);
    std::set<Address> accepted;
    for (const auto& vote : votes) {
        if (!set.contains(vote.validator)) continue;
        auto key = set.keys.find(vote.validator);
        if (key == set.keys.end()) continue;
        if (!crypto::verify(key->second, message, vote.signature)) continue;
        accepted.insert(vote.validator);  // duplicates collapse here
    }
    FinalityDecision decision;
    decision.valid_votes = accepted.size();
    decision.quorum = set.quorum();
    decision.finalized = decision.valid_votes >= decision.quorum;
    return decision;
}

PowResult pow_mine(BlockHeader header, const PowParams& params) {
    if (params.difficulty_target.is_zero())
        throw Error(ErrorCode::NonceSpaceExhausted, "no hash is below a zero target");
    for (std::uint64_t nonce = 0;; ++nonce) {
        header.nonce = nonce;
        header.difficulty = params.difficulty_target;
        const Digest hash = hash_header(header);
        if (hash < params.difficulty_target) return {nonce, nonce + 1, hash};
        if (nonce == params.max_nonce)
            throw Error(ErrorCode::NonceSpaceExhausted,
                        "no nonce below target within bound " + std::to_string(params.max_nonce));
    }
}

namespace {

void check_fraction(double q) {
    if (!(q >= 0.0) || q >= 1.0)
        throw Error(ErrorCode::InvalidFraction, "attacker fraction must lie in [0, 1)");
}

}  // namespace

double double_spend_success_closed_form(const DoubleSpendQuery& query) {
    const double q = query.attacker_fraction_q;
    check_fraction(q);
    if (q == 0.0) return 0.0;
    if (q >= 0.5) return 1.0;

    const double p = 1.0 - q;
    const double ratio = q / p;
    const double lambda = query.confirmations_z * ratio;
    double probability = 1.0;
    double poisson = std::exp(-lambda);  // pmf at k = 0, then recurrence
    for (std::uint32_t k = 0; k <= query.confirmations_z; ++k) {
        if (k > 0) poisson *= lambda / k;
        probability -= poisson * (1.0 - std::pow(ratio, query.confirmations_z - k));
    }
    return std::clamp(probability, 0.0, 1.0);
}

double double_spend_success_monte_carlo(const DoubleSpendQuery& query) {
    const double q = query.attacker_fraction_q;
    check_fraction(q);
    if (q == 0.0) return 0.0;
    if (q >= 0.5) return 1.0;  // symmetric random walk recurrence

    const double p = 1.0 - q;
    const double attacker_rate = q / p;  // attacker blocks per honest block time
    std::mt19937_64 rng(query.seed);
    std::exponential_distribution<double> gap(attacker_rate);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // Truncating the catch-up walk 64 behind the start biases the estimate
    // by less than (q/p)^64, far below the Monte Carlo standard error.
    std::uint64_t successes = 0;
    for (std::uint64_t trial = 0; trial < query.trials; ++trial) {
        const double window = static_cast<double>(query.confirmations_z);
        std::int64_t attacker_blocks = 0;
        for (double t = gap(rng); t <= window; t += gap(rng)) ++attacker_blocks;

        std::int64_t deficit = static_cast<std::int64_t>(query.confirmations_z) - attacker_blocks;
        const std::int64_t give_up = deficit + 64;
        while (deficit > 0 && deficit < give_up)
            deficit += coin(rng) < q ? -1 : +1;
        if (deficit <= 0) ++successes;
    }
    return static_cast<double>(successes) / static_cast<double>(query.trials);
}

}  // namespace dnas
