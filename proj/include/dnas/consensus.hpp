// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "dnas/bytes.hpp"
#include "dnas/crypto.hpp"
#include "dnas/ledger.hpp"
#include "dnas/registry.hpp"

namespace dnas {

/// Permissioned validator roster for round-robin PoA. Quorum is the
/// classic 2/3 + 1 of the roster size.
struct ValidatorSet {
    std::vector<Address> validators;
    std::map<Address, crypto::PublicKey> keys;  // known in advance, permissioned network

    std::size_t quorum() const { return validators.size() * 2 / 3 + 1; }
    const Address& proposer_for_round(std::uint64_t round) const;
    bool contains(const Address& a) const;
};

enum class Admission {
    Accepted,
    BadSignature,
    BadNonce,
    GasLimitExceeded,
    KeyCompromised,
    Duplicate,
};

std::string_view admission_name(Admission a);

/// Pending transaction pool with admission control. Iteration order is the
/// packing order: descending gas price, then ascending sender nonce, then
/// lexicographic tx digest.
class Mempool {
public:
    Admission admit(const Transaction& tx, const RegistryState& state,
                    const GasSchedule& gas, const std::set<Address>& compromised = {});
    void remove_included(const Block& block);
    /// Drops pending transactions whose nonce is already consumed.
    void prune(const RegistryState& state);

    std::size_t size() const { return pending_.size(); }
    std::vector<Transaction> pending_in_packing_order() const;

private:
    std::map<Digest, Transaction> pending_;
    std::set<Digest> seen_;
};

/// Packs pool transactions by descending gas price until the block gas
/// limit, executing them against a scratch copy of `state` to seal the
/// post-state root. Throws NotYourTurn when the proposer is not the
/// round-robin validator for `round`. An empty pool yields a valid empty
/// block.
Block propose_block(Mempool& pool, const BlockHeader& parent, const Address& proposer,
                    std::uint64_t round, const ValidatorSet& set, const RegistryState& state,
                    const GasSchedule& gas, std::int64_t timestamp);

Vote make_vote(const crypto::SecretKey& key, const Address& validator, const Block& block);

struct FinalityDecision {
    bool finalized = false;
    std::size_t valid_votes = 0;
    std::size_t quorum = 0;
};

/// Counts distinct valid validator signatures over the header digest.
/// Duplicate votes are idempotent; invalid signatures are rejected.
FinalityDecision vote_and_finalize(const Block& block, const ValidatorSet& set,
                                   const std::vector<Vote>& votes);

/// Toy PoW mode retained for the permissionless comparison.
struct PowParams {
    Digest difficulty_target;  // 256-bit big-endian target; hash must be strictly below
    std::uint64_t max_nonce = UINT64_MAX;
};

struct PowResult {
    std::uint64_t nonce = 0;
    std::uint64_t attempts = 0;
    Digest hash;
};

/// Sequential nonce search from 0 for determinism. Throws
/// NonceSpaceExhausted when max_nonce is reached without a solution.
PowResult pow_mine(BlockHeader header, const PowParams& params);

struct DoubleSpendQuery {
    double attacker_fraction_q = 0.0;
    std::uint32_t confirmations_z = 0;
    std::uint64_t trials = 1'000'000;  // Monte Carlo mode only
    std::uint64_t seed = 1;
};

/// Poisson-weighted gambler's-ruin catch-up probability: while the honest
/// chain mines z confirmations the attacker progresses as a Poisson process
/// with mean z*q/p, then must close the remaining deficit d with per-block
/// win probability q, succeeding with probability (q/p)^d. Exact endpoints:
/// q = 0 -> 0 and q >= 0.5 -> 1 (symmetric random walk recurrence).
/// Throws InvalidFraction for q outside [0, 1).
double double_spend_success_closed_form(const DoubleSpendQuery& query);

/// Same model simulated as seeded block races: exponential attacker
/// inter-arrival times across the confirmation window, then a block-by-block
/// random walk for the catch-up phase.
double double_spend_success_monte_carlo(const DoubleSpendQuery& query);

}  // namespace dnas
