// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnas/bytes.hpp"
#include "dnas/crypto.hpp"
#include "dnas/merkle.hpp"
#include "dnas/tx.hpp"

namespace dnas {

/// Block header. nonce and difficulty are meaningful in PoW mode only and
/// stay zero under PoA; proposer is the PoA round-robin author. All fields
/// enter the header digest in declared order.
struct BlockHeader {
    std::uint64_t height = 0;
    Digest parent_hash;
    Digest merkle_root;
    Digest state_root;
    std::int64_t timestamp = 0;
    std::uint64_t nonce = 0;
    Digest difficulty;
    Address proposer;
};

/// Deterministic digest over the canonical serialization of all header
/// fields (docs/formats.md).
Digest hash_header(const BlockHeader& header);

struct Vote {
    Address validator;
    crypto::Signature signature;  // over hash_header of the voted block
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> body;
    std::vector<Vote> votes;

    /// Merkle root over the body's transaction digests; the all-zero digest
    /// for an empty body (genesis and empty PoA rounds).
    Digest body_merkle_root() const;
    std::uint64_t body_gas() const;  // sum of body gas limits
};

/// Digests of all body transactions, in block order.
std::vector<Digest> tx_digests(const Block& block);

/// Inclusion proof for body transaction tx_index against the sealed header
/// root. Throws IndexOutOfRange.
MerkleProof merkle_prove(std::size_t tx_index, const Block& block);

struct ChainAudit {
    bool ok = true;
    std::uint64_t first_bad_height = 0;
    std::string reason;
};

/// Finalized block sequence. Blocks are immutable once appended; append is
/// single-writer per chain instance.
class Chain {
public:
    explicit Chain(std::uint64_t block_gas_limit) : block_gas_limit_(block_gas_limit) {}

    /// Appends a consensus-validated block. Throws ParentMismatch, HeightGap,
    /// GasLimitExceeded or MerkleMismatch.
    void append_block(Block block);

    /// Re-checks every link, Merkle commitment and height from genesis.
    ChainAudit validate_chain() const;

    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& at_height(std::uint64_t height) const;
    bool empty() const { return blocks_.empty(); }
    std::uint64_t length() const { return blocks_.size(); }
    const Block& tip_block() const;
    const Digest& tip() const { return tip_; }
    std::uint64_t block_gas_limit() const { return block_gas_limit_; }

    /// Test hook: direct mutable access for scripted tamper scenarios.
    Block& mutable_block_for_tamper(std::uint64_t height);

private:
    std::vector<Block> blocks_;
    Digest tip_;
    std::uint64_t block_gas_limit_;
};

/// Fixed genesis: height 0, all-zero parent, empty body, zero proposer,
/// timestamp 0. state_root commits the initial registry state (the genesis
/// role table). The header digest for the default genesis is pinned as a
/// golden value in the test suite.
Block make_genesis(const Digest& state_root);

// Chain dump round-trip: one block per line, canonical JSON with sorted keys
// and lowercase hex digests (docs/formats.md).
std::string block_to_json_line(const Block& block);
Block block_from_json_line(const std::string& line);
std::string chain_to_jsonl(const Chain& chain);
Chain chain_from_jsonl(const std::string& text, std::uint64_t block_gas_limit);

}  // namespace dnas
