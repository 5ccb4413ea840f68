// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/ledger.hpp"

#include <json.hpp>

#include <sstream>

#include "dnas/codec.hpp"
#include "dnas/errors.hpp"

namespace dnas {

using nlohmann::json;

Digest hash_header(const BlockHeader& header) {
    CanonicalWriter w;
    w.field_u64(header.height)
        .field(header.parent_hash)
        .field(header.merkle_root)
        .field(header.state_root)
        .field_u64(static_cast<std::uint64_t>(header.timestamp))
        .field_u64(header.nonce)
        .field(header.difficulty)
        .field(header.proposer);
    return crypto::sha256(w.bytes());
}

std::vector<Digest> tx_digests(const Block& block) {
    std::vector<Digest> out;
    out.reserve(block.body.size());
    for (const auto& tx : block.body) out.push_back(tx.digest());
    return out;
}

Digest Block::body_merkle_root() const {
    if (body.empty()) return Digest{};
    std::vector<Digest> leaves;
    leaves.reserve(body.size());
    for (const auto& tx : body) leaves.push_back(tx.digest());
    return merkle_root(leaves);
}

std::uint64_t Block::body_gas() const {
    std::uint64_t total = 0;
    for (const auto& tx : body) total += tx.gas_limit;
    return total;
}

MerkleProof merkle_prove(std::size_t tx_index, const Block& block) {
    const auto leaves = tx_digests(block);
    return merkle_prove(tx_index, std::span<const Digest>{leaves});
}

void Chain::append_block(Block block) {
    if (blocks_.empty()) {
        if (block.header.height != 0)
            throw Error(ErrorCode::HeightGap, "first block must have height 0");
        if (!block.header.parent_hash.is_zero())
            throw Error(ErrorCode::ParentMismatch, "genesis parent hash must be all-zero");
    } else {
        const BlockHeader& parent = blocks_.back().header;
        if (block.header.height != parent.height + 1)
            throw Error(ErrorCode::HeightGap, "expected height " + std::to_string(parent.height + 1) +
                                                  ", got " + std::to_string(block.header.height));
        if (block.header.parent_hash != tip_)
            throw Error(ErrorCode::ParentMismatch, "block cites stale or unknown parent");
    }
    if (block.body_gas() > block_gas_limit_)
        throw Error(ErrorCode::GasLimitExceeded, "block body exceeds block gas limit");
    if (block.body_merkle_root() != block.header.merkle_root)
        throw Error(ErrorCode::MerkleMismatch, "body does not match sealed merkle root");

    tip_ = hash_header(block.header);
    blocks_.push_back(std::move(block));
}

ChainAudit Chain::validate_chain() const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        if (b.header.height != i)
            return {false, b.header.height, "height out of sequence"};
        if (i == 0) {
            if (!b.header.parent_hash.is_zero())
                return {false, 0, "genesis parent hash not zero"};
        } else if (b.header.parent_hash != hash_header(blocks_[i - 1].header)) {
            return {false, b.header.height, "parent hash mismatch"};
        }
        if (b.body_merkle_root() != b.header.merkle_root)
            return {false, b.header.height, "merkle root mismatch"};
        if (b.body_gas() > block_gas_limit_)
            return {false, b.header.height, "block gas limit exceeded"};
    }
    return {};
}

const Block& Chain::at_height(std::uint64_t height) const {
    if (height >= blocks_.size())
        throw Error(ErrorCode::NotFound, "no block at height " + std::to_string(height));
    return blocks_[height];
}

const Block& Chain::tip_block() const {
    if (blocks_.empty()) throw Error(ErrorCode::ChainUnavailable, "chain has no blocks");
    return blocks_.back();
}

Block& Chain::mutable_block_for_tamper(std::uint64_t height) {
    if (height >= blocks_.size())
        throw Error(ErrorCode::NotFound, "no block at height " + std::to_string(height));
    return blocks_[height];
}

Block make_genesis(const Digest& state_root) {
    Block genesis;
    genesis.header.height = 0;
    genesis.header.state_root = state_root;
    genesis.header.timestamp = 0;
    return genesis;
}

namespace {

json tx_to_json(const Transaction& tx) {
    return json{
        {"sender", tx.sender.hex()},
        {"nonce", tx.nonce},
        {"method", std::string(method_id(tx.method))},
        {"params", to_hex(as_span(tx.params))},
        {"gas_limit", tx.gas_limit},
        {"gas_price", tx.gas_price},
        {"signature", tx.signature.hex()},
    };
}

Transaction tx_from_json(const json& j) {
    Transaction tx;
    tx.sender = Address::from_hex(j.at("sender").get<std::string>());
    tx.nonce = j.at("nonce").get<std::uint64_t>();
    tx.method = method_from_id(j.at("method").get<std::string>());
    tx.params = from_hex(j.at("params").get<std::string>());
    tx.gas_limit = j.at("gas_limit").get<std::uint64_t>();
    tx.gas_price = j.at("gas_price").get<std::uint64_t>();
    tx.signature = crypto::Signature::from_hex(j.at("signature").get<std::string>());
    return tx;
}

}  // namespace

std::string block_to_json_line(const Block& block) {
    json votes = json::array();
    for (const auto& v : block.votes)
        votes.push_back(json{{"validator", v.validator.hex()}, {"signature", v.signature.hex()}});
    json body = json::array();
    for (const auto& tx : block.body) body.push_back(tx_to_json(tx));
    const json j{
        {"header",
         {
             {"height", block.header.height},
             {"parent_hash", block.header.parent_hash.hex()},
             {"merkle_root", block.header.merkle_root.hex()},
             {"state_root", block.header.state_root.hex()},
             {"timestamp", block.header.timestamp},
             {"nonce", block.header.nonce},
             {"difficulty", block.header.difficulty.hex()},
             {"proposer", block.header.proposer.hex()},
         }},
        {"body", body},
        {"votes", votes},
    };
    return j.dump();
}

Block block_from_json_line(const std::string& line) {
    const json j = json::parse(line);
    Block block;
    const json& h = j.at("header");
    block.header.height = h.at("height").get<std::uint64_t>();
    block.header.parent_hash = Digest::from_hex(h.at("parent_hash").get<std::string>());
    block.header.merkle_root = Digest::from_hex(h.at("merkle_root").get<std::string>());
    block.header.state_root = Digest::from_hex(h.at("state_root").get<std::string>());
    block.header.timestamp = h.at("timestamp").get<std::int64_t>();
    block.header.nonce = h.at("nonce").get<std::uint64_t>();
    block.header.difficulty = Digest::from_hex(h.at("difficulty").get<std::string>());
    block.header.proposer = Address::from_hex(h.at("proposer").get<std::string>());
    for (const auto& t : j.at("body")) block.body.push_back(tx_from_json(t));
    for (const auto& v : j.at("votes")) {
        Vote vote;
        vote.validator = Address::from_hex(v.at("validator").get<std::string>());
        vote.signature = crypto::Signature::from_hex(v.at("signature").get<std::string>());
        block.votes.push_back(vote);
    }
    return block;
}

std::string chain_to_jsonl(const Chain& chain) {
    std::string out;
    for (const auto& block : chain.blocks()) {
        out += block_to_json_line(block);
        out += '\n';
    }
    return out;
}

Chain chain_from_jsonl(const std::string& text, std::uint64_t block_gas_limit) {
    Chain chain(block_gas_limit);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        chain.append_block(block_from_json_line(line));
    }
    return chain;
}

}  // namespace dnas
