// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/merkle.hpp"

#include "dnas/crypto.hpp"
#include "dnas/errors.hpp"

namespace dnas {

namespace {

Digest hash_pair(const Digest& left, const Digest& right) {
    Bytes buf;
    buf.reserve(64);
    buf.insert(buf.end(), left.bytes.begin(), left.bytes.end());
    buf.insert(buf.end(), right.bytes.begin(), right.bytes.end());
    return crypto::sha256(buf);
}

}  // namespace

Digest merkle_root(std::span<const Digest> leaves) {
    if (leaves.empty()) throw Error(ErrorCode::EmptyBlock, "merkle root of empty transaction list");
    std::vector<Digest> level(leaves.begin(), leaves.end());
    do {
        if (level.size() % 2 != 0) level.push_back(level.back());
        std::vector<Digest> next;
        next.reserve(level.size() / 2);
        for (std::size_t i = 0; i < level.size(); i += 2)
            next.push_back(hash_pair(level[i], level[i + 1]));
        level = std::move(next);
    } while (level.size() > 1);
    return level[0];
}

MerkleProof merkle_prove(std::size_t index, std::span<const Digest> leaves) {
    if (leaves.empty()) throw Error(ErrorCode::EmptyBlock, "merkle proof over empty list");
    if (index >= leaves.size())
        throw Error(ErrorCode::IndexOutOfRange, "transaction index beyond block body");

    MerkleProof proof;
    proof.leaf = leaves[index];

    std::vector<Digest> level(leaves.begin(), leaves.end());
    std::size_t pos = index;
    do {
        if (level.size() % 2 != 0) level.push_back(level.back());
        const std::size_t sibling = pos ^ 1;
        proof.path.push_back({level[sibling], sibling < pos});
        std::vector<Digest> next;
        next.reserve(level.size() / 2);
        for (std::size_t i = 0; i < level.size(); i += 2)
            next.push_back(hash_pair(level[i], level[i + 1]));
        level = std::move(next);
        pos /= 2;
    } while (level.size() > 1);

    proof.root = level[0];
    return proof;
}

bool verify_proof(const MerkleProof& proof) {
    Digest acc = proof.leaf;
    for (const auto& step : proof.path)
        acc = step.sibling_on_left ? hash_pair(step.sibling, acc) : hash_pair(acc, step.sibling);
    return acc == proof.root;
}

}  // namespace dnas
