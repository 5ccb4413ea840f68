// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <vector>

#include "dnas/crypto.hpp"
#include "dnas/errors.hpp"
#include "dnas/merkle.hpp"

using namespace dnas;

namespace {

Digest leaf(std::uint8_t fill) {
    Digest d;
    d.bytes.fill(fill);
    return d;
}

// Reference pairing written out longhand, independent of merkle.cpp.
Digest pair_hash(const Digest& l, const Digest& r) {
    Bytes buf(l.bytes.begin(), l.bytes.end());
    buf.insert(buf.end(), r.bytes.begin(), r.bytes.end());
    return crypto::sha256(buf);
}

}  // namespace

TEST_CASE("single leaf roots at the duplicated pair hash") {
    const Digest d1 = leaf(0x11);
    CHECK(merkle_root(std::vector<Digest>{d1}) == pair_hash(d1, d1));
}

TEST_CASE("hand-computed roots for two to four leaves") {
    const Digest d1 = leaf(0x11), d2 = leaf(0x22), d3 = leaf(0x33), d4 = leaf(0x44);
    CHECK(merkle_root(std::vector<Digest>{d1, d2}) == pair_hash(d1, d2));
    CHECK(merkle_root(std::vector<Digest>{d1, d2, d3}) ==
          pair_hash(pair_hash(d1, d2), pair_hash(d3, d3)));
    CHECK(merkle_root(std::vector<Digest>{d1, d2, d3, d4}) ==
          pair_hash(pair_hash(d1, d2), pair_hash(d3, d4)));
}

TEST_CASE("permuting the leaves changes the root") {
    const std::vector<Digest> ab{leaf(0x11), leaf(0x22)};
    const std::vector<Digest> ba{leaf(0x22), leaf(0x11)};
    CHECK(merkle_root(ab) != merkle_root(ba));
}

TEST_CASE("empty list is an error") {
    CHECK_THROWS_AS(merkle_root(std::vector<Digest>{}), Error);
    CHECK_THROWS_AS(merkle_prove(0, std::vector<Digest>{}), Error);
}

TEST_CASE("determinism: identical inputs give bit-identical roots") {
    std::mt19937_64 rng(3);
    std::vector<Digest> leaves(6);
    for (auto& d : leaves)
        for (auto& b : d.bytes) b = static_cast<std::uint8_t>(rng());
    CHECK(merkle_root(leaves) == merkle_root(leaves));
}

TEST_CASE("proof shapes: one leaf has a one-step path, four leaves two steps") {
    const std::vector<Digest> one{leaf(0x05)};
    CHECK(merkle_prove(0, one).path.size() == 1);

    const std::vector<Digest> four{leaf(1), leaf(2), leaf(3), leaf(4)};
    const MerkleProof proof = merkle_prove(2, four);
    CHECK(proof.path.size() == 2);
    CHECK(proof.root == merkle_root(four));
    CHECK(verify_proof(proof));
}

TEST_CASE("index out of range") {
    const std::vector<Digest> four{leaf(1), leaf(2), leaf(3), leaf(4)};
    CHECK_THROWS_AS(merkle_prove(4, four), Error);
}

TEST_CASE("proof soundness is exhaustive at small sizes and corruption always fails") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<Digest> leaves(n);
        for (auto& d : leaves)
            for (auto& b : d.bytes) b = static_cast<std::uint8_t>(rng());
        const Digest root = merkle_root(leaves);
        for (std::size_t i = 0; i < n; ++i) {
            const MerkleProof proof = merkle_prove(i, leaves);
            CHECK(proof.root == root);
            CHECK(verify_proof(proof));

            MerkleProof bad_leaf = proof;
            bad_leaf.leaf.bytes[rng() % 32] ^= static_cast<std::uint8_t>(1 + rng() % 255);
            CHECK_FALSE(verify_proof(bad_leaf));

            MerkleProof bad_root = proof;
            bad_root.root.bytes[rng() % 32] ^= static_cast<std::uint8_t>(1 + rng() % 255);
            CHECK_FALSE(verify_proof(bad_root));

            MerkleProof bad_sibling = proof;
            auto& step = bad_sibling.path[rng() % bad_sibling.path.size()];
            step.sibling.bytes[rng() % 32] ^= static_cast<std::uint8_t>(1 + rng() % 255);
            CHECK_FALSE(verify_proof(bad_sibling));
        }
    }
}
