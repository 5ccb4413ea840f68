// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dnas/bytes.hpp"

namespace dnas {

/// One level of a Merkle inclusion path: the sibling digest and which side
/// of the concatenation it sits on.
struct ProofStep {
    Digest sibling;
    bool sibling_on_left = false;
};

struct MerkleProof {
    Digest leaf;
    std::vector<ProofStep> path;
    Digest root;
};

/// Binary Merkle root over ordered transaction digests. Leaves are the
/// digests themselves; a layer with an odd element count duplicates its last
/// digest, so a single-leaf tree roots at sha256(d || d). Throws EmptyBlock
/// for an empty list.
Digest merkle_root(std::span<const Digest> leaves);

/// Inclusion proof for leaves[index]. Throws IndexOutOfRange.
MerkleProof merkle_prove(std::size_t index, std::span<const Digest> leaves);

/// True iff replaying the path from the leaf reproduces the root exactly.
bool verify_proof(const MerkleProof& proof);

}  // namespace dnas
