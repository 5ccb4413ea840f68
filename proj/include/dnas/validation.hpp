// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnas/provenance.hpp"
#include "dnas/registry.hpp"
#include "dnas/tag.hpp"

namespace dnas {

enum class CheckId {
    TagReadable,
    ProductKnown,
    Signature,
    UidBinding,
    PayloadDigest,
    WriteCount,
    ReadCount,
    Status,
};

std::string_view check_name(CheckId c);

enum class Outcome {
    Genuine,
    CloneDetected,
    ModificationDetected,
    ReapplicationDetected,
    TagUnreadable,
    UnknownProduct,
    StatusViolation,
};

std::string_view outcome_name(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::Genuine;
    std::vector<CheckId> evidence;

    bool genuine() const { return outcome == Outcome::Genuine; }
    std::string to_json() const;
};

/// Maps a non-empty failed-check set to an outcome class. Decision table
/// (first matching row wins, see docs/formats.md):
///   1. TagReadable failed                          -> TagUnreadable
///   2. ProductKnown failed                         -> UnknownProduct
///   3. Signature failed                            -> ModificationDetected
///   4. UidBinding and PayloadDigest failed         -> ReapplicationDetected
///   5. UidBinding and either counter failed        -> CloneDetected
///   6. UidBinding failed                           -> ReapplicationDetected
///   7. PayloadDigest failed                        -> ModificationDetected
///   8. WriteCount or ReadCount failed              -> CloneDetected
///   9. Status failed                               -> StatusViolation
Outcome classify_evidence(const std::vector<CheckId>& evidence);

/// On-chain binding digest committed at registration: sha256 over the
/// canonical (uid, pid) pair.
Digest tag_binding_digest(const TagUid& uid, const std::string& pid);

struct ValidationContext {
    const RegistryState* state = nullptr;  // finalized tip state
    ProvenanceStore* store = nullptr;      // validating node's off-chain store
    std::string node_entity;               // registered reporting node
    std::int64_t sim_time = 0;
    bool chain_available = true;
};

/// Multi-layer product validation at one supply-chain step. Checks run in
/// fixed order — readability, payload signature under the on-chain producer
/// key, uid-pid binding digest, payload digest, write-count consistency,
/// read-count vs off-chain shadow, status admissibility — and every
/// applicable check is always evaluated, so the evidence set is independent
/// of short-circuiting. A successful validation syncs the store shadows and
/// appends a validation history entry; failures are recorded as
/// unsuccessful-validation entries. Reads the tag (the read counter
/// advances). Throws ChainUnavailable when the node has no finalized tip.
Verdict validate_product(TagState& tag, const std::string& expected_pid, ValidationContext& ctx);

}  // namespace dnas
