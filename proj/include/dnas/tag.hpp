// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "dnas/bytes.hpp"
#include "dnas/crypto.hpp"

namespace dnas {

/// Byte record written to tag memory: length-prefixed fields in fixed order
/// (pid, producer address, vintage, bottling date, write-count snapshot).
struct TagPayload {
    std::string pid;
    Address producer;
    std::string vintage;
    std::string bottling_date;
    std::uint64_t write_count_snapshot = 0;

    Bytes encode() const;
    static TagPayload decode(ByteSpan raw);
};

/// Emulated NFC tag: writable memory with a producer-signed payload, a
/// factory-burned UID and hardware read/write counters the adversary cannot
/// rewind. The signature covers sha256(payload); the UID is bound to the
/// product through the on-chain sha256(uid || pid) digest instead, so a
/// byte-identical clone still carries a verifying signature but fails the
/// binding check.
struct TagState {
    TagUid uid;
    Bytes payload;
    crypto::Signature signature;
    std::uint64_t read_count = 0;
    std::uint64_t write_count = 0;
    bool disabled = false;
    bool locked = false;
};

/// Snapshot returned by a read; immutable copy of the tag memory and the
/// counter values after the read.
struct TagReadResult {
    TagUid uid;
    Bytes payload;
    crypto::Signature signature;
    std::uint64_t read_count = 0;
    std::uint64_t write_count = 0;
};

/// Mints tags with factory-assigned, monotonically unique UIDs. With
/// forgeable_uid set, clones copy the source UID instead of receiving a
/// fresh one (the weaker hardware model, CLI flag --forgeable-uid).
class TagFactory {
public:
    explicit TagFactory(bool forgeable_uid = false) : forgeable_uid_(forgeable_uid) {}

    TagState mint();
    bool forgeable_uid() const { return forgeable_uid_; }

private:
    std::uint64_t next_serial_ = 1;
    bool forgeable_uid_;
};

Digest tag_message_digest(const Bytes& payload);

/// Replaces payload and signature, incrementing the write counter. The
/// signer is the producer key bound on-chain for the product. Throws
/// TagDisabled / TagLocked.
void tag_write(TagState& tag, const TagPayload& payload, const crypto::SecretKey& signer);
void tag_write_raw(TagState& tag, Bytes payload, const crypto::Signature& signature);

/// Increments the read counter and returns an immutable snapshot. Throws
/// TagDisabled.
TagReadResult tag_read(TagState& tag);

void tag_lock(TagState& tag);

// Adversary surface (threat catalog T01 / T03 / T04).

/// Copies tag memory into a newly minted tag: identical payload and
/// signature, fresh UID, zeroed counters. Reads the source, so the source
/// read counter advances. Throws TagDisabled when the source is unreadable.
TagState adversary_clone(TagState& tag, TagFactory& factory);

/// Mutates one payload byte without updating the signature. Throws
/// TagLocked / TagDisabled / IndexOutOfRange.
void adversary_modify(TagState& tag, std::size_t byte_index, std::uint8_t new_byte);

/// Sets the disabled flag; subsequent reads and writes fail. Idempotent.
void adversary_disable(TagState& tag);

// Tag snapshot fixture round-trip (canonical JSON, payload as lowercase hex).
std::string tag_to_json(const TagState& tag);
TagState tag_from_json(const std::string& text);

}  // namespace dnas
