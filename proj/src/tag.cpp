// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/tag.hpp"

#include <json.hpp>

#include "dnas/codec.hpp"
#include "dnas/errors.hpp"

namespace dnas {

using nlohmann::json;

Bytes TagPayload::encode() const {
    CanonicalWriter w;
    w.field(pid).field(producer).field(vintage).field(bottling_date).field_u64(write_count_snapshot);
    return w.take();
}

TagPayload TagPayload::decode(ByteSpan raw) {
    CanonicalReader r(raw);
    TagPayload p;
    p.pid = r.field_string();
    p.producer = r.field_address();
    p.vintage = r.field_string();
    p.bottling_date = r.field_string();
    p.write_count_snapshot = r.field_u64();
    return p;
}

TagState TagFactory::mint() {
    TagState tag;
    const std::uint64_t serial = next_serial_++;
    // 7-byte big-endian factory serial, never reused.
    for (std::size_t i = 0; i < tag.uid.bytes.size(); ++i)
        tag.uid.bytes[i] = static_cast<std::uint8_t>(serial >> (8 * (tag.uid.bytes.size() - 1 - i)));
    return tag;
}

Digest tag_message_digest(const Bytes& payload) { return crypto::sha256(payload); }

void tag_write(TagState& tag, const TagPayload& payload, const crypto::SecretKey& signer) {
    Bytes raw = payload.encode();
    const crypto::Signature sig = crypto::sign(signer, tag_message_digest(raw));
    tag_write_raw(tag, std::move(raw), sig);
}

void tag_write_raw(TagState& tag, Bytes payload, const crypto::Signature& signature) {
    if (tag.disabled) throw Error(ErrorCode::TagDisabled, "write to disabled tag");
    if (tag.locked) throw Error(ErrorCode::TagLocked, "write to locked tag");
    tag.payload = std::move(payload);
    tag.signature = signature;
    tag.write_count += 1;
}

TagReadResult tag_read(TagState& tag) {
    if (tag.disabled) throw Error(ErrorCode::TagDisabled, "read from disabled tag");
    tag.read_count += 1;
    return {tag.uid, tag.payload, tag.signature, tag.read_count, tag.write_count};
}

void tag_lock(TagState& tag) { tag.locked = true; }

TagState adversary_clone(TagState& tag, TagFactory& factory) {
    const TagReadResult source = tag_read(tag);  // unreadable tags cannot be cloned
    TagState clone = factory.mint();
    if (factory.forgeable_uid()) clone.uid = source.uid;
    clone.payload = source.payload;
    clone.signature = source.signature;
    return clone;
}

void adversary_modify(TagState& tag, std::size_t byte_index, std::uint8_t new_byte) {
    if (tag.disabled) throw Error(ErrorCode::TagDisabled, "modify on disabled tag");
    if (tag.locked) throw Error(ErrorCode::TagLocked, "modify on locked tag");
    if (byte_index >= tag.payload.size())
        throw Error(ErrorCode::IndexOutOfRange, "payload byte index out of range");
    tag.payload[byte_index] = new_byte;
}

void adversary_disable(TagState& tag) { tag.disabled = true; }

std::string tag_to_json(const TagState& tag) {
    const json j{
        {"uid", tag.uid.hex()},
        {"payload", to_hex(as_span(tag.payload))},
        {"signature", tag.signature.hex()},
        {"read_count", tag.read_count},
        {"write_count", tag.write_count},
        {"disabled", tag.disabled},
        {"locked", tag.locked},
    };
    return j.dump();
}

TagState tag_from_json(const std::string& text) {
    const json j = json::parse(text);
    TagState tag;
    tag.uid = TagUid::from_hex(j.at("uid").get<std::string>());
    tag.payload = from_hex(j.at("payload").get<std::string>());
    tag.signature = crypto::Signature::from_hex(j.at("signature").get<std::string>());
    tag.read_count = j.at("read_count").get<std::uint64_t>();
    tag.write_count = j.at("write_count").get<std::uint64_t>();
    tag.disabled = j.at("disabled").get<bool>();
    tag.locked = j.at("locked").get<bool>();
    return tag;
}

}  // namespace dnas
