// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "dnas/errors.hpp"
#include "dnas/tag.hpp"

using namespace dnas;

namespace {

crypto::KeyMaterial producer_key() {
    return crypto::keygen(crypto::sha256(as_span(std::string_view{"producer"})));
}

TagPayload sample_payload(std::uint64_t snapshot) {
    TagPayload p;
    p.pid = "W-0001";
    p.producer = crypto::derive_address(producer_key().public_key);
    p.vintage = "2019";
    p.bottling_date = "2020-06-01";
    p.write_count_snapshot = snapshot;
    return p;
}

}  // namespace

TEST_CASE("payload encodes and decodes byte-exactly") {
    const TagPayload p = sample_payload(3);
    const Bytes raw = p.encode();
    const TagPayload back = TagPayload::decode(as_span(raw));
    CHECK(back.pid == p.pid);
    CHECK(back.producer == p.producer);
    CHECK(back.vintage == p.vintage);
    CHECK(back.bottling_date == p.bottling_date);
    CHECK(back.write_count_snapshot == 3);
    CHECK(back.encode() == raw);
}

TEST_CASE("write then read round trips and counts") {
    TagFactory factory;
    TagState tag = factory.mint();
    const auto key = producer_key();
    tag_write(tag, sample_payload(1), key.secret_key);
    CHECK(tag.write_count == 1);

    const TagReadResult read = tag_read(tag);
    CHECK(read.payload == sample_payload(1).encode());
    CHECK(read.read_count == 1);
    CHECK(crypto::verify(key.public_key, tag_message_digest(read.payload), read.signature));

    tag_write(tag, sample_payload(2), key.secret_key);
    CHECK(tag.write_count == 2);
    CHECK(tag.payload == sample_payload(2).encode());  // latest payload only

    for (int i = 0; i < 5; ++i) tag_read(tag);
    CHECK(tag.read_count == 6);
}

TEST_CASE("locked and disabled tags reject operations") {
    TagFactory factory;
    const auto key = producer_key();

    TagState locked = factory.mint();
    tag_write(locked, sample_payload(1), key.secret_key);
    tag_lock(locked);
    CHECK_THROWS_AS(tag_write(locked, sample_payload(2), key.secret_key), Error);
    CHECK_THROWS_AS(adversary_modify(locked, 0, 0xff), Error);
    CHECK_NOTHROW(tag_read(locked));  // locking blocks writes, not reads

    TagState disabled = factory.mint();
    tag_write(disabled, sample_payload(1), key.secret_key);
    adversary_disable(disabled);
    CHECK_THROWS_AS(tag_read(disabled), Error);
    CHECK_THROWS_AS(tag_write(disabled, sample_payload(2), key.secret_key), Error);
    adversary_disable(disabled);  // idempotent
    CHECK(disabled.disabled);
}

TEST_CASE("clone copies memory but not identity or counters") {
    TagFactory factory;
    const auto key = producer_key();
    TagState tag = factory.mint();
    tag_write(tag, sample_payload(1), key.secret_key);
    tag_read(tag);
    tag_read(tag);

    TagState clone = adversary_clone(tag, factory);
    CHECK(clone.payload == tag.payload);
    CHECK(clone.signature == tag.signature);
    CHECK(crypto::verify(key.public_key, tag_message_digest(clone.payload), clone.signature));
    CHECK(clone.uid != tag.uid);
    CHECK(clone.read_count == 0);
    CHECK(clone.write_count == 0);

    TagState second = adversary_clone(clone, factory);
    CHECK(second.payload == tag.payload);
    CHECK(second.uid != clone.uid);

    adversary_disable(tag);
    CHECK_THROWS_AS(adversary_clone(tag, factory), Error);
}

TEST_CASE("forgeable uid mode copies the source uid") {
    TagFactory factory(true);
    const auto key = producer_key();
    TagState tag = factory.mint();
    tag_write(tag, sample_payload(1), key.secret_key);
    TagState clone = adversary_clone(tag, factory);
    CHECK(clone.uid == tag.uid);
}

TEST_CASE("modification invalidates the signature until a producer re-signs") {
    TagFactory factory;
    const auto key = producer_key();
    TagState tag = factory.mint();
    tag_write(tag, sample_payload(1), key.secret_key);

    adversary_modify(tag, tag.payload.size() - 1, tag.payload.back() ^ 0x01);
    CHECK_FALSE(crypto::verify(key.public_key, tag_message_digest(tag.payload), tag.signature));

    // Re-signing with a non-producer key still fails under the producer key.
    const auto attacker = crypto::keygen(crypto::sha256(as_span(std::string_view{"attacker"})));
    tag.signature = crypto::sign(attacker.secret_key, tag_message_digest(tag.payload));
    CHECK_FALSE(crypto::verify(key.public_key, tag_message_digest(tag.payload), tag.signature));
    CHECK(crypto::verify(attacker.public_key, tag_message_digest(tag.payload), tag.signature));

    CHECK_THROWS_AS(adversary_modify(tag, tag.payload.size(), 0), Error);  // IndexOutOfRange
}

TEST_CASE("factory uids are unique and counters never decrease under fuzzing") {
    TagFactory factory;
    std::set<std::string> uids;
    for (int i = 0; i < 300; ++i) CHECK(uids.insert(factory.mint().uid.hex()).second);

    std::mt19937_64 rng(17);
    const auto key = producer_key();
    TagState tag = factory.mint();
    std::uint64_t max_rc = 0, max_wc = 0;
    for (int i = 0; i < 2000; ++i) {
        try {
            switch (rng() % 5) {
                case 0: tag_write(tag, sample_payload(rng() % 10), key.secret_key); break;
                case 1: tag_read(tag); break;
                case 2:
                    if (!tag.payload.empty())
                        adversary_modify(tag, rng() % tag.payload.size(),
                                         static_cast<std::uint8_t>(rng()));
                    break;
                case 3:
                    if (rng() % 50 == 0) tag_lock(tag);
                    break;
                case 4:
                    if (rng() % 200 == 0) adversary_disable(tag);
                    break;
            }
        } catch (const Error&) {
            // locked/disabled rejections are expected along the way
        }
        REQUIRE(tag.read_count >= max_rc);
        REQUIRE(tag.write_count >= max_wc);
        max_rc = tag.read_count;
        max_wc = tag.write_count;
    }
}

TEST_CASE("tag snapshots serialize to canonical json and back") {
    TagFactory factory;
    const auto key = producer_key();
    TagState tag = factory.mint();
    tag_write(tag, sample_payload(1), key.secret_key);
    tag_read(tag);

    const std::string fixture = tag_to_json(tag);
    const TagState back = tag_from_json(fixture);
    CHECK(back.uid == tag.uid);
    CHECK(back.payload == tag.payload);
    CHECK(back.signature == tag.signature);
    CHECK(back.read_count == tag.read_count);
    CHECK(back.write_count == tag.write_count);
    CHECK(tag_to_json(back) == fixture);
}
