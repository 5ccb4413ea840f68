// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "dnas/bytes.hpp"

namespace dnas {

/// Canonical byte encoding: every field is a 4-byte big-endian length
/// followed by the field bytes, concatenated in declared field order.
/// Integers are encoded as 8 big-endian bytes. The exact layout of every
/// hashed structure is documented in docs/formats.md.
class CanonicalWriter {
public:
    CanonicalWriter& field(ByteSpan data);
    CanonicalWriter& field(const Bytes& data) { return field(as_span(data)); }
    CanonicalWriter& field(std::string_view s) { return field(as_span(s)); }
    CanonicalWriter& field(const Digest& d) { return field(as_span(d)); }
    CanonicalWriter& field(const Address& a) { return field(as_span(a)); }
    CanonicalWriter& field(const TagUid& u) { return field(as_span(u)); }
    CanonicalWriter& field_u64(std::uint64_t v);

    const Bytes& bytes() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

/// Reads fields back in the same order they were written.
class CanonicalReader {
public:
    explicit CanonicalReader(ByteSpan data) : data_(data) {}

    Bytes field();
    std::string field_string();
    std::uint64_t field_u64();
    Digest field_digest();
    Address field_address();
    TagUid field_uid();
    bool done() const { return pos_ == data_.size(); }

private:
    ByteSpan data_;
    std::size_t pos_ = 0;
};

}  // namespace dnas
