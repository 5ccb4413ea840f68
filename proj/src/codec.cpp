// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/codec.hpp"

#include <algorithm>

#include "dnas/errors.hpp"

namespace dnas {

namespace {

void append_u32be(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_u64be(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

CanonicalWriter& CanonicalWriter::field(ByteSpan data) {
    append_u32be(out_, static_cast<std::uint32_t>(data.size()));
    out_.insert(out_.end(), data.begin(), data.end());
    return *this;
}

CanonicalWriter& CanonicalWriter::field_u64(std::uint64_t v) {
    append_u32be(out_, 8);
    append_u64be(out_, v);
    return *this;
}

Bytes CanonicalReader::field() {
    if (pos_ + 4 > data_.size()) throw Error(ErrorCode::ParseError, "truncated length prefix");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = len << 8 | data_[pos_ + i];
    pos_ += 4;
    if (pos_ + len > data_.size()) throw Error(ErrorCode::ParseError, "truncated field body");
    Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
              data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
    pos_ += len;
    return out;
}

std::string CanonicalReader::field_string() {
    const Bytes raw = field();
    return {raw.begin(), raw.end()};
}

std::uint64_t CanonicalReader::field_u64() {
    const Bytes raw = field();
    if (raw.size() != 8) throw Error(ErrorCode::ParseError, "u64 field must be 8 bytes");
    std::uint64_t v = 0;
    for (auto b : raw) v = v << 8 | b;
    return v;
}

Digest CanonicalReader::field_digest() {
    const Bytes raw = field();
    Digest d;
    if (raw.size() != d.bytes.size()) throw Error(ErrorCode::ParseError, "bad digest length");
    std::copy(raw.begin(), raw.end(), d.bytes.begin());
    return d;
}

Address CanonicalReader::field_address() {
    const Bytes raw = field();
    Address a;
    if (raw.size() != a.bytes.size()) throw Error(ErrorCode::ParseError, "bad address length");
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

TagUid CanonicalReader::field_uid() {
    const Bytes raw = field();
    TagUid u;
    if (raw.size() != u.bytes.size()) throw Error(ErrorCode::ParseError, "bad uid length");
    std::copy(raw.begin(), raw.end(), u.bytes.begin());
    return u;
}

}  // namespace dnas
