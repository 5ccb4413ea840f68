// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/bytes.hpp"

#include <algorithm>
#include <stdexcept>

#include "dnas/errors.hpp"

namespace dnas {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorCode::ParseError, "invalid hex character");
}

}  // namespace

std::string to_hex(ByteSpan data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw Error(ErrorCode::ParseError, "odd-length hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(hex_nibble(hex[2 * i]) << 4 | hex_nibble(hex[2 * i + 1]));
    return out;
}

namespace {

template <typename T>
T fixed_from_hex(std::string_view hex, const char* what) {
    const Bytes raw = from_hex(hex);
    T out;
    if (raw.size() != out.bytes.size())
        throw Error(ErrorCode::ParseError, std::string("bad length for ") + what);
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
}

}  // namespace

bool Digest::is_zero() const {
    return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

std::string Digest::hex() const { return to_hex({bytes.data(), bytes.size()}); }

Digest Digest::from_hex(std::string_view hex) { return fixed_from_hex<Digest>(hex, "digest"); }

bool Address::is_zero() const {
    return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

std::string Address::hex() const { return to_hex({bytes.data(), bytes.size()}); }

Address Address::from_hex(std::string_view hex) { return fixed_from_hex<Address>(hex, "address"); }

std::string TagUid::hex() const { return to_hex({bytes.data(), bytes.size()}); }

TagUid TagUid::from_hex(std::string_view hex) { return fixed_from_hex<TagUid>(hex, "tag uid"); }

}  // namespace dnas
