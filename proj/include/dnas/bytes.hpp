// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnas {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

/// 32-byte digest (SHA-256 output). Comparison is lexicographic over the
/// big-endian byte order, so `operator<` doubles as the 256-bit integer
/// comparison used by the PoW target check.
struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    auto operator<=>(const Digest&) const = default;
    bool is_zero() const;
    std::string hex() const;
    static Digest from_hex(std::string_view hex);
};

/// 20-byte account address, the first 20 bytes of sha256(public key).
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    auto operator<=>(const Address&) const = default;
    bool is_zero() const;
    std::string hex() const;
    static Address from_hex(std::string_view hex);
};

/// 7-byte NFC tag UID, factory-burned and never reassigned.
struct TagUid {
    std::array<std::uint8_t, 7> bytes{};

    auto operator<=>(const TagUid&) const = default;
    std::string hex() const;
    static TagUid from_hex(std::string_view hex);
};

std::string to_hex(ByteSpan data);
Bytes from_hex(std::string_view hex);

inline ByteSpan as_span(const Digest& d) { return {d.bytes.data(), d.bytes.size()}; }
inline ByteSpan as_span(const Address& a) { return {a.bytes.data(), a.bytes.size()}; }
inline ByteSpan as_span(const TagUid& u) { return {u.bytes.data(), u.bytes.size()}; }
inline ByteSpan as_span(const Bytes& b) { return {b.data(), b.size()}; }
inline ByteSpan as_span(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace dnas
