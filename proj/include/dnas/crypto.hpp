// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "dnas/bytes.hpp"

namespace dnas::crypto {

/// Ed25519 over libsodium. All signatures in the system are produced over a
/// 32-byte SHA-256 digest of the canonical message bytes, never over the raw
/// message. Test vectors live in tests/unit/test_crypto.cpp.
struct PublicKey {
    std::array<std::uint8_t, 32> bytes{};
    auto operator<=>(const PublicKey&) const = default;
    std::string hex() const { return to_hex({bytes.data(), bytes.size()}); }
    static PublicKey from_hex(std::string_view hex);
};

struct SecretKey {
    std::array<std::uint8_t, 64> bytes{};
    auto operator<=>(const SecretKey&) const = default;
    std::string hex() const { return to_hex({bytes.data(), bytes.size()}); }
    static SecretKey from_hex(std::string_view hex);
};

struct Signature {
    std::array<std::uint8_t, 64> bytes{};
    auto operator<=>(const Signature&) const = default;
    std::string hex() const { return to_hex({bytes.data(), bytes.size()}); }
    static Signature from_hex(std::string_view hex);
};

struct KeyMaterial {
    PublicKey public_key;
    SecretKey secret_key;
};

Digest sha256(ByteSpan data);
Digest sha256(const Bytes& data);

/// Deterministic keypair from a 32-byte seed.
KeyMaterial keygen(const Digest& seed);

Signature sign(const SecretKey& key, const Digest& message_digest);
bool verify(const PublicKey& key, const Digest& message_digest, const Signature& sig);

/// First 20 bytes of sha256(public key).
Address derive_address(const PublicKey& key);

}  // namespace dnas::crypto
