// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/crypto.hpp"

#include <sodium.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "dnas/errors.hpp"

namespace dnas::crypto {

namespace {

void ensure_sodium() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
    });
}

template <typename T>
T fixed_from_hex(std::string_view hex, const char* what) {
    const Bytes raw = ::dnas::from_hex(hex);
    T out;
    if (raw.size() != out.bytes.size())
        throw Error(ErrorCode::ParseError, std::string("bad length for ") + what);
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
}

}  // namespace

PublicKey PublicKey::from_hex(std::string_view hex) {
    return fixed_from_hex<PublicKey>(hex, "public key");
}

SecretKey SecretKey::from_hex(std::string_view hex) {
    return fixed_from_hex<SecretKey>(hex, "secret key");
}

Signature Signature::from_hex(std::string_view hex) {
    return fixed_from_hex<Signature>(hex, "signature");
}

Digest sha256(ByteSpan data) {
    ensure_sodium();
    Digest out;
    crypto_hash_sha256(out.bytes.data(), data.data(), data.size());
    return out;
}

Digest sha256(const Bytes& data) { return sha256(as_span(data)); }

KeyMaterial keygen(const Digest& seed) {
    ensure_sodium();
    static_assert(crypto_sign_SEEDBYTES == 32);
    KeyMaterial km;
    crypto_sign_seed_keypair(km.public_key.bytes.data(), km.secret_key.bytes.data(),
                             seed.bytes.data());
    return km;
}

Signature sign(const SecretKey& key, const Digest& message_digest) {
    ensure_sodium();
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message_digest.bytes.data(),
                         message_digest.bytes.size(), key.bytes.data());
    return sig;
}

bool verify(const PublicKey& key, const Digest& message_digest, const Signature& sig) {
    ensure_sodium();
    // Every replica re-verifies the same vote and transaction signatures;
    // memoizing the triple keeps desk-scale simulations fast.
    struct CacheKey {
        std::array<std::uint8_t, 32> id;
        bool operator<(const CacheKey& other) const { return id < other.id; }
    };
    static std::map<CacheKey, bool> cache;
    Bytes keyed;
    keyed.reserve(128);
    keyed.insert(keyed.end(), key.bytes.begin(), key.bytes.end());
    keyed.insert(keyed.end(), message_digest.bytes.begin(), message_digest.bytes.end());
    keyed.insert(keyed.end(), sig.bytes.begin(), sig.bytes.end());
    const CacheKey id{sha256(keyed).bytes};
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    const bool ok = crypto_sign_verify_detached(sig.bytes.data(), message_digest.bytes.data(),
                                                message_digest.bytes.size(), key.bytes.data()) == 0;
    if (cache.size() > 200000) cache.clear();
    cache.emplace(id, ok);
    return ok;
}

Address derive_address(const PublicKey& key) {
    const Digest d = sha256(ByteSpan{key.bytes.data(), key.bytes.size()});
    Address a;
    std::copy_n(d.bytes.begin(), a.bytes.size(), a.bytes.begin());
    return a;
}

}  // namespace dnas::crypto
