// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dnas/bytes.hpp"
#include "dnas/crypto.hpp"

namespace dnas {

enum class KeyStatus { Active, Retired, Compromised };

std::string_view key_status_name(KeyStatus s);
KeyStatus key_status_from_name(std::string_view name);

struct EntityKey {
    crypto::KeyMaterial material;
    Address address;
    std::int64_t created_at = 0;
    KeyStatus status = KeyStatus::Active;
};

/// Signs with one specific key; Retired and Compromised keys refuse.
crypto::Signature sign_with(const EntityKey& key, const Digest& message_digest);

/// Per-node keystore holding every key an entity has ever owned. At most one
/// key per entity is Active at any simulated instant; Retired keys still
/// verify historical signatures but refuse to sign.
class Keystore {
public:
    explicit Keystore(const Digest& master_seed) : master_seed_(master_seed) {}

    /// Deterministically derives the entity's next keypair from the master
    /// seed and a per-entity counter; the new key becomes the Active one.
    const EntityKey& generate(const std::string& entity, std::int64_t sim_time);

    /// Signs with the entity's Active key. Throws KeyNotActive when the
    /// current key is Retired/Compromised or the entity has no key.
    crypto::Signature sign(const std::string& entity, const Digest& message_digest) const;

    /// Retires the current key and derives a fresh Active one. Authorization
    /// is checked by the caller (see rotate() below).
    const EntityKey& rotate_key(const std::string& entity, std::int64_t sim_time);

    void mark_compromised(const std::string& entity);

    bool has(const std::string& entity) const { return keys_.count(entity) != 0; }
    const EntityKey* active_key(const std::string& entity) const;
    const EntityKey& current_key(const std::string& entity) const;  // newest, any status
    const std::vector<EntityKey>& history(const std::string& entity) const;
    std::vector<std::string> entities() const;

    /// Keystore file round-trip (JSON, docs/formats.md). A non-empty
    /// passphrase encrypts key material at rest with XSalsa20-Poly1305.
    std::string to_file_json(const std::string& passphrase = {}) const;
    static Keystore from_file_json(const std::string& text, const std::string& passphrase = {});

private:
    Digest master_seed_;
    std::map<std::string, std::vector<EntityKey>> keys_;
    std::map<std::string, std::uint64_t> counters_;
};

/// On-chain address history per entity: append-only, newest entry is the
/// entity's current address. Updates are admin-signed (register_entity
/// transactions); this structure only records them.
class RotationRegistry {
public:
    struct Record {
        Address address;
        std::uint64_t activation_height = 0;
    };

    void append(const std::string& entity, const Address& address, std::uint64_t height);
    bool has(const std::string& entity) const { return entries_.count(entity) != 0; }
    const Address& current_address(const std::string& entity) const;
    const std::vector<Record>& history(const std::string& entity) const;
    const std::map<std::string, std::vector<Record>>& all() const { return entries_; }

private:
    std::map<std::string, std::vector<Record>> entries_;
};

struct AdminAuth {
    Address admin;
    crypto::Signature signature;
};

/// Message an administrator signs to authorize rotating `entity` at `height`.
Digest rotation_message(const std::string& entity, std::uint64_t height);

AdminAuth make_rotation_auth(const crypto::SecretKey& admin_key, const Address& admin,
                             const std::string& entity, std::uint64_t height);

/// Admin-authorized key rotation: verifies the authorization, retires the
/// old key, activates a fresh one and appends the address to the registry.
/// Throws Unauthorized on a bad admin signature, UnknownEntity when the
/// keystore has never seen the entity.
const EntityKey& rotate(Keystore& keystore, RotationRegistry& registry, const std::string& entity,
                        const AdminAuth& auth, const crypto::PublicKey& admin_key,
                        std::uint64_t height, std::int64_t sim_time);

}  // namespace dnas
