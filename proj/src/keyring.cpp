// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#include "dnas/keyring.hpp"

#include <sodium.h>

#include <json.hpp>

#include "dnas/codec.hpp"
#include "dnas/errors.hpp"

namespace dnas {

using nlohmann::json;

std::string_view key_status_name(KeyStatus s) {
    switch (s) {
        case KeyStatus::Active: return "Active";
        case KeyStatus::Retired: return "Retired";
        case KeyStatus::Compromised: return "Compromised";
    }
    throw Error(ErrorCode::ParseError, "invalid key status");
}

KeyStatus key_status_from_name(std::string_view name) {
    if (name == "Active") return KeyStatus::Active;
    if (name == "Retired") return KeyStatus::Retired;
    if (name == "Compromised") return KeyStatus::Compromised;
    throw Error(ErrorCode::ParseError, "unknown key status: " + std::string(name));
}

crypto::Signature sign_with(const EntityKey& key, const Digest& message_digest) {
    if (key.status != KeyStatus::Active)
        throw Error(ErrorCode::KeyNotActive,
                    std::string("key is ") + std::string(key_status_name(key.status)));
    return crypto::sign(key.material.secret_key, message_digest);
}

const EntityKey& Keystore::generate(const std::string& entity, std::int64_t sim_time) {
    const std::uint64_t counter = counters_[entity]++;
    CanonicalWriter w;
    w.field(master_seed_).field(entity).field_u64(counter);
    const Digest seed = crypto::sha256(w.bytes());

    EntityKey key;
    key.material = crypto::keygen(seed);
    key.address = crypto::derive_address(key.material.public_key);
    key.created_at = sim_time;
    key.status = KeyStatus::Active;

    auto& list = keys_[entity];
    for (auto& existing : list)
        if (existing.status == KeyStatus::Active) existing.status = KeyStatus::Retired;
    list.push_back(key);
    return list.back();
}

crypto::Signature Keystore::sign(const std::string& entity, const Digest& message_digest) const {
    const EntityKey* key = active_key(entity);
    if (key == nullptr)
        throw Error(ErrorCode::KeyNotActive, "no active key for entity " + entity);
    return crypto::sign(key->material.secret_key, message_digest);
}

const EntityKey& Keystore::rotate_key(const std::string& entity, std::int64_t sim_time) {
    if (!has(entity)) throw Error(ErrorCode::UnknownEntity, entity);
    return generate(entity, sim_time);
}

void Keystore::mark_compromised(const std::string& entity) {
    auto it = keys_.find(entity);
    if (it == keys_.end()) throw Error(ErrorCode::UnknownEntity, entity);
    for (auto& key : it->second)
        if (key.status == KeyStatus::Active) key.status = KeyStatus::Compromised;
}

const EntityKey* Keystore::active_key(const std::string& entity) const {
    auto it = keys_.find(entity);
    if (it == keys_.end()) return nullptr;
    for (const auto& key : it->second)
        if (key.status == KeyStatus::Active) return &key;
    return nullptr;
}

const EntityKey& Keystore::current_key(const std::string& entity) const {
    auto it = keys_.find(entity);
    if (it == keys_.end() || it->second.empty()) throw Error(ErrorCode::UnknownEntity, entity);
    return it->second.back();
}

const std::vector<EntityKey>& Keystore::history(const std::string& entity) const {
    auto it = keys_.find(entity);
    if (it == keys_.end()) throw Error(ErrorCode::UnknownEntity, entity);
    return it->second;
}

std::vector<std::string> Keystore::entities() const {
    std::vector<std::string> out;
    out.reserve(keys_.size());
    for (const auto& [name, _] : keys_) out.push_back(name);
    return out;
}

namespace {

std::array<std::uint8_t, crypto_secretbox_KEYBYTES> passphrase_key(const std::string& passphrase) {
    const Digest d = crypto::sha256(as_span(passphrase));
    std::array<std::uint8_t, crypto_secretbox_KEYBYTES> key{};
    std::copy(d.bytes.begin(), d.bytes.end(), key.begin());
    return key;
}

std::string seal_secret(const crypto::SecretKey& secret, const std::string& passphrase) {
    if (passphrase.empty()) return to_hex({secret.bytes.data(), secret.bytes.size()});
    const auto key = passphrase_key(passphrase);
    // Deterministic nonce from the public half of the secret key; each sealed
    // secret is unique so nonce reuse cannot occur within one keystore.
    const Digest nd = crypto::sha256(ByteSpan{secret.bytes.data() + 32, 32});
    std::array<std::uint8_t, crypto_secretbox_NONCEBYTES> nonce{};
    std::copy_n(nd.bytes.begin(), nonce.size(), nonce.begin());
    Bytes sealed(crypto_secretbox_MACBYTES + secret.bytes.size());
    crypto_secretbox_easy(sealed.data(), secret.bytes.data(), secret.bytes.size(), nonce.data(),
                          key.data());
    Bytes out(nonce.begin(), nonce.end());
    out.insert(out.end(), sealed.begin(), sealed.end());
    return to_hex(as_span(out));
}

crypto::SecretKey open_secret(const std::string& hex, const std::string& passphrase) {
    crypto::SecretKey secret;
    const Bytes raw = from_hex(hex);
    if (passphrase.empty()) {
        if (raw.size() != secret.bytes.size())
            throw Error(ErrorCode::ParseError, "bad secret key length");
        std::copy(raw.begin(), raw.end(), secret.bytes.begin());
        return secret;
    }
    const auto key = passphrase_key(passphrase);
    if (raw.size() != crypto_secretbox_NONCEBYTES + crypto_secretbox_MACBYTES + secret.bytes.size())
        throw Error(ErrorCode::ParseError, "bad sealed secret length");
    if (crypto_secretbox_open_easy(secret.bytes.data(), raw.data() + crypto_secretbox_NONCEBYTES,
                                   raw.size() - crypto_secretbox_NONCEBYTES, raw.data(),
                                   key.data()) != 0)
        throw Error(ErrorCode::Unauthorized, "keystore passphrase does not match");
    return secret;
}

}  // namespace

std::string Keystore::to_file_json(const std::string& passphrase) const {
    json entities = json::object();
    for (const auto& [entity, list] : keys_) {
        json keys = json::array();
        for (const auto& key : list) {
            keys.push_back(json{
                {"address", key.address.hex()},
                {"public_key", key.material.public_key.hex()},
                {"secret_key", seal_secret(key.material.secret_key, passphrase)},
                {"created_at", key.created_at},
                {"status", std::string(key_status_name(key.status))},
            });
        }
        entities[entity] = json{{"keys", keys}, {"counter", counters_.at(entity)}};
    }
    const json j{
        {"format", "dnas-keystore-v1"},
        {"encrypted", !passphrase.empty()},
        {"master_seed", master_seed_.hex()},
        {"entities", entities},
    };
    return j.dump(2) + "\n";
}

Keystore Keystore::from_file_json(const std::string& text, const std::string& passphrase) {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "dnas-keystore-v1")
        throw Error(ErrorCode::ParseError, "unsupported keystore format");
    if (j.at("encrypted").get<bool>() != !passphrase.empty())
        throw Error(ErrorCode::Unauthorized, "keystore encryption flag does not match passphrase");
    Keystore ks(Digest::from_hex(j.at("master_seed").get<std::string>()));
    for (const auto& [entity, body] : j.at("entities").items()) {
        ks.counters_[entity] = body.at("counter").get<std::uint64_t>();
        for (const auto& k : body.at("keys")) {
            EntityKey key;
            key.address = Address::from_hex(k.at("address").get<std::string>());
            key.material.public_key =
                crypto::PublicKey::from_hex(k.at("public_key").get<std::string>());
            key.material.secret_key = open_secret(k.at("secret_key").get<std::string>(), passphrase);
            key.created_at = k.at("created_at").get<std::int64_t>();
            key.status = key_status_from_name(k.at("status").get<std::string>());
            ks.keys_[entity].push_back(key);
        }
    }
    return ks;
}

void RotationRegistry::append(const std::string& entity, const Address& address,
                              std::uint64_t height) {
    entries_[entity].push_back({address, height});
}

const Address& RotationRegistry::current_address(const std::string& entity) const {
    auto it = entries_.find(entity);
    if (it == entries_.end() || it->second.empty())
        throw Error(ErrorCode::UnknownEntity, entity);
    return it->second.back().address;
}

const std::vector<RotationRegistry::Record>& RotationRegistry::history(
    const std::string& entity) const {
    auto it = entries_.find(entity);
    if (it == entries_.end()) throw Error(ErrorCode::UnknownEntity, entity);
    return it->second;
}

Digest rotation_message(const std::string& entity, std::uint64_t height) {
    CanonicalWriter w;
    w.field("rotate").field(entity).field_u64(height);
    return crypto::sha256(w.bytes());
}

AdminAuth make_rotation_auth(const crypto::SecretKey& admin_key, const Address& admin,
                             const std::string& entity, std::uint64_t height) {
    return {admin, crypto::sign(admin_key, rotation_message(entity, height))};
}

const EntityKey& rotate(Keystore& keystore, RotationRegistry& registry, const std::string& entity,
                        const AdminAuth& auth, const crypto::PublicKey& admin_key,
                        std::uint64_t height, std::int64_t sim_time) {
    if (!keystore.has(entity)) throw Error(ErrorCode::UnknownEntity, entity);
    if (crypto::derive_address(admin_key) != auth.admin ||
        !crypto::verify(admin_key, rotation_message(entity, height), auth.signature))
        throw Error(ErrorCode::Unauthorized, "rotation requires a valid admin signature");
    const EntityKey& fresh = keystore.rotate_key(entity, sim_time);
    registry.append(entity, fresh.address, height);
    return fresh;
}

}  // namespace dnas
