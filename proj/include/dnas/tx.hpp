// dnas-sim: decentralized supply-chain anti-counterfeiting simulator
// Copyright 2026 The dnas-sim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dnas/bytes.hpp"
#include "dnas/crypto.hpp"

namespace dnas {

/// Closed method set of the product-registry contract. Method identifiers
/// are stable wire strings, versioned in docs/formats.md.
enum class Method {
    RegisterEntity,
    RegisterProduct,
    TransferCustody,
    RecordSale,
    FlagProduct,
};

std::string_view method_id(Method m);
Method method_from_id(std::string_view id);

enum class Role { None, Administrator, Producer, Distributor, Retailer, Consumer };

std::string_view role_name(Role r);
Role role_from_name(std::string_view name);

/// Signed, gas-priced contract-method invocation. The signature covers the
/// digest of all other fields in declared order.
struct Transaction {
    Address sender;
    std::uint64_t nonce = 0;
    Method method = Method::FlagProduct;
    Bytes params;
    std::uint64_t gas_limit = 0;
    std::uint64_t gas_price = 0;
    crypto::Signature signature;

    /// Canonical digest of (sender, nonce, method, params, gas_limit,
    /// gas_price); this is the message signed by the sender and the hash
    /// leaves of the block Merkle tree.
    Digest digest() const;
};

Transaction make_signed_tx(const crypto::SecretKey& key, const Address& sender,
                           std::uint64_t nonce, Method method, Bytes params,
                           std::uint64_t gas_limit, std::uint64_t gas_price);

// Per-method parameter payloads, canonically encoded into Transaction::params.

struct RegisterEntityParams {
    std::string entity;
    Address address;
    Role role = Role::None;
    crypto::PublicKey public_key;

    Bytes encode() const;
    static RegisterEntityParams decode(ByteSpan raw);
};

struct RegisterProductParams {
    std::string pid;
    Digest tag_uid_digest;
    Digest payload_digest;

    Bytes encode() const;
    static RegisterProductParams decode(ByteSpan raw);
};

struct TransferCustodyParams {
    std::string pid;
    Address to;
    Digest new_payload_digest;

    Bytes encode() const;
    static TransferCustodyParams decode(ByteSpan raw);
};

struct RecordSaleParams {
    std::string pid;

    Bytes encode() const;
    static RecordSaleParams decode(ByteSpan raw);
};

struct FlagProductParams {
    std::string pid;
    std::string reason;

    Bytes encode() const;
    static FlagProductParams decode(ByteSpan raw);
};

}  // namespace dnas
